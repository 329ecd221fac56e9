/** Thin fetch client for the read-only JSON API, plus the request token
 * used to discard stale responses (last navigation wins).
 */

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

export class ApiClient {
  constructor(private base = "") {}

  async get<T>(path: string): Promise<T> {
    let resp: Response;
    try {
      resp = await fetch(this.base + path);
    } catch (err) {
      throw new ApiError(0, `network error: ${err}`);
    }
    if (!resp.ok) {
      let message = `HTTP ${resp.status}`;
      try {
        const body = (await resp.json()) as { error?: string };
        if (body && typeof body.error === "string") message = body.error;
      } catch {
        // non-JSON error body; keep the status message
      }
      throw new ApiError(resp.status, message);
    }
    return (await resp.json()) as T;
  }
}

/** Monotonic token source: a response is applied only if no newer request
 * was issued while it was in flight. */
export class RequestGate {
  private current = 0;

  next(): number {
    return ++this.current;
  }

  isLive(token: number): boolean {
    return token === this.current;
  }
}
