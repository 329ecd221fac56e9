import numpy as np
import pytest

from rehabmetrics.signals import TimeSeries
from rehabmetrics.synth import SynthParams, synth_trial


def ts(samples, rate=30.0, units="m"):
    return TimeSeries(np.asarray(samples, dtype=float), rate, units)


@pytest.fixture
def clean_trial():
    """Noiseless 100 bpm / 18 s / 30 Hz trial: the analytic ground truth."""
    return synth_trial(SynthParams())


@pytest.fixture
def noisy_trial():
    return synth_trial(SynthParams(noise_sigma=0.01, shoulder_drift_m=0.05, seed=7))
