"""Canonical naming for the 25 Kinect-v2 skeletal joints.

Marker names in capture files vary in case and separators ("HandRight",
"hand_right", "Hand Right"); everything is matched through
:func:`normalize_joint_name`.
"""

from enum import Enum


class JointId(Enum):
    SPINE_BASE = "SpineBase"
    SPINE_MID = "SpineMid"
    NECK = "Neck"
    HEAD = "Head"
    SHOULDER_LEFT = "ShoulderLeft"
    ELBOW_LEFT = "ElbowLeft"
    WRIST_LEFT = "WristLeft"
    HAND_LEFT = "HandLeft"
    SHOULDER_RIGHT = "ShoulderRight"
    ELBOW_RIGHT = "ElbowRight"
    WRIST_RIGHT = "WristRight"
    HAND_RIGHT = "HandRight"
    HIP_LEFT = "HipLeft"
    KNEE_LEFT = "KneeLeft"
    ANKLE_LEFT = "AnkleLeft"
    FOOT_LEFT = "FootLeft"
    HIP_RIGHT = "HipRight"
    KNEE_RIGHT = "KneeRight"
    ANKLE_RIGHT = "AnkleRight"
    FOOT_RIGHT = "FootRight"
    SPINE_SHOULDER = "SpineShoulder"
    HAND_TIP_LEFT = "HandTipLeft"
    THUMB_LEFT = "ThumbLeft"
    HAND_TIP_RIGHT = "HandTipRight"
    THUMB_RIGHT = "ThumbRight"


KINECT_JOINTS = [j.value for j in JointId]

_SEPARATORS = str.maketrans("", "", " _-")


def normalize_joint_name(name: str) -> str:
    """Lowercase and strip spaces/underscores/dashes: 'Hand Right' -> 'handright'."""
    return name.translate(_SEPARATORS).lower()


_CANONICAL = {normalize_joint_name(j.value): j for j in JointId}


def resolve_joint(name) -> str:
    """Map a marker/joint name to its canonical spelling.

    Accepts a JointId or any string; unknown names pass through unchanged
    (the Unknown escape hatch: arbitrary markers remain addressable).
    """
    if isinstance(name, JointId):
        return name.value
    joint = _CANONICAL.get(normalize_joint_name(str(name)))
    return joint.value if joint is not None else str(name)


def joints_match(a, b) -> bool:
    """Case- and separator-insensitive name equality."""
    a = a.value if isinstance(a, JointId) else str(a)
    b = b.value if isinstance(b, JointId) else str(b)
    return normalize_joint_name(a) == normalize_joint_name(b)
