"""2-d skeletal hand model and digit vocabulary."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .errors import VocabularyError
from .shape import Fingertip, PalmRect

DEFAULT_LAMBDA = 0.35
THUMB_DIGITS = frozenset({3, 5})


@dataclass(frozen=True)
class Finger:
    joint: int
    tip: Fingertip
    length: float


@dataclass(frozen=True)
class SkeletalModel:
    palm: PalmRect
    joints: tuple[tuple[int, int], ...]
    fingers: tuple[Finger, ...]
    thumb: bool
    bent: tuple[Fingertip, ...] = ()  # tips rejected for being too short

    def signature(self) -> "Signature":
        return Signature(frozenset(f.joint for f in self.fingers), self.thumb)

    def shares_joint(self) -> bool:
        joints = [f.joint for f in self.fingers]
        return len(joints) != len(set(joints))


@dataclass(frozen=True)
class Signature:
    joints: frozenset[int]
    thumb: bool

    @classmethod
    def of(cls, joints: Iterable[int], thumb: bool = False) -> "Signature":
        return cls(frozenset(joints), thumb)

    def as_dict(self) -> dict:
        return {"joints": sorted(self.joints), "thumb": self.thumb}


def place_joints(palm: PalmRect) -> tuple[tuple[int, int], ...]:
    """Four (row, column) joints on the palm top at 1/8, 3/8, 5/8, 7/8 of its width."""
    # exact halves round toward the midline so joints k and 3-k mirror each other
    joints = []
    for k in range(4):
        num = (2 * k + 1) * palm.width
        offset = (num + 4) // 8 if k < 2 else (num + 3) // 8
        joints.append((palm.top, palm.left + offset))
    return tuple(joints)


def build_skeleton(
    palm: PalmRect,
    tips: Iterable[Fingertip],
    thumb: bool,
    *,
    lam: float = DEFAULT_LAMBDA,
) -> SkeletalModel:
    """Connect each tip to its nearest joint and drop bent fingers."""
    joints = place_joints(palm)
    min_length = lam * palm.height
    fingers, bent = [], []
    for tip in tips:
        dists = [math.hypot(tip.row - r, tip.column - c) for r, c in joints]
        joint = min(range(4), key=lambda k: (dists[k], k))
        if dists[joint] < min_length:
            bent.append(tip)
        else:
            fingers.append(Finger(joint, tip, dists[joint]))
    return SkeletalModel(palm, joints, tuple(fingers), thumb, tuple(bent))


@dataclass(frozen=True)
class Vocabulary:
    entries: Mapping[Signature, int] = field(default_factory=dict)

    def __post_init__(self):
        seen: dict[int, Signature] = {}
        for sig, digit in self.entries.items():
            _validate_entry(digit, sig)
            if digit in seen:
                raise VocabularyError(f"digit {digit} assigned to two signatures")
            seen[digit] = sig

    def lookup(self, sig: Signature) -> int | None:
        return self.entries.get(sig)

    def signature_for(self, digit: int) -> Signature:
        for sig, d in self.entries.items():
            if d == digit:
                return sig
        raise KeyError(digit)

    @classmethod
    def default(cls) -> "Vocabulary":
        return cls(dict(DEFAULT_TABLE))

    @classmethod
    def parse(cls, text: str) -> "Vocabulary":
        entries: dict[Signature, int] = {}
        digits: set[int] = set()
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            m = _ENTRY.fullmatch(line)
            if m is None:
                raise VocabularyError(f"line {lineno}: cannot parse {raw.strip()!r}")
            digit = int(m["digit"])
            joints_text = m["joints"].strip()
            try:
                joints = [int(j) for j in joints_text.split(",")] if joints_text else []
            except ValueError:
                raise VocabularyError(f"line {lineno}: bad joint list {joints_text!r}") from None
            sig = Signature.of(joints, m["thumb"] == "true")
            try:
                _validate_entry(digit, sig)
            except VocabularyError as exc:
                raise VocabularyError(f"line {lineno}: {exc}") from None
            if digit in digits:
                raise VocabularyError(f"line {lineno}: digit {digit} listed twice")
            if sig in entries:
                raise VocabularyError(
                    f"line {lineno}: signature already used by digit {entries[sig]}")
            entries[sig] = digit
            digits.add(digit)
        return cls(entries)

    @classmethod
    def load(cls, path: str | Path) -> "Vocabulary":
        return cls.parse(Path(path).read_text())

    def dumps(self) -> str:
        lines = []
        for sig, digit in sorted(self.entries.items(), key=lambda kv: kv[1]):
            joints = ",".join(str(j) for j in sorted(sig.joints))
            lines.append(f"{digit} = joints:{joints} thumb:{'true' if sig.thumb else 'false'}")
        return "\n".join(lines) + "\n"


_ENTRY = re.compile(
    r"(?P<digit>\d+)\s*=\s*joints:(?P<joints>[0-9,\s]*?)\s+thumb:(?P<thumb>true|false)")


def _validate_entry(digit: int, sig: Signature) -> None:
    if not 0 <= digit <= 9:
        raise VocabularyError(f"digit {digit} outside 0..9")
    if not sig.joints <= {0, 1, 2, 3}:
        raise VocabularyError(f"joint indices {sorted(sig.joints)} outside 0..3")
    if sig.thumb != (digit in THUMB_DIGITS):
        raise VocabularyError(
            f"digit {digit}: only digits 3 and 5 carry an extended thumb, and both must")


# joint 0 = little finger, joint 3 = index finger (next to the thumb)
DEFAULT_TABLE = {
    Signature.of([]): 0,
    Signature.of([3]): 1,
    Signature.of([2, 3]): 2,
    Signature.of([2, 3], True): 3,
    Signature.of([0, 1, 2, 3]): 4,
    Signature.of([0, 1, 2, 3], True): 5,
    Signature.of([1, 2, 3]): 6,
    Signature.of([0, 1, 2]): 7,
    Signature.of([0]): 8,
    Signature.of([0, 3]): 9,
}


@dataclass(frozen=True)
class Classification:
    """Recognised digit, or ``digit=None`` for an unknown sign."""

    digit: int | None
    model: SkeletalModel | None = None
    reason: str = ""

    @property
    def known(self) -> bool:
        return self.digit is not None

    @property
    def signature(self) -> Signature | None:
        return self.model.signature() if self.model is not None else None

    def key(self) -> tuple:
        """Equality key used by the debouncer: digit plus signature, or just 'unknown'."""
        if self.digit is None:
            return ("unknown",)
        return ("digit", self.digit, self.signature)


def classify(model: SkeletalModel, vocab: Vocabulary) -> Classification:
    if model.shares_joint():
        return Classification(None, model, "shared_joint")
    if not model.fingers and model.bent:
        return Classification(None, model, "bent_fingers")
    digit = vocab.lookup(model.signature())
    if digit is None:
        return Classification(None, model, "not_in_vocabulary")
    return Classification(digit, model, "recognized")
