"""Frames of discernment, mass functions, and Dempster's combination rule.

Subsets of the frame are encoded as integer bitmasks: bit ``j`` set means
event ``j`` (in frame order) belongs to the subset.  Frames are capped at
20 events because several operations (plausibility-belief transforms in
particular) enumerate all ``2**n - 1`` nonempty subsets.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import numpy as np

MAX_EVENTS = 20

#: Mass assignments must sum to one within this tolerance.
NORMALIZATION_TOL = 1e-9

#: Combination refuses to normalize once this little mass survives.
CONFLICT_EPS = 1e-12


class MassFunctionError(ValueError):
    """A mass assignment violates a basic-belief-assignment invariant."""


class NegativeMassError(MassFunctionError):
    pass


class NotNormalizedError(MassFunctionError):
    def __init__(self, total: float):
        self.total = total
        super().__init__(f"masses sum to {total!r}, expected 1")


class EmptySetFocalError(MassFunctionError):
    pass


class FrameMismatchError(ValueError):
    """Two operands are defined over different frames."""


class TotalConflictError(ArithmeticError):
    """Conjunctive combination left (almost) no surviving mass."""

    def __init__(self, conflict: float):
        self.conflict = conflict
        super().__init__(f"total conflict: K = {conflict!r}")


@dataclass(frozen=True)
class Frame:
    """Ordered set of mutually exclusive, exhaustive event labels."""

    events: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(str(e) for e in self.events))
        if not self.events:
            raise ValueError("a frame needs at least one event")
        if len(self.events) > MAX_EVENTS:
            raise ValueError(f"frames are capped at {MAX_EVENTS} events, got {len(self.events)}")
        if len(set(self.events)) != len(self.events):
            raise ValueError("event labels must be unique")

    @property
    def n(self) -> int:
        return len(self.events)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def index(self, label: str) -> int:
        try:
            return self.events.index(label)
        except ValueError:
            raise KeyError(f"unknown event label {label!r}") from None

    def mask_of(self, subset) -> int:
        """Coerce a subset description to a bitmask.

        Accepts an integer mask, a single label, a comma-joined label
        string (``"A1,A3"``), or an iterable of labels.
        """
        if isinstance(subset, (int, np.integer)):
            mask = int(subset)
            if not 0 <= mask <= self.full_mask:
                raise ValueError(f"mask {mask} out of range for a {self.n}-event frame")
            return mask
        if isinstance(subset, str):
            labels: Iterable[str] = (part.strip() for part in subset.split(","))
        else:
            labels = subset
        mask = 0
        for label in labels:
            mask |= 1 << self.index(label)
        return mask

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(e for j, e in enumerate(self.events) if mask >> j & 1)

    def subset_str(self, mask: int) -> str:
        return ",".join(self.labels_of(mask))

    def subsets(self) -> range:
        """All nonempty subset masks, ascending."""
        return range(1, 1 << self.n)


def cardinality(mask: int) -> int:
    return mask.bit_count()


def validate_masses(frame: Frame, masses: Mapping) -> MassFunctionError | None:
    """Return the first violated mass invariant, or None if valid.

    Checks, in order: no focal mass on the empty set, no negative mass,
    and normalization to 1 within ``NORMALIZATION_TOL``.
    """
    total = 0.0
    for subset, value in masses.items():
        mask = frame.mask_of(subset)
        value = float(value)
        if mask == 0 and value != 0.0:
            return EmptySetFocalError("the empty set cannot carry mass")
        if value < 0.0:
            return NegativeMassError(f"negative mass {value!r} on {frame.subset_str(mask)!r}")
        total += value
    if abs(total - 1.0) > NORMALIZATION_TOL:
        return NotNormalizedError(total)
    return None


class MassFunction:
    """A sparse basic belief assignment: nonempty subsets to masses summing to 1.

    Instances are immutable after construction; all operations on them are
    pure functions, so they can be shared freely across threads.
    """

    __slots__ = ("frame", "_masses")

    def __init__(self, frame: Frame, masses: Mapping):
        merged: dict[int, float] = {}
        for subset, value in masses.items():
            mask = frame.mask_of(subset)
            merged[mask] = merged.get(mask, 0.0) + float(value)
        error = validate_masses(frame, merged)
        if error is not None:
            raise error
        object.__setattr__(self, "frame", frame)
        object.__setattr__(
            self,
            "_masses",
            {mask: v for mask, v in sorted(merged.items()) if v != 0.0},
        )

    def __setattr__(self, name, value):
        raise AttributeError("MassFunction is immutable")

    @property
    def masses(self) -> dict[int, float]:
        return dict(self._masses)

    def items(self):
        """Focal (mask, mass) pairs in ascending mask order."""
        return self._masses.items()

    def mass(self, subset) -> float:
        return self._masses.get(self.frame.mask_of(subset), 0.0)

    def focal_elements(self) -> tuple[int, ...]:
        return tuple(self._masses)

    def belief(self, subset) -> float:
        """Total mass committed to subsets of ``subset``."""
        mask = self.frame.mask_of(subset)
        return sum(v for b, v in self._masses.items() if b & ~mask == 0)

    def plausibility(self, subset) -> float:
        """Total mass not in conflict with ``subset`` (sum over intersecting focals)."""
        mask = self.frame.mask_of(subset)
        return sum(v for b, v in self._masses.items() if b & mask != 0)

    def pignistic(self) -> np.ndarray:
        """Event probabilities obtained by splitting each focal mass evenly.

        Returns a length-``n`` vector in frame order; sums to 1.
        """
        probs = np.zeros(self.frame.n)
        for mask, value in self._masses.items():
            share = value / cardinality(mask)
            for j in range(self.frame.n):
                if mask >> j & 1:
                    probs[j] += share
        return probs

    def __eq__(self, other):
        if not isinstance(other, MassFunction):
            return NotImplemented
        return self.frame == other.frame and self._masses == other._masses

    def __hash__(self):
        return hash((self.frame, tuple(self._masses.items())))

    def __repr__(self):
        body = ", ".join(
            f"{{{self.frame.subset_str(mask)}}}: {value:g}" for mask, value in self._masses.items()
        )
        return f"MassFunction({body})"


def vacuous(frame: Frame) -> MassFunction:
    """The fully uncommitted assignment: all mass on the whole frame."""
    return MassFunction(frame, {frame.full_mask: 1.0})


def event_evidence(frame: Frame, event) -> MassFunction:
    """Categorical evidence asserting a single event: mass 1 on that singleton.

    ``event`` is a frame label or a 0-based event index.
    """
    if isinstance(event, str):
        j = frame.index(event)
    else:
        j = int(event)
        if not 0 <= j < frame.n:
            raise IndexError(f"event index {j} out of range for a {frame.n}-event frame")
    return MassFunction(frame, {1 << j: 1.0})


def _require_same_frame(ms: Iterable[MassFunction]) -> Frame:
    ms = list(ms)
    if not ms:
        raise ValueError("need at least one mass function")
    frame = ms[0].frame
    for m in ms[1:]:
        if m.frame != frame:
            raise FrameMismatchError(f"frames differ: {frame.events} vs {m.frame.events}")
    return frame


def dcr_pair(m1: MassFunction, m2: MassFunction) -> MassFunction:
    """Dempster's rule for two mass functions.

    Conjunctive combination of all focal pairs, discarding mass whose
    intersection is empty and renormalizing by ``1 - K`` where ``K`` is the
    conflict.  Raises :class:`TotalConflictError` when ``K >= 1 - CONFLICT_EPS``.
    """
    frame = _require_same_frame([m1, m2])
    combined: dict[int, float] = {}
    conflict = 0.0
    for b, vb in m1.items():
        for c, vc in m2.items():
            product = vb * vc
            inter = b & c
            if inter == 0:
                conflict += product
            else:
                combined[inter] = combined.get(inter, 0.0) + product
    # normalize by the surviving total (identical to 1 - K, but it keeps the
    # output unit-sum to the last bit across long combination chains)
    total = sum(combined.values())
    if conflict >= 1.0 - CONFLICT_EPS or total <= CONFLICT_EPS:
        raise TotalConflictError(conflict)
    return MassFunction(frame, {mask: v / total for mask, v in combined.items()})


def dcr_n(ms: Iterable[MassFunction]) -> MassFunction:
    """Left fold of :func:`dcr_pair` over one or more mass functions."""
    ms = list(ms)
    _require_same_frame(ms)
    result = ms[0]
    for m in ms[1:]:
        result = dcr_pair(result, m)
    return result


def self_fuse(m: MassFunction, times: int) -> MassFunction:
    """Combine ``times`` copies of ``m`` under Dempster's rule.

    ``times`` counts operands, so ``times=1`` returns ``m`` unchanged and
    ``times=k`` applies the rule ``k - 1`` times.
    """
    if times < 1:
        raise ValueError(f"times must be >= 1, got {times}")
    result = m
    for _ in range(times - 1):
        result = dcr_pair(result, m)
    return result
