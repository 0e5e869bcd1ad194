"""Evidence-difference measures.

The canonical measure here maps each mass function to a distribution over
all nonempty subsets of the frame (exponentially normalized belief plus
plausibility, :func:`pb_transform`) and compares two such distributions with
the arithmetic-geometric divergence.  Working on the full power set lets the
measure sense overlap between compound subsets, which plain mass-vector
divergences ignore.

All logarithms in this module are base 2.
"""

from __future__ import annotations

import numpy as np

from .core import Frame, FrameMismatchError, MassFunction


class LengthMismatchError(ValueError):
    """Two vectors that must align have different lengths."""


def subset_bel_pl(m: MassFunction) -> tuple[np.ndarray, np.ndarray]:
    """Belief and plausibility over every subset mask ``0 .. 2**n - 1``.

    Belief is the subset-sum (zeta transform) of the dense mass vector;
    plausibility of ``A`` is total mass minus belief of the complement.
    Arrays are indexed directly by bitmask.
    """
    n = m.frame.n
    dense = np.zeros(1 << n)
    for mask, value in m.items():
        dense[mask] = value
    bel = dense.reshape([2] * n)
    for axis in range(n):
        upper = [slice(None)] * n
        lower = [slice(None)] * n
        upper[axis] = 1
        lower[axis] = 0
        bel[tuple(upper)] += bel[tuple(lower)]
    bel = bel.reshape(-1)
    total = bel[-1]
    full = (1 << n) - 1
    pl = total - bel[full ^ np.arange(1 << n)]
    return bel, pl


def pb_transform(m: MassFunction, include_empty_in_normalizer: bool = False) -> np.ndarray:
    """Exponentially normalized belief-plausibility weights over nonempty subsets.

    Entry ``k`` (0-based) is the weight of the subset with bitmask ``k + 1``:
    ``(exp(Bel) + exp(Pl)) / Z`` with ``Z`` summing the same quantity over all
    nonempty subsets.  Every weight is strictly positive and the vector sums
    to 1.  ``include_empty_in_normalizer`` adds the empty set's constant
    ``exp(0) + exp(0) = 2`` to ``Z`` (a variant normalization; off by default,
    which is the calibrated behavior).
    """
    bel, pl = subset_bel_pl(m)
    weights = np.exp(bel[1:]) + np.exp(pl[1:])
    z = weights.sum()
    if include_empty_in_normalizer:
        z += 2.0
    return weights / z


def ag_divergence(p, q) -> float:
    """Arithmetic-geometric divergence between two nonnegative vectors.

    ``sum mean * log2(mean / geo)`` over entries, with ``mean`` the
    arithmetic and ``geo`` the geometric mean of the paired entries.
    Symmetric in its arguments; positions where the entries are equal
    (including both zero) contribute exactly 0, so the divergence of a
    vector with itself is exactly 0.0.  An entry that is zero on one side
    only yields ``inf``.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise LengthMismatchError(f"vector lengths differ: {p.shape} vs {q.shape}")
    differs = p != q
    if not differs.any():
        return 0.0
    mean = (p[differs] + q[differs]) / 2.0
    geo = np.sqrt(p[differs] * q[differs])
    with np.errstate(divide="ignore"):
        terms = mean * np.log2(mean / geo)
    return float(terms.sum())


class DivergenceMeasure:
    """A pairwise evidence-difference measure.

    Subclasses set ``name`` and ``symmetric`` and implement ``evaluate``.
    Calling an instance checks that both operands share a frame.
    """

    name: str = "abstract"
    symmetric: bool = True

    def __call__(self, m1: MassFunction, m2: MassFunction) -> float:
        if m1.frame != m2.frame:
            raise FrameMismatchError(f"frames differ: {m1.frame.events} vs {m2.frame.events}")
        return self.evaluate(m1, m2)

    def evaluate(self, m1: MassFunction, m2: MassFunction) -> float:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}(name={self.name!r})"


class PBAGDivergence(DivergenceMeasure):
    """Arithmetic-geometric divergence of the two evidence's subset weights.

    Nonnegative, symmetric, and zero exactly when the two mass functions
    have identical subset-weight vectors (in particular when they are equal).
    """

    name = "pbagd"

    def __init__(self, include_empty_in_normalizer: bool = False):
        self.include_empty_in_normalizer = include_empty_in_normalizer

    def evaluate(self, m1: MassFunction, m2: MassFunction) -> float:
        w1 = pb_transform(m1, self.include_empty_in_normalizer)
        w2 = pb_transform(m2, self.include_empty_in_normalizer)
        return ag_divergence(w1, w2)


class MassJensenShannon(DivergenceMeasure):
    """Jensen-Shannon divergence of the raw mass assignments (base-2 logs).

    Compares masses focal-element by focal-element over the union of the
    two focal sets; maximal value ``log2(2) = 1`` for fully disjoint
    categorical evidence.  Blind to overlap between distinct compound
    subsets; provided as a comparison measure.
    """

    name = "bjs"

    def evaluate(self, m1: MassFunction, m2: MassFunction) -> float:
        keys = sorted(set(m1.focal_elements()) | set(m2.focal_elements()))
        p = np.array([m1.mass(k) for k in keys])
        q = np.array([m2.mass(k) for k in keys])
        mid = (p + q) / 2.0
        total = 0.0
        for vec in (p, q):
            pos = vec > 0
            total += 0.5 * float(np.sum(vec[pos] * np.log2(vec[pos] / mid[pos])))
        return total


PBAGD = PBAGDivergence()
BJS = MassJensenShannon()

_MEASURES: dict[str, DivergenceMeasure] = {PBAGD.name: PBAGD, BJS.name: BJS}


def register_measure(measure: DivergenceMeasure, overwrite: bool = False) -> None:
    """Add a measure to the registry so fusion code can look it up by name."""
    key = measure.name.lower()
    if key in _MEASURES and not overwrite:
        raise ValueError(f"measure {key!r} is already registered")
    _MEASURES[key] = measure


def get_measure(name: str) -> DivergenceMeasure:
    try:
        return _MEASURES[name.lower()]
    except KeyError:
        raise KeyError(f"unknown divergence measure {name!r}; registered: {sorted(_MEASURES)}") from None


def pbagd(m1: MassFunction, m2: MassFunction) -> float:
    return PBAGD(m1, m2)


def bjs(m1: MassFunction, m2: MassFunction) -> float:
    return BJS(m1, m2)


def _prefix_mask(t: int) -> int:
    return (1 << t) - 1


def span_imbalance_grid(alphas=None, spans=range(1, 11), n_events: int = 10):
    """Divergence between a variable and a fixed two-focal assignment.

    Both assignments put mass on the second singleton event and on a span
    ``A_t`` of the first ``t`` events; the variable one assigns ``alpha`` to
    the singleton, the fixed one 0.95.  Returns rows ``(t, alpha, value)``
    (column order fixed for downstream plotting) over the grid.  The two
    assignments coincide at ``alpha = 0.95``, so the value there is 0.
    """
    if alphas is None:
        alphas = np.linspace(0.05, 0.95, 19)
    frame = Frame(tuple(f"E{i + 1}" for i in range(n_events)))
    singleton = 1 << 1
    rows = []
    for t in spans:
        span = _prefix_mask(t)
        # 1.0 - 0.95 (not the literal 0.05) so the alpha = 0.95 grid point is
        # bit-identical to the reference and the divergence there is exactly 0.
        reference = MassFunction(frame, {singleton: 0.95, span: 1.0 - 0.95})
        for alpha in alphas:
            alpha = float(alpha)
            variable = MassFunction(frame, {singleton: alpha, span: 1.0 - alpha})
            rows.append((int(t), alpha, pbagd(variable, reference)))
    return rows


def span_overlap_series(spans=range(1, 11), n_events: int = 11):
    """Divergence of a four-focal assignment against a five-event block.

    The first assignment spreads mass over the whole frame, a small compound
    set, a singleton, and a variable span ``A_t``; the second is categorical
    on the first five events.  Returns rows ``(t, value)``.  The series dips
    where the span matches the block (t = 5) and rises more gently as the
    span keeps growing past it.
    """
    frame = Frame(tuple(f"E{i + 1}" for i in range(n_events)))
    block = _prefix_mask(5)
    reference = MassFunction(frame, {block: 1.0})
    small_compound = 0b1110  # events 2..4
    lone_singleton = 1 << 6
    # nominal weights 0.10/0.05/0.10/0.80 rescaled to unit sum
    weights = np.array([0.10, 0.05, 0.10, 0.80])
    weights = weights / weights.sum()
    rows = []
    for t in spans:
        spread = MassFunction(
            frame,
            {
                frame.full_mask: weights[0],
                small_compound: weights[1],
                lone_singleton: weights[2],
                _prefix_mask(t): weights[3],
            },
        )
        rows.append((int(t), pbagd(spread, reference)))
    return rows
