"""Functions on a spectral poset and the Bass conditions.

A function assigns every element a value in N u {inf}; its domain is the
set of elements with a finite value. It is a *Bass function* when

* (B1) the domain is specialization-closed (an up-set),
* (B2) every minimal element of the domain has value 0,
* (B3) ``f(q) <= f(p) + 1`` for every cover ``p < q`` inside the domain,

and an *n-Bass function* when additionally every finite value is at most n.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

from .depth import INF, Depth, as_depth, format_depth
from .poset import PosetError, SpectralPoset, up_closure, structure_report

__all__ = [
    "BassError",
    "SpecFunction",
    "BassFunction",
    "Violation",
    "BassReport",
    "validate_bass",
    "enumerate_n_bass",
    "f_of_subset",
    "subset_of_one_bass",
    "g_of_assh_subset",
    "height_function",
    "join_min",
    "constant",
]

Witness = Union[str, tuple]


class BassError(ValueError):
    """A function fails the Bass conditions required by an operation."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SpecFunction:
    """Total map from the elements of a poset to extended depths.

    Values may be given as a mapping keyed by element or as a sequence in
    element order. Instances are immutable and hashable; equality compares
    the poset and the values only, so a :class:`BassFunction` equals the
    plain function it wraps.
    """

    __slots__ = ("poset", "values")

    def __init__(self, poset: SpectralPoset, values: Union[Mapping[str, Depth], Sequence[Depth]]):
        if isinstance(values, SpecFunction):
            if values.poset != poset:
                raise PosetError("function is defined on a different poset")
            values = values.values
        elif isinstance(values, Mapping):
            missing = [e for e in poset.elements if e not in values]
            if missing:
                raise ValueError(f"no value given for {missing!r}")
            extra = [e for e in values if e not in poset]
            if extra:
                raise PosetError(f"values given for unknown elements {sorted(extra)!r}")
            values = [values[e] for e in poset.elements]
        else:
            values = list(values)
            if len(values) != len(poset):
                raise ValueError(f"expected {len(poset)} values, got {len(values)}")
        object.__setattr__(self, "poset", poset)
        object.__setattr__(self, "values", tuple(as_depth(v) for v in values))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __getitem__(self, e: str) -> Depth:
        return self.values[self.poset.index(e)]

    def items(self):
        return zip(self.poset.elements, self.values)

    def as_dict(self) -> dict:
        return dict(self.items())

    @property
    def dom(self) -> frozenset[str]:
        return frozenset(e for e, v in self.items() if v != INF)

    def sublevel(self, n) -> frozenset[str]:
        """Elements with value at most ``n``."""
        return frozenset(e for e, v in self.items() if v <= n)

    @property
    def max_finite(self) -> int:
        return max((v for v in self.values if v != INF), default=0)

    def _same_poset(self, other):
        if self.poset != other.poset:
            raise PosetError("functions are defined on different posets")

    def __eq__(self, other):
        if not isinstance(other, SpecFunction):
            return NotImplemented
        return self.poset == other.poset and self.values == other.values

    def __hash__(self):
        return hash((self.poset, self.values))

    # pointwise order; a partial order, so there is no total __lt__
    def __le__(self, other):
        if not isinstance(other, SpecFunction):
            return NotImplemented
        self._same_poset(other)
        return all(a <= b for a, b in zip(self.values, other.values))

    def __ge__(self, other):
        if not isinstance(other, SpecFunction):
            return NotImplemented
        self._same_poset(other)
        return all(a >= b for a, b in zip(self.values, other.values))

    def sort_key(self):
        return self.values

    def __repr__(self):
        body = ", ".join(f"{e}:{format_depth(v)}" for e, v in self.items())
        return f"{type(self).__name__}({body})"


class Violation(NamedTuple):
    rule: str
    witness: Witness
    detail: str = ""


@dataclass(frozen=True)
class BassReport:
    violations: tuple = ()
    level: int | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def as_dict(self) -> dict:
        out = {"ok": self.ok, "violations": [_violation_dict(v) for v in self.violations]}
        if self.level is not None:
            out["level"] = self.level
        return out


def _violation_dict(v: Violation) -> dict:
    w = list(v.witness) if isinstance(v.witness, tuple) else v.witness
    out = {"rule": v.rule, "witness": w}
    if v.detail:
        out["detail"] = v.detail
    return out


def validate_bass(f: SpecFunction, poset: SpectralPoset | None = None) -> BassReport:
    """Check (B1)-(B3), reporting every violation with a witness.

    On success the report carries the least ``n`` for which ``f`` is
    n-Bass.
    """
    P = f.poset
    if poset is not None and poset != P:
        raise PosetError("function is defined on a different poset")
    dom = f.dom
    found = []
    for e in P.elements:
        if e not in dom and any(q in dom for q in P.below(e)):
            found.append(Violation("B1", e, "outside the domain but above a domain element"))
    for e in P.elements:
        if e in dom and f[e] != 0 and not any(q in dom for q in P.below(e) if q != e):
            found.append(Violation("B2", e, f"minimal in the domain with value {f[e]}"))
    for p, q in P.covers:
        if p in dom and q in dom and f[q] > f[p] + 1:
            found.append(Violation("B3", (p, q), f"value rises from {f[p]} to {f[q]}"))
    if found:
        return BassReport(tuple(found))
    return BassReport((), f.max_finite)


class BassFunction(SpecFunction):
    """A :class:`SpecFunction` known to satisfy (B1)-(B3).

    Construction validates; a :class:`BassError` carrying the report is
    raised otherwise.
    """

    __slots__ = ()

    def __init__(self, poset, values):
        super().__init__(poset, values)
        report = validate_bass(self)
        if not report.ok:
            raise BassError(f"not a Bass function: {report.violations[0]}", report)

    @classmethod
    def _trusted(cls, poset, values):
        obj = SpecFunction.__new__(cls)
        object.__setattr__(obj, "poset", poset)
        object.__setattr__(obj, "values", tuple(values))
        return obj

    @property
    def level(self) -> int:
        """Least ``n`` such that the function is n-Bass."""
        return self.max_finite

    def is_n_bass(self, n: int) -> bool:
        return self.level <= n


def as_bass(f: SpecFunction) -> BassFunction:
    if isinstance(f, BassFunction):
        return f
    return BassFunction(f.poset, f.values)


def constant(P: SpectralPoset, value: Depth = INF) -> SpecFunction:
    return SpecFunction(P, [value] * len(P))


# -- enumeration ------------------------------------------------------------


def _thread_cap() -> int:
    raw = os.environ.get("BASSLINE_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@lru_cache(maxsize=256)
def _enumerate_values(P: SpectralPoset, n: int, threads: int) -> tuple:
    order = [P.index(e) for e in P.linear_extension()]
    below = [[P.index(q) for q in P.below(e) if q != e] for e in P.elements]
    lower_covers = [[P.index(q) for q in P.lower_covers(e)] for e in P.elements]
    cap = [min(n, P.height(e)) for e in P.elements]
    size = len(order)

    def choices(i, vals):
        # (B1) forces i into the domain once anything below it is there;
        # (B2) forces 0 when nothing below it is.
        in_dom_below = any(vals[k] != INF for k in below[i])
        if not in_dom_below:
            return [0, INF]
        top = cap[i]
        for k in lower_covers[i]:
            top = min(top, vals[k] + 1)  # (B3); inf covers impose nothing
        return list(range(int(top) + 1))

    def search(depth, vals, out):
        if depth == size:
            out.append(tuple(vals))
            return
        i = order[depth]
        for v in choices(i, vals):
            vals[i] = v
            search(depth + 1, vals, out)
        vals[i] = None

    if size == 0:
        return ((),)

    first = order[0]
    start = [None] * size
    branches = choices(first, start)

    def run(v):
        vals = [None] * size
        vals[first] = v
        out = []
        search(1, vals, out)
        return out

    if threads > 1 and len(branches) > 1:
        with ThreadPoolExecutor(max_workers=min(threads, len(branches))) as pool:
            parts = list(pool.map(run, branches))
    else:
        parts = [run(v) for v in branches]
    found = [t for part in parts for t in part]
    found.sort()
    return tuple(found)


def enumerate_n_bass(P: SpectralPoset, n: int, threads: int | None = None) -> list[BassFunction]:
    """All n-Bass functions on ``P`` in canonical order.

    Backtracks over a linear extension, so every element's lower covers
    are fixed before it is assigned; (B1)-(B3) then determine the legal
    values exactly and no dead branches are explored. Values are capped
    by ``min(n, height)``, which every Bass function respects.

    Canonical order is lexicographic on the value tuple in element order,
    with inf last. ``threads`` (default: ``$BASSLINE_THREADS`` or 1) splits
    the search on the first element's choices; the order is unaffected.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if threads is None:
        threads = _thread_cap()
    return [BassFunction._trusted(P, vals) for vals in _enumerate_values(P, int(n), threads)]


# -- constructions ------------------------------------------------------------


def f_of_subset(P: SpectralPoset, phi: Iterable[str]) -> BassFunction:
    """0 on ``phi``, 1 on the rest of its up-closure, inf elsewhere."""
    phi = P.check_subset(phi)
    up = up_closure(P, phi)
    return BassFunction._trusted(P, [0 if e in phi else 1 if e in up else INF for e in P.elements])


def subset_of_one_bass(f: SpecFunction) -> frozenset[str]:
    """Inverse of :func:`f_of_subset`: the zero locus of a 1-Bass function."""
    f = as_bass(f)
    if f.level > 1:
        raise BassError(f"function is {f.level}-Bass, not 1-Bass")
    return f.sublevel(0)


def g_of_assh_subset(P: SpectralPoset, phi: Iterable[str]) -> BassFunction:
    """Height on the up-closure of ``phi``, inf elsewhere.

    ``phi`` must be a nonempty set of minimal elements of full coheight
    in a poset with a unique maximal element. The result is only
    guaranteed to be a Bass function when ``P`` is catenary; otherwise a
    :class:`BassError` is raised.
    """
    phi = P.check_subset(phi)
    report = structure_report(P)
    if not report.is_local:
        raise PosetError("poset has more than one maximal element")
    if not phi:
        raise ValueError("subset of assh must be nonempty")
    stray = phi - report.assh
    if stray:
        raise ValueError(f"{P.sorted(stray)!r} not in assh {P.sorted(report.assh)!r}")
    up = up_closure(P, phi)
    return BassFunction(P, [P.height(e) if e in up else INF for e in P.elements])


def height_function(P: SpectralPoset) -> SpecFunction:
    """``p -> height(p)``; validating it is left to the caller."""
    return SpecFunction(P, [P.height(e) for e in P.elements])


def join_min(f: SpecFunction, g: SpecFunction) -> SpecFunction:
    """Pointwise minimum. Bass (resp. n-Bass) inputs give a Bass (n-Bass) result."""
    f._same_poset(g)
    vals = [min(a, b) for a, b in zip(f.values, g.values)]
    if isinstance(f, BassFunction) and isinstance(g, BassFunction):
        return BassFunction(f.poset, vals)
    return SpecFunction(f.poset, vals)
