"""Bass sequences and their correspondence with Bass functions.

A Bass sequence is an ascending chain of subsets ``phi[0] <= phi[1] <= ...``
in which each step absorbs the covers of the previous term and the whole
chain exhausts the up-closure of ``phi[0]``. Only the prefix before
stabilization is stored: every index past the end reads as
``up_closure(phi[0])``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .depth import INF
from .functions import BassError, BassFunction, BassReport, SpecFunction, Violation, as_bass
from .poset import PosetError, SpectralPoset, cov_closure, up_closure

__all__ = [
    "BassSequence",
    "TwoBassPair",
    "validate_sequence",
    "seq_from_fct",
    "fct_from_seq",
    "smallest_ke_pair",
    "validate_pair",
]


class BassSequence:
    """An eventually constant sequence of element sets on one poset.

    Trailing copies of ``up_closure(phi[0])`` are dropped on construction,
    but at least one term is always kept, so the empty sequence is
    ``(frozenset(),)``. Passing no terms at all means the same thing.
    Construction does not check the sequence axioms; use
    :func:`validate_sequence`.
    """

    __slots__ = ("poset", "phi", "limit")

    def __init__(self, poset: SpectralPoset, phi: Iterable[Iterable[str]]):
        terms = [poset.check_subset(t) for t in phi] or [frozenset()]
        limit = up_closure(poset, terms[0])
        while len(terms) > 1 and terms[-1] == limit:
            terms.pop()
        self.poset = poset
        self.phi = tuple(terms)
        self.limit = limit

    def __getitem__(self, i: int) -> frozenset[str]:
        if i < 0:
            raise IndexError("sequence index must be nonnegative")
        return self.phi[i] if i < len(self.phi) else self.limit

    def __len__(self):
        return len(self.phi)

    def __eq__(self, other):
        if not isinstance(other, BassSequence):
            return NotImplemented
        return self.poset == other.poset and self.phi == other.phi

    def __hash__(self):
        return hash((self.poset, self.phi))

    def _span(self, other) -> int:
        if self.poset != other.poset:
            raise PosetError("sequences live on different posets")
        return max(len(self), len(other)) + 1

    # termwise inclusion order
    def __le__(self, other):
        if not isinstance(other, BassSequence):
            return NotImplemented
        return all(self[i] <= other[i] for i in range(self._span(other)))

    def __ge__(self, other):
        if not isinstance(other, BassSequence):
            return NotImplemented
        return all(self[i] >= other[i] for i in range(self._span(other)))

    def terms(self, n: int) -> list[frozenset[str]]:
        """The first ``n`` terms, padding with the limit as needed."""
        return [self[i] for i in range(n)]

    def as_lists(self) -> list[list[str]]:
        return [self.poset.sorted(t) for t in self.phi]

    def __repr__(self):
        body = ", ".join("{" + ",".join(self.poset.sorted(t)) + "}" for t in self.phi)
        return f"BassSequence({body})"


def validate_sequence(s: BassSequence, n: int | None = None, poset: SpectralPoset | None = None) -> BassReport:
    """Check the sequence axioms and, if ``n`` is given, stabilization by index ``n``.

    Rule tags: ``"i"`` for a term missing an element of the previous term
    or of its covers, ``"ii"`` for an element outside ``up_closure(phi[0])``,
    ``"n"`` for a term at index ``>= n`` that differs from the limit.
    """
    P = s.poset
    if poset is not None and poset != P:
        raise PosetError("sequence is defined on a different poset")
    found = []
    for i in range(len(s)):
        need = s[i] | cov_closure(P, s[i])
        for e in P.sorted(need - s[i + 1]):
            found.append(Violation("i", e, f"missing from term {i + 1}"))
    for i in range(len(s)):
        for e in P.sorted(s[i] - s.limit):
            found.append(Violation("ii", e, f"term {i} leaves the up-closure of term 0"))
    if n is not None:
        for i in range(n, len(s)):
            for e in P.sorted(s.limit - s[i]):
                found.append(Violation("n", e, f"term {i} has not stabilized by index {n}"))
    if found:
        return BassReport(tuple(found))
    level = len(s) - 1 if s[len(s) - 1] == s.limit else len(s)
    return BassReport((), level)


def seq_from_fct(f: SpecFunction) -> BassSequence:
    """Sublevel sets ``{p : f(p) <= i}`` for ``i = 0, 1, ...``."""
    f = as_bass(f)
    return BassSequence(f.poset, [f.sublevel(i) for i in range(max(f.level, 1))])


def fct_from_seq(s: BassSequence) -> BassFunction:
    """``p -> min{i : p in phi[i]}``, inf off the limit."""
    report = validate_sequence(s)
    if not report.ok:
        raise BassError(f"not a Bass sequence: {report.violations[0]}", report)
    P = s.poset
    vals = []
    for e in P.elements:
        if e not in s.limit:
            vals.append(INF)
        else:
            vals.append(next(i for i in range(len(s) + 1) if e in s[i]))
    return BassFunction(P, vals)


@dataclass(frozen=True)
class TwoBassPair:
    """A pair ``(phi, psi)`` with ``phi + cov(phi) <= psi <= up(phi)``."""

    poset: SpectralPoset
    phi: frozenset
    psi: frozenset

    def as_sequence(self) -> BassSequence:
        return BassSequence(self.poset, [self.phi, self.psi])

    def as_dict(self) -> dict:
        return {"phi": self.poset.sorted(self.phi), "psi": self.poset.sorted(self.psi)}


def validate_pair(pair: TwoBassPair) -> BassReport:
    """Check the pair inequalities directly, without going through sequences."""
    P = pair.poset
    found = []
    for e in P.sorted((pair.phi | cov_closure(P, pair.phi)) - pair.psi):
        found.append(Violation("i", e, "missing from psi"))
    for e in P.sorted(pair.psi - up_closure(P, pair.phi)):
        found.append(Violation("ii", e, "psi leaves the up-closure of phi"))
    return BassReport(tuple(found)) if found else BassReport((), 2)


def smallest_ke_pair(P: SpectralPoset, phi: Iterable[str]) -> TwoBassPair:
    """The least valid pair with first component ``phi``: ``(phi, phi + cov(phi))``."""
    phi = P.check_subset(phi)
    return TwoBassPair(P, phi, phi | cov_closure(P, phi))
