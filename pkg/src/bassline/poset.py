"""Finite posets modeling the inclusion order on a prime spectrum.

A :class:`SpectralPoset` is given by its elements and its cover relation
(the Hasse diagram). Everything else -- the order itself, heights,
catenarity, closures -- is derived once at construction time, so all
queries afterwards are table lookups on immutable data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .depth import format_depth

__all__ = [
    "PosetError",
    "UnknownElementError",
    "SpectralPoset",
    "StructureReport",
    "load_poset",
    "leq",
    "is_saturated",
    "up_closure",
    "cov_closure",
    "is_specialization_closed",
    "rel_height",
    "height",
    "rel_height_in_subset",
    "structure_report",
    "emit_dot",
]


class PosetError(ValueError):
    """Malformed poset description or an illegal query against a poset."""


class UnknownElementError(PosetError, KeyError):
    def __str__(self):
        return ValueError.__str__(self)


class SpectralPoset:
    """An immutable finite poset given by elements and irredundant covers.

    The element order is significant: it is the tie-break order for every
    set or list the library emits.
    """

    __slots__ = (
        "name",
        "elements",
        "covers",
        "_index",
        "_up",
        "_down",
        "_upper_covers",
        "_lower_covers",
        "_longest",
        "_shortest",
        "_hash",
    )

    def __init__(self, elements: Sequence[str], covers: Iterable[Sequence[str]] = (), name: str = ""):
        elements = tuple(elements)
        index: dict[str, int] = {}
        for e in elements:
            if not isinstance(e, str) or not e:
                raise PosetError(f"element ids must be nonempty strings, got {e!r}")
            if e in index:
                raise PosetError(f"duplicate element id {e!r}")
            index[e] = len(index)

        n = len(elements)
        pairs = set()
        for pair in covers:
            if len(pair) != 2:
                raise PosetError(f"cover must be a pair, got {pair!r}")
            lo, hi = pair
            for e in (lo, hi):
                if e not in index:
                    raise UnknownElementError(f"cover {lo!r} < {hi!r} names unknown element {e!r}")
            if lo == hi:
                raise PosetError(f"cycle detected: {lo!r} covers itself")
            if (index[lo], index[hi]) in pairs:
                raise PosetError(f"cover {lo!r} < {hi!r} listed twice")
            pairs.add((index[lo], index[hi]))

        upper = [[] for _ in range(n)]
        lower = [[] for _ in range(n)]
        for i, j in sorted(pairs):
            upper[i].append(j)
            lower[j].append(i)

        order = _topological_order(n, upper, lower, elements)

        # reflexive up-sets, built top-down along the topological order
        up: list[frozenset[int]] = [frozenset()] * n
        for i in reversed(order):
            acc = {i}
            for j in upper[i]:
                acc |= up[j]
            up[i] = frozenset(acc)
        down = [frozenset(j for j in range(n) if i in up[j]) for i in range(n)]

        for i, j in sorted(pairs):
            middle = (up[i] & down[j]) - {i, j}
            if middle:
                m = min(middle)
                raise PosetError(
                    f"redundant cover {elements[i]!r} < {elements[j]!r}: "
                    f"{elements[m]!r} lies strictly between"
                )

        # longest / shortest saturated chain lengths between comparable pairs
        longest = [[-1] * n for _ in range(n)]
        shortest = [[-1] * n for _ in range(n)]
        pos = {v: k for k, v in enumerate(order)}
        for i in range(n):
            longest[i][i] = shortest[i][i] = 0
            for j in sorted(up[i], key=pos.__getitem__):
                if j == i:
                    continue
                preds = [k for k in lower[j] if k in up[i]]
                longest[i][j] = 1 + max(longest[i][k] for k in preds)
                shortest[i][j] = 1 + min(shortest[i][k] for k in preds)

        self.name = name
        self.elements = elements
        self.covers = tuple((elements[i], elements[j]) for i, j in sorted(pairs))
        self._index = index
        self._up = tuple(up)
        self._down = tuple(down)
        self._upper_covers = tuple(tuple(u) for u in upper)
        self._lower_covers = tuple(tuple(lw) for lw in lower)
        self._longest = tuple(tuple(r) for r in longest)
        self._shortest = tuple(tuple(r) for r in shortest)
        self._hash = hash((self.elements, self.covers))

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, SpectralPoset):
            return NotImplemented
        return self.elements == other.elements and self.covers == other.covers

    def __hash__(self):
        return self._hash

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"SpectralPoset({label}{len(self.elements)} elements, {len(self.covers)} covers)"

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e):
        return e in self._index

    # -- element bookkeeping ----------------------------------------------

    def index(self, e: str) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise UnknownElementError(f"unknown element {e!r}") from None

    def check_subset(self, subset: Iterable[str]) -> frozenset[str]:
        """Return ``subset`` as a frozenset, rejecting unknown elements."""
        subset = frozenset(subset)
        for e in subset:
            self.index(e)
        return subset

    def sorted(self, subset: Iterable[str]) -> list[str]:
        """List the members of ``subset`` in canonical element order."""
        return sorted(subset, key=self.index)

    def _names(self, indices) -> frozenset[str]:
        return frozenset(self.elements[i] for i in indices)

    # -- order queries ----------------------------------------------------

    def leq(self, p: str, q: str) -> bool:
        return self.index(q) in self._up[self.index(p)]

    def above(self, p: str) -> frozenset[str]:
        """Reflexive up-set of ``p``."""
        return self._names(self._up[self.index(p)])

    def below(self, p: str) -> frozenset[str]:
        """Reflexive down-set of ``p``."""
        return self._names(self._down[self.index(p)])

    def upper_covers(self, p: str) -> list[str]:
        return [self.elements[j] for j in self._upper_covers[self.index(p)]]

    def lower_covers(self, p: str) -> list[str]:
        return [self.elements[j] for j in self._lower_covers[self.index(p)]]

    @property
    def minimal(self) -> frozenset[str]:
        return frozenset(e for i, e in enumerate(self.elements) if not self._lower_covers[i])

    @property
    def maximal(self) -> frozenset[str]:
        return frozenset(e for i, e in enumerate(self.elements) if not self._upper_covers[i])

    def linear_extension(self) -> list[str]:
        """Bottom-up topological order, ties broken by element order."""
        n = len(self.elements)
        return [self.elements[i] for i in _topological_order(n, self._upper_covers, self._lower_covers, self.elements)]

    def rel_height(self, p: str, q: str) -> int:
        h = self._longest[self.index(p)][self.index(q)]
        if h < 0:
            raise PosetError(f"{p!r} is not below {q!r}")
        return h

    def height(self, p: str) -> int:
        j = self.index(p)
        return max(self._longest[i][j] for i in self._down[j])

    def coheight(self, p: str) -> int:
        """Length of the longest chain starting at ``p``."""
        i = self.index(p)
        return max((self._longest[i][j] for j in self._up[i]), default=0)

    @property
    def poset_height(self) -> int:
        return max((self.height(e) for e in self.elements), default=0)


def _topological_order(n, upper, lower, elements) -> list[int]:
    indegree = [len(lower[i]) for i in range(n)]
    ready = [i for i in range(n) if indegree[i] == 0]
    order = []
    while ready:
        ready.sort()
        i = ready.pop(0)
        order.append(i)
        for j in upper[i]:
            indegree[j] -= 1
            if indegree[j] == 0:
                ready.append(j)
    if len(order) < n:
        stuck = [elements[i] for i in range(n) if indegree[i] > 0]
        raise PosetError(f"cycle detected among {stuck!r}")
    return order


# -- functional interface ---------------------------------------------------


def load_poset(description: Mapping) -> SpectralPoset:
    """Build a poset from ``{"name": ..., "elements": [...], "covers": [[lo, hi], ...]}``."""
    if not isinstance(description, Mapping):
        raise PosetError("poset description must be a mapping")
    try:
        elements = description["elements"]
    except KeyError:
        raise PosetError("poset description lacks 'elements'") from None
    if isinstance(elements, str) or not isinstance(elements, Sequence):
        raise PosetError("'elements' must be a list of strings")
    covers = description.get("covers", [])
    if isinstance(covers, str) or not isinstance(covers, Sequence):
        raise PosetError("'covers' must be a list of pairs")
    name = description.get("name", "")
    if not isinstance(name, str):
        raise PosetError("'name' must be a string")
    return SpectralPoset(elements, covers, name=name)


def leq(P: SpectralPoset, p: str, q: str) -> bool:
    return P.leq(p, q)


def is_saturated(P: SpectralPoset, p: str, q: str) -> bool:
    """True iff ``p < q`` with nothing strictly in between."""
    if p == q:
        raise PosetError(f"saturation needs distinct elements, got {p!r} twice")
    if not P.leq(p, q):
        raise PosetError(f"{p!r} is not below {q!r}")
    return P.index(q) in P._upper_covers[P.index(p)]


def up_closure(P: SpectralPoset, phi: Iterable[str]) -> frozenset[str]:
    out: set[int] = set()
    for e in P.check_subset(phi):
        out |= P._up[P.index(e)]
    return P._names(out)


def cov_closure(P: SpectralPoset, phi: Iterable[str]) -> frozenset[str]:
    """Elements covering some member of ``phi``."""
    out: set[int] = set()
    for e in P.check_subset(phi):
        out.update(P._upper_covers[P.index(e)])
    return P._names(out)


def is_specialization_closed(P: SpectralPoset, phi: Iterable[str]) -> bool:
    phi = P.check_subset(phi)
    return up_closure(P, phi) == phi


def rel_height(P: SpectralPoset, p: str, q: str) -> int:
    return P.rel_height(p, q)


def height(P: SpectralPoset, p: str) -> int:
    return P.height(p)


def rel_height_in_subset(P: SpectralPoset, phi: Iterable[str], p: str) -> int:
    """Longest chain ending at ``p`` that starts inside ``phi``.

    Raises :class:`PosetError` when no member of ``phi`` lies below ``p``.
    """
    phi = P.check_subset(phi)
    j = P.index(p)
    heights = [P._longest[P.index(q)][j] for q in phi if j in P._up[P.index(q)]]
    if not heights:
        raise PosetError(f"no member of the subset lies below {p!r}")
    return max(heights)


@dataclass(frozen=True)
class StructureReport:
    poset_height: int
    is_local: bool
    is_catenary: bool
    is_graded_below: bool
    minimal: frozenset
    maximal: frozenset
    assh: frozenset

    def as_dict(self, P: SpectralPoset) -> dict:
        return {
            "poset_height": self.poset_height,
            "is_local": self.is_local,
            "is_catenary": self.is_catenary,
            "is_graded_below": self.is_graded_below,
            "minimal": P.sorted(self.minimal),
            "maximal": P.sorted(self.maximal),
            "assh": P.sorted(self.assh),
        }


def is_catenary(P: SpectralPoset) -> bool:
    n = len(P)
    return all(P._longest[i][j] == P._shortest[i][j] for i in range(n) for j in P._up[i])


def is_graded_below(P: SpectralPoset) -> bool:
    """Every maximal chain from a minimal element up to ``p`` has the same length.

    Poset stand-in for local equidimensionality; see the README.
    """
    mins = [P.index(m) for m in P.minimal]
    for j in range(len(P)):
        roots = [i for i in mins if j in P._up[i]]
        if min(P._shortest[i][j] for i in roots) != max(P._longest[i][j] for i in roots):
            return False
    return True


def structure_report(P: SpectralPoset) -> StructureReport:
    d = P.poset_height
    minimal = P.minimal
    return StructureReport(
        poset_height=d,
        is_local=len(P.maximal) == 1,
        is_catenary=is_catenary(P),
        is_graded_below=is_graded_below(P),
        minimal=minimal,
        maximal=P.maximal,
        assh=frozenset(p for p in minimal if P.coheight(p) == d),
    )


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(P: SpectralPoset, annotations=None) -> str:
    """Render the Hasse diagram as DOT, minimal elements at the bottom.

    ``annotations`` is an optional function on ``P`` (anything with a
    ``poset`` attribute and item access); its values become node labels.
    """
    if annotations is not None and annotations.poset != P:
        raise PosetError("annotation is defined on a different poset")
    lines = [f"digraph {_dot_id(P.name or 'poset')} {{", "  rankdir=BT;"]
    for e in P.elements:
        label = e if annotations is None else f"{e}:{format_depth(annotations[e])}"
        lines.append(f"  {_dot_id(e)} [label={_dot_id(label)}];")
    by_height: dict[int, list[str]] = {}
    for e in P.elements:
        by_height.setdefault(P.height(e), []).append(e)
    for h in sorted(by_height):
        members = "; ".join(_dot_id(e) for e in by_height[h])
        lines.append(f"  {{ rank=same; {members}; }}")
    for lo, hi in P.covers:
        lines.append(f"  {_dot_id(lo)} -> {_dot_id(hi)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
