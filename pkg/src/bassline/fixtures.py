"""Small named posets and an exhaustive generator of all small posets."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from string import ascii_lowercase

from .poset import SpectralPoset


def chain(n: int, names: str = ascii_lowercase) -> SpectralPoset:
    """The chain with ``n`` elements, ``a < b < ...``."""
    els = list(names[:n])
    return SpectralPoset(els, list(zip(els, els[1:])), name=f"C{n}")


def antichain(n: int) -> SpectralPoset:
    return SpectralPoset(list(ascii_lowercase[:n]), [], name=f"A{n}")


def point() -> SpectralPoset:
    return SpectralPoset(["pt"], [], name="point")


def v_poset() -> SpectralPoset:
    """Spectrum shape of k[[x,y,z]]/(xy,xz).

    ``p`` = (x) sits under a height-one prime ``r`` inside V(x); ``q`` = (y,z)
    lies directly under the maximal ideal ``m``.
    """
    return SpectralPoset(["p", "q", "r", "m"], [("p", "r"), ("r", "m"), ("q", "m")], name="V")


def diamond() -> SpectralPoset:
    """Two height-one primes between a generic point and the maximal ideal."""
    return SpectralPoset(["0", "p1", "p2", "m"], [("0", "p1"), ("0", "p2"), ("p1", "m"), ("p2", "m")], name="D")


def assh_fan(k: int) -> SpectralPoset:
    """``k`` chains ``a_i < b_i`` glued at a common top: local, catenary, height 2, |assh| = k."""
    els, covers = [], []
    for i in range(1, k + 1):
        els += [f"a{i}", f"b{i}"]
        covers += [(f"a{i}", f"b{i}"), (f"b{i}", "m")]
    return SpectralPoset(els + ["m"], covers, name=f"fan{k}")


def non_catenary() -> SpectralPoset:
    """Local, two maximal chains of lengths 3 and 2 from the same bottom."""
    return SpectralPoset(
        ["o", "x", "y", "w", "m"],
        [("o", "x"), ("x", "y"), ("y", "m"), ("o", "w"), ("w", "m")],
        name="NC",
    )


def ungraded() -> SpectralPoset:
    """``x < v < z``, ``y < z``, ``y < w``: the height function breaks (B3) at ``y < z``."""
    return SpectralPoset(
        ["x", "y", "v", "z", "w"],
        [("x", "v"), ("v", "z"), ("y", "z"), ("y", "w")],
        name="U",
    )


def named() -> dict[str, SpectralPoset]:
    return {
        P.name: P
        for P in [
            point(),
            chain(2),
            chain(3),
            chain(4),
            antichain(2),
            v_poset(),
            diamond(),
            assh_fan(1),
            assh_fan(2),
            assh_fan(3),
            non_catenary(),
            ungraded(),
        ]
    }


@lru_cache(maxsize=None)
def all_posets(n: int) -> tuple[SpectralPoset, ...]:
    """One representative of each isomorphism class of posets on ``n`` elements.

    Every poset has a natural labeling, so it suffices to scan transitive
    relations contained in ``{(i, j) : i < j}`` and keep one per class.
    """
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    perms = list(permutations(range(n)))
    seen = set()
    out = []
    for mask in range(1 << len(pairs)):
        rel = {pairs[k] for k in range(len(pairs)) if mask >> k & 1}
        if any((i, j) in rel and (j, k) in rel and (i, k) not in rel for i in range(n) for j in range(n) for k in range(n)):
            continue
        canon = min(tuple(sorted((s[i], s[j]) for i, j in rel)) for s in perms)
        if canon in seen:
            continue
        seen.add(canon)
        names = ascii_lowercase[:n]
        covers = [
            (names[i], names[j])
            for i, j in sorted(rel)
            if not any((i, k) in rel and (k, j) in rel for k in range(n))
        ]
        out.append(SpectralPoset(list(names), covers, name=f"P{n}_{len(out)}"))
    return tuple(out)


def posets_up_to(n: int) -> list[SpectralPoset]:
    return [P for k in range(1, n + 1) for P in all_posets(k)]
