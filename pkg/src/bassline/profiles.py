"""Abstract modules as depth profiles, and witness constructions.

A :class:`DepthProfile` stands in for a finitely generated module: its
value at ``p`` is (a lower bound for) the depth of the localization at
``p``, and its domain is the support. Profiles are always Bass functions.

Values stored above a deformation point are the guaranteed lower bounds
``min(2, depth)`` rather than exact depths. That is enough to decide
membership in any subcategory cut out by a function with values <= 2,
which is the only use made of them here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .depth import INF
from .functions import BassFunction, SpecFunction, as_bass, constant
from .poset import PosetError, SpectralPoset, rel_height_in_subset

__all__ = [
    "DepthProfile",
    "WitnessGenerator",
    "WitnessUnavailable",
    "S1",
    "S2",
    "direct_sum",
    "a_n_set",
    "member_of",
    "family_function",
    "s_witness",
    "deform_depth",
    "witness_family",
    "witness_for",
    "condition_f_failure",
    "check_condition_f",
]


class WitnessUnavailable(LookupError):
    """The generator cannot supply a witness with the requested value."""


class DepthProfile(BassFunction):
    """Depth profile of an abstract module; ``dom`` plays the role of the support."""

    __slots__ = ()

    @classmethod
    def of(cls, f: SpecFunction) -> "DepthProfile":
        return cls(f.poset, f.values)

    @property
    def support(self) -> frozenset[str]:
        return self.dom

    @property
    def ass(self) -> frozenset[str]:
        return self.sublevel(0)


def zero_profile(P: SpectralPoset) -> DepthProfile:
    return DepthProfile(P, [INF] * len(P))


def direct_sum(d1: DepthProfile, d2: DepthProfile) -> DepthProfile:
    d1._same_poset(d2)
    return DepthProfile(d1.poset, [min(a, b) for a, b in zip(d1.values, d2.values)])


def a_n_set(d: SpecFunction, n: int) -> frozenset[str]:
    """Elements where the depth is at most ``n``."""
    return d.sublevel(n)


def member_of(d: SpecFunction, f: SpecFunction) -> bool:
    """Whether the module modeled by ``d`` lies in the subcategory cut out by ``f``."""
    return d >= f


def family_function(ds: Sequence[SpecFunction], poset: SpectralPoset | None = None) -> BassFunction:
    """Pointwise infimum of a family; the empty family gives constant inf."""
    ds = list(ds)
    if not ds:
        if poset is None:
            raise ValueError("empty family needs an explicit poset")
        return as_bass(constant(poset))
    P = ds[0].poset
    if poset is not None and poset != P:
        raise PosetError("family lives on a different poset")
    for d in ds[1:]:
        d._same_poset(ds[0])
    return BassFunction(P, [min(vs) for vs in zip(*(d.values for d in ds))])


def s_witness(P: SpectralPoset, p0: str, level: int) -> DepthProfile:
    """Profile of a nonzero module over ``R/p0`` satisfying Serre's condition at ``level``.

    ``q -> min(level, rel_height(p0, q))`` above ``p0`` and inf elsewhere.
    """
    if level not in (1, 2):
        raise ValueError(f"witness level must be 1 or 2, got {level!r}")
    above = P.above(p0)
    return DepthProfile(P, [min(level, P.rel_height(p0, e)) if e in above else INF for e in P.elements])


def deform_depth(d: DepthProfile, p: str, k: int) -> DepthProfile:
    """Push the depth at ``p`` down to ``k`` (1 or 2), capping at 2 strictly above ``p``."""
    if k not in (1, 2):
        raise ValueError(f"deformation target must be 1 or 2, got {k!r}")
    P = d.poset
    if d[p] == INF:
        raise ValueError(f"{p!r} is outside the support")
    if d[p] < k:
        raise ValueError(f"depth at {p!r} is {d[p]}, below the target {k}")
    above = P.above(p)
    vals = []
    for e, v in d.items():
        if e == p:
            vals.append(k)
        elif e in above:
            vals.append(min(2, v))
        else:
            vals.append(v)
    return DepthProfile(P, vals)


@dataclass(frozen=True)
class WitnessGenerator:
    """Which modules are assumed available as witnesses.

    ``s1`` and ``s2`` supply, for every element ``p``, a nonzero module over
    ``R/p`` satisfying (S1) resp. (S2). ``custom`` supplies exactly the given
    profiles (plus the zero module and all their deformations).
    """

    kind: str = "s2"
    custom_profiles: tuple = ()

    def __post_init__(self):
        if self.kind not in ("s1", "s2", "custom"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind != "custom" and self.custom_profiles:
            raise ValueError("custom profiles only apply to the custom generator")
        object.__setattr__(self, "custom_profiles", tuple(DepthProfile.of(d) for d in self.custom_profiles))

    @property
    def level(self) -> int | None:
        return {"s1": 1, "s2": 2}.get(self.kind)

    def bases(self, P: SpectralPoset) -> list[DepthProfile]:
        if self.kind == "custom":
            for d in self.custom_profiles:
                if d.poset != P:
                    raise PosetError("custom profile lives on a different poset")
            return list(self.custom_profiles)
        return [s_witness(P, p0, self.level) for p0 in P.elements]


S1 = WitnessGenerator("s1")
S2 = WitnessGenerator("s2")


def witness_family(P: SpectralPoset, gen: WitnessGenerator = S2) -> list[DepthProfile]:
    """Zero module, the generator's bases, and their single-point deformations.

    Deduplicated, in the order generated (bases in element order, each
    followed by its deformations by target element then value).
    """
    out = [zero_profile(P)]
    seen = set(out)

    def add(d):
        if d not in seen:
            seen.add(d)
            out.append(d)

    for base in gen.bases(P):
        add(base)
        for p in P.elements:
            for k in (1, 2):
                if base[p] != INF and base[p] >= k:
                    add(deform_depth(base, p, k))
    return out


def witness_for(f: SpecFunction, p: str, gen: WitnessGenerator = S2) -> DepthProfile:
    """A profile ``E`` with ``E(p) == f(p)`` and ``E >= f`` everywhere.

    For the ``s1``/``s2`` generators this follows the explicit recipe:
    the zero module when ``f(p)`` is inf, the witness over ``R/p`` when it is
    0, and otherwise the witness over an element ``p0`` of the domain
    realizing the relative height of ``p``, deformed at ``p`` down to
    ``f(p)``. A ``custom`` generator is searched instead.

    Raises :class:`WitnessUnavailable` when ``f`` exceeds the generator's
    level or no witness exists.
    """
    f = as_bass(f)
    P = f.poset
    value = f[p]
    if gen.kind == "custom":
        for d in witness_family(P, gen):
            if d[p] == value and d >= f:
                return d
        raise WitnessUnavailable(f"no custom witness realizes {f!r} at {p!r}")
    if f.level > gen.level:
        raise WitnessUnavailable(f"function is {f.level}-Bass but the generator only reaches {gen.level}")
    if value == INF:
        return zero_profile(P)
    if value == 0:
        return s_witness(P, p, gen.level)
    dom = f.dom
    target = rel_height_in_subset(P, dom, p)
    p0 = next(q for q in P.elements if q in dom and P.leq(q, p) and P.rel_height(q, p) == target)
    return deform_depth(s_witness(P, p0, gen.level), p, value)


def condition_f_failure(f: SpecFunction, gen: WitnessGenerator = S2) -> tuple[str, str] | None:
    """First element where the witness construction breaks down, with a reason.

    ``None`` means every element has a witness and the witnesses' infimum
    reproduces ``f``.
    """
    f = as_bass(f)
    P = f.poset
    witnesses = []
    for p in P.elements:
        try:
            w = witness_for(f, p, gen)
        except WitnessUnavailable as exc:
            return p, str(exc)
        if w[p] != f[p] or not w >= f:
            return p, f"witness {w!r} does not realize {f!r}"
        witnesses.append(w)
    if family_function(witnesses, P) != f:
        return P.elements[0], "infimum of the witnesses differs from the function"
    return None


def check_condition_f(f: SpecFunction, gen: WitnessGenerator = S2) -> bool:
    """Whether ``f`` is realized pointwise by generator witnesses.

    A non-Bass ``f`` raises :class:`BassError`; an ``f`` whose values the
    generator cannot reach returns ``False``.
    """
    return condition_f_failure(f, gen) is None
