"""Classifiers for Serre, torsion-free and KE-closed subcategories.

Level 0, 1 and 2 classifiers are the 0-, 1- and 2-Bass functions on the
poset. This module enumerates them, canonicalizes arbitrary functions with
values in {0, 1, 2, inf} to the classifier cutting out the same
subcategory, and runs the consistency checks tying the three levels to
subsets, specialization-closed subsets and Bass sequences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Any

from .depth import INF
from .functions import (
    BassError,
    BassFunction,
    SpecFunction,
    as_bass,
    enumerate_n_bass,
    f_of_subset,
    g_of_assh_subset,
    subset_of_one_bass,
)
from .poset import PosetError, SpectralPoset, is_specialization_closed, structure_report, up_closure
from .profiles import S2, WitnessGenerator, condition_f_failure, witness_family
from .sequences import BassSequence, fct_from_seq, seq_from_fct, validate_sequence

__all__ = [
    "ClassificationError",
    "Classifier",
    "ClassificationTable",
    "LEVEL_NAMES",
    "enumerate_classifiers",
    "classification_table",
    "canonicalize",
    "meet",
    "classify_top_dimension",
    "ke_equals_torf",
    "CheckResult",
    "DiagramReport",
    "diagram_check",
]

LEVEL_NAMES = {0: "Serre", 1: "torsion-free", 2: "KE-closed"}

CANONICAL_VALUES = (0, 1, 2, INF)


class ClassificationError(RuntimeError):
    """A structural statement that must hold on the input failed."""


@dataclass(frozen=True)
class Classifier:
    function: BassFunction
    sequence: BassSequence
    subset: frozenset | None = None

    def as_dict(self) -> dict:
        from .io import function_to_json

        P = self.function.poset
        out = {
            "values": function_to_json(self.function)["values"],
            "level": self.function.level,
            "sequence": self.sequence.as_lists(),
        }
        if self.subset is not None:
            out["subset"] = P.sorted(self.subset)
        return out


def _check_level(level):
    if level not in LEVEL_NAMES:
        raise ValueError(f"classifier level must be 0, 1 or 2, got {level!r}")


def enumerate_classifiers(P: SpectralPoset, level: int) -> list[Classifier]:
    """Every level-``level`` classifier with its Bass sequence.

    At levels 0 and 1 the subset form is attached as well: the domain
    (a specialization-closed subset) at level 0, the zero locus at level 1.
    """
    _check_level(level)
    out = []
    for f in enumerate_n_bass(P, level):
        subset = None
        if level == 0:
            subset = f.dom
        elif level == 1:
            subset = subset_of_one_bass(f)
        out.append(Classifier(f, seq_from_fct(f), subset))
    return out


@dataclass(frozen=True)
class ClassificationTable:
    poset: SpectralPoset
    levels: dict
    ke_equals_torf: bool

    @property
    def counts(self) -> dict:
        return {lv: len(fs) for lv, fs in self.levels.items()}

    def format(self) -> str:
        """Aligned text columns: level, row name, count, delta to the level below."""
        rows = [("level", "class", "count", "delta")]
        prev = None
        for lv in sorted(self.levels):
            n = len(self.levels[lv])
            rows.append((str(lv), LEVEL_NAMES[lv], str(n), "-" if prev is None else str(n - prev)))
            prev = n
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        lines = ["  ".join(c.ljust(w) if i == 1 else c.rjust(w) for i, (c, w) in enumerate(zip(r, widths))) for r in rows]
        lines.append(f"ke_equals_torf: {str(self.ke_equals_torf).lower()}")
        return "\n".join(line.rstrip() for line in lines) + "\n"

    def as_dict(self) -> dict:
        return {
            "poset": self.poset.name,
            "counts": {str(lv): n for lv, n in self.counts.items()},
            "ke_equals_torf": self.ke_equals_torf,
            "levels": {str(lv): [c.as_dict() for c in cs] for lv, cs in self.levels.items()},
        }


def classification_table(P: SpectralPoset) -> ClassificationTable:
    levels = {lv: enumerate_classifiers(P, lv) for lv in (0, 1, 2)}
    funcs = {lv: {c.function for c in cs} for lv, cs in levels.items()}
    if not (funcs[0] <= funcs[1] <= funcs[2]):
        raise ClassificationError("classifier levels are not nested")
    return ClassificationTable(P, levels, funcs[1] == funcs[2])


# -- canonicalization ---------------------------------------------------------


def _check_canonical_input(h: SpecFunction):
    bad = [e for e, v in h.items() if v not in CANONICAL_VALUES]
    if bad:
        raise ValueError(f"values must lie in {{0, 1, 2, inf}}; offending elements {bad!r}")


def _propagate(h: SpecFunction) -> BassFunction:
    """Least 2-Bass function above ``h`` by raising values to a fixed point.

    Each rule only raises values that every 2-Bass function above the
    current one must also have raised:
    an element outside the domain pushes everything below it out (B1);
    a minimal domain element with a nonzero value leaves the domain (B2);
    a cover ``p < q`` with ``g(q) > g(p) + 1`` lifts ``g(p)`` to ``g(q) - 1`` (B3).
    """
    P = h.poset
    g = dict(h.items())
    changed = True
    while changed:
        changed = False
        for e in P.elements:
            if g[e] == INF:
                for q in P.below(e):
                    if g[q] != INF:
                        g[q] = INF
                        changed = True
        for e in P.elements:
            if g[e] not in (0, INF) and all(g[q] == INF for q in P.below(e) if q != e):
                g[e] = INF
                changed = True
        for p, q in P.covers:
            if g[p] != INF and g[q] != INF and g[q] > g[p] + 1:
                g[p] = g[q] - 1
                changed = True
    return BassFunction(P, g)


def _brute(h: SpecFunction) -> BassFunction:
    above = [g for g in enumerate_n_bass(h.poset, 2) if g >= h]
    return BassFunction(h.poset, [min(vs) for vs in zip(*(g.values for g in above))])


@lru_cache(maxsize=64)
def _cached_family(P: SpectralPoset, gen: WitnessGenerator) -> tuple:
    return tuple(witness_family(P, gen))


def _by_witnesses(h: SpecFunction, gen: WitnessGenerator) -> BassFunction:
    P = h.poset
    family = [w for w in _cached_family(P, gen) if w >= h]
    return BassFunction(P, [min(vs) for vs in zip(*(w.values for w in family))])


def canonicalize(h: SpecFunction, mode: str = "brute", gen: WitnessGenerator = S2) -> BassFunction:
    """The classifier cutting out the same subcategory as ``h``.

    ``h`` takes values in {0, 1, 2, inf}. Modes:

    ``brute``
        pointwise minimum of all 2-Bass functions ``>= h``.
    ``witness``
        pointwise minimum of all generator witnesses ``>= h``; this is the
        depth function of the subcategory when the witnesses exhaust it.
    ``propagate``
        fixed-point propagation of (B1)-(B3); same result as ``brute``.
    """
    _check_canonical_input(h)
    if mode == "brute":
        return _brute(h)
    if mode == "witness":
        return _by_witnesses(h, gen)
    if mode == "propagate":
        return _propagate(h)
    raise ValueError(f"unknown canonicalization mode {mode!r}")


def meet(f: SpecFunction, g: SpecFunction, gen: WitnessGenerator = S2, mode: str = "propagate") -> BassFunction:
    """Classifier of the intersection of the subcategories cut out by ``f`` and ``g``."""
    f._same_poset(g)
    for x in (f, g):
        if as_bass(x).level > 2:
            raise BassError(f"meet needs 2-Bass functions, got level {x.max_finite}")
    top = SpecFunction(f.poset, [max(a, b) for a, b in zip(f.values, g.values)])
    return canonicalize(top, mode, gen)


# -- top dimension ------------------------------------------------------------


def classify_top_dimension(P: SpectralPoset) -> list[tuple[frozenset, BassFunction]]:
    """Pair each d-Bass, non-(d-1)-Bass function with ``dom(f) & assh``.

    ``d`` is the poset height. The map is checked to be injective; on
    catenary posets it is also checked to hit every nonempty subset of
    assh, with inverse :func:`g_of_assh_subset`. Output is in canonical
    function order.
    """
    report = structure_report(P)
    if not report.is_local:
        raise PosetError("top-dimension classification needs a unique maximal element")
    d = report.poset_height
    if d < 1:
        raise ValueError("top-dimension classification needs poset height at least 1")
    top = [f for f in enumerate_n_bass(P, d) if f.level == d]
    pairs = [(f.dom & report.assh, f) for f in top]
    keys = [k for k, _ in pairs]
    if len(set(keys)) != len(keys):
        raise ClassificationError("f -> dom(f) & assh is not injective")
    if any(not k for k in keys):
        raise ClassificationError("a top-dimensional function misses assh entirely")
    if report.is_catenary:
        expected = {frozenset(c) for r in range(1, len(report.assh) + 1) for c in combinations(report.assh, r)}
        if set(keys) != expected:
            raise ClassificationError("f -> dom(f) & assh is not onto the nonempty subsets of assh")
        for k, f in pairs:
            if g_of_assh_subset(P, k) != f:
                raise ClassificationError(f"g_of_assh_subset does not invert at {P.sorted(k)!r}")
    return pairs


def ke_equals_torf(P: SpectralPoset) -> bool:
    """Whether every level-2 classifier is already a level-1 classifier."""
    return set(enumerate_n_bass(P, 1)) == set(enumerate_n_bass(P, 2))


# -- diagram check ------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    witnesses: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "witnesses": self.witnesses}


@dataclass
class DiagramReport:
    poset: str
    catenary: bool
    generator: str
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict[str, Any]:
        return {
            "poset": self.poset,
            "catenary": self.catenary,
            "generator": self.generator,
            "pass": self.passed,
            "checks": [c.as_dict() for c in self.checks],
        }


def _fn(f) -> dict:
    from .io import function_to_json

    return function_to_json(f)["values"]


def _all_subsets(P):
    elems = P.elements
    for r in range(len(elems) + 1):
        for c in combinations(elems, r):
            yield frozenset(c)


def diagram_check(P: SpectralPoset, gen: WitnessGenerator = S2) -> DiagramReport:
    """Verify the correspondences between the three classifier levels on ``P``.

    Checks, in report order:

    a. level-0 functions <-> specialization-closed subsets via the domain;
    b. level-1 functions <-> all subsets via ``f_of_subset``, agreeing with
       (a) on specialization-closed subsets;
    c. the inclusions Bass_0 <= Bass_1 <= Bass_2;
    d. function <-> sequence round trips at every level;
    e. torsion-free classifiers <-> pairs ``(phi, up(phi))``;
    f. every level-2 classifier is realized by generator witnesses.

    Failures are recorded with witnesses rather than raised.
    """
    bass = {lv: enumerate_n_bass(P, lv) for lv in (0, 1, 2)}
    subsets = list(_all_subsets(P))
    checks = []

    closed = [s for s in subsets if is_specialization_closed(P, s)]
    bad = []
    doms = {f.dom for f in bass[0]}
    if len(doms) != len(bass[0]):
        bad.append({"issue": "two level-0 functions share a domain"})
    for s in closed:
        if s not in doms:
            bad.append({"issue": "specialization-closed subset without a function", "subset": P.sorted(s)})
    for f in bass[0]:
        if not is_specialization_closed(P, f.dom):
            bad.append({"issue": "domain not specialization-closed", "function": _fn(f)})
    checks.append(CheckResult("a_serre_subsets", not bad, bad))

    bad = []
    images = {}
    for s in subsets:
        f = f_of_subset(P, s)
        images[s] = f
        if subset_of_one_bass(f) != s:
            bad.append({"issue": "subset does not round trip", "subset": P.sorted(s)})
    if set(images.values()) != set(bass[1]):
        bad.append({"issue": "f_of_subset is not onto the level-1 functions"})
    for s in closed:
        # a specialization-closed subset embeds at level 0 as the function 0 on s
        f0 = next(f for f in bass[0] if f.dom == s)
        if f_of_subset(P, s) != f0:
            bad.append({"issue": "level-0 embedding does not commute", "subset": P.sorted(s)})
    checks.append(CheckResult("b_torf_subsets", not bad, bad))

    sets = {lv: set(fs) for lv, fs in bass.items()}
    bad = []
    for lo in (0, 1):
        for f in bass[lo]:
            if f not in sets[lo + 1]:
                bad.append({"issue": f"level-{lo} function missing at level {lo + 1}", "function": _fn(f)})
    checks.append(CheckResult("c_inclusions", not bad, bad))

    bad = []
    for lv, fs in bass.items():
        for f in fs:
            s = seq_from_fct(f)
            if fct_from_seq(s) != f:
                bad.append({"issue": "fct(seq(f)) != f", "level": lv, "function": _fn(f)})
            if _seq_level(s) > lv:
                bad.append({"issue": "sequence level too high", "level": lv, "function": _fn(f)})
    checks.append(CheckResult("d_sequence_round_trip", not bad, bad))

    bad = []
    for f in bass[1]:
        phi = subset_of_one_bass(f)
        s = seq_from_fct(f)
        if (s[0], s[1]) != (phi, up_closure(P, phi)):
            bad.append({"issue": "torsion-free classifier is not (phi, up(phi))", "function": _fn(f)})
    checks.append(CheckResult("e_torf_pairs", not bad, bad))

    bad = []
    for f in bass[2]:
        failure = condition_f_failure(f, gen)
        if failure is not None:
            bad.append({"function": _fn(f), "element": failure[0], "reason": failure[1]})
    checks.append(CheckResult("f_condition_F", not bad, bad))

    return DiagramReport(P.name, structure_report(P).is_catenary, gen.kind, checks)


def _seq_level(s: BassSequence) -> int:
    report = validate_sequence(s)
    if not report.ok:
        raise BassError("invalid sequence", report)
    return report.level
