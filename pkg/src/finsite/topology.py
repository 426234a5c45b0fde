"""Cover rules and Grothendieck topologies on a finite category.

A cover rule assigns to each object x a set of sieves on x (the covers).
"Topology" status is a certificate: check_axioms verifies the maximal-sieve
axiom, stability under pullback, and transitivity, and reports witnesses for
every failure. Rules and topologies are the same data.

On a finite category every topology's covers at x are closed under finite
intersection and inclusion, hence form the up-set of a unique minimum sieve.
Enumeration exploits that: candidates are choices of one minimum sieve per
object, and every emitted candidate is re-verified with check_axioms.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    NotAnIdeal,
    NotDirectedEI,
    NotRigid,
    OreConditionFails,
    SizeBudgetExceeded,
    UnknownObject,
)
from .fincat import (
    CategoryFlags,
    Embedding,
    FiniteCategory,
    OrbitData,
    classify_category,
    full_subcategory,
    leq_order,
    objects_in_decreasing_order,
)
from .sieves import (
    Sieve,
    all_sieves,
    empty_sieve,
    intersect_sieves,
    make_sieve,
    maximal_sieve,
    pullback_sieve,
    sieve_sort_key,
)

DEFAULT_ENUM_BUDGET = 200_000


@dataclass(frozen=True)
class GrothendieckTopology:
    """A cover rule; certified as a topology only by check_axioms."""

    cat: FiniteCategory
    covers: Mapping[str, frozenset[Sieve]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrothendieckTopology):
            return NotImplemented
        return self.cat == other.cat and dict(self.covers) == dict(other.covers)

    __hash__ = None

    def covers_at(self, x: str) -> list[Sieve]:
        if x not in self.covers:
            raise UnknownObject(x)
        return sorted(self.covers[x], key=sieve_sort_key)

    def total_cover_count(self) -> int:
        return sum(len(v) for v in self.covers.values())


def make_rule(cat: FiniteCategory,
              covers: Mapping[str, Iterable[Sieve]]) -> GrothendieckTopology:
    full = {}
    for x in cat.objects:
        full[x] = frozenset(covers.get(x, ()))
        for s in full[x]:
            if s.base != x:
                raise UnknownObject(f"sieve on {s.base} filed under {x}")
    return GrothendieckTopology(cat=cat, covers=full)


def topology_to_doc(j: GrothendieckTopology) -> dict:
    return {
        "category_ref": j.cat.name,
        "covers": {x: [list(s.members) for s in j.covers_at(x)]
                   for x in j.cat.objects},
    }


def topology_from_doc(cat: FiniteCategory, doc: Mapping) -> GrothendieckTopology:
    covers = {}
    for x, sieve_lists in doc["covers"].items():
        covers[str(x)] = [make_sieve(cat, str(x), [str(m) for m in mem])
                          for mem in sieve_lists]
    return make_rule(cat, covers)


def canonical_serialization(j: GrothendieckTopology) -> str:
    return json.dumps(topology_to_doc(j)["covers"], sort_keys=True,
                      separators=(",", ":"))


def topology_sort_key(j: GrothendieckTopology):
    return (j.total_cover_count(), canonical_serialization(j))


# ---------------------------------------------------------------------------
# axioms

@dataclass(frozen=True)
class AxiomReport:
    maximal_ok: bool
    stability_ok: bool
    transitivity_ok: bool
    # derived closure diagnostics (consequences for genuine topologies)
    inclusion_closed: bool
    intersection_closed: bool
    witnesses: Mapping[str, tuple] = field(default_factory=dict)

    @property
    def is_topology(self) -> bool:
        return self.maximal_ok and self.stability_ok and self.transitivity_ok


def check_axioms(cat: FiniteCategory, j: GrothendieckTopology,
                 max_sieves: int = 4096) -> AxiomReport:
    """Verify the three covering axioms directly, with witnesses.

    maximal: the maximal sieve on x covers x. stability: covers pull back to
    covers along every morphism. transitivity: a sieve all of whose pullbacks
    along some cover are covers is itself a cover. Also reports the two
    derived closure properties (inclusion, pairwise intersection).
    Transitivity witnesses are collected exhaustively: every pair (S, T) with
    S a cover forcing the non-cover T is recorded.
    """
    witnesses: dict[str, tuple] = {}
    maximal_bad = []
    stability_bad = []
    transitivity_bad = []
    inclusion_bad = []
    intersection_bad = []
    universe = {x: all_sieves(cat, x, max_sieves) for x in cat.objects}

    for x in cat.objects:
        jx = set(j.covers.get(x, frozenset()))
        if maximal_sieve(cat, x) not in jx:
            maximal_bad.append((x,))
        for s in sorted(jx, key=sieve_sort_key):
            # stability quantifies over every morphism out of x, not only
            # members of s (a member's pullback is always the maximal sieve)
            for f in cat.morphisms_from(x):
                pb = pullback_sieve(cat, s, f)
                if pb not in j.covers.get(cat.cod[f], frozenset()):
                    stability_bad.append((x, s.members, f))
        for t in universe[x]:
            if t in jx:
                continue
            for s in sorted(jx, key=sieve_sort_key):
                if all(pullback_sieve(cat, t, f) in j.covers.get(cat.cod[f], frozenset())
                       for f in s.members):
                    transitivity_bad.append((x, s.members, t.members))
        for s in sorted(jx, key=sieve_sort_key):
            for t in universe[x]:
                if s.member_set <= t.member_set and t not in jx:
                    inclusion_bad.append((x, s.members, t.members))
        for s, t in itertools.combinations(sorted(jx, key=sieve_sort_key), 2):
            if intersect_sieves(s, t) not in jx:
                intersection_bad.append((x, s.members, t.members))

    if maximal_bad:
        witnesses["maximal"] = tuple(maximal_bad)
    if stability_bad:
        witnesses["stability"] = tuple(stability_bad)
    if transitivity_bad:
        witnesses["transitivity"] = tuple(transitivity_bad)
    if inclusion_bad:
        witnesses["inclusion"] = tuple(inclusion_bad)
    if intersection_bad:
        witnesses["intersection"] = tuple(intersection_bad)
    return AxiomReport(
        maximal_ok=not maximal_bad,
        stability_ok=not stability_bad,
        transitivity_ok=not transitivity_bad,
        inclusion_closed=not inclusion_bad,
        intersection_closed=not intersection_bad,
        witnesses=witnesses,
    )


def check_stability_only(cat: FiniteCategory,
                         j: GrothendieckTopology) -> tuple | None:
    """First stability violation (x, sieve members, f), or None."""
    for x in cat.objects:
        for s in sorted(j.covers.get(x, frozenset()), key=sieve_sort_key):
            for f in cat.morphisms_from(x):
                if pullback_sieve(cat, s, f) not in j.covers.get(cat.cod[f], frozenset()):
                    return (x, s.members, f)
    return None


# ---------------------------------------------------------------------------
# named topologies

def named_topology(cat: FiniteCategory, kind: str) -> GrothendieckTopology:
    """trivial, maximal, dense, or atomic (atomic needs the cospan
    completion property and raises OreConditionFails otherwise)."""
    if kind == "trivial":
        return make_rule(cat, {x: [maximal_sieve(cat, x)] for x in cat.objects})
    if kind == "maximal":
        return make_rule(cat, {x: all_sieves(cat, x) for x in cat.objects})
    if kind == "dense":
        covers = {}
        for x in cat.objects:
            dense_at_x = []
            for s in all_sieves(cat, x):
                mset = s.member_set
                if all(any(cat.compose(g, f) in mset
                           for g in cat.morphisms_from(cat.cod[f]))
                       for f in cat.morphisms_from(x)):
                    dense_at_x.append(s)
            covers[x] = dense_at_x
        return make_rule(cat, covers)
    if kind == "atomic":
        flags = classify_category(cat)
        if not flags.ore:
            raise OreConditionFails(
                "atomic topology needs every cospan to complete to a square")
        return make_rule(cat, {x: [s for s in all_sieves(cat, x) if s.members]
                               for x in cat.objects})
    raise ValueError(f"unknown named topology {kind!r}")


# ---------------------------------------------------------------------------
# enumeration

def _upset(universe: Sequence[Sieve], s_min: Sieve) -> list[Sieve]:
    base = s_min.member_set
    return [t for t in universe if base <= t.member_set]


def enumerate_topologies(cat: FiniteCategory,
                         budget: int = DEFAULT_ENUM_BUDGET,
                         max_sieves: int = 4096) -> list[GrothendieckTopology]:
    """All Grothendieck topologies, sorted by total cover count then by
    canonical serialization.

    Candidates are up-sets of one chosen minimum sieve per object (complete
    by the closure properties of covers on a finite category); each candidate
    is re-verified with check_axioms before being emitted, so correctness
    never rests on the pruning.
    """
    universe = {x: all_sieves(cat, x, max_sieves) for x in cat.objects}
    total = 1
    for x in cat.objects:
        total *= len(universe[x])
        if total > budget:
            raise SizeBudgetExceeded(
                f"{total}+ candidate rules exceeds budget {budget}")
    found = []
    for choice in itertools.product(*(universe[x] for x in cat.objects)):
        rule = make_rule(cat, {x: _upset(universe[x], s)
                               for x, s in zip(cat.objects, choice)})
        if check_axioms(cat, rule, max_sieves).is_topology:
            found.append(rule)
    found.sort(key=topology_sort_key)
    return found


def enumerate_consistent_families(cat: FiniteCategory,
                                  max_sieves: int = 4096
                                  ) -> list[GrothendieckTopology]:
    """Topologies on a directed EI category via consistent minimum-sieve
    families: processing objects from the top of the order downward, the
    minimum sieve at x is either the maximal sieve or the set of morphisms
    that factor through the minimum sieve of some strictly higher object.
    Raises NotDirectedEI when the category is not directed EI.
    """
    flags = classify_category(cat)
    if not (flags.directed and flags.ei):
        raise NotDirectedEI(f"{cat.name} is not directed EI")
    universe = {x: all_sieves(cat, x, max_sieves) for x in cat.objects}
    order = objects_in_decreasing_order(cat)
    leq = leq_order(cat)

    families: list[dict[str, Sieve]] = [{}]
    for x in order:
        extended = []
        for fam in families:
            higher_union: set[str] = set()
            for y in leq[x]:
                if y == x:
                    continue
                sy = fam[y].member_set
                for f in cat.hom(x, y):
                    for g in sorted(sy):
                        higher_union.add(cat.compose(g, f))
            induced = Sieve(x, tuple(sorted(higher_union)))
            choices = [maximal_sieve(cat, x)]
            if induced != choices[0]:
                choices.append(induced)
            for choice in choices:
                fam2 = dict(fam)
                fam2[x] = choice
                extended.append(fam2)
        families = extended

    out = []
    for fam in families:
        out.append(make_rule(cat, {x: _upset(universe[x], fam[x])
                                   for x in cat.objects}))
    out.sort(key=topology_sort_key)
    return out


# ---------------------------------------------------------------------------
# irreducibles, rigidity, restriction

def irreducible_objects(cat: FiniteCategory, j: GrothendieckTopology) -> list[str]:
    """Objects whose only cover is the maximal sieve."""
    return [x for x in cat.objects
            if j.covers.get(x) == frozenset({maximal_sieve(cat, x)})]


@dataclass(frozen=True)
class RigidityReport:
    rigid: bool
    irreducibles: tuple[str, ...]
    # members generated by morphisms into irreducible objects, per object
    irreducible_sieves: Mapping[str, Sieve]
    minimal_covers: Mapping[str, Sieve] | None
    failures: tuple = ()


def minimal_covering_sieve(cat: FiniteCategory, j: GrothendieckTopology,
                           x: str) -> Sieve:
    """Intersection of all covers of x; for a verified topology on a finite
    category this is itself a cover (finite intersection closure)."""
    covers = j.covers_at(x)
    if not covers:
        raise UnknownObject(f"no covers recorded at {x}")
    out = covers[0]
    for s in covers[1:]:
        out = intersect_sieves(out, s)
    return out


def rigidity(cat: FiniteCategory, j: GrothendieckTopology) -> RigidityReport:
    """A topology is rigid when, for every object y, the sieve generated by
    all morphisms from y to irreducible objects is itself a cover of y.
    When rigid, the minimal cover of each object is reported as well.
    """
    irr = irreducible_objects(cat, j)
    irr_set = set(irr)
    gen_sieves: dict[str, Sieve] = {}
    failures = []
    for y in cat.objects:
        gens = [f for f in cat.morphisms_from(y) if cat.cod[f] in irr_set]
        members: set[str] = set()
        for f in gens:
            members.add(f)
        # close under postcomposition
        frontier = list(members)
        while frontier:
            f = frontier.pop()
            for g in cat.morphisms_from(cat.cod[f]):
                gf = cat.compose(g, f)
                if gf not in members:
                    members.add(gf)
                    frontier.append(gf)
        s = Sieve(y, tuple(sorted(members)))
        gen_sieves[y] = s
        if s not in j.covers.get(y, frozenset()):
            failures.append((y, s.members))
    rigid = not failures
    minimal = None
    if rigid:
        minimal = {x: minimal_covering_sieve(cat, j, x) for x in cat.objects}
    return RigidityReport(rigid=rigid, irreducibles=tuple(irr),
                          irreducible_sieves=gen_sieves,
                          minimal_covers=minimal, failures=tuple(failures))


def restrict_to_ideal(cat: FiniteCategory, j: GrothendieckTopology,
                      ideal_objs: Iterable[str],
                      ) -> tuple[FiniteCategory, Embedding, GrothendieckTopology]:
    """Restrict a topology to an ideal (an upward closed object set: every
    morphism out of the ideal stays in it). Covers restrict memberwise; for
    an ideal the member sets are unchanged because every morphism out of an
    ideal object already lands in the ideal.
    """
    ideal = list(dict.fromkeys(ideal_objs))
    ideal_set = set(ideal)
    for x in ideal:
        if x not in cat.identity:
            raise UnknownObject(x)
        for f in cat.morphisms_from(x):
            if cat.cod[f] not in ideal_set:
                raise NotAnIdeal(f"{x} maps to {cat.cod[f]} outside the ideal")
    sub, emb = full_subcategory(cat, ideal)
    sub_mors = set(sub.morphisms)
    covers = {}
    for x in ideal:
        covers[x] = [Sieve(x, tuple(m for m in s.members if m in sub_mors))
                     for s in j.covers_at(x)]
    return sub, emb, make_rule(sub, covers)


# ---------------------------------------------------------------------------
# smallest topology containing a rule; sipp topology on orbit categories

def saturate_rule(cat: FiniteCategory, j: GrothendieckTopology,
                  max_sieves: int = 4096,
                  max_rounds: int = 10_000) -> GrothendieckTopology:
    """Smallest topology containing the rule: iterate closure under the
    maximal-sieve axiom, stability, and transitivity to a fixpoint. Each
    added sieve is forced in any topology containing the rule, so the
    fixpoint is the least one.
    """
    universe = {x: all_sieves(cat, x, max_sieves) for x in cat.objects}
    covers = {x: set(j.covers.get(x, frozenset())) for x in cat.objects}
    for x in cat.objects:
        covers[x].add(maximal_sieve(cat, x))
    for _ in range(max_rounds):
        changed = False
        for x in cat.objects:
            for s in list(covers[x]):
                for f in cat.morphisms_from(x):
                    pb = pullback_sieve(cat, s, f)
                    if pb not in covers[cat.cod[f]]:
                        covers[cat.cod[f]].add(pb)
                        changed = True
            for t in universe[x]:
                if t in covers[x]:
                    continue
                if any(all(pullback_sieve(cat, t, f) in covers[cat.cod[f]]
                           for f in s.members)
                       for s in covers[x]):
                    covers[x].add(t)
                    changed = True
        if not changed:
            return make_rule(cat, covers)
    raise SizeBudgetExceeded("rule saturation did not stabilize")


def sipp_topology(orbit_cat: FiniteCategory, orbit_data: OrbitData,
                  p: int) -> GrothendieckTopology:
    """Topology on an orbit category generated by coverings that contain a
    morphism of index prime to p (the index of a stored arrow G/H -> G/K is
    |H| / |K|). Built by saturating the generated rule under the axioms;
    an object G/H ends up irreducible exactly when H is a p-group.
    """
    def index_of(f: str) -> int:
        return (orbit_data.order_of[orbit_cat.dom[f]]
                // orbit_data.order_of[orbit_cat.cod[f]])

    covers: dict[str, list[Sieve]] = {}
    for x in orbit_cat.objects:
        covers[x] = [s for s in all_sieves(orbit_cat, x)
                     if any(index_of(f) % p != 0 for f in s.members)]
    return saturate_rule(orbit_cat, make_rule(orbit_cat, covers))
