"""Finite categories as explicit composition tables.

A category here is a finite set of object ids, a finite set of morphism ids
with domain and codomain, an identity morphism per object, and a total
composition table for every composable pair. Composition is read right to
left: compose(g, f) is "g after f".

Convention used throughout the package: representations are covariant
functors on the stored category, and a sieve on an object x is a left ideal
of morphisms with domain x (closed under postcomposition). This inverts the
variance of many sheaf-theory texts, where sieves point into an object; in
particular the orbit-category builder stores the OPPOSITE of the usual orbit
category, so that a stored arrow out of G/H corresponds to an equivariant map
G/H' -> G/H. Document readers: an arrow of the stored orbit category from
G/H to G/K exists iff K is subconjugate to H.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from .errors import (
    BAD_COMPOSITE,
    DANGLING_ENDPOINT,
    DUPLICATE_ID,
    MISSING_COMPOSITE,
    MISSING_IDENTITY,
    NON_ASSOCIATIVE,
    CyclicQuiver,
    NotAGroupTable,
    NotAPoset,
    NotFullSubcategory,
    SizeBudgetExceeded,
    UnknownObject,
    ValidationFailed,
    Violation,
)

DEFAULT_MAX_OBJECTS = 64
DEFAULT_MAX_MORPHISMS = 4096


@dataclass(frozen=True)
class SizeBudget:
    max_objects: int = DEFAULT_MAX_OBJECTS
    max_morphisms: int = DEFAULT_MAX_MORPHISMS

    def check(self, n_objects: int, n_morphisms: int) -> None:
        if n_objects > self.max_objects:
            raise SizeBudgetExceeded(
                f"{n_objects} objects exceeds budget {self.max_objects}")
        if n_morphisms > self.max_morphisms:
            raise SizeBudgetExceeded(
                f"{n_morphisms} morphisms exceeds budget {self.max_morphisms}")


DEFAULT_BUDGET = SizeBudget()


@dataclass(frozen=True)
class FiniteCategory:
    """Validated finite category. Instances are immutable; treat the mapping
    fields as read-only."""

    name: str
    objects: tuple[str, ...]
    dom: Mapping[str, str]
    cod: Mapping[str, str]
    identity: Mapping[str, str]
    compose_table: Mapping[tuple[str, str], str]
    morphisms: tuple[str, ...] = field(default=(), compare=False)
    hom_sets: Mapping[tuple[str, str], tuple[str, ...]] = field(default=None, compare=False)
    out_of: Mapping[str, tuple[str, ...]] = field(default=None, compare=False)
    into: Mapping[str, tuple[str, ...]] = field(default=None, compare=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteCategory):
            return NotImplemented
        return (self.objects == other.objects
                and dict(self.dom) == dict(other.dom)
                and dict(self.cod) == dict(other.cod)
                and dict(self.identity) == dict(other.identity)
                and dict(self.compose_table) == dict(other.compose_table))

    __hash__ = None

    def compose(self, g: str, f: str) -> str:
        """g after f."""
        return self.compose_table[(g, f)]

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return self.hom_sets.get((x, y), ())

    def morphisms_from(self, x: str) -> tuple[str, ...]:
        if x not in self.identity:
            raise UnknownObject(x)
        return self.out_of.get(x, ())

    def morphisms_into(self, y: str) -> tuple[str, ...]:
        if y not in self.identity:
            raise UnknownObject(y)
        return self.into.get(y, ())

    def is_identity(self, m: str) -> bool:
        return self.identity.get(self.dom[m]) == m

    def maximal_sieve_members(self, x: str) -> tuple[str, ...]:
        return self.morphisms_from(x)


def _index(name, objects, dom, cod, identity, compose) -> FiniteCategory:
    morphisms = tuple(sorted(dom))
    hom_sets: dict[tuple[str, str], list[str]] = {}
    out_of: dict[str, list[str]] = {o: [] for o in objects}
    into: dict[str, list[str]] = {o: [] for o in objects}
    for m in morphisms:
        hom_sets.setdefault((dom[m], cod[m]), []).append(m)
        out_of[dom[m]].append(m)
        into[cod[m]].append(m)
    return FiniteCategory(
        name=name,
        objects=tuple(objects),
        dom=dict(dom),
        cod=dict(cod),
        identity=dict(identity),
        compose_table=dict(compose),
        morphisms=morphisms,
        hom_sets={k: tuple(v) for k, v in hom_sets.items()},
        out_of={k: tuple(v) for k, v in out_of.items()},
        into={k: tuple(v) for k, v in into.items()},
    )


def _collect_violations(objects, dom, cod, identity, compose,
                        morphism_order) -> list[Violation]:
    violations: list[Violation] = []
    obj_set = set(objects)
    for m in morphism_order:
        if dom[m] not in obj_set or cod[m] not in obj_set:
            violations.append(Violation(DANGLING_ENDPOINT, (m, dom[m], cod[m])))
    for o in objects:
        i = identity.get(o)
        if i is None or i not in dom or dom[i] != o or cod[i] != o:
            violations.append(Violation(MISSING_IDENTITY, (o, i)))
    if violations:
        return violations

    mor_set = set(morphism_order)
    for (g, f), gf in compose.items():
        if g not in mor_set or f not in mor_set or gf not in mor_set:
            violations.append(Violation(BAD_COMPOSITE, (g, f, gf), "unknown id"))
            continue
        if cod[f] != dom[g]:
            violations.append(Violation(BAD_COMPOSITE, (g, f, gf), "pair not composable"))
        elif dom[gf] != dom[f] or cod[gf] != cod[g]:
            violations.append(Violation(BAD_COMPOSITE, (g, f, gf), "endpoints of composite"))
    for f in morphism_order:
        for g in morphism_order:
            if cod[f] == dom[g] and (g, f) not in compose:
                violations.append(Violation(MISSING_COMPOSITE, (g, f)))
    if violations:
        return violations

    for f in morphism_order:
        if compose[(identity[cod[f]], f)] != f:
            violations.append(Violation(MISSING_IDENTITY, (cod[f], f), "left unit law"))
        if compose[(f, identity[dom[f]])] != f:
            violations.append(Violation(MISSING_IDENTITY, (dom[f], f), "right unit law"))
    by_dom: dict[str, list[str]] = {}
    for m in morphism_order:
        by_dom.setdefault(dom[m], []).append(m)
    for f in morphism_order:
        for g in by_dom.get(cod[f], ()):
            gf = compose[(g, f)]
            for h in by_dom.get(cod[g], ()):
                if compose[(h, gf)] != compose[(compose[(h, g)], f)]:
                    violations.append(Violation(NON_ASSOCIATIVE, (h, g, f)))
    return violations


def make_category(name: str, objects: Sequence[str],
                  morphisms: Sequence[tuple[str, str, str]],
                  identity: Mapping[str, str],
                  compose: Mapping[tuple[str, str], str],
                  budget: SizeBudget = DEFAULT_BUDGET) -> FiniteCategory:
    """Build and fully validate a category from raw parts.

    `morphisms` lists (id, dom, cod) triples; `compose` must be total on
    composable pairs. Raises ValidationFailed with every violation found.
    """
    budget.check(len(objects), len(morphisms))
    violations: list[Violation] = []
    if len(set(objects)) != len(objects):
        seen = set()
        for o in objects:
            if o in seen:
                violations.append(Violation(DUPLICATE_ID, (o,), "object"))
            seen.add(o)
    ids = [m[0] for m in morphisms]
    if len(set(ids)) != len(ids):
        seen = set()
        for m in ids:
            if m in seen:
                violations.append(Violation(DUPLICATE_ID, (m,), "morphism"))
            seen.add(m)
    if violations:
        raise ValidationFailed(name, violations)
    dom = {m: d for m, d, _ in morphisms}
    cod = {m: c for m, _, c in morphisms}
    violations = _collect_violations(objects, dom, cod, identity, compose, ids)
    if violations:
        raise ValidationFailed(name, violations)
    return _index(name, objects, dom, cod, identity, compose)


# ---------------------------------------------------------------------------
# documents

def category_to_doc(cat: FiniteCategory) -> dict:
    return {
        "name": cat.name,
        "objects": list(cat.objects),
        "morphisms": [{"id": m, "dom": cat.dom[m], "cod": cat.cod[m]}
                      for m in cat.morphisms],
        "identities": {o: cat.identity[o] for o in cat.objects},
        "compose": sorted([g, f, gf] for (g, f), gf in cat.compose_table.items()),
    }


def validate_category(doc: Mapping[str, Any],
                      budget: SizeBudget = DEFAULT_BUDGET) -> FiniteCategory:
    """Validate a raw category document and return the category.

    Raises ValidationFailed listing every violation (missing identities,
    dangling endpoints, duplicate ids, missing or wrong composites,
    associativity failures), each with the offending ids as witness.
    """
    objects = [str(o) for o in doc["objects"]]
    morphisms = [(str(m["id"]), str(m["dom"]), str(m["cod"]))
                 for m in doc["morphisms"]]
    identity = {str(k): str(v) for k, v in doc["identities"].items()}
    compose = {(str(g), str(f)): str(gf) for g, f, gf in doc["compose"]}
    name = str(doc.get("name", "category"))
    return make_category(name, objects, morphisms, identity, compose, budget)


# ---------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class CategoryFlags:
    directed: bool
    ei: bool
    skeletal: bool
    ore: bool


def _is_invertible(cat: FiniteCategory, f: str) -> bool:
    x, y = cat.dom[f], cat.cod[f]
    for g in cat.hom(y, x):
        if cat.compose(g, f) == cat.identity[x] and cat.compose(f, g) == cat.identity[y]:
            return True
    return False


def classify_category(cat: FiniteCategory) -> CategoryFlags:
    """Compute structural flags by brute force.

    directed: hom-nonemptiness is a partial order (antisymmetry; reflexivity
    and transitivity come from identities and composition). ei: every
    endomorphism is invertible. skeletal: isomorphic objects are equal.
    ore: every pair of morphisms out of a common object completes to a
    commuting square.
    """
    directed = True
    for x in cat.objects:
        for y in cat.objects:
            if x != y and cat.hom(x, y) and cat.hom(y, x):
                directed = False
    ei = all(_is_invertible(cat, f)
             for x in cat.objects for f in cat.hom(x, x))
    skeletal = True
    for x, y in itertools.combinations(cat.objects, 2):
        if any(_is_invertible(cat, f) for f in cat.hom(x, y)):
            skeletal = False
    ore = True
    for x in cat.objects:
        outs = cat.morphisms_from(x)
        for f in outs:
            for g in outs:
                y, z = cat.cod[f], cat.cod[g]
                if not any(cat.compose(fp, f) == cat.compose(gp, g)
                           for fp in cat.morphisms_from(y)
                           for gp in cat.morphisms_from(z)
                           if cat.cod[fp] == cat.cod[gp]):
                    ore = False
    return CategoryFlags(directed=directed, ei=ei, skeletal=skeletal, ore=ore)


def leq_order(cat: FiniteCategory) -> dict[str, set[str]]:
    """x |-> {y : Hom(x, y) nonempty}. A partial order iff directed."""
    return {x: {y for y in cat.objects if cat.hom(x, y)} for x in cat.objects}


def maximal_objects(cat: FiniteCategory) -> list[str]:
    leq = leq_order(cat)
    return [x for x in cat.objects if leq[x] == {x}]


def objects_in_decreasing_order(cat: FiniteCategory) -> list[str]:
    """Objects sorted so that everything above (reachable from) an object
    comes earlier. Requires directedness."""
    leq = leq_order(cat)
    return sorted(cat.objects, key=lambda x: (len(leq[x]), x))


# ---------------------------------------------------------------------------
# full subcategories

@dataclass(frozen=True)
class Embedding:
    """Id correspondences of a full subcategory (sub id -> ambient id)."""

    objects: Mapping[str, str]
    morphisms: Mapping[str, str]


def full_subcategory(cat: FiniteCategory, objs: Iterable[str],
                     name: str | None = None) -> tuple[FiniteCategory, Embedding]:
    objs = list(dict.fromkeys(objs))
    for o in objs:
        if o not in cat.identity:
            raise UnknownObject(o)
    keep = set(objs)
    morphisms = [(m, cat.dom[m], cat.cod[m]) for m in cat.morphisms
                 if cat.dom[m] in keep and cat.cod[m] in keep]
    mor_ids = {m for m, _, _ in morphisms}
    compose = {pair: gf for pair, gf in cat.compose_table.items()
               if pair[0] in mor_ids and pair[1] in mor_ids}
    identity = {o: cat.identity[o] for o in objs}
    sub = make_category(name or f"{cat.name}|{','.join(objs)}",
                        objs, morphisms, identity, compose)
    emb = Embedding(objects={o: o for o in objs},
                    morphisms={m: m for m in mor_ids})
    return sub, emb


def is_full_subcategory(cat: FiniteCategory, sub: FiniteCategory) -> bool:
    if not set(sub.objects) <= set(cat.objects):
        return False
    expected, _ = full_subcategory(cat, sub.objects, name=sub.name)
    return expected == sub


def require_full_subcategory(cat: FiniteCategory, sub: FiniteCategory) -> None:
    if not is_full_subcategory(cat, sub):
        raise NotFullSubcategory(
            f"{sub.name} is not a full subcategory of {cat.name}")


# ---------------------------------------------------------------------------
# group utilities (for one-object categories and orbit categories)

def cyclic_group_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def symmetric_group_table(n: int) -> list[list[int]]:
    """Multiplication table of Sym(n); element 0 is the identity.
    table[i][j] is "permutation i after permutation j"."""
    perms = sorted(itertools.permutations(range(n)))
    index = {p: k for k, p in enumerate(perms)}
    table = []
    for p in perms:
        row = []
        for q in perms:
            row.append(index[tuple(p[q[k]] for k in range(n))])
        table.append(row)
    return table


def _check_group_table(table: Sequence[Sequence[int]]) -> None:
    n = len(table)
    if any(len(row) != n for row in table):
        raise NotAGroupTable("table is not square")
    elems = set(range(n))
    if any(set(row) != elems for row in table):
        raise NotAGroupTable("rows are not permutations")
    if any({table[i][j] for i in range(n)} != elems for j in range(n)):
        raise NotAGroupTable("columns are not permutations")
    e = next((i for i in range(n)
              if all(table[i][j] == j and table[j][i] == j for j in range(n))), None)
    if e != 0:
        raise NotAGroupTable("element 0 must be the identity")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if table[table[i][j]][k] != table[i][table[j][k]]:
                    raise NotAGroupTable(f"associativity fails at {(i, j, k)}")
    for i in range(n):
        if not any(table[i][j] == 0 and table[j][i] == 0 for j in range(n)):
            raise NotAGroupTable(f"element {i} has no inverse")


def group_inverse(table: Sequence[Sequence[int]], g: int) -> int:
    n = len(table)
    for h in range(n):
        if table[g][h] == 0 and table[h][g] == 0:
            return h
    raise NotAGroupTable(f"element {g} has no inverse")


def all_subgroups(table: Sequence[Sequence[int]]) -> list[frozenset[int]]:
    """Every subgroup, generated bottom-up by joining cyclic subgroups."""
    n = len(table)

    def generated(gens: frozenset[int]) -> frozenset[int]:
        elems = set(gens) | {0}
        frontier = list(elems)
        while frontier:
            a = frontier.pop()
            for b in list(elems):
                for c in (table[a][b], table[b][a]):
                    if c not in elems:
                        elems.add(c)
                        frontier.append(c)
        return frozenset(elems)

    subgroups = {generated(frozenset([g])) for g in range(n)}
    changed = True
    while changed:
        changed = False
        for a, b in itertools.combinations(list(subgroups), 2):
            j = generated(a | b)
            if j not in subgroups:
                subgroups.add(j)
                changed = True
    return sorted(subgroups, key=lambda s: (len(s), sorted(s)))


def conjugate_subgroup(table: Sequence[Sequence[int]], h: frozenset[int],
                       g: int) -> frozenset[int]:
    gi = group_inverse(table, g)
    return frozenset(table[table[g][x]][gi] for x in h)


@dataclass(frozen=True)
class OrbitData:
    """Side data of an orbit-category build: subgroup content per object."""

    group_table: tuple[tuple[int, ...], ...]
    subgroup_of: Mapping[str, frozenset[int]]
    order_of: Mapping[str, int]


def build_orbit_category(group_table: Sequence[Sequence[int]],
                         subgroups: Iterable[Iterable[int]] | None = None,
                         name: str = "orbit",
                         budget: SizeBudget = DEFAULT_BUDGET,
                         ) -> tuple[FiniteCategory, OrbitData]:
    """Skeletal orbit category of a finite group, stored in the variance this
    package uses: an arrow from G/H to G/K exists iff K is subconjugate to H,
    and corresponds to the equivariant map G/K -> G/H given by a coset gH
    with g^-1 K g contained in H. Composition of stored arrows
    u: G/H -> G/K (coset aH) and v: G/K -> G/L (coset bK) is the arrow
    G/H -> G/L with coset (b*a)H.
    """
    _check_group_table(group_table)
    table = [list(r) for r in group_table]
    n = len(table)
    if subgroups is None:
        subs = all_subgroups(table)
    else:
        subs = []
        for s in subgroups:
            s = frozenset(int(x) for x in s)
            if 0 not in s or any(table[a][group_inverse(table, b)] not in s
                                 for a in s for b in s):
                raise NotAGroupTable(f"{sorted(s)} is not a subgroup")
            subs.append(s)
        subs = sorted(set(subs), key=lambda s: (len(s), sorted(s)))

    # conjugacy classes, canonical representative = least sorted tuple
    classes: list[frozenset[int]] = []
    seen: set[frozenset[int]] = set()
    for h in subs:
        if h in seen:
            continue
        orbit = {conjugate_subgroup(table, h, g) for g in range(n)}
        orbit &= set(subs)
        seen |= orbit
        classes.append(min(orbit, key=lambda s: sorted(s)))
    classes.sort(key=lambda s: (len(s), sorted(s)))

    by_order: dict[int, int] = {}
    obj_of: dict[frozenset[int], str] = {}
    for h in classes:
        k = by_order.get(len(h), 0)
        by_order[len(h)] = k + 1
        suffix = "" if by_order[len(h)] == 1 else f"_{k + 1}"
        obj_of[h] = f"G/H{len(h)}{suffix}"
    objects = [obj_of[h] for h in classes]

    def cosets_mapping(k: frozenset[int], h: frozenset[int]) -> list[int]:
        """Canonical reps g (min of coset gH) with g^-1 K g contained in H:
        the equivariant maps G/K -> G/H."""
        reps = []
        seen_cosets: set[frozenset[int]] = set()
        for g in range(n):
            coset = frozenset(table[g][x] for x in h)
            if coset in seen_cosets:
                continue
            seen_cosets.add(coset)
            gi = group_inverse(table, g)
            if all(table[table[gi][x]][g] in h for x in k):
                reps.append(min(coset))
        return sorted(reps)

    # stored arrow G/H -> G/K: one per equivariant map G/K -> G/H
    morphisms: list[tuple[str, str, str]] = []
    rep_of: dict[tuple[str, str, int], str] = {}
    arrows: dict[tuple[str, str], list[int]] = {}
    for h in classes:
        for k in classes:
            reps = cosets_mapping(k, h)
            if not reps:
                continue
            arrows[(obj_of[h], obj_of[k])] = reps
            for g in reps:
                mid = f"[{obj_of[h]}>{obj_of[k]}]g{g}"
                morphisms.append((mid, obj_of[h], obj_of[k]))
                rep_of[(obj_of[h], obj_of[k], g)] = mid
    budget.check(len(objects), len(morphisms))

    def coset_min(g: int, h: frozenset[int]) -> int:
        return min(table[g][x] for x in h)

    sub_of_obj = {obj_of[h]: h for h in classes}
    compose: dict[tuple[str, str], str] = {}
    for (x, y), reps_u in arrows.items():
        hx = sub_of_obj[x]
        for (y2, z), reps_v in arrows.items():
            if y2 != y:
                continue
            for a in reps_u:          # u: x -> y, map G/K_y -> G/H_x, coset a*Hx
                for b in reps_v:      # v: y -> z, map G/L_z -> G/K_y, coset b*Ky
                    c = coset_min(table[b][a], hx)
                    u = rep_of[(x, y, a)]
                    v = rep_of[(y, z, b)]
                    compose[(v, u)] = rep_of[(x, z, c)]

    identity = {obj_of[h]: rep_of[(obj_of[h], obj_of[h], coset_min(0, h))]
                for h in classes}
    cat = make_category(name, objects, morphisms, identity, compose, budget)
    data = OrbitData(
        group_table=tuple(tuple(r) for r in table),
        subgroup_of=dict(sub_of_obj),
        order_of={o: len(s) for o, s in sub_of_obj.items()},
    )
    return cat, data


# ---------------------------------------------------------------------------
# standard builders

def build_poset_category(objects: Sequence[str],
                         leq_pairs: Iterable[tuple[str, str]],
                         name: str = "poset",
                         budget: SizeBudget = DEFAULT_BUDGET) -> FiniteCategory:
    """Category of a poset: one morphism x -> y whenever x <= y in the
    reflexive-transitive closure of the given pairs."""
    objects = list(objects)
    obj_set = set(objects)
    reach: dict[str, set[str]] = {o: {o} for o in objects}
    for a, b in leq_pairs:
        if a not in obj_set or b not in obj_set:
            raise UnknownObject(f"{a} <= {b}")
        reach[a].add(b)
    changed = True
    while changed:
        changed = False
        for a in objects:
            for b in list(reach[a]):
                if not reach[b] <= reach[a]:
                    reach[a] |= reach[b]
                    changed = True
    for a in objects:
        for b in reach[a]:
            if a != b and a in reach[b]:
                raise NotAPoset(f"{a} and {b} are comparable both ways")

    def mid(a: str, b: str) -> str:
        return f"1_{a}" if a == b else f"{a}->{b}"

    morphisms = [(mid(a, b), a, b) for a in objects for b in sorted(reach[a])]
    identity = {o: mid(o, o) for o in objects}
    compose = {}
    for a in objects:
        for b in reach[a]:
            for c in reach[b]:
                compose[(mid(b, c), mid(a, b))] = mid(a, c)
    return make_category(name, objects, morphisms, identity, compose, budget)


def build_quiver_category(vertices: Sequence[str],
                          arrows: Iterable[tuple[str, str, str]],
                          name: str = "quiver",
                          budget: SizeBudget = DEFAULT_BUDGET) -> FiniteCategory:
    """Free category on an acyclic quiver. Arrows are (id, source, target);
    morphisms are paths, identities are the empty paths. A path composed of
    arrows a then b is named "b.a"."""
    vertices = list(vertices)
    vset = set(vertices)
    arrows = list(arrows)
    for aid, s, t in arrows:
        if s not in vset or t not in vset:
            raise UnknownObject(f"arrow {aid}: {s} -> {t}")

    out: dict[str, list[tuple[str, str]]] = {v: [] for v in vertices}
    for aid, s, t in arrows:
        out[s].append((aid, t))

    # paths by BFS; cycle <=> path count exceeds a safe cap or revisit growth
    paths: dict[str, tuple[tuple[str, ...], str, str]] = {}
    for v in vertices:
        paths[f"1_{v}"] = ((), v, v)
    frontier = list(paths.items())
    while frontier:
        nxt = []
        for pid, (seq, s, t) in frontier:
            for aid, t2 in out[t]:
                seq2 = seq + (aid,)
                if len(seq2) > len(arrows):
                    raise CyclicQuiver("a path repeats an arrow count bound")
                pid2 = ".".join(reversed(seq2))
                nxt.append((pid2, (seq2, s, t2)))
                paths[pid2] = (seq2, s, t2)
        frontier = nxt
        if len(paths) > budget.max_morphisms:
            raise SizeBudgetExceeded("path explosion in quiver build")

    morphisms = [(pid, s, t) for pid, (_, s, t) in sorted(paths.items())]
    identity = {v: f"1_{v}" for v in vertices}
    # the empty path exists at every vertex, so keys carry the source too
    name_of = {(s, seq): pid for pid, (seq, s, _) in paths.items()}
    compose = {}
    for pid_f, (seq_f, sf, tf) in paths.items():
        for pid_g, (seq_g, sg, tg) in paths.items():
            if sg == tf:
                compose[(pid_g, pid_f)] = name_of[(sf, seq_f + seq_g)]
    return make_category(name, vertices, morphisms, identity, compose, budget)


def build_trunc_fi_category(n: int, name: str | None = None,
                            budget: SizeBudget = DEFAULT_BUDGET) -> FiniteCategory:
    """Truncation at n of the category of finite sets with injections:
    objects "0".."n", morphisms the injections {0..m-1} -> {0..k-1}."""
    objects = [str(m) for m in range(n + 1)]

    def mid(m: int, k: int, img: tuple[int, ...]) -> str:
        return f"[{m}>{k}]({','.join(map(str, img))})"

    morphisms = []
    inj: dict[str, tuple[int, int, tuple[int, ...]]] = {}
    for m in range(n + 1):
        for k in range(m, n + 1):
            for img in itertools.permutations(range(k), m):
                i = mid(m, k, img)
                morphisms.append((i, str(m), str(k)))
                inj[i] = (m, k, img)
    budget.check(len(objects), len(morphisms))
    identity = {str(m): mid(m, m, tuple(range(m))) for m in range(n + 1)}
    compose = {}
    for f, (m, k, img_f) in inj.items():
        for g, (k2, l, img_g) in inj.items():
            if k2 == k:
                compose[(g, f)] = mid(m, l, tuple(img_g[i] for i in img_f))
    return make_category(name or f"trunc_fi_{n}", objects, morphisms,
                         identity, compose, budget)


def build_trunc_vi_category(q: int, n: int, name: str | None = None,
                            budget: SizeBudget = DEFAULT_BUDGET) -> FiniteCategory:
    """Truncation at n of the category of F_q vector spaces with injective
    linear maps. q must be prime (the package's fields are prime fields)."""
    from . import linalg

    field = linalg.GF(q)
    objects = [str(m) for m in range(n + 1)]

    def all_matrices(rows: int, cols: int) -> list[linalg.Mat]:
        cells = list(itertools.product(range(q), repeat=rows * cols))
        return [linalg.Mat(rows, cols, tuple(tuple(c[i * cols + j] for j in range(cols))
                                             for i in range(rows)))
                for c in cells]

    def mid(m: int, k: int, a: linalg.Mat) -> str:
        flat = ",".join(str(x) for r in a.entries for x in r)
        return f"[{m}>{k}]({flat})"

    morphisms = []
    mats: dict[str, tuple[int, int, linalg.Mat]] = {}
    for m in range(n + 1):
        for k in range(m, n + 1):
            for a in all_matrices(k, m):
                if linalg.rank(field, a) == m:
                    i = mid(m, k, a)
                    morphisms.append((i, str(m), str(k)))
                    mats[i] = (m, k, a)
    budget.check(len(objects), len(morphisms))
    identity = {str(m): mid(m, m, linalg.identity(field, m)) for m in range(n + 1)}
    compose = {}
    for f, (m, k, af) in mats.items():
        for g, (k2, l, ag) in mats.items():
            if k2 == k:
                compose[(g, f)] = mid(m, l, linalg.matmul(field, ag, af))
    return make_category(name or f"trunc_vi_{q}_{n}", objects, morphisms,
                         identity, compose, budget)


def build_monoid_category(table: Sequence[Sequence[int]],
                          element_names: Sequence[str] | None = None,
                          name: str = "monoid",
                          obj: str = "*",
                          budget: SizeBudget = DEFAULT_BUDGET) -> FiniteCategory:
    """One-object category from a monoid multiplication table.
    table[i][j] = i after j; element 0 must be the unit."""
    n = len(table)
    if any(len(r) != n for r in table):
        raise NotAGroupTable("table is not square")
    if any(table[0][j] != j or table[j][0] != j for j in range(n)):
        raise NotAGroupTable("element 0 must be the unit")
    names = list(element_names) if element_names else (
        ["1"] + [f"m{i}" for i in range(1, n)])
    if len(names) != n or len(set(names)) != n:
        raise ValidationFailed(name, [Violation(DUPLICATE_ID, tuple(names))])
    morphisms = [(names[i], obj, obj) for i in range(n)]
    compose = {(names[i], names[j]): names[table[i][j]]
               for i in range(n) for j in range(n)}
    return make_category(name, [obj], morphisms, {obj: names[0]}, compose, budget)


_GROUP_TABLES = {
    "C2": lambda: cyclic_group_table(2),
    "C3": lambda: cyclic_group_table(3),
    "C4": lambda: cyclic_group_table(4),
    "C5": lambda: cyclic_group_table(5),
    "S3": lambda: symmetric_group_table(3),
}


def build_standard_category(kind: str, params: Mapping[str, Any] | None = None,
                            budget: SizeBudget = DEFAULT_BUDGET) -> FiniteCategory:
    """Uniform entry point for the stock builders.

    kinds: poset {objects, leq}, free_acyclic_quiver {vertices, arrows},
    orbit {group: name or table, subgroups: "all" or lists}, trunc_fi {n},
    trunc_vi {q, n}. Orbit side data is dropped here; call
    build_orbit_category directly when subgroup orders are needed.
    """
    params = dict(params or {})
    name = params.pop("name", None)
    if kind == "poset":
        return build_poset_category(params["objects"],
                                    [tuple(p) for p in params.get("leq", [])],
                                    name=name or "poset", budget=budget)
    if kind == "free_acyclic_quiver":
        return build_quiver_category(params["vertices"],
                                     [tuple(a) for a in params["arrows"]],
                                     name=name or "quiver", budget=budget)
    if kind == "orbit":
        group = params["group"]
        if isinstance(group, str):
            if group not in _GROUP_TABLES:
                raise NotAGroupTable(f"unknown builtin group {group!r}")
            table = _GROUP_TABLES[group]()
        else:
            table = [list(r) for r in group]
        subgroups = params.get("subgroups", "all")
        subs = None if subgroups == "all" else subgroups
        cat, _ = build_orbit_category(table, subs,
                                      name=name or f"orbit_{group if isinstance(group, str) else 'G'}",
                                      budget=budget)
        return cat
    if kind == "trunc_fi":
        return build_trunc_fi_category(int(params["n"]), name=name, budget=budget)
    if kind == "trunc_vi":
        return build_trunc_vi_category(int(params["q"]), int(params["n"]),
                                       name=name, budget=budget)
    raise ValueError(f"unknown standard kind {kind!r}")
