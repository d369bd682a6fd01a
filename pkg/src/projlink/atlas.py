"""Bounded-universe enumeration of isotopy classes and mechanical checks.

The universe at bound B is every triple with |p|, |q| <= B and n in
{0, 1, 2}.  Classes are keyed by normal form; an independent union-find
closure over a three-times-larger universe cross-checks the greedy
normal-form strategy, and two further verifiers exercise the double-cover
lift: relation-by-relation compatibility and injectivity on classes.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations

from .links import (
    AmbientSpace,
    Direction,
    Relation,
    TorusLink,
    apply_relation,
    applicable_relations,
    isotopic,
    lift,
    link_to_dict,
    normal_form,
)


@dataclass(frozen=True)
class Atlas:
    space: AmbientSpace
    bound: int
    classes: dict[TorusLink, tuple[TorusLink, ...]]

    def class_of(self, link: TorusLink) -> tuple[TorusLink, ...]:
        return self.classes[normal_form(link)[0]]

    def to_dict(self) -> dict:
        return {
            "space": self.space.value,
            "bound": self.bound,
            "classes": [
                {
                    "normal_form": link_to_dict(key),
                    "members": [link_to_dict(m) for m in members],
                }
                for key, members in sorted(
                    self.classes.items(), key=lambda kv: kv[0].sort_key())
            ],
        }


@dataclass(frozen=True)
class VerificationReport:
    bound: int
    checked_pairs: int
    violations: tuple[dict, ...]
    elapsed: float
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self, include_elapsed: bool = True) -> dict:
        out = {
            "bound": self.bound,
            "checked_pairs": self.checked_pairs,
            "violations": list(self.violations),
        }
        if self.notes:
            out["notes"] = dict(self.notes)
        if include_elapsed:
            out["elapsed_ms"] = int(self.elapsed * 1000)
        return out


def universe(space: AmbientSpace, bound: int) -> list[TorusLink]:
    """All triples with |p|, |q| <= bound, in lexicographic (p, q, n) order."""
    if bound < 0:
        raise ValueError(f"bound must be >= 0, got {bound}")
    return [
        TorusLink(space, p, q, n)
        for p in range(-bound, bound + 1)
        for q in range(-bound, bound + 1)
        for n in (0, 1, 2)
    ]


def enumerate_classes(space: AmbientSpace, bound: int) -> Atlas:
    """Partition the bounded universe by normal form."""
    buckets: dict[TorusLink, list[TorusLink]] = {}
    for link in universe(space, bound):
        key = normal_form(link)[0]
        buckets.setdefault(key, []).append(link)
    classes = {
        key: tuple(sorted(members, key=lambda t: t.sort_key()))
        for key, members in buckets.items()
    }
    return Atlas(space, bound, classes)


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:  # path compression
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def closure_partition(space: AmbientSpace, bound: int) -> dict[TorusLink, TorusLink]:
    """Equivalence closure of the bounded universe under all relation moves.

    Forward moves are enumerated from every triple; a backward move is the
    reverse of some forward move from its target, so the closure covers both
    directions.  Moves whose result leaves the universe are skipped, which
    is why callers use a larger closure universe than the one they report
    on.  Returns a map from each triple to a canonical class representative.
    """
    links = universe(space, bound)
    in_universe = set(links)
    uf = _UnionFind()
    for link in links:
        uf.add(link)
    for link in links:
        for relation, direction in applicable_relations(link):
            if direction is not Direction.FORWARD:
                continue
            after = apply_relation(link, relation, direction).after
            if after in in_universe:
                uf.union(link, after)
    roots: dict[TorusLink, TorusLink] = {}
    rep: dict[TorusLink, TorusLink] = {}
    for link in links:  # lexicographic order makes representatives canonical
        root = uf.find(link)
        if root not in rep:
            rep[root] = link
        roots[link] = rep[root]
    return roots


def _pairs_across(groups: list[list[TorusLink]]) -> list[tuple[TorusLink, TorusLink]]:
    out = []
    for i, ga in enumerate(groups):
        for gb in groups[i + 1:]:
            out.extend((a, b) for a in ga for b in gb)
    return out


def confluence_audit(space: AmbientSpace, bound: int) -> VerificationReport:
    """Cross-check normal forms against the union-find closure.

    The closure runs over |p|, |q| <= 3 * bound; the comparison is made on
    the inner universe.  Reports every inner pair on which the two
    partitions disagree, in either direction.
    """
    t0 = time.perf_counter()
    inner = universe(space, bound)
    closure = closure_partition(space, 3 * bound)
    violations: list[dict] = []

    by_root: dict[TorusLink, dict[TorusLink, list[TorusLink]]] = {}
    by_nf: dict[TorusLink, dict[TorusLink, list[TorusLink]]] = {}
    for link in inner:
        root = closure[link]
        key = normal_form(link)[0]
        by_root.setdefault(root, {}).setdefault(key, []).append(link)
        by_nf.setdefault(key, {}).setdefault(root, []).append(link)

    for root, split in sorted(by_root.items(), key=lambda kv: kv[0].sort_key()):
        if len(split) > 1:
            for a, b in _pairs_across(list(split.values())):
                violations.append({
                    "a": link_to_dict(a),
                    "b": link_to_dict(b),
                    "evidence": "union-find-equivalent but distinct normal forms",
                })
    for key, split in sorted(by_nf.items(), key=lambda kv: kv[0].sort_key()):
        if len(split) > 1:
            for a, b in _pairs_across(list(split.values())):
                violations.append({
                    "a": link_to_dict(a),
                    "b": link_to_dict(b),
                    "evidence": "equal normal forms but not union-find-equivalent",
                })

    n = len(inner)
    return VerificationReport(
        bound=bound,
        checked_pairs=n * (n - 1) // 2,
        violations=tuple(violations),
        elapsed=time.perf_counter() - t0,
    )


def verify_lift_injectivity(bound: int) -> VerificationReport:
    """Isotopic lifts in S^3 must come from isotopic links in RP^3.

    Groups the bounded RP^3 universe by the normal form of the lift and
    reports any group containing two distinct RP^3 classes.  The converse
    direction (isotopic links have isotopic lifts) is checked alongside:
    the lift normal form must be constant on every RP^3 class.
    """
    t0 = time.perf_counter()
    links = universe(AmbientSpace.RP3, bound)
    by_lift: dict[TorusLink, dict[TorusLink, TorusLink]] = {}
    by_base: dict[TorusLink, dict[TorusLink, TorusLink]] = {}
    for link in links:
        base_key = normal_form(link)[0]
        lift_key = normal_form(lift(link))[0]
        by_lift.setdefault(lift_key, {}).setdefault(base_key, link)
        by_base.setdefault(base_key, {}).setdefault(lift_key, link)

    violations: list[dict] = []
    for lift_key, bases in sorted(by_lift.items(), key=lambda kv: kv[0].sort_key()):
        if len(bases) > 1:
            reps = sorted(bases.values(), key=lambda t: t.sort_key())
            for a, b in combinations(reps, 2):
                violations.append({
                    "a": link_to_dict(a),
                    "b": link_to_dict(b),
                    "evidence": "isotopic lifts "
                                f"(S^3 class {lift_key!r}) but distinct RP^3 classes",
                })
    for base_key, lifts in sorted(by_base.items(), key=lambda kv: kv[0].sort_key()):
        if len(lifts) > 1:
            reps = sorted(lifts.values(), key=lambda t: t.sort_key())
            for a, b in combinations(reps, 2):
                violations.append({
                    "a": link_to_dict(a),
                    "b": link_to_dict(b),
                    "evidence": "isotopic in RP^3 but lifts in distinct S^3 classes",
                })

    n = len(links)
    return VerificationReport(
        bound=bound,
        checked_pairs=n * (n - 1) // 2,
        violations=tuple(violations),
        elapsed=time.perf_counter() - t0,
    )


def relation_lift_compatibility(bound: int) -> VerificationReport:
    """Every relation instance in RP^3 must lift to an S^3 isotopy.

    Applies every applicable move to every triple in the bounded universe
    and checks that the lifted endpoints are isotopic in S^3, recording the
    longest witness chain seen.
    """
    t0 = time.perf_counter()
    violations: list[dict] = []
    checked = 0
    max_chain = 0
    for link in universe(AmbientSpace.RP3, bound):
        for relation, direction in applicable_relations(link):
            step = apply_relation(link, relation, direction)
            ok, chain = isotopic(lift(step.before), lift(step.after))
            checked += 1
            if not ok:
                violations.append({
                    "a": link_to_dict(step.before),
                    "b": link_to_dict(step.after),
                    "evidence": f"{relation.value} {direction.value} instance "
                                "whose lifts are not S^3-isotopic",
                })
            else:
                max_chain = max(max_chain, len(chain))
    return VerificationReport(
        bound=bound,
        checked_pairs=checked,
        violations=tuple(violations),
        elapsed=time.perf_counter() - t0,
        notes={"max_lift_chain_length": max_chain},
    )
