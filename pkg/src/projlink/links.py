"""Torus-link calculus on the genus-1 Heegaard splittings of S^3 and RP^3.

A link T(p, q; n) is the union of gcd(p, q) parallel (p', q')-curves on the
Heegaard torus together with the cores of n of the two handlebodies.  Four
rewrite moves generate isotopy of these links:

  R1  negate both coefficients (the links are unoriented),
  R2  exchange the two handlebodies (n = 0, 2 only); in S^3 this swaps
      (p, q), in RP^3 it maps p to -p + 2q,
  R3  isotope one parallel copy onto the core of the first handlebody,
  R4  isotope one parallel copy onto the core of the second handlebody.

Normal forms are computed by greedy forward reduction (R3/R4 always shrink
|p| + |q|) followed by lexicographic minimization over the small R1/R2
orbit.  Every verdict carries a replayable chain of moves as a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import gcd


class AmbientSpace(Enum):
    SPHERE3 = "s3"
    RP3 = "rp3"


class Relation(Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    R4 = "R4"


class Direction(Enum):
    FORWARD = "fwd"
    BACKWARD = "bwd"


class CalculusError(Exception):
    """Base class for errors of the link calculus."""

    code = "CALCULUS_ERROR"


class InvalidN(CalculusError):
    code = "INVALID_N"


class NotApplicable(CalculusError):
    code = "NOT_APPLICABLE"


class SpaceMismatch(CalculusError):
    code = "SPACE_MISMATCH"


class WrongSpace(CalculusError):
    code = "WRONG_SPACE"


@dataclass(frozen=True)
class TorusLink:
    """A triple (p, q; n) tagged with its ambient space.

    Any integer pair (p, q) is allowed; n counts how many handlebody cores
    are added and must be 0, 1 or 2.  (0, 0; 0) denotes the empty link.
    """

    space: AmbientSpace
    p: int
    q: int
    n: int

    def sort_key(self):
        return (self.p, self.q, self.n)

    def __repr__(self):
        return f"T[{self.space.value}]({self.p},{self.q};{self.n})"


@dataclass(frozen=True)
class RelationStep:
    """One application of a relation, with its endpoints."""

    relation: Relation
    direction: Direction
    before: TorusLink
    after: TorusLink


@dataclass(frozen=True)
class WitnessChain:
    """A composable sequence of relation steps certifying an isotopy."""

    steps: tuple[RelationStep, ...] = ()

    def __len__(self):
        return len(self.steps)

    def start(self):
        return self.steps[0].before if self.steps else None

    def end(self):
        return self.steps[-1].after if self.steps else None


class ClassificationKind(Enum):
    EMPTY = "EMPTY"
    SEIFERT_COMPLEMENT = "SEIFERT_COMPLEMENT"
    NON_SEIFERT_SPLIT = "NON_SEIFERT_SPLIT"


@dataclass(frozen=True)
class Classification:
    kind: ClassificationKind
    detail: str


def make_link(space: AmbientSpace, p: int, q: int, n: int) -> TorusLink:
    """Build a validated triple; n must be 0, 1 or 2."""
    for name, value in (("p", p), ("q", q), ("n", n)):
        if not isinstance(value, int) or isinstance(value, bool):
            raise InvalidN(f"{name} must be an integer, got {value!r}")
    if n not in (0, 1, 2):
        raise InvalidN(f"n must be 0, 1 or 2, got {n}")
    return TorusLink(space, p, q, n)


def component_count(link: TorusLink) -> int:
    """Number of components: gcd(|p|, |q|) parallel copies plus n cores."""
    if link.p == 0 and link.q == 0:
        return link.n
    return gcd(abs(link.p), abs(link.q)) + link.n


# ---------------------------------------------------------------------------
# The relations.  Each forward move is a partial map on triples; backward
# moves invert them.  The degenerate triples (0, 0; 1) and (0, 0; 2) have
# many reduction preimages, so the backward maps pick a fixed canonical one.


def _r2_pair(link: TorusLink) -> tuple[int, int]:
    if link.space is AmbientSpace.SPHERE3:
        return (link.q, link.p)
    return (-link.p + 2 * link.q, link.q)


def _r3_forward_ok(link: TorusLink) -> bool:
    return link.n == 0 and link.p > 0 and link.q % link.p == 0


def _r3_forward(link: TorusLink) -> TorusLink:
    p, q = link.p, link.q
    return TorusLink(link.space, p - 1, (p - 1) * q // p, 1)


def _r3_backward_ok(link: TorusLink) -> bool:
    if link.n != 1:
        return False
    if link.p == 0:
        return link.q == 0
    return link.p > 0 and link.q % link.p == 0


def _r3_backward(link: TorusLink) -> TorusLink:
    if link.p == 0:
        return TorusLink(link.space, 1, 0, 0)
    p, q = link.p, link.q
    return TorusLink(link.space, p + 1, (p + 1) * q // p, 0)


def _r4_forward_ok(link: TorusLink) -> bool:
    if link.n != 1:
        return False
    if link.space is AmbientSpace.SPHERE3:
        return link.q > 0 and link.p % link.q == 0
    k = -link.p + 2 * link.q
    return k > 0 and link.q % k == 0


def _r4_forward(link: TorusLink) -> TorusLink:
    p, q = link.p, link.q
    if link.space is AmbientSpace.SPHERE3:
        return TorusLink(link.space, (q - 1) * p // q, q - 1, 2)
    k = -p + 2 * q
    # k divides q, and p = 2q - k, so k divides p as well.
    return TorusLink(link.space, (k - 1) * p // k, (k - 1) * q // k, 2)


def _r4_backward_ok(link: TorusLink) -> bool:
    if link.n != 2:
        return False
    p, q = link.p, link.q
    if link.space is AmbientSpace.SPHERE3:
        if q == 0:
            return p == 0
        return q > 0 and p % q == 0
    m = -p + 2 * q
    if m == 0:
        return p == 0 and q == 0
    return m > 0 and q % m == 0


def _r4_backward(link: TorusLink) -> TorusLink:
    p, q = link.p, link.q
    if link.space is AmbientSpace.SPHERE3:
        if (p, q) == (0, 0):
            return TorusLink(link.space, 0, 1, 1)
        return TorusLink(link.space, (q + 1) * p // q, q + 1, 1)
    if (p, q) == (0, 0):
        return TorusLink(link.space, 1, 1, 1)
    m = -p + 2 * q
    return TorusLink(link.space, (m + 1) * p // m, (m + 1) * q // m, 1)


def applicable_relations(link: TorusLink) -> list[tuple[Relation, Direction]]:
    """All moves applicable to this exact triple.

    R1 and R2 are involutions and are listed only in the forward direction;
    R3/R4 are listed backward whenever the inverse side-conditions hold.
    """
    out: list[tuple[Relation, Direction]] = [(Relation.R1, Direction.FORWARD)]
    if link.n in (0, 2):
        out.append((Relation.R2, Direction.FORWARD))
    if _r3_forward_ok(link):
        out.append((Relation.R3, Direction.FORWARD))
    if _r3_backward_ok(link):
        out.append((Relation.R3, Direction.BACKWARD))
    if _r4_forward_ok(link):
        out.append((Relation.R4, Direction.FORWARD))
    if _r4_backward_ok(link):
        out.append((Relation.R4, Direction.BACKWARD))
    return out


def apply_relation(
    link: TorusLink, relation: Relation, direction: Direction = Direction.FORWARD
) -> RelationStep:
    """Apply one move, returning the step with its computed endpoint.

    R1 and R2 are their own inverses, so both directions are accepted for
    them.  Raises NotApplicable when a side-condition fails.
    """
    if relation is Relation.R1:
        after = TorusLink(link.space, -link.p, -link.q, link.n)
    elif relation is Relation.R2:
        if link.n not in (0, 2):
            raise NotApplicable(f"R2 requires n in {{0, 2}}, got {link!r}")
        np_, nq = _r2_pair(link)
        after = TorusLink(link.space, np_, nq, link.n)
    elif relation is Relation.R3:
        if direction is Direction.FORWARD:
            if not _r3_forward_ok(link):
                raise NotApplicable(f"R3 needs n=0 and p > 0 dividing q: {link!r}")
            after = _r3_forward(link)
        else:
            if not _r3_backward_ok(link):
                raise NotApplicable(f"R3 backward not applicable to {link!r}")
            after = _r3_backward(link)
    elif relation is Relation.R4:
        if direction is Direction.FORWARD:
            if not _r4_forward_ok(link):
                raise NotApplicable(f"R4 not applicable to {link!r}")
            after = _r4_forward(link)
        else:
            if not _r4_backward_ok(link):
                raise NotApplicable(f"R4 backward not applicable to {link!r}")
            after = _r4_backward(link)
    else:  # pragma: no cover
        raise NotApplicable(f"unknown relation {relation!r}")
    return RelationStep(relation, direction, link, after)


def replay_step(step: RelationStep) -> bool:
    """Check a step by recomputing it from its endpoints."""
    try:
        if step.direction is Direction.FORWARD:
            redo = apply_relation(step.before, step.relation, Direction.FORWARD)
            return redo.after == step.after
        # A backward step is certified by the forward move in reverse.
        redo = apply_relation(step.after, step.relation, Direction.FORWARD)
        return redo.after == step.before
    except CalculusError:
        return False


def verify_chain(chain: WitnessChain, start: TorusLink | None = None,
                 end: TorusLink | None = None) -> bool:
    """Replay every step and check composability and endpoints."""
    steps = chain.steps
    if not steps:
        return start is None or end is None or start == end
    if start is not None and steps[0].before != start:
        return False
    if end is not None and steps[-1].after != end:
        return False
    for i, step in enumerate(steps):
        if not replay_step(step):
            return False
        if i and steps[i - 1].after != step.before:
            return False
    return True


def _reverse_step(step: RelationStep) -> RelationStep:
    if step.relation in (Relation.R1, Relation.R2):
        # Involutions: the reverse is again a forward application.
        return RelationStep(step.relation, Direction.FORWARD, step.after, step.before)
    flipped = (Direction.BACKWARD if step.direction is Direction.FORWARD
               else Direction.FORWARD)
    return RelationStep(step.relation, flipped, step.after, step.before)


def reverse_chain(chain: WitnessChain) -> WitnessChain:
    return WitnessChain(tuple(_reverse_step(s) for s in reversed(chain.steps)))


def concat_chains(a: WitnessChain, b: WitnessChain) -> WitnessChain:
    return WitnessChain(a.steps + b.steps)


# ---------------------------------------------------------------------------
# Normal forms.


def _orbit_paths(link: TorusLink) -> list[tuple[TorusLink, tuple[RelationStep, ...]]]:
    """BFS closure of the triple under R1/R2, with the move path to each member.

    The orbit has at most four elements: negation and the handlebody swap
    generate a Klein four-group on (p, q).
    """
    seen = {link}
    order = [(link, ())]
    frontier = [(link, ())]
    while frontier:
        nxt = []
        for member, path in frontier:
            moves = [Relation.R1]
            if member.n in (0, 2):
                moves.append(Relation.R2)
            for rel in moves:
                step = apply_relation(member, rel, Direction.FORWARD)
                if step.after not in seen:
                    seen.add(step.after)
                    entry = (step.after, path + (step,))
                    order.append(entry)
                    nxt.append(entry)
        frontier = nxt
    return order


def _measure(link: TorusLink) -> int:
    return abs(link.p) + abs(link.q)


@lru_cache(maxsize=1 << 16)
def _normal_form_cached(link: TorusLink) -> tuple[TorusLink, WitnessChain]:
    steps: list[RelationStep] = []
    cur = link
    while True:
        candidates = []
        for member, path in _orbit_paths(cur):
            for rel in (Relation.R3, Relation.R4):
                ok = (_r3_forward_ok(member) if rel is Relation.R3
                      else _r4_forward_ok(member))
                if not ok:
                    continue
                step = apply_relation(member, rel, Direction.FORWARD)
                candidates.append(
                    (step.after.p, step.after.q, len(path), path, step))
        if not candidates:
            break
        candidates.sort(key=lambda c: (c[0], c[1], c[2]))
        _, _, _, path, step = candidates[0]
        assert _measure(step.after) < _measure(step.before), step
        steps.extend(path)
        steps.append(step)
        cur = step.after
    best, best_path = min(_orbit_paths(cur), key=lambda e: e[0].sort_key())
    steps.extend(best_path)
    return best, WitnessChain(tuple(steps))


def normal_form(link: TorusLink) -> tuple[TorusLink, WitnessChain]:
    """Canonical representative of the isotopy class, with a move chain.

    Greedily applies forward R3/R4 reductions, searching the R1/R2 orbit of
    the current triple for applicability and preferring the lexicographically
    least result; at a reduction-irreducible triple, returns the
    lexicographically least (p, q) over the orbit.
    """
    return _normal_form_cached(link)


def isotopic(a: TorusLink, b: TorusLink) -> tuple[bool, WitnessChain | None]:
    """Decide isotopy via normal forms; a positive verdict carries a chain.

    The chain runs a -> normal form -> b and replays successfully.  Negative
    verdicts rest on the completeness of the four relations together with
    the empirical confluence audit of the atlas module.
    """
    if a.space is not b.space:
        raise SpaceMismatch(f"cannot compare {a!r} and {b!r}")
    nf_a, chain_a = normal_form(a)
    nf_b, chain_b = normal_form(b)
    if nf_a != nf_b:
        return False, None
    return True, concat_chains(chain_a, reverse_chain(chain_b))


def lift(link: TorusLink) -> TorusLink:
    """Preimage in S^3 under the double cover: (p, q; n) -> (p, -p+2q; n)."""
    if link.space is not AmbientSpace.RP3:
        raise WrongSpace(f"lift is defined on RP^3 links, got {link!r}")
    return TorusLink(AmbientSpace.SPHERE3, link.p, -link.p + 2 * link.q, link.n)


def classify(link: TorusLink) -> Classification:
    """Empty, split (non-Seifert) or Seifert-fibered complement.

    The split families are T(0, q; 0) with q >= 2 in either space and
    T(2q, q; 1) with q >= 1 in RP^3; membership is decided by comparing
    normal forms, using the component count to pin down q.
    """
    nf, _ = normal_form(link)
    if nf == normal_form(TorusLink(link.space, 0, 0, 0))[0]:
        return Classification(ClassificationKind.EMPTY, "the empty link")
    c = component_count(link)
    if c >= 2:
        family = normal_form(TorusLink(link.space, 0, c, 0))[0]
        if nf == family:
            return Classification(
                ClassificationKind.NON_SEIFERT_SPLIT,
                f"split link of {c} fibers in a ball: T(0,{c};0)")
    if link.space is AmbientSpace.RP3 and c >= 2:
        family = normal_form(TorusLink(link.space, 2 * (c - 1), c - 1, 1))[0]
        if nf == family:
            return Classification(
                ClassificationKind.NON_SEIFERT_SPLIT,
                f"split link T(2q,q;1) with q={c - 1}")
    return Classification(
        ClassificationKind.SEIFERT_COMPLEMENT,
        "complement admits a Seifert fibration")


# ---------------------------------------------------------------------------
# JSON wire format.


def link_to_dict(link: TorusLink) -> dict:
    return {"space": link.space.value, "p": link.p, "q": link.q, "n": link.n}


def link_from_dict(data: dict) -> TorusLink:
    try:
        space = AmbientSpace(data["space"])
        return make_link(space, data["p"], data["q"], data["n"])
    except (KeyError, ValueError, TypeError) as exc:
        raise InvalidN(f"malformed triple {data!r}") from exc


def step_to_dict(step: RelationStep) -> dict:
    return {
        "relation": step.relation.value,
        "direction": step.direction.value,
        "before": link_to_dict(step.before),
        "after": link_to_dict(step.after),
    }


def step_from_dict(data: dict) -> RelationStep:
    return RelationStep(
        Relation(data["relation"]),
        Direction(data["direction"]),
        link_from_dict(data["before"]),
        link_from_dict(data["after"]),
    )


def chain_to_list(chain: WitnessChain) -> list[dict]:
    return [step_to_dict(s) for s in chain.steps]


def chain_from_list(data: list[dict]) -> WitnessChain:
    return WitnessChain(tuple(step_from_dict(d) for d in data))
