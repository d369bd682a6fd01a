"""Combinatorial JSJ trees of link complements in RP^3 and their double covers.

Vertices are decomposition pieces, edges are the decomposing tori.  Each
edge carries two region labels, one per side, describing the component of
the ambient space on the far side of the torus from each endpoint: a solid
torus, a knotted hole ball, or something else.  Label pairings are
constrained: a torus in RP^3 cannot bound a knotted hole ball against a
solid torus, the complement of a knotted hole ball is never one of the two,
and at least one side is always a solid torus or a knotted hole ball.

Edges acquire a derived orientation (toward the endpoint enclosed in the
solid torus or knotted hole ball; Heegaard tori stay unoriented), which
induces an integer potential on the vertices.  Outermost pieces are the
local minima of the potential.

A cover is a tree together with an involutive automorphism, modeling the
preimage of the decomposition in S^3.  A fixed edge may not swap its
endpoints (that would quotient to a one-sided torus) and knotted hole
balls always lift to two copies, so edges touching them must be moved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class RegionLabel(Enum):
    SOLID_TORUS = "st"
    KNOTTED_HOLE_BALL = "khb"
    OTHER = "other"


class Geometry(Enum):
    HYPERBOLIC = "hyperbolic"
    SEIFERT = "seifert"


# Unordered label pairs a single torus may carry.
_ALLOWED_PAIRS = {
    frozenset({RegionLabel.SOLID_TORUS}),
    frozenset({RegionLabel.SOLID_TORUS, RegionLabel.OTHER}),
    frozenset({RegionLabel.KNOTTED_HOLE_BALL, RegionLabel.OTHER}),
}


@dataclass(frozen=True)
class TreeEdge:
    u: str
    v: str
    label_beyond_u: RegionLabel  # region on the far side from u (contains v)
    label_beyond_v: RegionLabel  # region on the far side from v (contains u)

    def endpoints(self) -> frozenset[str]:
        return frozenset({self.u, self.v})

    def label_away_from(self, vertex: str) -> RegionLabel:
        if vertex == self.u:
            return self.label_beyond_u
        if vertex == self.v:
            return self.label_beyond_v
        raise KeyError(vertex)

    def other_end(self, vertex: str) -> str:
        return self.v if vertex == self.u else self.u


@dataclass(frozen=True)
class JsjTree:
    vertices: dict[str, Geometry]
    edges: tuple[TreeEdge, ...]

    def incident(self, vertex: str) -> list[TreeEdge]:
        return [e for e in self.edges if vertex in (e.u, e.v)]

    def adjacency(self) -> dict[str, list[TreeEdge]]:
        adj: dict[str, list[TreeEdge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            adj[e.u].append(e)
            adj[e.v].append(e)
        return adj


@dataclass(frozen=True)
class CoverSpec:
    cover: JsjTree
    vertex_map: dict[str, str]  # the involution on vertex ids


@dataclass(frozen=True)
class CoverCheckEntry:
    vertex: str                 # quotient vertex id
    orbit: tuple[str, ...]      # its cover preimage (one or two vertices)
    outermost: bool             # label criterion in the quotient
    criterion: bool             # connected preimage + even non-solid-torus count
    agree: bool


class TreeValidationError(Exception):
    """Carries the list of (code, detail) constraint violations."""

    def __init__(self, violations: list[tuple[str, str]]):
        self.violations = violations
        super().__init__("; ".join(f"{c}: {d}" for c, d in violations))


def tree_violations(raw: dict) -> list[tuple[str, str]]:
    """All constraint violations of a raw tree description."""
    violations: list[tuple[str, str]] = []
    vertices: dict[str, Geometry] = {}
    for entry in raw.get("vertices", []):
        vid = entry.get("id")
        if not isinstance(vid, str) or vid in vertices:
            violations.append(("NOT_A_TREE", f"bad or duplicate vertex id {vid!r}"))
            continue
        try:
            vertices[vid] = Geometry(entry.get("geometry"))
        except ValueError:
            violations.append(
                ("NOT_A_TREE", f"unknown geometry for vertex {vid!r}"))

    shape: list[tuple[str, str]] = []  # edges with usable endpoints
    for entry in raw.get("edges", []):
        u, v = entry.get("u"), entry.get("v")
        if u not in vertices or v not in vertices or u == v:
            violations.append(("NOT_A_TREE", f"bad edge endpoints {u!r}-{v!r}"))
            continue
        shape.append((u, v))
        try:
            lu = RegionLabel(entry["label_beyond_u"])
            lv = RegionLabel(entry["label_beyond_v"])
        except (KeyError, ValueError):
            violations.append(("UNLABELED_EDGE", f"edge {u!r}-{v!r} lacks labels"))
            continue
        if frozenset({lu, lv}) not in _ALLOWED_PAIRS:
            violations.append((
                "FORBIDDEN_LABEL_PAIR",
                f"edge {u!r}-{v!r} carries ({lu.value}, {lv.value})"))

    if vertices and not any(code == "NOT_A_TREE" for code, _ in violations):
        if len(shape) != len(vertices) - 1:
            violations.append(
                ("NOT_A_TREE", f"{len(vertices)} vertices need "
                               f"{len(vertices) - 1} edges, got {len(shape)}"))
        else:
            seen = set()
            stack = [next(iter(vertices))]
            adj: dict[str, list[str]] = {v: [] for v in vertices}
            for u, v in shape:
                adj[u].append(v)
                adj[v].append(u)
            while stack:
                x = stack.pop()
                if x in seen:
                    continue
                seen.add(x)
                stack.extend(adj[x])
            if len(seen) != len(vertices):
                violations.append(("NOT_A_TREE", "graph is not connected"))
    elif not vertices:
        violations.append(("NOT_A_TREE", "no vertices"))
    return violations


def validate_tree(raw: dict) -> JsjTree:
    """Parse and validate a raw tree description; raises on any violation."""
    violations = tree_violations(raw)
    if violations:
        raise TreeValidationError(violations)
    vertices = {e["id"]: Geometry(e["geometry"]) for e in raw["vertices"]}
    edges = tuple(
        TreeEdge(e["u"], e["v"],
                 RegionLabel(e["label_beyond_u"]), RegionLabel(e["label_beyond_v"]))
        for e in raw["edges"])
    return JsjTree(vertices, edges)


def tree_to_dict(tree: JsjTree) -> dict:
    return {
        "vertices": [
            {"id": vid, "geometry": geom.value}
            for vid, geom in sorted(tree.vertices.items())
        ],
        "edges": [
            {
                "u": e.u, "v": e.v,
                "label_beyond_u": e.label_beyond_u.value,
                "label_beyond_v": e.label_beyond_v.value,
            }
            for e in tree.edges
        ],
    }


def edge_orientation(edge: TreeEdge) -> tuple[str, str] | None:
    """Derived orientation (tail, head), or None for a Heegaard edge.

    The head endpoint is the one enclosed in the solid torus or knotted
    hole ball on its side of the torus.
    """
    lu, lv = edge.label_beyond_u, edge.label_beyond_v
    if lu is RegionLabel.SOLID_TORUS and lv is RegionLabel.SOLID_TORUS:
        return None
    if lu is not RegionLabel.OTHER:
        return (edge.u, edge.v)
    return (edge.v, edge.u)


def potential(tree: JsjTree) -> dict[str, int]:
    """The unique vertex potential, normalized to minimum zero.

    Increases by one along every oriented edge and is constant across
    Heegaard edges; existence and uniqueness follow from connectedness and
    acyclicity.
    """
    values: dict[str, int] = {}
    adj = tree.adjacency()
    root = min(tree.vertices)
    values[root] = 0
    stack = [root]
    while stack:
        x = stack.pop()
        for e in adj[x]:
            y = e.other_end(x)
            if y in values:
                continue
            orient = edge_orientation(e)
            if orient is None:
                values[y] = values[x]
            elif orient == (x, y):
                values[y] = values[x] + 1
            else:
                values[y] = values[x] - 1
            stack.append(y)
    low = min(values.values())
    return {v: f - low for v, f in values.items()}


def _local_minima(tree: JsjTree, values: dict[str, int]) -> set[str]:
    adj = tree.adjacency()
    return {
        v for v in tree.vertices
        if all(values[v] <= values[e.other_end(v)] for e in adj[v])
    }


def outermost(tree: JsjTree) -> set[str]:
    """Vertices all of whose far-side regions are solid tori or knotted
    hole balls; always non-empty, and equal to the local minima of the
    potential."""
    adj = tree.adjacency()
    result = {
        v for v in tree.vertices
        if all(e.label_away_from(v) is not RegionLabel.OTHER for e in adj[v])
    }
    minima = _local_minima(tree, potential(tree))
    assert result == minima, "label criterion disagrees with potential minima"
    assert result, "every finite tree has an outermost vertex"
    return result


# ---------------------------------------------------------------------------
# Covers and quotients.


def _involution_violations(spec: CoverSpec) -> list[tuple[str, str]]:
    tree, sigma = spec.cover, spec.vertex_map
    violations: list[tuple[str, str]] = []
    if set(sigma) != set(tree.vertices) or set(sigma.values()) != set(tree.vertices):
        return [("INVALID_INVOLUTION", "vertex map is not a permutation")]
    for v, w in sigma.items():
        if sigma[w] != v:
            violations.append(
                ("INVALID_INVOLUTION", f"map is not an involution at {v!r}"))
        if tree.vertices[v] is not tree.vertices[w]:
            violations.append(
                ("INVALID_INVOLUTION", f"geometry differs on orbit {v!r}/{w!r}"))
    if violations:
        return violations

    by_ends = {e.endpoints(): e for e in tree.edges}
    for e in tree.edges:
        image_ends = frozenset({sigma[e.u], sigma[e.v]})
        image = by_ends.get(image_ends)
        if image is None:
            violations.append(
                ("INVALID_INVOLUTION",
                 f"image of edge {e.u!r}-{e.v!r} is not an edge"))
            continue
        if image.label_away_from(sigma[e.u]) != e.label_beyond_u or \
                image.label_away_from(sigma[e.v]) != e.label_beyond_v:
            violations.append(
                ("INVALID_INVOLUTION",
                 f"labels not preserved on edge {e.u!r}-{e.v!r}"))
        if image_ends == e.endpoints():
            if sigma[e.u] == e.v:
                violations.append(
                    ("INVALID_INVOLUTION",
                     f"fixed edge {e.u!r}-{e.v!r} swaps its endpoints"))
            if RegionLabel.KNOTTED_HOLE_BALL in (e.label_beyond_u,
                                                 e.label_beyond_v):
                violations.append(
                    ("INVALID_INVOLUTION",
                     f"knotted-hole-ball edge {e.u!r}-{e.v!r} is fixed"))
    return violations


def _quotient_with_map(spec: CoverSpec) -> tuple[JsjTree, dict[str, str]]:
    violations = _involution_violations(spec)
    if violations:
        raise TreeValidationError(violations)
    tree, sigma = spec.cover, spec.vertex_map
    rep = {v: min(v, sigma[v]) for v in tree.vertices}
    vertices = {r: tree.vertices[r] for r in set(rep.values())}

    edges: dict[frozenset[str], TreeEdge] = {}
    for e in sorted(tree.edges, key=lambda e: tuple(sorted((e.u, e.v)))):
        key = frozenset({rep[e.u], rep[e.v]})
        if key not in edges:
            edges[key] = TreeEdge(rep[e.u], rep[e.v],
                                  e.label_beyond_u, e.label_beyond_v)
    quotient_tree = JsjTree(vertices, tuple(edges.values()))
    check = tree_violations(tree_to_dict(quotient_tree))
    if check:
        raise TreeValidationError(
            [("INVALID_INVOLUTION", f"quotient is invalid ({c}: {d})")
             for c, d in check])
    return quotient_tree, rep


def quotient(spec: CoverSpec) -> JsjTree:
    """Quotient tree of a cover by its involution; labels are inherited."""
    return _quotient_with_map(spec)[0]


def lemma44_check(spec: CoverSpec) -> tuple[CoverCheckEntry, ...]:
    """Compare outermost status downstairs with the parity criterion upstairs.

    For each quotient vertex: it should be outermost exactly when its
    preimage is a single fixed vertex whose incident far-side regions in
    the cover include an even number of non-solid-torus labels.  On
    geometrically consistent covers the two computations agree; the entries
    report any mismatch.
    """
    quotient_tree, rep = _quotient_with_map(spec)
    outer = outermost(quotient_tree)
    sigma = spec.vertex_map
    adj = spec.cover.adjacency()

    entries = []
    for qv in sorted(quotient_tree.vertices):
        orbit = tuple(sorted({qv, sigma[qv]}))
        if len(orbit) == 1:
            non_st = sum(
                1 for e in adj[qv]
                if e.label_away_from(qv) is not RegionLabel.SOLID_TORUS)
            criterion = non_st % 2 == 0
        else:
            criterion = False  # disconnected preimage
        is_outer = qv in outer
        entries.append(CoverCheckEntry(
            vertex=qv, orbit=orbit, outermost=is_outer,
            criterion=criterion, agree=is_outer == criterion))
    # rep maps cover ids onto quotient ids; orbit reps are their own image
    assert all(rep[e.vertex] == e.vertex for e in entries)
    return tuple(entries)


def cover_from_dict(raw: dict) -> CoverSpec:
    """Parse {"vertices": ..., "edges": ..., "involution": {"vertex_map": ...}}."""
    tree = validate_tree(raw)
    inv = raw.get("involution", {})
    vmap = inv.get("vertex_map")
    if not isinstance(vmap, dict):
        raise TreeValidationError(
            [("INVALID_INVOLUTION", "missing involution.vertex_map")])
    return CoverSpec(tree, dict(vmap))


def cover_to_dict(spec: CoverSpec) -> dict:
    out = tree_to_dict(spec.cover)
    out["involution"] = {"vertex_map": dict(sorted(spec.vertex_map.items()))}
    return out
