"""Gluing combinatorics of line families: points, graphs, evaluation maps.

For n = 2, k = 1 every subspace in the family is a line in k^2, hence a
point of the projective line. The gluing graph has those points as
vertices and one arrow from the W_i-point to the V_i-point per pair. A
family is modest when this multigraph is a forest, which is detected both
combinatorially (cycle rank zero) and through the rank of the truncated
evaluation map on polynomials; the two detections must always agree.

All points are moved into a common affine chart first: the chart b != 0
with coordinate a/b, precomposed with z -> 1/(z - q) for the smallest
unoccupied nonnegative integer q whenever some point sits at infinity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactla import Matrix, Subspace, kernel_basis, rref
from .family import Family, check_G


@dataclass(frozen=True, order=True)
class P1Point:
    a: Fraction
    b: Fraction

    def __str__(self) -> str:
        return f"{self.a}:{self.b}"


def line_to_point(v: Subspace) -> P1Point:
    if v.ambient != 2 or v.dim != 1:
        raise ValueError("expected a line in the plane")
    a, b = v.vectors()[0]
    if a != 0:
        return P1Point(Fraction(1), b / a)
    return P1Point(Fraction(0), Fraction(1))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[ry] = rx
        return True


@dataclass
class CurveGraph:
    vertices: list  # distinct P1Points
    origins: dict  # vertex index -> sorted origin labels like "V1", "W2"
    edges: list  # (from_index, to_index, pair_label)
    components: list  # component id per vertex
    cycle_rank: int

    @property
    def component_count(self) -> int:
        return len(set(self.components))

    def component_members(self) -> dict:
        out: dict = {}
        for idx, comp in enumerate(self.components):
            out.setdefault(comp, []).append(idx)
        return out


def _require_line_family(f: Family) -> None:
    if f.n != 2 or any(k != 1 for k in f.kseq):
        raise ValueError("curve analysis needs n = 2 and one-dimensional subspaces")
    cert = check_G(f)
    if not cert.holds:
        raise ValueError(f"property (G) fails at pair {cert.first_failure}")


def build_graph(f: Family) -> CurveGraph:
    _require_line_family(f)
    vertices: list = []
    index: dict = {}
    origins: dict = {}

    def vertex_of(point: P1Point, label: str) -> int:
        if point not in index:
            index[point] = len(vertices)
            vertices.append(point)
        origins.setdefault(index[point], []).append(label)
        return index[point]

    edges = []
    for i in range(1, f.m + 1):
        v_idx = vertex_of(line_to_point(f.V(i)), f"V{i}")
        w_idx = vertex_of(line_to_point(f.W(i)), f"W{i}")
        edges.append((w_idx, v_idx, i))
    uf = _UnionFind(len(vertices))
    for w_idx, v_idx, _ in edges:
        uf.union(w_idx, v_idx)
    components = [uf.find(i) for i in range(len(vertices))]
    cycle_rank = len(edges) - len(vertices) + len(set(components))
    return CurveGraph(vertices, {k: sorted(v) for k, v in origins.items()}, edges, components, cycle_rank)


def is_modest(g: CurveGraph) -> bool:
    return g.cycle_rank == 0


def affine_coordinates(points) -> list:
    """One affine coordinate per point, after a chart move if needed."""
    if all(p.b != 0 for p in points):
        return [p.a / p.b for p in points]
    occupied = {p.a / p.b for p in points if p.b != 0}
    q = Fraction(0)
    while q in occupied:
        q += 1
    # z -> 1/(z - q) sends infinity to 0 and keeps every point finite
    out = []
    for p in points:
        if p.b == 0:
            out.append(Fraction(0))
        else:
            out.append(p.b / (p.a - q * p.b))
    return out


def _evaluation_points(f: Family) -> tuple:
    """(affine coordinates of v_1..v_m, of w_1..w_m, number of distinct points)."""
    v_points = [line_to_point(f.V(i)) for i in range(1, f.m + 1)]
    w_points = [line_to_point(f.W(i)) for i in range(1, f.m + 1)]
    coords = affine_coordinates(v_points + w_points)
    distinct = len(set(v_points + w_points))
    return coords[: f.m], coords[f.m :], distinct


def lambda_matrix(f: Family, d: int) -> Matrix:
    """Rows evaluate (polynomial of degree <= d, constants tuple) at the
    2m marked points: v_1..v_m then w_1..w_m, with -1 in the pair column."""
    _require_line_family(f)
    v_coords, w_coords, _ = _evaluation_points(f)
    rows = []
    for i, z in enumerate(v_coords + w_coords):
        row = [z**e for e in range(d + 1)]
        row += [Fraction(-1) if j == i % f.m else Fraction(0) for j in range(f.m)]
        rows.append(row)
    return Matrix.from_rows(rows, d + 1 + f.m)


def lambda_rank(f: Family, d: int | None = None) -> tuple:
    """(rank, surjective) of the truncated evaluation map; the rank must
    already be stable from d to d + 1."""
    _, _, distinct = _evaluation_points(f) if f.m else ([], [], 0)
    if d is None:
        d = max(distinct - 1, 0)
    if d < max(distinct - 1, 0):
        raise ValueError("degree bound too small for rank stabilization")
    if f.m == 0:
        return 0, True
    _, rank = rref(lambda_matrix(f, d))
    _, rank_next = rref(lambda_matrix(f, d + 1))
    if rank != rank_next:
        raise AssertionError("evaluation rank did not stabilize")
    return rank, rank == 2 * f.m


def forest_lambda_consistency(f: Family) -> bool:
    """The forest test and the surjectivity test must agree."""
    graph_says = is_modest(build_graph(f))
    _, lambda_says = lambda_rank(f)
    return graph_says == lambda_says


def spanning_forest_reduce(f: Family) -> Family:
    """Greedy lowest-label subfamily whose graph is a maximal spanning forest."""
    _require_line_family(f)
    g = build_graph(f)
    uf = _UnionFind(len(g.vertices))
    keep = []
    for w_idx, v_idx, label in g.edges:
        if uf.union(w_idx, v_idx):
            keep.append(label)
    return f.subfamily(keep)


def coordinate_ring_basis(f: Family, d: int) -> list:
    """Basis of the degree-d truncation of the glued coordinate ring:
    pairs (polynomial coefficients, point values) in the kernel of the
    evaluation map."""
    _require_line_family(f)
    if f.m == 0:
        basis = []
        for e in range(d + 1):
            coeffs = [Fraction(0)] * (d + 1)
            coeffs[e] = Fraction(1)
            basis.append((coeffs, []))
        return basis
    out = []
    for vec in kernel_basis(lambda_matrix(f, d)):
        out.append((vec[: d + 1], vec[d + 1 :]))
    return out


def curve_report(f: Family) -> dict:
    """Singular-point census of the glued curve."""
    g = build_graph(f)
    rank, surjective = lambda_rank(f)
    members = g.component_members()
    singular = []
    for comp, verts in sorted(members.items()):
        singular.append(
            {
                "branches": len(verts),
                "points": sorted(str(g.vertices[v]) for v in verts),
            }
        )
    c = len(g.vertices)
    return {
        "points": [str(p) for p in g.vertices],
        "origins": {str(g.vertices[i]): labels for i, labels in sorted(g.origins.items())},
        "edges": [[str(g.vertices[w]), str(g.vertices[v]), i] for w, v, i in g.edges],
        "singular_points": singular,
        "singular_count": len(singular),
        "modest": is_modest(g),
        "cycle_rank": g.cycle_rank,
        "lambda_rank": rank,
        "lambda_surjective": surjective,
        "distinct_points": c,
        "c_bound_ok": c <= 2 * f.m,
    }
