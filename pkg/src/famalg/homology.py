"""Right modules, minimal projective resolutions, global dimension.

Modules are right modules throughout; the projective at a vertex v is
e_v A, the span of basis words with target v, with the algebra acting by
right multiplication. Projective covers lift a basis of the top and the
kernel of the cover is the next syzygy. Minimality is verified at every
step: the kernel must avoid the generator coordinates (the radical of
e_v A is exactly its non-idempotent span for the connected graded algebras
built here).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactla import SpanBuilder, add_scaled
from .ralgebra import GradedAlgebra


class ResolutionCutoff(Exception):
    """Raised when a resolution does not terminate within the cutoff."""


@dataclass
class FDModule:
    algebra: GradedAlgebra
    vertices: tuple  # vertex sector of each module basis vector
    action: dict  # algebra eid -> {row: {col: coeff}}, rows absent when zero

    @property
    def dim(self) -> int:
        return len(self.vertices)

    def act(self, vec: dict, eid: int) -> dict:
        rows = self.action.get(eid)
        if not rows:
            return {}
        out: dict = {}
        for i, c in vec.items():
            row = rows.get(i)
            if row:
                add_scaled(out, row, c)
        return out

    def act_algebra_vector(self, vec: dict, avec: dict) -> dict:
        out: dict = {}
        for eid, c in avec.items():
            add_scaled(out, self.act(vec, eid), c)
        return out

    def check_unit_action(self) -> bool:
        for i in range(self.dim):
            total: dict = {}
            for e in self.algebra.idempotent_ids:
                add_scaled(total, self.act({i: Fraction(1)}, e), Fraction(1))
            if total != {i: Fraction(1)}:
                return False
        return True

    def check_action_respects_products(self) -> bool:
        a = self.algebra
        for (x, y), prod in a.mult.items():
            for i in range(self.dim):
                via_xy = self.act(self.act({i: Fraction(1)}, x), y)
                direct: dict = {}
                for k, c in prod.items():
                    add_scaled(direct, self.act({i: Fraction(1)}, k), c)
                if via_xy != direct:
                    return False
        for x in range(a.dim):
            for y in range(a.dim):
                if (x, y) not in a.mult:
                    for i in range(self.dim):
                        if self.act(self.act({i: Fraction(1)}, x), y):
                            return False
        return True


def _radical_nilpotent(a: GradedAlgebra) -> bool:
    rad = a.radical_ids()
    layer = [{r: Fraction(1)} for r in rad]
    for _ in range(a.dim + 1):
        if not layer:
            return True
        span = SpanBuilder()
        nxt = []
        for u in layer:
            for r in rad:
                prod = a.multiply(u, {r: Fraction(1)})
                red = span.reduce(prod)
                if span.insert(dict(red)):
                    nxt.append(red)
        layer = nxt
    return False


def projective_module(a: GradedAlgebra, v: int) -> tuple:
    """(e_v A as an FDModule, list mapping module coords to algebra eids)."""
    ids = [b.eid for b in a.basis if b.target == v]
    coord = {eid: i for i, eid in enumerate(ids)}
    action: dict = {}
    for i, eid in enumerate(ids):
        for y in range(a.dim):
            prod = a.product_ids(eid, y)
            if prod:
                action.setdefault(y, {})[i] = {coord[k]: c for k, c in prod.items()}
    vertices = tuple(a.basis[eid].source for eid in ids)
    return FDModule(a, vertices, action), ids


def simple_module(a: GradedAlgebra, v: int) -> FDModule:
    action = {a.idempotent_ids[v]: {0: {0: Fraction(1)}}}
    return FDModule(a, (v,), action)


def simples_and_projectives(a: GradedAlgebra):
    """(S_1, S_2, P_1, P_2) for a 2-vertex algebra, with a side self-test."""
    if a.vertex_count != 2:
        raise ValueError("expected a 2-vertex algebra")
    if not _radical_nilpotent(a):
        raise ValueError("radical is not nilpotent; not a valid basic algebra")
    p = [projective_module(a, v)[0] for v in range(2)]
    s = [simple_module(a, v) for v in range(2)]
    for b in a.basis:
        if b.eid not in a.idempotent_ids:
            gen = {a.idempotent_ids[b.target]: Fraction(1)}
            if not a.multiply(gen, {b.eid: Fraction(1)}):
                raise AssertionError("side convention self-test failed")
            break
    return s[0], s[1], p[0], p[1]


@dataclass
class CoverData:
    module: FDModule  # the syzygy (kernel of the cover)
    multiplicities: tuple  # copies of P_v per vertex
    minimal: bool


def projective_cover_step(m: FDModule) -> CoverData:
    """Cover m by projectives lifting a basis of m / m.rad; return the kernel."""
    a = m.algebra
    rad_ids = a.radical_ids()
    rad_span = SpanBuilder()
    for i in range(m.dim):
        for r in rad_ids:
            vec = m.act({i: Fraction(1)}, r)
            if vec:
                rad_span.insert(vec)
    top_coords = [i for i in range(m.dim) if i not in rad_span.pivots]
    # lifts must be sector-pure; unit coordinates are by construction
    mults = [0] * a.vertex_count
    gens = []  # (vertex, generator coordinate in m)
    for i in top_coords:
        v = m.vertices[i]
        mults[v] += 1
        gens.append((v, i))
    # the covering projective: for each generator, a copy of P_{v}
    proj_parts = []
    offsets = []
    total = 0
    proj_cache = {}
    for v, _ in gens:
        if v not in proj_cache:
            proj_cache[v] = projective_module(a, v)
        pm, ids = proj_cache[v]
        proj_parts.append((pm, ids))
        offsets.append(total)
        total += pm.dim
    # phi: P -> m sends the generator of copy t to the lift, extended by the action
    phi_rows = {}  # P coordinate -> image vector in m
    p_vertices = []
    gen_coords = set()
    for t, ((pm, ids), (v, lift_coord)) in enumerate(zip(proj_parts, gens)):
        base = offsets[t]
        for local, eid in enumerate(ids):
            img = m.act({lift_coord: Fraction(1)}, eid)
            if img:
                phi_rows[base + local] = img
            p_vertices.append(a.basis[eid].source)
            if eid == a.idempotent_ids[v]:
                gen_coords.add(base + local)
    # surjectivity of the cover
    surj_span = SpanBuilder()
    for row in phi_rows.values():
        surj_span.insert(row)
    if surj_span.rank != m.dim:
        raise AssertionError("projective cover is not surjective")
    # kernel via elimination with marker keys; ("m", c) dominates ("k", t)
    ker_span = SpanBuilder()
    kernel_rows = []
    for t in range(total):
        row = {("k", t): Fraction(1)}
        for c, val in phi_rows.get(t, {}).items():
            row[("m", c)] = val
        red = ker_span.reduce(row)
        ker_span.insert(dict(red))
    for lead, row in ker_span.pivots.items():
        if lead[0] == "k":
            if any(key[0] == "m" for key in row):
                raise AssertionError("kernel extraction produced a mixed row")
            kernel_rows.append({key[1]: c for key, c in row.items()})
    minimal = all(all(t not in gen_coords for t in row) for row in kernel_rows)
    # sector-split the kernel and re-reduce per sector
    sector_rows = {}
    for row in kernel_rows:
        by_v: dict = {}
        for t, c in row.items():
            by_v.setdefault(p_vertices[t], {})[t] = c
        for v, part in by_v.items():
            sector_rows.setdefault(v, SpanBuilder()).insert(part)
    basis_rows = []
    basis_vertices = []
    for v in sorted(sector_rows):
        for lead in sorted(sector_rows[v].pivots):
            basis_rows.append(sector_rows[v].pivots[lead])
            basis_vertices.append(v)
    pivot_of = [max(row) for row in basis_rows]
    # kernel action: act inside P, then read coordinates off the pivots
    big = FDModule(a, tuple(p_vertices), _direct_sum_action(proj_parts, offsets))
    k_action: dict = {}
    for i, row in enumerate(basis_rows):
        for y in range(a.dim):
            img = big.act(row, y)
            if not img:
                continue
            coords = {}
            residual = dict(img)
            for r, prow in enumerate(basis_rows):
                c = residual.get(pivot_of[r])
                if c:
                    coords[r] = c
                    add_scaled(residual, prow, -c)
            if residual:
                raise AssertionError("kernel is not closed under the action")
            k_action.setdefault(y, {})[i] = coords
    kernel = FDModule(a, tuple(basis_vertices), k_action)
    return CoverData(kernel, tuple(mults), minimal)


def _direct_sum_action(parts, offsets) -> dict:
    action: dict = {}
    for (pm, _), base in zip(parts, offsets):
        for y, rows in pm.action.items():
            tgt = action.setdefault(y, {})
            for i, row in rows.items():
                tgt[base + i] = {base + j: c for j, c in row.items()}
    return action


@dataclass
class ResolutionEntry:
    vertex: int  # 1-based vertex of the simple
    betti: list  # per-step projective multiplicities
    length: int | None  # None when the cutoff was hit
    minimal: bool


def minimal_resolution(a: GradedAlgebra, module: FDModule, cutoff: int) -> ResolutionEntry:
    betti = []
    minimal = True
    current = module
    for step in range(cutoff + 1):
        if current.dim == 0:
            return ResolutionEntry(0, betti, len(betti) - 1, minimal)
        cover = projective_cover_step(current)
        betti.append(list(cover.multiplicities))
        minimal = minimal and cover.minimal
        current = cover.module
    return ResolutionEntry(0, betti, None, minimal)


@dataclass
class ResolutionReport:
    entries: list
    gldim: object  # int, or ">= cutoff" when unresolved
    loewy: int

    def to_dict(self) -> dict:
        return {
            "per_simple": [
                {"vertex": e.vertex, "betti": e.betti, "length": e.length, "minimal": e.minimal}
                for e in self.entries
            ],
            "gldim": self.gldim,
            "loewy": self.loewy,
        }


def gldim(a: GradedAlgebra, cutoff: int | None = None):
    """Max resolution length over the simples; ">= cutoff" if unresolved."""
    cutoff = cutoff if cutoff is not None else a.dim + 2
    lengths = []
    for v in range(a.vertex_count):
        entry = minimal_resolution(a, simple_module(a, v), cutoff)
        if entry.length is None:
            return f">= {cutoff}"
        lengths.append(entry.length)
    return max(lengths)


def loewy_length(a: GradedAlgebra) -> int:
    """Least t with rad^t = 0."""
    rad = a.radical_ids()
    layer = [{r: Fraction(1)} for r in rad]
    t = 1
    while layer:
        if t > a.dim + 1:
            raise ValueError("radical is not nilpotent")
        span = SpanBuilder()
        nxt = []
        for u in layer:
            for r in rad:
                red = span.reduce(a.multiply(u, {r: Fraction(1)}))
                if span.insert(dict(red)):
                    nxt.append(red)
        layer = nxt
        t += 1
    return t


def resolution_report(a: GradedAlgebra, cutoff: int | None = None) -> ResolutionReport:
    cutoff = cutoff if cutoff is not None else a.dim + 2
    entries = []
    for v in range(a.vertex_count):
        entry = minimal_resolution(a, simple_module(a, v), cutoff)
        entry.vertex = v + 1
        entries.append(entry)
    gl = f">= {cutoff}" if any(e.length is None for e in entries) else max(e.length for e in entries)
    return ResolutionReport(entries, gl, loewy_length(a))


def euler_characteristic_consistent(a: GradedAlgebra, report: ResolutionReport) -> bool:
    """Alternating Betti sums against projective dimensions reproduce dim S = 1."""
    pdims = [projective_module(a, v)[0].dim for v in range(a.vertex_count)]
    for entry in report.entries:
        if entry.length is None:
            return False
        total = 0
        for i, mults in enumerate(entry.betti):
            total += (-1) ** i * sum(mu * d for mu, d in zip(mults, pdims))
        if total != 1:
            return False
    return True
