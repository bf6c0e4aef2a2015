"""Closed-form construction of the family algebra and its gradings.

The algebra attached to a family has a basis of tensor words indexed by
(u; P): for P = {p_1 < ... < p_s} the words interleave the letters
b_{p_s} ... b_{p_1} (decreasing left to right) with vectors from the chosen
complement subspaces; an optional leading letter comes from V_{p_s} and an
optional trailing letter from W_{p_1}. Multiplication concatenates words
and contracts the meeting letter through the projection onto the complement
of V_{min P} + W_{max Q}. Everything is verified against the independent
path-algebra oracle by an explicit bijective multiplicative map.

Vertex conventions (2-vertex algebras): internal vertex 0 is quiver vertex
1, internal vertex 1 is quiver vertex 2; C-letters run 1 -> 2, b-letters
2 -> 1. A word's source is the vertex its rightmost letter starts at, so
e_a A e_b = span of words with source b and target a.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from . import quiverpath as qp
from .exactla import Matrix, rref
from .family import Family, ComplementData, check_G, complements


@dataclass(frozen=True)
class BasisElement:
    eid: int
    source: int
    target: int
    word: str
    u: int | None = None
    P: tuple | None = None
    zdeg: int = 0

    @property
    def mdeg(self):
        return None if self.u is None else (self.u, self.P)


class GradedAlgebra:
    """Finite-dimensional algebra with explicit basis and structure constants."""

    def __init__(self, vertex_count: int, basis, idempotent_ids, mult):
        self.vertex_count = vertex_count
        self.basis = list(basis)
        self.idempotent_ids = tuple(idempotent_ids)
        self.mult = mult  # (i, j) -> {k: Fraction}, absent pairs are zero
        if len(self.idempotent_ids) != vertex_count:
            raise ValueError("one idempotent per vertex required")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def product_ids(self, i: int, j: int) -> dict:
        return self.mult.get((i, j), {})

    def multiply(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, ci in x.items():
            for j, cj in y.items():
                prod = self.mult.get((i, j))
                if not prod:
                    continue
                c = ci * cj
                for k, ck in prod.items():
                    s = out.get(k, Fraction(0)) + c * ck
                    if s:
                        out[k] = s
                    else:
                        del out[k]
        return out

    def unit(self) -> dict:
        return {e: Fraction(1) for e in self.idempotent_ids}

    def radical_ids(self) -> list:
        idem = set(self.idempotent_ids)
        return [b.eid for b in self.basis if b.eid not in idem]

    def zdegrees(self) -> list:
        return [b.zdeg for b in self.basis]

    def check_unital(self) -> bool:
        one = self.unit()
        for b in self.basis:
            x = {b.eid: Fraction(1)}
            if self.multiply(one, x) != x or self.multiply(x, one) != x:
                return False
        return True

    def check_associativity(self) -> bool:
        """(xy)z == x(yz) on all basis triples.

        Triples where both xy and yz vanish are skipped (both sides are
        then zero), which keeps the exhaustive check fast on sparse tables.
        """
        n = self.dim
        left_of: dict = {}
        right_of: dict = {}
        for (i, j) in self.mult:
            left_of.setdefault(j, []).append(i)
            right_of.setdefault(i, []).append(j)
        for j in range(n):
            i_list = left_of.get(j, [])
            k_list = right_of.get(j, [])
            pairs = {(i, k) for i in i_list for k in range(n)}
            pairs.update((i, k) for i in range(n) for k in k_list)
            for i, k in pairs:
                xy = self.mult.get((i, j), {})
                left: dict = {}
                for t, c in xy.items():
                    for r, cr in self.mult.get((t, k), {}).items():
                        s = left.get(r, Fraction(0)) + c * cr
                        if s:
                            left[r] = s
                        else:
                            del left[r]
                right: dict = {}
                for t, c in self.mult.get((j, k), {}).items():
                    for r, cr in self.mult.get((i, t), {}).items():
                        s = right.get(r, Fraction(0)) + c * cr
                        if s:
                            right[r] = s
                        else:
                            del right[r]
                if left != right:
                    return False
        return True

    def check_mdeg_additivity(self) -> bool:
        for (i, j), prod in self.mult.items():
            bi, bj = self.basis[i], self.basis[j]
            if bi.u is None or bj.u is None:
                continue
            expected = (bi.u + bj.u, tuple(sorted(bi.P + bj.P)))
            for k in prod:
                if self.basis[k].mdeg != expected:
                    return False
        return True

    def check_zdeg_additivity(self) -> bool:
        for (i, j), prod in self.mult.items():
            z = self.basis[i].zdeg + self.basis[j].zdeg
            if any(self.basis[k].zdeg != z for k in prod):
                return False
        return True

    def component_dims(self) -> dict:
        out: dict = {}
        for b in self.basis:
            if b.u is not None:
                key = (b.u, b.P)
                out[key] = out.get(key, 0) + 1
        return out

    def to_dict(self) -> dict:
        basis = [
            {
                "id": b.eid,
                "source": b.source + 1,
                "target": b.target + 1,
                "u": b.u,
                "P": list(b.P) if b.P is not None else None,
                "zdegree": b.zdeg,
                "word": b.word,
            }
            for b in self.basis
        ]
        mult = []
        for (i, j) in sorted(self.mult):
            entries = sorted(self.mult[i, j].items())
            if entries:
                mult.append([i, j, [[k, str(c)] for k, c in entries]])
        return {"vertex_count": self.vertex_count, "basis": basis, "mult": mult}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def cartan_matrix(a: GradedAlgebra) -> list:
    """Entry (r, c), 1-based: dim of {words with source c and target r}."""
    if a.vertex_count != 2:
        raise ValueError("cartan_matrix expects a 2-vertex algebra")
    out = [[0, 0], [0, 0]]
    for b in a.basis:
        out[b.target][b.source] += 1
    return out


# -- closed-form construction --------------------------------------------


def _slot_subspaces(data: ComplementData, P: tuple, has_left: bool, has_right: bool):
    slots = []
    if has_left:
        slots.append(data.T_onto_V[P[-1]])
    for hi, lo in zip(reversed(P[1:]), reversed(P[:-1])):
        slots.append(data.T[hi, lo])
    if has_right:
        slots.append(data.T_onto_W[P[0]])
    return slots


def _slot_names(P: tuple, has_left: bool, has_right: bool):
    names = []
    if has_left:
        names.append(f"v{P[-1]}")
    for hi, lo in zip(reversed(P[1:]), reversed(P[:-1])):
        names.append(f"t{hi},{lo}")
    if has_right:
        names.append(f"w{P[0]}")
    return names


def _word_string(P: tuple, has_left: bool, has_right: bool, letters: tuple) -> str:
    names = _slot_names(P, has_left, has_right)
    parts = []
    pos = 0
    if has_left:
        parts.append(f"{names[0]}[{letters[0]}]")
        pos = 1
    for idx, p in enumerate(reversed(P)):
        parts.append(f"b{p}")
        if idx < len(P) - 1:
            parts.append(f"{names[pos]}[{letters[pos]}]")
            pos += 1
    if has_right:
        parts.append(f"{names[pos]}[{letters[pos]}]")
    return " ".join(parts)


_SHAPES = ((False, False), (True, False), (False, True), (True, True))


def build_R(f: Family) -> GradedAlgebra:
    """The graded algebra of a (G)-family, with verified structure constants."""
    cert = check_G(f)
    if not cert.holds:
        raise ValueError(f"property (G) fails at pair {cert.first_failure}")
    data = complements(f)
    n, m = f.n, f.m

    basis: list[BasisElement] = []
    index: dict = {}  # (P, has_left, has_right, letters) -> eid
    keys: list = []

    def add(source, target, word, u, P, key):
        eid = len(basis)
        basis.append(BasisElement(eid, source, target, word, u, P))
        index[key] = eid
        keys.append(key)
        return eid

    add(0, 0, "e1", 0, (), ("e", 0))
    add(1, 1, "e2", 0, (), ("e", 1))
    for h in range(n):
        add(0, 1, f"c{h + 1}", 1, (), ("c", h))

    for s in range(1, m + 1):
        for P in itertools.combinations(range(1, m + 1), s):
            for has_left, has_right in _SHAPES:
                slots = _slot_subspaces(data, P, has_left, has_right)
                if any(t.dim == 0 for t in slots):
                    continue
                u = s - 1 + has_left + has_right
                source = 1 if not has_right else 0
                target = 0 if not has_left else 1
                for letters in itertools.product(*[range(t.dim) for t in slots]):
                    word = _word_string(P, has_left, has_right, letters)
                    add(source, target, word, u, P, (P, has_left, has_right, letters))

    mult: dict = {}

    def set_product(i, j, combo: dict):
        combo = {k: c for k, c in combo.items() if c}
        if combo:
            mult[i, j] = combo

    def letter_product(x: BasisElement, xkey, y: BasisElement, ykey) -> dict:
        """Product of two non-idempotent elements, as {eid: coeff}."""
        xP, xl, xr, xletters = xkey
        yP, yl, yr, yletters = ykey
        if xP == () and yP == ():  # C . C
            return {}
        if xP == ():  # c_h . y, new leading letter
            if yl:
                return {}
            h = xkey[3]
            q_t = yP[-1]
            coords = [data.theta_onto_V[q_t][r, h] for r in range(data.T_onto_V[q_t].dim)]
            out = {}
            for r, c in enumerate(coords):
                if c:
                    key = (yP, True, yr, (r,) + yletters)
                    out[index[key]] = c
            return out
        if yP == ():  # x . c_h, new trailing letter
            if xr:
                return {}
            h = ykey[3]
            p1 = xP[0]
            coords = [data.theta_onto_W[p1][r, h] for r in range(data.T_onto_W[p1].dim)]
            out = {}
            for r, c in enumerate(coords):
                if c:
                    key = (xP, xl, True, xletters + (r,))
                    out[index[key]] = c
            return out
        p1, q_t = xP[0], yP[-1]
        if p1 <= q_t:
            return {}
        if not xr and yl:
            vec = data.T_onto_V[q_t].vectors()[yletters[0]]
            rest_y = yletters[1:]
            head_x = xletters
        elif xr and not yl:
            vec = data.T_onto_W[p1].vectors()[xletters[-1]]
            rest_y = yletters
            head_x = xletters[:-1]
        else:
            return {}
        junction = data.T[p1, q_t]
        if junction.dim == 0:
            return {}
        coords = data.theta[p1, q_t].apply(vec)
        newP = yP + xP
        out = {}
        for r, c in enumerate(coords):
            if c:
                key = (newP, xl, yr, head_x + (r,) + rest_y)
                out[index[key]] = c
        return out

    rev_index = {eid: key for key, eid in index.items()}
    for x in basis:
        for y in basis:
            if x.source != y.target:
                continue
            if x.eid in (0, 1):
                set_product(x.eid, y.eid, {y.eid: Fraction(1)})
            elif y.eid in (0, 1):
                set_product(x.eid, y.eid, {x.eid: Fraction(1)})
            else:
                xkey = rev_index[x.eid]
                ykey = rev_index[y.eid]
                if xkey[0] == "c":
                    xkey = ((), False, False, xkey[1])
                if ykey[0] == "c":
                    ykey = ((), False, False, ykey[1])
                set_product(x.eid, y.eid, letter_product(x, xkey, y, ykey))

    alg = GradedAlgebra(2, basis, (0, 1), mult)
    alg.word_keys = keys  # structural key per basis element, used by the oracle map
    return alg


def predicted_component_dims(f: Family) -> dict:
    """Per-(u, P) dimensions from the closed product formulas."""
    n, m = f.n, f.m
    kseq = (None,) + f.kseq  # 1-based
    out = {(0, ()): 2, (1, ()): n}
    for s in range(1, m + 1):
        for P in itertools.combinations(range(1, m + 1), s):
            prod = 1
            for a, b in zip(P, P[1:]):
                prod *= kseq[a] - kseq[b]
            k_top, k_bot = kseq[P[-1]], kseq[P[0]]
            dims = {
                (s - 1, P): prod,
                (s, P): k_top * prod + prod * (n - k_bot),
                (s + 1, P): k_top * prod * (n - k_bot),
            }
            for key, d in dims.items():
                if d:
                    out[key] = d
    return out


# -- gradings -------------------------------------------------------------


def apply_grading(a: GradedAlgebra, chi) -> GradedAlgebra:
    """Integer grading induced by chi = (chi(eps_0), ..., chi(eps_m))."""
    chi = list(chi)
    new_basis = []
    for b in a.basis:
        if b.u is None:
            raise ValueError("algebra has no multidegree data to grade")
        if b.P and max(b.P) >= len(chi):
            raise ValueError("grading vector shorter than the family index range")
        z = b.u * chi[0] + sum(chi[i] for i in b.P)
        new_basis.append(BasisElement(b.eid, b.source, b.target, b.word, b.u, b.P, z))
    out = GradedAlgebra(a.vertex_count, new_basis, a.idempotent_ids, a.mult)
    if hasattr(a, "word_keys"):
        out.word_keys = a.word_keys
    return out


def chi_zero(m: int) -> list:
    return [0] + [1] * m


# -- oracle comparison ----------------------------------------------------


def family_relations(f: Family, quiver: qp.Quiver):
    """Generators of the defining ideal on Q_{n,m}, instantiated on bases."""
    n, m = f.n, f.m
    b = lambda i: qp.b_arrow(quiver, n, i)
    c = lambda h: qp.c_arrow(quiver, h)
    rels = []
    for i in range(1, m + 1):
        for j in range(i, m + 1):  # i <= j
            for h in range(1, n + 1):
                rels.append({qp.Path((b(i), c(h), b(j))): Fraction(1)})
    for i in range(1, m + 1):
        for row in f.V(i).vectors():
            rel = {qp.Path((b(i), c(h + 1))): coeff for h, coeff in enumerate(row) if coeff}
            rels.append(rel)
        for row in f.W(i).vectors():
            rel = {qp.Path((c(h + 1), b(i))): coeff for h, coeff in enumerate(row) if coeff}
            rels.append(rel)
    return rels


def family_oracle(f: Family, cutoff: int | None = None) -> qp.QuotientOracle:
    quiver = qp.two_vertex_quiver(f.n, f.m)
    cutoff = cutoff if cutoff is not None else 2 * f.m + 4
    return qp.build_oracle(quiver, family_relations(f, quiver), cutoff)


def _word_to_path_vector(f: Family, data: ComplementData, quiver: qp.Quiver, b: BasisElement, key) -> dict:
    """Image of a closed-form basis word inside the path algebra."""
    n = f.n
    if key[0] == "e":
        return {qp.trivial(key[1]): Fraction(1)}
    if key[0] == "c":
        return {qp.Path((qp.c_arrow(quiver, key[1] + 1),)): Fraction(1)}
    P, has_left, has_right, letters = key
    slots = _slot_subspaces(data, P, has_left, has_right)
    vectors = [slots[i].vectors()[letters[i]] for i in range(len(letters))]
    # assemble letters left-to-right: [left?] b_{p_s} mid ... b_{p_1} [right?]
    seq = []  # entries: ("b", i) or ("v", coeff row)
    pos = 0
    if has_left:
        seq.append(("v", vectors[pos]))
        pos += 1
    for idx, p in enumerate(reversed(P)):
        seq.append(("b", p))
        if idx < len(P) - 1:
            seq.append(("v", vectors[pos]))
            pos += 1
    if has_right:
        seq.append(("v", vectors[pos]))
    terms = {(): Fraction(1)}
    for kind, val in seq:
        new_terms = {}
        if kind == "b":
            a = qp.b_arrow(quiver, n, val)
            for word, coeff in terms.items():
                new_terms[word + (a,)] = coeff
        else:
            for h, ch in enumerate(val):
                if not ch:
                    continue
                a = qp.c_arrow(quiver, h + 1)
                for word, coeff in terms.items():
                    key2 = word + (a,)
                    new_terms[key2] = new_terms.get(key2, Fraction(0)) + coeff * ch
        terms = new_terms
    return {qp.Path(word): c for word, c in terms.items() if c}


@dataclass
class OracleReport:
    dim_closed: int
    dim_oracle: int
    bijective: bool
    multiplicative: bool
    first_failure: tuple | None

    @property
    def ok(self) -> bool:
        return self.bijective and self.multiplicative and self.dim_closed == self.dim_oracle


def verify_against_oracle(f: Family, cutoff: int | None = None) -> OracleReport:
    """Check the closed form and the path-quotient agree as algebras."""
    alg = build_R(f)
    data = complements(f)
    oracle = family_oracle(f, cutoff)
    quiver = oracle.quiver

    images = []
    for b, key in zip(alg.basis, alg.word_keys):
        vec = _word_to_path_vector(f, data, quiver, b, key)
        images.append(oracle.reduce(vec))

    obasis = oracle.basis
    col = {p: i for i, p in enumerate(obasis)}
    rows = []
    for img in images:
        row = [Fraction(0)] * len(obasis)
        for p, c in img.items():
            row[col[p]] = c
        rows.append(row)
    bij = False
    if alg.dim == oracle.dim and alg.dim > 0:
        _, rank = rref(Matrix.from_rows(rows, len(obasis)))
        bij = rank == alg.dim

    first_failure = None
    if bij:
        for x in alg.basis:
            for y in alg.basis:
                prod = alg.product_ids(x.eid, y.eid)
                lhs: dict = {}
                for k, c in prod.items():
                    for p, cp in images[k].items():
                        s = lhs.get(p, Fraction(0)) + c * cp
                        if s:
                            lhs[p] = s
                        else:
                            del lhs[p]
                rhs = oracle.multiply(images[x.eid], images[y.eid])
                if lhs != rhs:
                    first_failure = (x.eid, y.eid)
                    break
            if first_failure:
                break
    return OracleReport(alg.dim, oracle.dim, bij, bij and first_failure is None, first_failure)


def algebra_from_oracle(oracle: qp.QuotientOracle) -> GradedAlgebra:
    """Package an oracle's basis and products as a GradedAlgebra."""
    q = oracle.quiver
    basis = []
    ids = {}
    for p in oracle.basis:
        eid = len(basis)
        ids[p] = eid
        if p.arrows:
            word = "*".join(f"a{a}" for a in p.arrows)
        else:
            word = f"e{p.at + 1}"
        basis.append(
            BasisElement(eid, qp.path_source(q, p), qp.path_target(q, p), word, None, None, qp.path_zdegree(q, p))
        )
    idem = [ids[qp.trivial(v)] for v in range(q.vertex_count)]
    mult = {}
    for p in oracle.basis:
        for r in oracle.basis:
            if qp.path_source(q, p) != qp.path_target(q, r):
                continue
            prod = oracle.multiply({p: Fraction(1)}, {r: Fraction(1)})
            if prod:
                mult[ids[p], ids[r]] = {ids[t]: c for t, c in prod.items()}
    return GradedAlgebra(q.vertex_count, basis, idem, mult)
