"""Quivers and an independent basis/multiplication oracle for kQ/I.

The oracle works degree by path length. At each length it spans the
quotient by left-extending the surviving normal forms of the previous
length with single arrows, then imposes every relation padded on the
right by surviving normal forms; reduced echelon form over the candidate
paths (lexicographically smallest words preferred as basis representatives)
yields the new normal forms and a reduction table. Construction stops at
the first length with no surviving normal form; if normal forms persist at
the cutoff the quotient is not visibly finite-dimensional and we give up.

Relations must be homogeneous in path length (all relation ideals in this
package are); mixed-length relations are rejected as malformed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class OracleError(Exception):
    pass


class CutoffExceeded(OracleError):
    pass


class MalformedRelation(OracleError):
    pass


@dataclass(frozen=True, order=True)
class Quiver:
    vertex_count: int
    arrows: tuple  # (source, target, zdegree) triples, vertices 0-based

    def __post_init__(self):
        for s, t, _ in self.arrows:
            if not (0 <= s < self.vertex_count and 0 <= t < self.vertex_count):
                raise ValueError("arrow endpoint out of range")
            if s == t:
                raise ValueError("loops are not supported")

    def source(self, a: int) -> int:
        return self.arrows[a][0]

    def target(self, a: int) -> int:
        return self.arrows[a][1]

    def zdegree(self, a: int) -> int:
        return self.arrows[a][2]


@dataclass(frozen=True, order=True)
class Path:
    """A composable word of arrow indices; arrows[0] is applied last.

    The trivial path carries its vertex in ``at``; nonempty paths use -1.
    """

    arrows: tuple = ()
    at: int = -1


def trivial(v: int) -> Path:
    return Path((), v)


def path_source(q: Quiver, p: Path) -> int:
    return p.at if not p.arrows else q.source(p.arrows[-1])


def path_target(q: Quiver, p: Path) -> int:
    return p.at if not p.arrows else q.target(p.arrows[0])


def path_zdegree(q: Quiver, p: Path) -> int:
    return sum(q.zdegree(a) for a in p.arrows)


def is_composable(q: Quiver, p: Path) -> bool:
    for left, right in zip(p.arrows, p.arrows[1:]):
        if q.source(left) != q.target(right):
            return False
    return True


# A PathVector is a dict {Path: Fraction} whose terms share source and target.
PathVector = dict


def path_vector(terms) -> PathVector:
    out = {}
    for coeff, path in terms:
        c = Fraction(coeff)
        if c:
            out[path] = out.get(path, Fraction(0)) + c
    return {p: c for p, c in out.items() if c}


def vector_source_target(q: Quiver, vec: PathVector) -> tuple:
    st = {(path_source(q, p), path_target(q, p)) for p in vec}
    if len(st) != 1:
        raise MalformedRelation("terms do not share source and target")
    return st.pop()


def _add_scaled(acc: dict, vec: dict, c: Fraction) -> None:
    for k, v in vec.items():
        s = acc.get(k, Fraction(0)) + c * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


class QuotientOracle:
    """Basis and multiplication table of kQ/I by truncated linear reduction."""

    def __init__(self, quiver: Quiver, relations, length_cutoff: int):
        self.quiver = quiver
        self.relations = [dict(r) for r in relations]
        self.length_cutoff = length_cutoff
        self.basis_by_length: list[list[Path]] = []
        # (arrow, normal form) -> reduction of the left-extension, as {nf: coeff}
        self._ext: dict = {}
        self._build()

    # -- construction ---------------------------------------------------

    def _validate_relations(self) -> int:
        max_len = 0
        for rel in self.relations:
            if not rel:
                raise MalformedRelation("empty relation")
            vector_source_target(self.quiver, rel)
            lengths = {len(p.arrows) for p in rel}
            if len(lengths) != 1:
                raise MalformedRelation("relation mixes path lengths")
            (length,) = lengths
            if length < 2:
                raise MalformedRelation("relation paths must have length >= 2")
            for p in rel:
                if not is_composable(self.quiver, p):
                    raise MalformedRelation("non-composable path in relation")
            max_len = max(max_len, length)
        return max_len

    def _build(self) -> None:
        q = self.quiver
        max_rel = self._validate_relations()
        if self.relations and self.length_cutoff < max_rel:
            raise CutoffExceeded("cutoff below maximal relation length")
        self.basis_by_length.append([trivial(v) for v in range(q.vertex_count)])
        arrows_sorted = sorted(range(len(q.arrows)))
        length = 0
        while True:
            length += 1
            prev = self.basis_by_length[-1]
            candidates = []
            for a in arrows_sorted:
                for nf in prev:
                    if path_target(q, nf) == q.source(a):
                        candidates.append(Path((a,) + nf.arrows))
            if not candidates:
                self.basis_by_length.append([])
                break
            # lex-largest words first: pivots eliminate them, keeping the
            # lex-smallest paths as basis representatives
            candidates.sort(reverse=True)
            col_of = {p: i for i, p in enumerate(candidates)}
            pivots: dict[int, dict] = {}

            def insert_row(row: dict) -> None:
                while row:
                    lead = min(row)
                    if lead in pivots:
                        _add_scaled(row, pivots[lead], -row[lead])
                        continue
                    stale = [c for c in row if c != lead and c in pivots]
                    if stale:
                        c = stale[0]
                        _add_scaled(row, pivots[c], -row[c])
                        continue
                    inv = Fraction(1) / row[lead]
                    row = {c: v * inv for c, v in row.items()}
                    for prow in pivots.values():
                        if lead in prow:
                            _add_scaled(prow, row, -prow[lead])
                    pivots[lead] = row
                    return

            for rel in self.relations:
                d = len(next(iter(rel)).arrows)
                if d > length:
                    continue
                for nf in self.basis_by_length[length - d]:
                    vec = self._pad_relation(rel, nf)
                    if vec:
                        insert_row({col_of[p]: c for p, c in vec.items()})

            survivors = [p for i, p in enumerate(candidates) if i not in pivots]
            for i, p in enumerate(candidates):
                key = (p.arrows[0], Path(p.arrows[1:]) if len(p.arrows) > 1 else trivial(q.source(p.arrows[0])))
                if i in pivots:
                    self._ext[key] = {candidates[c]: -v for c, v in pivots[i].items() if c != i}
                else:
                    self._ext[key] = {p: Fraction(1)}
            self.basis_by_length.append(sorted(survivors))
            if not survivors:
                break
            if length == self.length_cutoff:
                raise CutoffExceeded(
                    "normal forms survive at the length cutoff; quotient not visibly finite-dimensional"
                )

    def _pad_relation(self, rel: dict, nf: Path) -> dict:
        """Reduction of rel . nf, expressed in the current candidate paths.

        All arrows but the leftmost extend through completed lengths; the
        leftmost extension lands on raw candidates of the length being built.
        """
        q = self.quiver
        src = vector_source_target(q, rel)[0]
        if path_target(q, nf) != src:
            return {}
        acc: dict = {}
        for p, c in rel.items():
            vec = {nf: Fraction(1)}
            for a in reversed(p.arrows[1:]):
                vec = self._extend_left(a, vec)
                if not vec:
                    break
            if not vec:
                continue
            head = p.arrows[0]
            for nu, coeff in vec.items():
                if path_target(q, nu) == q.source(head):
                    _add_scaled(acc, {Path((head,) + nu.arrows): Fraction(1)}, c * coeff)
        return acc

    def _extend_left(self, a: int, vec: dict) -> dict:
        q = self.quiver
        out: dict = {}
        for p, c in vec.items():
            if path_target(q, p) != q.source(a):
                continue
            if not p.arrows:
                _add_scaled(out, {Path((a,)): Fraction(1)}, c)
                continue
            red = self._ext.get((a, p))
            if red is None:
                # extension beyond the nilpotency horizon
                continue
            _add_scaled(out, red, c)
        return out

    # -- public surface -------------------------------------------------

    @property
    def basis(self) -> list[Path]:
        return [p for layer in self.basis_by_length for p in layer]

    @property
    def dim(self) -> int:
        return sum(len(layer) for layer in self.basis_by_length)

    def basis_between(self, source: int, target: int) -> list[Path]:
        q = self.quiver
        return [p for p in self.basis if path_source(q, p) == source and path_target(q, p) == target]

    def reduce(self, vec: PathVector) -> PathVector:
        """Normal form of an arbitrary path vector."""
        q = self.quiver
        acc: dict = {}
        for p, c in vec.items():
            cur = {trivial(path_source(q, p)): Fraction(1)}
            for a in reversed(p.arrows):
                cur = self._extend_left(a, cur)
                if not cur:
                    break
            _add_scaled(acc, cur, c)
        return acc

    def multiply(self, x: PathVector, y: PathVector) -> PathVector:
        """Normal form of x . y (x applied after y)."""
        q = self.quiver
        acc: dict = {}
        for px, cx in x.items():
            for py, cy in y.items():
                if path_source(q, px) != path_target(q, py):
                    continue
                cur = {py: Fraction(1)}
                for a in reversed(px.arrows):
                    cur = self._extend_left(a, cur)
                    if not cur:
                        break
                _add_scaled(acc, cur, cx * cy)
        return acc

    def check_relations_vanish(self) -> bool:
        return all(not self.reduce(rel) for rel in self.relations)

    def check_associativity(self) -> bool:
        """(xy)z == x(yz) over all basis triples; feasible for dim <= ~200."""
        singles = [{p: Fraction(1)} for p in self.basis]
        products = {}
        for i, x in enumerate(singles):
            for j, y in enumerate(singles):
                products[i, j] = self.multiply(x, y)
        for i, x in enumerate(singles):
            for j in range(len(singles)):
                for k, z in enumerate(singles):
                    left = self.multiply(products[i, j], z)
                    right = self.multiply(x, products[j, k])
                    if left != right:
                        return False
        return True


def build_oracle(quiver: Quiver, relations, cutoff: int) -> QuotientOracle:
    return QuotientOracle(quiver, relations, cutoff)


# -- the two-vertex quivers of interest ---------------------------------


def two_vertex_quiver(n: int, m: int, c_degrees=None, b_degrees=None) -> Quiver:
    """Q_{n,m}: n arrows 1->2 (the c's) then m arrows 2->1 (the b's)."""
    c_degrees = c_degrees or [0] * n
    b_degrees = b_degrees or [0] * m
    arrows = [(0, 1, c_degrees[i]) for i in range(n)] + [(1, 0, b_degrees[i]) for i in range(m)]
    return Quiver(2, tuple(arrows))


def c_arrow(q: Quiver, i: int) -> int:
    """Arrow index of c_i (1-based) in a two_vertex_quiver."""
    return i - 1


def b_arrow(q: Quiver, n: int, i: int) -> int:
    """Arrow index of b_i (1-based) in a two_vertex_quiver with n c-arrows."""
    return n + i - 1


def green_quiver(l: int) -> tuple:
    """The quiver with relations for the l-th algebra in Green's series."""
    if l < 0:
        raise ValueError("l must be nonnegative")
    if l == 0:
        return Quiver(2, ()), []
    n = l // 2 + (l % 2)  # number of c arrows
    m = l // 2
    q = two_vertex_quiver(n, m)
    rels = []
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            if i < j:
                rels.append({Path((b_arrow(q, n, i), c_arrow(q, j))): Fraction(1)})
            if j <= i:
                rels.append({Path((c_arrow(q, j), b_arrow(q, n, i))): Fraction(1)})
    return q, rels


def kk_quiver(n: int) -> tuple:
    """The quiver with relations for the n-th Kirkman-Kuzmanovich algebra."""
    if n < 1:
        raise ValueError("n must be at least 1")
    q = two_vertex_quiver(n, n)
    rels = []
    b = lambda i: b_arrow(q, n, i)
    c = lambda i: c_arrow(q, i)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for h in range(1, n + 1):
                rels.append({Path((b(i), c(h), b(j))): Fraction(1)})
    for i in range(1, n + 1):
        rels.append({Path((b(i), c(i))): Fraction(1)})
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if j < i:
                rels.append({Path((c(j), b(i))): Fraction(1)})
            elif j > i:
                rels.append({Path((c(j), b(i))): Fraction(1), Path((c(i), b(i))): Fraction(-1)})
    return q, rels
