"""Subspace families with the transversality property (G).

A family holds pairs (V_i, W_i) of subspaces of k^n with dim V_i = k_i,
dim W_i = n - k_i and k_1 >= ... >= k_m. Property (G) demands
V_i ∩ W_j = 0 whenever i >= j; it is checked, never assumed. Indices are
1-based everywhere, matching the conventions used in reports.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .exactla import (
    Matrix,
    Subspace,
    coordinate_complement,
    intersect,
    projection_along,
    random_subspace,
    subspace_sum,
)


@dataclass(frozen=True)
class Family:
    n: int
    pairs: tuple  # ((V_1, W_1), ..., (V_m, W_m))

    def __post_init__(self):
        kprev = None
        for v, w in self.pairs:
            if v.ambient != self.n or w.ambient != self.n:
                raise ValueError("subspace ambient dimension mismatch")
            if v.dim + w.dim != self.n:
                raise ValueError("dim V_i + dim W_i must equal n")
            if kprev is not None and v.dim > kprev:
                raise ValueError("k-sequence must be non-increasing")
            kprev = v.dim
        self.__dict__  # frozen dataclass; nothing mutable to normalize

    @property
    def m(self) -> int:
        return len(self.pairs)

    @property
    def kseq(self) -> tuple:
        return tuple(v.dim for v, _ in self.pairs)

    def V(self, i: int) -> Subspace:
        return self.pairs[i - 1][0]

    def W(self, i: int) -> Subspace:
        return self.pairs[i - 1][1]

    def drop_last(self) -> "Family":
        return Family(self.n, self.pairs[:-1])

    def subfamily(self, indices) -> "Family":
        return Family(self.n, tuple(self.pairs[i - 1] for i in sorted(indices)))

    def is_equidimensional(self) -> bool:
        return len(set(self.kseq)) <= 1


@dataclass(frozen=True)
class GCertificate:
    checked: tuple  # (i, j, dim(V_i ∩ W_j)) for all i >= j

    @property
    def holds(self) -> bool:
        return all(d == 0 for _, _, d in self.checked)

    @property
    def first_failure(self):
        for i, j, d in self.checked:
            if d != 0:
                return (i, j, d)
        return None


def check_G(f: Family) -> GCertificate:
    rows = []
    for i in range(1, f.m + 1):
        for j in range(1, i + 1):
            rows.append((i, j, intersect(f.V(i), f.W(j)).dim))
    return GCertificate(tuple(rows))


@dataclass(frozen=True)
class ComplementData:
    """The chosen complements T_ij with their projections.

    T[(i, j)] complements U_ij = V_i + W_j for i >= j; theta[(i, j)] is the
    projection onto T_ij killing U_ij. T_onto_V[i] = V_i with projection
    theta_onto_V[i] killing W_i; T_onto_W[i] = W_i with theta_onto_W[i]
    killing V_i.
    """

    T: dict
    theta: dict
    T_onto_V: dict
    theta_onto_V: dict
    T_onto_W: dict
    theta_onto_W: dict


def complements(f: Family) -> ComplementData:
    cert = check_G(f)
    if not cert.holds:
        raise ValueError(f"property (G) fails at pair {cert.first_failure}")
    kseq = f.kseq
    T, theta = {}, {}
    for i in range(1, f.m + 1):
        for j in range(1, i + 1):
            u = subspace_sum(f.V(i), f.W(j))
            expected = f.n + kseq[i - 1] - kseq[j - 1]
            if u.dim != expected:
                raise ValueError(f"dim U_{i}{j} = {u.dim}, expected {expected}")
            t = coordinate_complement(u)
            T[i, j] = t
            theta[i, j] = projection_along(u, t)
    T_onto_V, theta_onto_V, T_onto_W, theta_onto_W = {}, {}, {}, {}
    for i in range(1, f.m + 1):
        T_onto_V[i] = f.V(i)
        theta_onto_V[i] = projection_along(f.W(i), f.V(i))
        T_onto_W[i] = f.W(i)
        theta_onto_W[i] = projection_along(f.V(i), f.W(i))
    return ComplementData(T, theta, T_onto_V, theta_onto_V, T_onto_W, theta_onto_W)


def _coordinate_span(n: int, indices) -> Subspace:
    vecs = []
    for i in indices:
        v = [Fraction(0)] * n
        v[i] = Fraction(1)
        vecs.append(v)
    return Subspace.from_vectors(n, vecs)


def green_family(l: int) -> Family:
    """The coordinate-subspace family whose algebra is the l-th Green algebra."""
    if l < 2:
        raise ValueError("l must be at least 2")
    n = (l + 1) // 2
    m = l // 2
    pairs = []
    for i in range(1, m + 1):
        w = _coordinate_span(n, range(i))
        v = _coordinate_span(n, range(i, n))
        pairs.append((v, w))
    return Family(n, tuple(pairs))


def kk_family(n: int) -> Family:
    """The line family whose algebra is the n-th Kirkman-Kuzmanovich algebra."""
    if n < 1:
        raise ValueError("n must be at least 1")
    pairs = []
    for i in range(1, n + 1):
        e = lambda h: [Fraction(1 if t == h else 0) for t in range(n)]
        v = Subspace.from_vectors(n, [e(i - 1)])
        wvecs = [e(h) for h in range(i - 1)]
        wvecs += [[a - b for a, b in zip(e(h), e(i - 1))] for h in range(i, n)]
        w = Subspace.from_vectors(n, wvecs)
        pairs.append((v, w))
    return Family(n, tuple(pairs))


def random_family(n: int, m: int, kseq, seed: int) -> Family:
    """Seeded general-position family passing (G); resamples on failure."""
    kseq = list(kseq)
    if len(kseq) != m:
        raise ValueError("kseq length must equal m")
    if any(k < 0 or k > n for k in kseq):
        raise ValueError("kseq entries out of range")
    if any(a < b for a, b in zip(kseq, kseq[1:])):
        raise ValueError("kseq must be non-increasing")
    rng = random.Random(seed)
    for _ in range(100):
        pairs = []
        for k in kseq:
            v = random_subspace(n, k, seed=rng.getrandbits(64))
            w = random_subspace(n, n - k, seed=rng.getrandbits(64))
            pairs.append((v, w))
        fam = Family(n, tuple(pairs))
        if check_G(fam).holds:
            return fam
    raise ValueError("no (G)-family found in 100 attempts; request is degenerate")


# -- serialization -------------------------------------------------------


def _rows_to_strings(sub: Subspace) -> list:
    return [[str(x) for x in row] for row in sub.vectors()]


def _rows_from_strings(n: int, rows) -> Subspace:
    return Subspace.from_vectors(n, [[Fraction(x) for x in row] for row in rows])


def family_to_dict(f: Family) -> dict:
    return {
        "n": f.n,
        "m": f.m,
        "pairs": [{"V": _rows_to_strings(v), "W": _rows_to_strings(w)} for v, w in f.pairs],
    }


def family_from_dict(data: dict) -> Family:
    n = data["n"]
    pairs = []
    for entry in data["pairs"]:
        pairs.append((_rows_from_strings(n, entry["V"]), _rows_from_strings(n, entry["W"])))
    if len(pairs) != data.get("m", len(pairs)):
        raise ValueError("declared m does not match number of pairs")
    return Family(n, tuple(pairs))


def family_to_json(f: Family) -> str:
    return json.dumps(family_to_dict(f), sort_keys=True)


def family_from_json(text: str) -> Family:
    return family_from_dict(json.loads(text))
