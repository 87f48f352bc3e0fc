"""Sparse exact linear algebra over Q(zeta_N).

Vectors are dicts mapping column index -> Cyclo with no zero entries.  The
workhorse is `Echelon`, an incrementally built reduced row echelon basis;
everything else (rank, nullspace, span comparison, reduction modulo a
subspace) is phrased through it.
"""

from __future__ import annotations

from .cyclotomic import Cyclo

Vec = dict


def vec_is_zero(v: Vec) -> bool:
    return not v


def vec_add(a: Vec, b: Vec) -> Vec:
    out = dict(a)
    for k, x in b.items():
        s = out.get(k)
        s = x if s is None else s + x
        if s.is_zero():
            out.pop(k, None)
        else:
            out[k] = s
    return out


def vec_sub(a: Vec, b: Vec) -> Vec:
    out = dict(a)
    for k, x in b.items():
        s = out.get(k)
        s = -x if s is None else s - x
        if s.is_zero():
            out.pop(k, None)
        else:
            out[k] = s
    return out


def vec_scale(a: Vec, c: Cyclo) -> Vec:
    if c.is_zero():
        return {}
    return {k: c * x for k, x in a.items()}


class Echelon:
    """Reduced row echelon basis of a growing family of sparse vectors."""

    def __init__(self):
        self.rows: dict = {}  # pivot column -> row (with pivot coefficient 1)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Vec) -> Vec:
        """Residue of `vec` modulo the current row space (canonical)."""
        out = dict(vec)
        # full RREF: pivot columns occur only in their own rows, so one pass
        # over the pivot hits is enough
        for col in [c for c in out if c in self.rows]:
            coeff = out.pop(col, None)
            if coeff is None or coeff.is_zero():
                continue
            for k, x in self.rows[col].items():
                if k == col:
                    continue
                s = out.get(k)
                s = -(coeff * x) if s is None else s - coeff * x
                if s.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = s
        return out

    def add(self, vec: Vec) -> bool:
        """Insert `vec`; returns True if it enlarged the row space."""
        res = self.reduce(vec)
        if not res:
            return False
        pivot = min(res)
        inv = res[pivot].inverse()
        row = {k: inv * x for k, x in res.items()}
        row[pivot] = Cyclo.one(row[pivot].n)
        # back-eliminate the new pivot from existing rows
        for p, r in self.rows.items():
            c = r.get(pivot)
            if c is not None:
                for k, x in row.items():
                    if k == pivot:
                        r.pop(pivot, None)
                        continue
                    s = r.get(k)
                    s = -(c * x) if s is None else s - c * x
                    if s.is_zero():
                        r.pop(k, None)
                    else:
                        r[k] = s
        self.rows[pivot] = row
        return True

    def contains(self, vec: Vec) -> bool:
        return not self.reduce(vec)


def rank(vectors) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def nullspace(equations, ncols: int) -> list:
    """Basis of solutions x (sparse dicts) of the homogeneous system.

    `equations` is an iterable of sparse rows over columns 0..ncols-1.
    """
    ech = Echelon()
    for row in equations:
        ech.add(row)
    basis = []
    for free in range(ncols):
        if free in ech.rows:
            continue
        sol = {free: Cyclo.rational(1)}
        for piv, row in ech.rows.items():
            c = row.get(free)
            if c is not None:
                sol[piv] = -c
        basis.append(sol)
    return basis


def spans_equal(vectors_a, vectors_b) -> bool:
    ech_a, ech_b = Echelon(), Echelon()
    for v in vectors_a:
        ech_a.add(v)
    for v in vectors_b:
        ech_b.add(v)
    if ech_a.rank != ech_b.rank:
        return False
    return all(ech_a.contains(v) for v in vectors_b)
