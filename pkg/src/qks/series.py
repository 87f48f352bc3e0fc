"""Exact rational-function series in t: Molien's formula and expansions.

Rational functions are kept as numerator/denominator pairs of polynomials
over Q(zeta_N), normalized only so that the denominator has constant term 1;
equality is tested by cross-multiplication.  The independent oracle for
Molien output is a brute-force count of invariant monomials under the same
matrices.
"""

from __future__ import annotations

from itertools import permutations

from .cyclotomic import Cyclo
from .linalg import nullspace


class SeriesError(ValueError):
    pass


# -- polynomials in t over Q(zeta), dense, low to high -----------------------

def pt_trim(coeffs) -> tuple:
    out = list(coeffs)
    while out and out[-1].is_zero():
        out.pop()
    return tuple(out)


def pt_add(a, b) -> tuple:
    n = max(len(a), len(b))
    zero = Cyclo.zero()
    return pt_trim([(a[i] if i < len(a) else zero) + (b[i] if i < len(b) else zero)
                    for i in range(n)])


def pt_mul(a, b) -> tuple:
    if not a or not b:
        return ()
    out = [Cyclo.zero() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return pt_trim(out)


def pt_scale(a, c: Cyclo) -> tuple:
    return pt_trim([x * c for x in a])


def pt_one() -> tuple:
    return (Cyclo.one(),)


def one_minus_t_pow(k: int) -> tuple:
    """1 - t^k."""
    out = [Cyclo.zero()] * (k + 1)
    out[0] = Cyclo.one()
    out[k] = Cyclo.rational(-1)
    return tuple(out)


class RationalSeries:
    """num(t)/den(t) with den(0) != 0, normalized to den(0) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        num, den = pt_trim(num), pt_trim(den)
        if not den or den[0].is_zero():
            raise SeriesError("denominator must have nonzero constant term")
        c = den[0].inverse()
        self.num = pt_scale(num, c)
        self.den = pt_scale(den, c)

    def __eq__(self, other):
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return pt_mul(self.num, other.den) == pt_mul(other.num, self.den)

    __hash__ = None

    def expand(self, d: int) -> list:
        """First d+1 power-series coefficients, exact."""
        num, den = self.num, self.den
        zero = Cyclo.zero()
        coeffs = []
        for k in range(d + 1):
            c = num[k] if k < len(num) else zero
            for i in range(1, min(k, len(den) - 1) + 1):
                c = c - den[i] * coeffs[k - i]
            coeffs.append(c)
        return coeffs

    def __repr__(self):
        def fmt(p):
            bits = []
            for e, c in enumerate(p):
                if c.is_zero():
                    continue
                t = "1" if e == 0 else ("t" if e == 1 else f"t^{e}")
                cs = c.to_str()
                bits.append(t if cs == "1" else f"({cs})*{t}")
            return " + ".join(bits) if bits else "0"
        return f"({fmt(self.num)}) / ({fmt(self.den)})"


def series_expand(f: RationalSeries, d: int) -> list:
    return f.expand(d)


def compare_with_counts(f: RationalSeries, counts) -> bool:
    got = f.expand(len(counts) - 1)
    return all(c == Cyclo.rational(want) for c, want in zip(got, counts))


# -- matrices over Q(zeta) ----------------------------------------------------

def mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(n)), Cyclo.zero())
                       for j in range(n)) for i in range(n))


def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_det(a) -> Cyclo:
    n = len(a)
    total = Cyclo.zero()
    for perm in permutations(range(n)):
        sign = _perm_sign(perm)
        prod = Cyclo.rational(sign)
        for i in range(n):
            prod = prod * a[i][perm[i]]
        total = total + prod
    return total


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _det_one_minus_t(alpha) -> tuple:
    """det(I - alpha t) as a polynomial in t."""
    n = len(alpha)
    # entries are linear polynomials delta_ij - alpha_ij t
    total = ()
    one = Cyclo.one()
    for perm in permutations(range(n)):
        sign = _perm_sign(perm)
        prod = (Cyclo.rational(sign),)
        for i in range(n):
            entry = (one if i == perm[i] else Cyclo.zero(), -alpha[i][perm[i]])
            prod = pt_mul(prod, pt_trim(entry))
            if not prod:
                break
        total = pt_add(total, prod)
    return total


def molien_series(matrices) -> RationalSeries:
    """(1/|G|) * sum over the group of 1/det(I - alpha t), exactly.

    The list must be a matrix group: closed under products, all invertible.
    """
    if not matrices:
        raise SeriesError("empty matrix list")
    n = len(matrices[0])
    for m in matrices:
        if len(m) != n or any(len(row) != n for row in m):
            raise SeriesError("matrices must be square and of one size")
        if mat_det(m).is_zero():
            raise SeriesError("singular matrix in the list")
    for a in matrices:
        for b in matrices:
            prod = mat_mul(a, b)
            if not any(mat_eq(prod, c) for c in matrices):
                raise SeriesError("matrix list is not multiplicatively closed")
    num, den = (), pt_one()
    for alpha in matrices:
        d = _det_one_minus_t(alpha)
        # num/den + 1/d = (num*d + den)/(den*d)
        num = pt_add(pt_mul(num, d), den)
        den = pt_mul(den, d)
    scale = Cyclo.rational(1) / Cyclo.rational(len(matrices))
    return RationalSeries(pt_scale(num, scale), den)


# -- catalog representations and closed forms ---------------------------------

def cyclic_diag_rep(m: int) -> list:
    """C_m on a 2-dim space by diag(eps^i, eps^-i)."""
    from .cyclotomic import root_of_unity
    zero = Cyclo.zero()
    return [((root_of_unity(i, m), zero), (zero, root_of_unity(-i, m)))
            for i in range(m)]


def dihedral_3dim_rep(m: int) -> list:
    """D_m on 3 variables: rotations diag(eps^i, eps^-i, 1) and reflections
    swapping the first two coordinates and negating the third."""
    from .cyclotomic import root_of_unity
    zero, one = Cyclo.zero(), Cyclo.one()
    mats = []
    for i in range(m):
        e, einv = root_of_unity(i, m), root_of_unity(-i, m)
        mats.append(((e, zero, zero), (zero, einv, zero), (zero, zero, one)))
    for i in range(m):
        e, einv = root_of_unity(i, m), root_of_unity(-i, m)
        mats.append(((zero, e, zero), (einv, zero, zero), (zero, zero, -one)))
    return mats


def trivial_rep(dim: int) -> list:
    zero, one = Cyclo.zero(), Cyclo.one()
    return [tuple(tuple(one if i == j else zero for j in range(dim)) for i in range(dim))]


def kleinian_a_series(m: int) -> RationalSeries:
    """(1 - t^(2m)) / ((1 - t^2)(1 - t^m)^2)."""
    den = pt_mul(one_minus_t_pow(2), pt_mul(one_minus_t_pow(m), one_minus_t_pow(m)))
    return RationalSeries(one_minus_t_pow(2 * m), den)


def dihedral_invariant_series(m: int) -> RationalSeries:
    """(1 - t^(2(m+1))) / ((1 - t^2)^2 (1 - t^m)(1 - t^(m+1)))."""
    den = pt_mul(pt_mul(one_minus_t_pow(2), one_minus_t_pow(2)),
                 pt_mul(one_minus_t_pow(m), one_minus_t_pow(m + 1)))
    return RationalSeries(one_minus_t_pow(2 * (m + 1)), den)


def free_series(dim: int) -> RationalSeries:
    """1/(1-t)^dim."""
    den = pt_one()
    for _ in range(dim):
        den = pt_mul(den, one_minus_t_pow(1))
    return RationalSeries(pt_one(), den)


# -- brute-force invariant counting (the independent oracle) ------------------

def invariant_dimensions(matrices, upto: int) -> list:
    """dim of degree-d invariants of Sym(V) for d = 0..upto, by linear algebra."""
    n = len(matrices[0])
    dims = []
    for d in range(upto + 1):
        monos = _monomials(n, d)
        index = {m: i for i, m in enumerate(monos)}
        rows = []
        for alpha in matrices:
            for mono in monos:
                image = _act_on_monomial(alpha, mono, n)
                row = dict(image)
                col = index[mono]
                cur = row.get(col, Cyclo.zero()) - Cyclo.one()
                if cur.is_zero():
                    row.pop(col, None)
                else:
                    row[col] = cur
                if row:
                    rows.append({index_key: c for index_key, c in row.items()})
        dims.append(len(nullspace(rows, len(monos))))
    return dims


def _monomials(n: int, d: int) -> list:
    if n == 1:
        return [(d,)]
    out = []
    for e in range(d + 1):
        out.extend((e,) + rest for rest in _monomials(n - 1, d - e))
    return out


def _act_on_monomial(alpha, mono, n) -> dict:
    """Image of x^mono under x_i -> sum_j alpha[j][i] x_j, as {index: coeff}."""
    acc = {tuple([0] * n): Cyclo.one()}
    for i, e in enumerate(mono):
        for _ in range(e):
            nxt: dict = {}
            for m, c in acc.items():
                for j in range(n):
                    a = alpha[j][i]
                    if a.is_zero():
                        continue
                    key = tuple(mj + (1 if jj == j else 0) for jj, mj in enumerate(m))
                    cur = nxt.get(key)
                    cur = c * a if cur is None else cur + c * a
                    if cur.is_zero():
                        nxt.pop(key, None)
                    else:
                        nxt[key] = cur
            acc = nxt
    # re-key by monomial index within the degree
    index = {m: i for i, m in enumerate(_monomials(n, sum(mono)))}
    return {index[m]: c for m, c in acc.items()}
