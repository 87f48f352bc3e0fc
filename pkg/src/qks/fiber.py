"""Finite-dimensional central fibers T/mT and their structure certificates.

A fiber is built in two stages.  First the coefficient algebra is collapsed
onto the monomial box [0,Ku) x [0,Kv) by per-variable reduction rules
u^Ku -> r_u(u), v^Kv -> r_v (with inverse rules for Laurent coefficients);
the rules come from central elements at the sampled point, so the rewriting
presents a genuine two-sided quotient and the skew ring of the quotient is a
finite-dimensional algebra on the box-times-group basis.  Second, the
residual central relations (generator minus its value) are killed by closing
the subspace they span under left and right multiplication by the algebra
generators until the dimension stabilizes, and structure constants are taken
on a complement.

Recognition works over the non-closed ground field: an algebra is certified
"central simple of degree d" when dim = d^2, the trace form is nondegenerate
and the center is one-dimensional, which base-changes to a matrix algebra
over the algebraic closure.  In characteristic zero the trace-form kernel is
the Jacobson radical, which powers the radical/semisimplification helpers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .cyclotomic import Cyclo
from .linalg import Echelon, nullspace
from .planes import NCPoly, act_mono
from .skew import CentralPoint, SkewElement, SkewRing


class FiberError(ValueError):
    pass


@dataclass
class FiberRecipe:
    """Per-case reduction data for building T/mT on a finite monomial box."""

    ku: int
    kv: int
    u_pow: NCPoly                 # value of u^ku
    v_pow: NCPoly                 # value of v^kv
    u_inv: NCPoly | None = None   # value of u^(-ku), for Laurent coefficients
    v_inv: NCPoly | None = None
    residuals: list = field(default_factory=list)  # central SkewElements to kill

    def validate(self, ring: SkewRing):
        if self.ku < 1 or self.kv < 1:
            raise FiberError("reduction exponents must be >= 1")
        if any(b >= self.kv for (_a, b) in self.v_pow.terms):
            raise FiberError("v-rule must strictly lower the v-exponent")
        if any(b for (_a, b) in self.u_pow.terms) or any(a >= self.ku for (a, _b) in self.u_pow.terms):
            raise FiberError("u-rule must be a u-only polynomial below u^ku")
        return self


def inverse_power_rule(poly: NCPoly, k: int) -> NCPoly:
    """Given u^k == poly(u) (u-only, nonzero constant term), return u^(-k).

    Works in the commutative quotient k[u]/(u^k - poly); also used for v by
    swapping exponent roles before and after.
    """
    algebra = poly.algebra
    coeffs = {a: c for (a, b), c in poly.terms.items() if not b}
    if len(coeffs) != len(poly.terms):
        raise FiberError("inverse rule needs a single-variable replacement")
    c0 = coeffs.get(0)
    if c0 is None or c0.is_zero():
        raise FiberError("replacement has zero constant term; u is not a unit")
    # u * (u^(k-1) - sum_{j>=1} c_j u^(j-1)) = c0, so invert once and power up
    inv1 = {(k - 1, 0): c0.inverse()}
    for j, cj in coeffs.items():
        if j >= 1:
            key = (j - 1, 0)
            cur = inv1.get(key, Cyclo.zero())
            cur = cur - cj * c0.inverse()
            if cur.is_zero():
                inv1.pop(key, None)
            else:
                inv1[key] = cur
    # reduce (u^-1)^k modulo u^k = poly, staying u-only
    def reduce_u(terms: dict) -> dict:
        out: dict = {}
        work = list(terms.items())
        while work:
            (a, b), c = work.pop()
            if a >= k:
                for (j, _z), pj in poly.terms.items():
                    work.append(((a - k + j, b), c * pj))
            else:
                cur = out.get((a, b))
                cur = c if cur is None else cur + c
                if cur.is_zero():
                    out.pop((a, b), None)
                else:
                    out[(a, b)] = cur
        return out

    acc = {(0, 0): Cyclo.one(algebra.conductor)}
    for _ in range(k):
        nxt: dict = {}
        for (a, _b), c in acc.items():
            for (j, _z), d in inv1.items():
                key = (a + j, 0)
                cur = nxt.get(key)
                cur = c * d if cur is None else cur + c * d
                if cur.is_zero():
                    nxt.pop(key, None)
                else:
                    nxt[key] = cur
        acc = reduce_u(nxt)
    return NCPoly(algebra, acc)


def swap_uv(poly: NCPoly) -> NCPoly:
    """Exchange exponent roles (u-only polynomial <-> v-only); helper for rules."""
    return NCPoly(poly.algebra, {(b, a): c for (a, b), c in poly.terms.items()})


class _Reducer:
    """Normalizes coefficient polynomials into the recipe's monomial box."""

    def __init__(self, ring: SkewRing, recipe: FiberRecipe):
        self.algebra = ring.algebra
        self.recipe = recipe
        self._cache: dict = {}

    def reduce_terms(self, terms: dict) -> dict:
        out: dict = {}
        work = list(terms.items())
        guard = 0
        while work:
            guard += 1
            if guard > 200_000:
                raise FiberError("reduction did not terminate; recipe is not confluent")
            (a, b), c = work.pop()
            if c.is_zero():
                continue
            r = self.recipe
            if 0 <= a < r.ku and 0 <= b < r.kv:
                cur = out.get((a, b))
                cur = c if cur is None else cur + c
                if cur.is_zero():
                    out.pop((a, b), None)
                else:
                    out[(a, b)] = cur
                continue
            if b >= r.kv:
                contrib = self.algebra.monomial(a, b - r.kv, c) * r.v_pow
            elif b < 0:
                if r.v_inv is None:
                    raise FiberError("negative v-exponent but no inverse rule")
                contrib = self.algebra.monomial(a, b + r.kv, c) * r.v_inv
            elif a >= r.ku:
                contrib = (r.u_pow * c) * self.algebra.monomial(a - r.ku, b)
            else:
                if r.u_inv is None:
                    raise FiberError("negative u-exponent but no inverse rule")
                contrib = (r.u_inv * c) * self.algebra.monomial(a + r.ku, b)
            work.extend(contrib.terms.items())
        return out

    def reduce_mono(self, mono) -> dict:
        cached = self._cache.get(mono)
        if cached is None:
            cached = self.reduce_terms({mono: Cyclo.one(self.algebra.conductor)})
            self._cache[mono] = cached
        return cached


@dataclass
class FiniteDimAlgebra:
    """Structure constants of a finite-dimensional unital algebra."""

    dim: int
    labels: list
    sc: list          # sc[i][j]: sparse product vector of basis_i * basis_j
    unit: dict        # coordinates of 1

    def multiply(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, ci in x.items():
            row = self.sc[i]
            for j, cj in y.items():
                cij = ci * cj
                for l, c in row[j].items():
                    cur = out.get(l)
                    cur = cij * c if cur is None else cur + cij * c
                    if cur.is_zero():
                        out.pop(l, None)
                    else:
                        out[l] = cur
        return out

    def basis_vector(self, i: int) -> dict:
        return {i: Cyclo.rational(1)}

    def right_by_basis(self, vec: dict, k: int) -> dict:
        """vec * basis_k without scalar bookkeeping."""
        out: dict = {}
        for l, cl in vec.items():
            for m, c in self.sc[l][k].items():
                cur = out.get(m)
                add = cl * c
                cur = add if cur is None else cur + add
                if cur.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = cur
        return out

    def left_by_basis(self, i: int, vec: dict) -> dict:
        """basis_i * vec without scalar bookkeeping."""
        out: dict = {}
        for l, cl in vec.items():
            for m, c in self.sc[i][l].items():
                cur = out.get(m)
                add = cl * c
                cur = add if cur is None else cur + add
                if cur.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = cur
        return out


def build_fiber(ring: SkewRing, point: CentralPoint | None, recipe: FiberRecipe) -> FiniteDimAlgebra:
    """The quotient of T at the recipe's reductions and residual relations."""
    if point is not None:
        point.validate()
    recipe.validate(ring)
    group = ring.group
    algebra = ring.algebra
    reducer = _Reducer(ring, recipe)

    basis = [(a, b, f) for f in group.elements()
             for a in range(recipe.ku) for b in range(recipe.kv)]
    index = {m: i for i, m in enumerate(basis)}
    dim = len(basis)

    def mono_product(m1, m2) -> dict:
        (a1, b1, f1), (a2, b2, f2) = m1, m2
        (a2p, b2p), scal = act_mono(algebra, group, f1, (a2, b2))
        f12 = group.mul(f1, f2)
        out: dict = {}
        for mono, c in algebra.mono_mul((a1, b1), (a2p, b2p)).items():
            for red_mono, rc in reducer.reduce_mono(mono).items():
                col = index[(red_mono[0], red_mono[1], f12)]
                cur = out.get(col)
                add = scal * c * rc
                cur = add if cur is None else cur + add
                if cur.is_zero():
                    out.pop(col, None)
                else:
                    out[col] = cur
        return out

    def skew_to_vec(x: SkewElement) -> dict:
        out: dict = {}
        for f, poly in x.comps.items():
            for mono, c in reducer.reduce_terms(poly.terms).items():
                col = index[(mono[0], mono[1], f)]
                cur = out.get(col)
                cur = c if cur is None else cur + c
                if cur.is_zero():
                    out.pop(col, None)
                else:
                    out[col] = cur
        return out

    # residual two-sided ideal: close the span under generator multiplication
    killed = Echelon()
    frontier = []
    for res in recipe.residuals:
        vec = skew_to_vec(res)
        if killed.add(vec):
            frontier.append(vec)
    gen_monos = [(1, 0, group.identity()), (0, 1, group.identity())]
    gen_monos += [(0, 0, f) for f in group.generators()]

    def vec_mono_product(vec: dict, gmono, left: bool) -> dict:
        out: dict = {}
        for i, ci in vec.items():
            prod = mono_product(gmono, basis[i]) if left else mono_product(basis[i], gmono)
            for l, c in prod.items():
                cur = out.get(l)
                add = ci * c
                cur = add if cur is None else cur + add
                if cur.is_zero():
                    out.pop(l, None)
                else:
                    out[l] = cur
        return out

    while frontier:
        new_frontier = []
        for w in frontier:
            for gmono in gen_monos:
                for left in (True, False):
                    prod = vec_mono_product(w, gmono, left)
                    if prod and killed.add(dict(prod)):
                        new_frontier.append(prod)
        frontier = new_frontier

    unit_residue = killed.reduce({index[(0, 0, group.identity())]: Cyclo.rational(1)})
    if not unit_residue:
        raise FiberError("reductions collapse 1 to 0; the point violates a hidden constraint")

    keep = [i for i in range(dim) if i not in killed.rows]
    new_index = {old: new for new, old in enumerate(keep)}

    def project(vec: dict) -> dict:
        return {new_index[i]: c for i, c in killed.reduce(vec).items()}

    sc = [[project(mono_product(basis[i], basis[j])) for j in keep] for i in keep]
    labels = [_label(ring, basis[i]) for i in keep]
    unit = project({index[(0, 0, group.identity())]: Cyclo.rational(1)})
    fiber = FiniteDimAlgebra(dim=len(keep), labels=labels, sc=sc, unit=unit)
    if not check_associativity(fiber):
        raise FiberError("quotient multiplication is not associative; recipe is inconsistent")
    return fiber


def _label(ring: SkewRing, mono) -> str:
    a, b, f = mono
    bits = []
    if a:
        bits.append("u" if a == 1 else f"u^{a}")
    if b:
        bits.append("v" if b == 1 else f"v^{b}")
    fs = ring.group.element_str(f)
    if fs != "e":
        bits.append(fs)
    return "*".join(bits) if bits else "1"


def check_associativity(F: FiniteDimAlgebra, samples: int = 500, seed: int = 1) -> bool:
    """All basis triples for dim <= 40; seeded random triples above."""
    if F.dim <= 40:
        triples = ((i, j, k) for i in range(F.dim) for j in range(F.dim) for k in range(F.dim))
    else:
        rng = random.Random(seed)
        triples = ((rng.randrange(F.dim), rng.randrange(F.dim), rng.randrange(F.dim))
                   for _ in range(samples))
    for i, j, k in triples:
        left = F.right_by_basis(F.sc[i][j], k)
        right = F.left_by_basis(i, F.sc[j][k])
        if left != right:
            return False
    one = Cyclo.rational(1)
    unit_ok = all(F.right_by_basis(F.unit, i) == {i: one}
                  and F.left_by_basis(i, F.unit) == {i: one}
                  for i in range(F.dim))
    return unit_ok


def _trace_vector(F: FiniteDimAlgebra) -> list:
    """tau[j] = trace of left multiplication by basis_j."""
    tau = []
    for j in range(F.dim):
        t = Cyclo.zero()
        for k in range(F.dim):
            c = F.sc[j][k].get(k)
            if c is not None:
                t = t + c
        tau.append(t)
    return tau


def trace_form_matrix(F: FiniteDimAlgebra) -> list:
    tau = _trace_vector(F)
    rows = []
    for i in range(F.dim):
        row = {}
        for j in range(F.dim):
            t = Cyclo.zero()
            for l, c in F.sc[i][j].items():
                if not tau[l].is_zero():
                    t = t + c * tau[l]
            if not t.is_zero():
                row[j] = t
        rows.append(row)
    return rows


def trace_form_rank(F: FiniteDimAlgebra) -> int:
    ech = Echelon()
    for row in trace_form_matrix(F):
        ech.add(row)
    return ech.rank


def jacobson_radical_dim(F: FiniteDimAlgebra) -> int:
    """dim of the trace-form kernel = Jacobson radical in characteristic 0."""
    return F.dim - trace_form_rank(F)


def radical_basis(F: FiniteDimAlgebra) -> list:
    return nullspace(trace_form_matrix(F), F.dim)


def center_dimension(F: FiniteDimAlgebra) -> int:
    rows: dict = {}
    for k in range(F.dim):
        for j in range(F.dim):
            for l, c in F.sc[j][k].items():
                row = rows.setdefault((k, l), {})
                cur = row.get(j)
                cur = c if cur is None else cur + c
                if cur.is_zero():
                    row.pop(j, None)
                else:
                    row[j] = cur
            for l, c in F.sc[k][j].items():
                row = rows.setdefault((k, l), {})
                cur = row.get(j)
                cur = -c if cur is None else cur - c
                if cur.is_zero():
                    row.pop(j, None)
                else:
                    row[j] = cur
    return len(nullspace(rows.values(), F.dim))


def quotient_by_subspace(F: FiniteDimAlgebra, vectors) -> FiniteDimAlgebra:
    """Quotient algebra by an ideal given as a spanning set of vectors."""
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    keep = [i for i in range(F.dim) if i not in ech.rows]
    new_index = {old: new for new, old in enumerate(keep)}

    def project(vec):
        return {new_index[i]: c for i, c in ech.reduce(vec).items()}

    sc = [[project(F.multiply(F.basis_vector(i), F.basis_vector(j))) for j in keep]
          for i in keep]
    return FiniteDimAlgebra(dim=len(keep), labels=[F.labels[i] for i in keep],
                            sc=sc, unit=project(F.unit))


def semisimple_quotient(F: FiniteDimAlgebra) -> FiniteDimAlgebra:
    return quotient_by_subspace(F, radical_basis(F))


@dataclass
class Certificate:
    central_simple: bool
    d: int | None = None
    witness: str | None = None

    def __str__(self):
        if self.central_simple:
            return f"central-simple({self.d})"
        return f"not-central-simple: {self.witness}"


def matrix_algebra_certificate(F: FiniteDimAlgebra) -> Certificate:
    """CentralSimple(d) iff dim = d^2, trace form nondegenerate, center 1-dim.

    Over the algebraic closure this is exactly "the fiber is M_d"; any failed
    test is reported as the witness.
    """
    d = _isqrt_exact(F.dim)
    if d is None:
        return Certificate(False, witness=f"dim {F.dim} is not a perfect square")
    rk = trace_form_rank(F)
    if rk != F.dim:
        return Certificate(False, witness=f"trace form rank {rk} < {F.dim}")
    zdim = center_dimension(F)
    if zdim != 1:
        return Certificate(False, witness=f"center has dimension {zdim}")
    return Certificate(True, d=d)


def _isqrt_exact(n: int):
    r = int(n ** 0.5)
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand * cand == n:
            return cand
    return None


def matrix_units_algebra(d: int) -> FiniteDimAlgebra:
    """M_d as explicit structure constants (reference object for tests)."""
    dim = d * d
    one = Cyclo.rational(1)

    def idx(i, j):
        return i * d + j

    sc = [[{} for _ in range(dim)] for _ in range(dim)]
    for i in range(d):
        for j in range(d):
            for k in range(d):
                for l in range(d):
                    if j == k:
                        sc[idx(i, j)][idx(k, l)] = {idx(i, l): one}
    unit = {idx(i, i): one for i in range(d)}
    labels = [f"E{i}{j}" for i in range(d) for j in range(d)]
    return FiniteDimAlgebra(dim=dim, labels=labels, sc=sc, unit=unit)


def dual_numbers_algebra() -> FiniteDimAlgebra:
    """k[t]/t^2 (reference object for tests)."""
    one = Cyclo.rational(1)
    sc = [[{0: one}, {1: one}], [{1: one}, {}]]
    return FiniteDimAlgebra(dim=2, labels=["1", "t"], sc=sc, unit={0: one})
