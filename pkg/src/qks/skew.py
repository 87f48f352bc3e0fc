"""Skew group rings T = A # G and their graded center machinery.

Elements are finite maps from group elements to coefficients in A, multiplied
by the rule (r g)(s h) = r (g.s) gh.  Centers and invariant rings are computed
degree by degree as nullspaces of exact commutator / fixed-point systems over
a bounded exponent window; claimed generating sets are certified by comparing
spans against those windows.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cyclotomic import Cyclo
from .linalg import nullspace, spans_equal
from .planes import (
    Algebra,
    AlgebraError,
    Group,
    GroupElt,
    NCPoly,
    act_mono,
    apply_automorphism,
    check_action_well_defined,
)


class SkewRing:
    """The pair (A, G) together with elementwise arithmetic in A # G."""

    def __init__(self, algebra: Algebra, group: Group, check_action: bool = True):
        if check_action and not check_action_well_defined(algebra, group):
            raise AlgebraError(f"{group} does not act on {algebra}")
        self.algebra = algebra
        self.group = group

    def key(self):
        return (self.algebra.key(), self.group.key())

    def __eq__(self, other):
        return isinstance(other, SkewRing) and self.key() == other.key()

    def __hash__(self):
        return hash((self.algebra, self.group))

    def __repr__(self):
        return f"{self.algebra!r} # {self.group!r}"

    # -- constructors -------------------------------------------------------

    def element(self, comps: dict) -> "SkewElement":
        return SkewElement(self, comps)

    def zero(self) -> "SkewElement":
        return SkewElement(self, {})

    def one(self) -> "SkewElement":
        return self.from_poly(self.algebra.one())

    def from_poly(self, x: NCPoly, f: GroupElt = (0, 0)) -> "SkewElement":
        return SkewElement(self, {f: x})

    def monomial(self, a: int, b: int, f: GroupElt = (0, 0), coeff=1) -> "SkewElement":
        return self.from_poly(self.algebra.monomial(a, b, coeff), f)

    def group_element(self, f: GroupElt) -> "SkewElement":
        return self.from_poly(self.algebra.one(), f)

    def commutation_generators(self) -> list:
        gens = [self.from_poly(self.algebra.u()), self.from_poly(self.algebra.v())]
        gens.extend(self.group_element(f) for f in self.group.generators())
        return gens


class SkewElement:
    """Finite map group element -> NCPoly; zero components are dropped."""

    __slots__ = ("ring", "comps")

    def __init__(self, ring: SkewRing, comps: dict):
        self.ring = ring
        self.comps = {f: x for f, x in comps.items() if not x.is_zero()}

    def is_zero(self) -> bool:
        return not self.comps

    def _check(self, other):
        if not isinstance(other, SkewElement):
            if isinstance(other, NCPoly):
                return self.ring.from_poly(other)
            return NotImplemented
        if other.ring != self.ring:
            raise AlgebraError("operands live in different skew group rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.comps)
        for f, x in other.comps.items():
            cur = out.get(f)
            out[f] = x if cur is None else cur + x
        return SkewElement(self.ring, out)

    def __neg__(self):
        return SkewElement(self.ring, {f: -x for f, x in self.comps.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Cyclo)):
            return SkewElement(self.ring, {f: x * other for f, x in self.comps.items()})
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        group = self.ring.group
        out: dict = {}
        for f1, x1 in self.comps.items():
            for f2, x2 in other.comps.items():
                contrib = x1 * apply_automorphism(group, f1, x2)
                f12 = group.mul(f1, f2)
                cur = out.get(f12)
                out[f12] = contrib if cur is None else cur + contrib
        return SkewElement(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Cyclo)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            inv = self.inverse_of_unit()
            return inv ** (-k)
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse_of_unit(self) -> "SkewElement":
        """Inverse of coeff * u^a v^b * f; raises for anything else."""
        if len(self.comps) != 1:
            raise AlgebraError("only unit monomials can be inverted")
        ((f, x),) = self.comps.items()
        if len(x.terms) != 1 or x.den:
            raise AlgebraError("only unit monomials can be inverted")
        group = self.ring.group
        finv = group.inv(f)
        ((mono, coeff),) = x.terms.items()
        inv_mono, inv_coeff = self.ring.algebra.mono_inverse(mono, coeff)
        # (x f)^{-1} = f^{-1} x^{-1} = (f^{-1} . x^{-1}) f^{-1}
        back_mono, back_scal = act_mono(self.ring.algebra, group, finv, inv_mono)
        return self.ring.monomial(*back_mono, finv, inv_coeff * back_scal)

    def __eq__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def degrees(self):
        return sorted({d for x in self.comps.values() for d in x.degrees()})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise AlgebraError("element is zero or not homogeneous")
        return degs[0]

    def graded_component(self, d: int) -> "SkewElement":
        return SkewElement(self.ring, {f: x.graded_component(d) for f, x in self.comps.items()})

    def __repr__(self):
        if not self.comps:
            return "0"
        bits = []
        for f in sorted(self.comps):
            x = self.comps[f]
            fs = self.ring.group.element_str(f)
            bits.append(f"({x!r})*{fs}" if fs != "e" else f"({x!r})")
        return " + ".join(bits)


def skew_multiply(x: SkewElement, y: SkewElement) -> SkewElement:
    return x * y


def is_central(x: SkewElement) -> bool:
    return all(x * w == w * x for w in x.ring.commutation_generators())


# ---------------------------------------------------------------------------
# windowed bases: centers and invariants


def _exponent_range(algebra: Algebra, var: str, window: int):
    lo = -window if var in algebra.inverted else 0
    return range(lo, window + 1)


def _degree_range(algebra: Algebra, window: int):
    lo = -window if algebra.inverted else 0
    return range(lo, window + 1)


def _monomials_of_degree(algebra: Algebra, d: int, window: int):
    out = []
    for a in _exponent_range(algebra, "u", window):
        b = d - a
        if b in _exponent_range(algebra, "v", window):
            out.append((a, b))
    return out


def _skew_coords(x: SkewElement, index: dict) -> dict:
    """Coordinates of x over an arbitrary (a, b, f) index map, extending it."""
    out = {}
    for f, poly in x.comps.items():
        for (a, b), c in poly.terms.items():
            key = (a, b, f)
            col = index.get(key)
            if col is None:
                col = index[key] = len(index)
            cur = out.get(col)
            cur = c if cur is None else cur + c
            if cur.is_zero():
                out.pop(col, None)
            else:
                out[col] = cur
    return out


def center_basis(ring: SkewRing, window: int) -> list:
    """Basis of central elements, homogeneous, with exponents in the window.

    Solves [x, u] = [x, v] = [x, f] = 0 degree by degree; for Laurent algebras
    the degrees and both exponents run over [-window, window].
    """
    out = []
    gens = ring.commutation_generators()
    for d in _degree_range(ring.algebra, window):
        cands = [ring.monomial(a, b, f)
                 for (a, b) in _monomials_of_degree(ring.algebra, d, window)
                 for f in ring.group.elements()]
        if not cands:
            continue
        rows: dict = {}
        coord_index: dict = {}
        for col, cand in enumerate(cands):
            for gi, w in enumerate(gens):
                comm = cand * w - w * cand
                for f, poly in comm.comps.items():
                    for mono, c in poly.terms.items():
                        key = (gi, mono, f)
                        row = rows.setdefault(key, {})
                        cur = row.get(col)
                        cur = c if cur is None else cur + c
                        if cur.is_zero():
                            row.pop(col, None)
                        else:
                            row[col] = cur
        for sol in nullspace(rows.values(), len(cands)):
            elt = ring.zero()
            for col, coeff in sorted(sol.items()):
                elt = elt + cands[col] * coeff
            out.append(elt)
    return out


def invariant_basis(algebra: Algebra, group: Group, window: int) -> list:
    """Basis of the fixed ring A^G degree by degree up to the window."""
    if not check_action_well_defined(algebra, group):
        raise AlgebraError(f"{group} does not act on {algebra}")
    out = []
    gens = group.generators()
    for d in _degree_range(algebra, window):
        monos = _monomials_of_degree(algebra, d, window)
        if not monos:
            continue
        rows: dict = {}
        for col, mono in enumerate(monos):
            for gi, f in enumerate(gens):
                image, scalar = act_mono(algebra, group, f, mono)
                for target, c in ((image, scalar), (mono, -Cyclo.one(algebra.conductor))):
                    row = rows.setdefault((gi, target), {})
                    cur = row.get(col)
                    cur = c if cur is None else cur + c
                    if cur.is_zero():
                        row.pop(col, None)
                    else:
                        row[col] = cur
        for sol in nullspace(rows.values(), len(monos)):
            terms = {monos[col]: coeff for col, coeff in sol.items()}
            out.append(NCPoly(algebra, terms))
    return out


def algebra_center_basis(algebra: Algebra, window: int) -> list:
    """Basis of Z(A) degree by degree (commutators against u and v only)."""
    out = []
    uu, vv = algebra.u(), algebra.v()
    for d in _degree_range(algebra, window):
        monos = _monomials_of_degree(algebra, d, window)
        if not monos:
            continue
        rows: dict = {}
        for col, mono in enumerate(monos):
            x = algebra.monomial(*mono)
            for gi, w in enumerate((uu, vv)):
                comm = x * w - w * x
                for m2, c in comm.terms.items():
                    row = rows.setdefault((gi, m2), {})
                    cur = row.get(col)
                    cur = c if cur is None else cur + c
                    if cur.is_zero():
                        row.pop(col, None)
                    else:
                        row[col] = cur
        for sol in nullspace(rows.values(), len(monos)):
            out.append(NCPoly(algebra, {monos[col]: c for col, c in sol.items()}))
    return out


# ---------------------------------------------------------------------------
# central presentations, points, generating-set certificates

NamePoly = dict  # exponent tuple (aligned with Presentation.names) -> Cyclo


@dataclass
class Presentation:
    """Claimed generators of Z(T) with relations and nonvanishing loci."""

    ring: SkewRing
    names: tuple
    gens: dict
    relations: list = field(default_factory=list)
    invertible: frozenset = frozenset()
    localized_at: list = field(default_factory=list)

    def validate(self):
        for name in self.names:
            g = self.gens[name]
            if not g.is_homogeneous():
                raise AlgebraError(f"generator {name} is not homogeneous")
            if not is_central(g):
                raise AlgebraError(f"generator {name} is not central")
        for rel in self.relations:
            value = self.eval_relation(rel)
            if not value.is_zero():
                raise AlgebraError(f"relation {self.relation_str(rel)} does not vanish: {value!r}")
        return self

    def eval_relation(self, rel: NamePoly) -> SkewElement:
        total = self.ring.zero()
        for expo, coeff in rel.items():
            term = self.ring.one() * coeff
            for name, e in zip(self.names, expo):
                if e:
                    term = term * (self.gens[name] ** e)
            total = total + term
        return total

    def eval_namepoly_at(self, np_: NamePoly, values: dict) -> Cyclo:
        total = Cyclo.zero()
        for expo, coeff in np_.items():
            term = coeff
            for name, e in zip(self.names, expo):
                if e:
                    term = term * (values[name] ** e)
            total = total + term
        return total

    def relation_str(self, rel: NamePoly) -> str:
        bits = []
        for expo, coeff in sorted(rel.items()):
            mono = "*".join(_name_pow(n, e) for n, e in zip(self.names, expo) if e) or "1"
            cs = coeff.to_str()
            bits.append(mono if cs == "1" else f"({cs})*{mono}")
        return " + ".join(bits)

    def point(self, values: dict) -> "CentralPoint":
        return CentralPoint(self, values).validate()


def _name_pow(name, e):
    return name if e == 1 else f"{name}^{e}"


@dataclass
class CentralPoint:
    """A maximal ideal of the claimed center, as generator values."""

    presentation: Presentation
    values: dict

    def validate(self):
        pres = self.presentation
        missing = [n for n in pres.names if n not in self.values]
        if missing:
            raise AlgebraError(f"point misses values for {missing}")
        for name in pres.invertible:
            if self.values[name].is_zero():
                raise AlgebraError(f"value of invertible generator {name} must be nonzero")
        for rel in pres.relations:
            if not pres.eval_namepoly_at(rel, self.values).is_zero():
                raise AlgebraError(f"point violates relation {pres.relation_str(rel)}")
        for np_ in pres.localized_at:
            if pres.eval_namepoly_at(np_, self.values).is_zero():
                raise AlgebraError(f"point lies on the removed locus {pres.relation_str(np_)}")
        return self


def _enumerate_products(pres: Presentation, window: int):
    """Evaluated monomials in the generators whose support fits the window."""
    algebra = pres.ring.algebra
    names = pres.names
    bounds = []
    for name in names:
        deg = abs(pres.gens[name].degree())
        hi = (2 * window) // max(deg, 1) + 1
        lo = -hi if name in pres.invertible else 0
        bounds.append(range(lo, hi + 1))
    cache: dict = {}

    def gen_power(idx, e):
        key = (idx, e)
        val = cache.get(key)
        if val is None:
            val = pres.gens[names[idx]] ** e
            cache[key] = val
        return val

    lo_deg = -window if algebra.inverted else 0
    results = []
    expos = [[]]
    for rng in bounds:
        expos = [e + [k] for e in expos for k in rng]
    for expo in expos:
        deg = sum(e * pres.gens[names[i]].degree() for i, e in enumerate(expo))
        if not (lo_deg <= deg <= window):
            continue
        prod = pres.ring.one()
        for i, e in enumerate(expo):
            if e:
                prod = prod * gen_power(i, e)
        if prod.is_zero():
            continue
        ok = all(lo_deg <= a <= window and lo_deg <= b <= window
                 for poly in prod.comps.values() for (a, b) in poly.terms)
        if ok:
            results.append((deg, prod))
    return results


def verify_generating_set(pres: Presentation, window: int,
                          center: list | None = None) -> bool:
    """True iff monomials in the claimed generators span the computed center
    degree by degree over the window (relations and centrality are checked
    first and raise on failure)."""
    pres.validate()
    if center is None:
        center = center_basis(pres.ring, window)
    index: dict = {}
    center_by_deg: dict = {}
    for elt in center:
        center_by_deg.setdefault(elt.degree(), []).append(_skew_coords(elt, index))
    claimed_by_deg: dict = {}
    for deg, prod in _enumerate_products(pres, window):
        claimed_by_deg.setdefault(deg, []).append(_skew_coords(prod, index))
    degrees = set(center_by_deg) | set(claimed_by_deg)
    return all(spans_equal(center_by_deg.get(d, []), claimed_by_deg.get(d, []))
               for d in degrees)


def subalgebra_basis_by_degree(algebra: Algebra, gens: list, window: int) -> dict:
    """Graded basis of the unital subalgebra generated by homogeneous `gens`.

    Built degree by degree: every word ends in a generator, so independent
    products of lower degree times the generators span each graded piece."""
    from .linalg import Echelon

    index: dict = {}

    def coords(p):
        vec = {}
        for mono, c in p.terms.items():
            vec[index.setdefault(mono, len(index))] = c
        return vec

    basis = {0: [algebra.one()]}
    for d in range(1, window + 1):
        ech = Echelon()
        keep = []
        for g in gens:
            t = g.degree()
            if t > d:
                continue
            for p in basis.get(d - t, []):
                prod = p * g
                if not prod.is_zero() and ech.add(coords(prod)):
                    keep.append(prod)
        if keep:
            basis[d] = keep
    return basis


def verify_invariant_generating_set(algebra: Algebra, group: Group, gens: list,
                                    window: int) -> bool:
    """True iff the subalgebra generated by `gens` matches A^G up to the window."""
    fixed = invariant_basis(algebra, group, window)
    by_deg: dict = {}
    for x in fixed:
        by_deg.setdefault(x.degree(), []).append(x)
    prods = subalgebra_basis_by_degree(algebra, gens, window)
    index: dict = {}

    def coords(p):
        vec = {}
        for mono, c in p.terms.items():
            vec[index.setdefault(mono, len(index))] = c
        return vec

    for d in range(window + 1):
        have = [coords(p) for p in by_deg.get(d, [])]
        claim = [coords(p) for p in prods.get(d, [])]
        if not spans_equal(have, claim):
            return False
    return True


def stabilizer_of_point(algebra: Algebra, group: Group, za_gens: list,
                        values: list) -> list:
    """{f in G : f fixes the maximal ideal <z_i - values_i> of Z(A)}.

    Requires the action to permute the given generators up to scalars."""
    from .planes import _scalar_multiple_of

    stab = []
    for f in group.elements():
        ok = True
        for i, gen in enumerate(za_gens):
            image = apply_automorphism(group, f, gen)
            for j, target in enumerate(za_gens):
                lam = _scalar_multiple_of(image, target)
                if lam is not None:
                    # f.(z_i - p_i) = lam (z_j - p_i/lam): fixed iff p_j = p_i/lam
                    if values[j] != values[i] * lam.inverse():
                        ok = False
                    break
            else:
                raise AlgebraError(f"action does not permute the generators (f={f}, gen={gen!r})")
            if not ok:
                break
        if ok:
            stab.append(f)
    return stab
