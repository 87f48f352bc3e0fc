"""Normal-form arithmetic in the base algebras and their finite group actions.

Supported coefficient rings: the commutative plane k[u,v], the quantum plane
k_q[u,v] (vu = q uv), and the Jordan plane k_J[u,v] (vu = uv + u^2), each
optionally with inverted generators (Laurent versions; the Jordan plane admits
inverting u only) and with a list of central denominators adjoined formally.

Elements are kept in the PBW normal form sum c_{ab} u^a v^b.  Products are
normalized eagerly: the quantum plane commutes exponents through a power of q,
and the Jordan plane uses v u^a = u^a v + a u^{a+1} (valid for all integer a).

Groups are the cyclic, order-2 and dihedral groups acting by
g.u = w u, g.v = w^{-1} v, h.u = v, h.v = u for a fixed primitive root w.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import Cyclo, multiplicative_order

Mono = tuple  # (exponent of u, exponent of v)
GroupElt = tuple  # (power of g mod n, power of h mod 2)


class AlgebraError(ValueError):
    pass


class ActionError(ValueError):
    pass


class Algebra:
    """Presentation data for one coefficient algebra (an AlgebraSpec)."""

    def __init__(self, kind: str, q: Cyclo | None = None, conductor: int = 1,
                 inverted=frozenset(), denominators=()):
        if kind not in ("commutative", "quantum", "jordan"):
            raise AlgebraError(f"unknown algebra kind {kind!r}")
        if kind == "quantum":
            if q is None or q.is_zero():
                raise AlgebraError("quantum plane needs a nonzero parameter q")
        elif q is not None:
            raise AlgebraError("q is only meaningful for the quantum plane")
        inverted = frozenset(inverted)
        if not inverted <= {"u", "v"}:
            raise AlgebraError("inverted must be a subset of {u, v}")
        if kind == "jordan" and "v" in inverted:
            raise AlgebraError("the Jordan plane only admits inverting u")
        self.kind = kind
        self.q = q.coerce(_lcm(q.n, conductor)) if q is not None else None
        self.conductor = conductor if q is None else _lcm(q.n, conductor)
        self.inverted = inverted
        self.denominators: tuple[NCPoly, ...] = ()
        self._qpow_cache: dict[int, Cyclo] = {}
        self._jordan_cache: dict[tuple, dict] = {}
        for d in denominators:
            self._adjoin_denominator(d)

    def _adjoin_denominator(self, poly: "NCPoly"):
        poly = poly.retagged(self)
        if poly.is_zero():
            raise AlgebraError("denominator is zero")
        if not is_central_in_algebra(poly):
            raise AlgebraError(f"denominator {poly} is not central")
        self.denominators = self.denominators + (poly,)

    def key(self):
        qkey = None if self.q is None else (self.q.n, self.q.c)
        dens = tuple(tuple(sorted((m, c.c) for m, c in d.terms.items())) for d in self.denominators)
        return (self.kind, qkey, self.inverted, dens)

    def __eq__(self, other):
        return isinstance(other, Algebra) and self.key() == other.key()

    def __hash__(self):
        return hash((self.kind, self.inverted, len(self.denominators)))

    def __repr__(self):
        names = {"commutative": "k[u,v]", "quantum": "k_q[u,v]", "jordan": "k_J[u,v]"}
        tag = names[self.kind]
        if self.inverted:
            tag += " localized at " + ",".join(sorted(self.inverted))
        return f"Algebra({tag})"

    # -- coefficient helpers -------------------------------------------------

    def scalar(self, value) -> Cyclo:
        if isinstance(value, Cyclo):
            return value
        return Cyclo.rational(Fraction(value), self.conductor)

    def qpow(self, e: int) -> Cyclo:
        c = self._qpow_cache.get(e)
        if c is None:
            c = self.q ** e
            self._qpow_cache[e] = c
        return c

    def _check_mono(self, mono: Mono):
        a, b = mono
        if a < 0 and "u" not in self.inverted:
            raise AlgebraError("negative power of u in a ring without u^-1")
        if b < 0 and "v" not in self.inverted:
            raise AlgebraError("negative power of v in a ring without v^-1")

    # -- element constructors -------------------------------------------------

    def poly(self, terms: dict, den=()) -> "NCPoly":
        return NCPoly(self, terms, den)

    def monomial(self, a: int, b: int, coeff=1) -> "NCPoly":
        return NCPoly(self, {(a, b): self.scalar(coeff)})

    def one(self) -> "NCPoly":
        return self.monomial(0, 0)

    def zero(self) -> "NCPoly":
        return NCPoly(self, {})

    def u(self, e: int = 1) -> "NCPoly":
        return self.monomial(e, 0)

    def v(self, e: int = 1) -> "NCPoly":
        return self.monomial(0, e)

    # -- monomial products (the rewrite system) --------------------------------

    def mono_mul(self, m1: Mono, m2: Mono) -> dict:
        """u^a1 v^b1 * u^a2 v^b2 in normal form, as {mono: Cyclo}."""
        a1, b1 = m1
        a2, b2 = m2
        if self.kind == "commutative":
            return {(a1 + a2, b1 + b2): Cyclo.one(self.conductor)}
        if self.kind == "quantum":
            return {(a1 + a2, b1 + b2): self.qpow(b1 * a2)}
        # Jordan: move v^b1 across u^a2, one v at a time
        shifted = self._jordan_shift(b1, a2)
        return {(a1 + j, k + b2): coeff for (j, k), coeff in shifted.items()}

    def _jordan_shift(self, b: int, a: int) -> dict:
        """Normal form of v^b u^a in the Jordan plane (b >= 0)."""
        key = (b, a)
        cached = self._jordan_cache.get(key)
        if cached is not None:
            return cached
        cur = {(a, 0): Cyclo.one(self.conductor)}
        for _ in range(b):
            nxt: dict = {}
            for (j, k), coeff in cur.items():
                # v u^j = u^j v + j u^{j+1}
                _acc(nxt, (j, k + 1), coeff)
                if j:
                    _acc(nxt, (j + 1, k), coeff * Cyclo.rational(j))
            cur = nxt
        self._jordan_cache[key] = cur
        return cur

    def mono_inverse(self, mono: Mono, coeff: Cyclo):
        """(coeff u^a v^b)^(-1) as a (mono, coeff) pair; raises if not a unit."""
        a, b = mono
        inv_mono = (-a, -b)
        self._check_mono(inv_mono)
        # v^-b u^-a = (extra scalar) u^-a v^-b
        extra = self.mono_mul((0, -b), (-a, 0))
        ((_m, s),) = extra.items()
        return inv_mono, s * coeff.inverse()


def _lcm(a: int, b: int) -> int:
    from math import gcd
    return a * b // gcd(a, b)


def _acc(d: dict, key, val):
    cur = d.get(key)
    cur = val if cur is None else cur + val
    if cur.is_zero():
        d.pop(key, None)
    else:
        d[key] = cur


class NCPoly:
    """Normal-form element of one of the base algebras.

    `den` is a sorted multiset (tuple) of indices into algebra.denominators
    recording a formal central denominator; arithmetic clears denominators.
    """

    __slots__ = ("algebra", "terms", "den")

    def __init__(self, algebra: Algebra, terms: dict, den=()):
        self.algebra = algebra
        cleaned = {}
        for mono, coeff in terms.items():
            if not coeff.is_zero():
                algebra._check_mono(mono)
                cleaned[mono] = coeff
        self.terms = cleaned
        self.den = tuple(sorted(den))

    def retagged(self, algebra: Algebra) -> "NCPoly":
        return NCPoly(algebra, self.terms, self.den)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self):
        return sorted({a + b for a, b in self.terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self):
        degs = self.degrees()
        if len(degs) != 1:
            raise AlgebraError("element is zero or not homogeneous")
        return degs[0]

    def coefficient(self, a: int, b: int) -> Cyclo:
        return self.terms.get((a, b), Cyclo.zero(self.algebra.conductor))

    # -- denominator bookkeeping ------------------------------------------

    def _den_counts(self):
        counts = {}
        for i in self.den:
            counts[i] = counts.get(i, 0) + 1
        return counts

    def _raise_to_den(self, target_counts) -> dict:
        """Terms of self scaled so its denominator multiset becomes target."""
        mine = self._den_counts()
        terms = self.terms
        for i, want in target_counts.items():
            extra = want - mine.get(i, 0)
            for _ in range(extra):
                terms = _dict_mul(self.algebra, terms, self.algebra.denominators[i].terms)
        return terms

    def _common_den(self, other: "NCPoly"):
        a, b = self._den_counts(), other._den_counts()
        common = {i: max(a.get(i, 0), b.get(i, 0)) for i in set(a) | set(b)}
        den = tuple(sorted(i for i, c in common.items() for _ in range(c)))
        return common, den

    # -- arithmetic --------------------------------------------------------

    def _coerce_other(self, other):
        if isinstance(other, NCPoly):
            if other.algebra != self.algebra:
                raise AlgebraError("operands live in different algebras")
            return other
        if isinstance(other, (int, Fraction, Cyclo)):
            return NCPoly(self.algebra, {(0, 0): self.algebra.scalar(other)})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            out = dict(self.terms)
            for m, c in other.terms.items():
                _acc(out, m, c)
            return NCPoly(self.algebra, out, self.den)
        common, den = self._common_den(other)
        out = dict(self._raise_to_den(common))
        for m, c in other._raise_to_den(common).items():
            _acc(out, m, c)
        return NCPoly(self.algebra, out, den)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.algebra, {m: -c for m, c in self.terms.items()}, self.den)

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            s = self.algebra.scalar(other)
            return NCPoly(self.algebra, {m: c * s for m, c in self.terms.items()}, self.den)
        other = self._coerce_other(other)
        if other is NotImplemented:
            return NotImplemented
        out = _dict_mul(self.algebra, self.terms, other.terms)
        return NCPoly(self.algebra, out, self.den + other.den)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1 or self.den:
                raise AlgebraError("only unit monomials can be inverted")
            ((mono, coeff),) = self.terms.items()
            inv_mono, inv_coeff = self.algebra.mono_inverse(mono, coeff)
            return NCPoly(self.algebra, {inv_mono: inv_coeff}) ** (-k)
        result = self.algebra.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return self.terms == other.terms
        return (self - other).is_zero()

    __hash__ = None

    def graded_component(self, d: int) -> "NCPoly":
        return NCPoly(self.algebra,
                      {m: c for m, c in self.terms.items() if m[0] + m[1] == d},
                      self.den)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (a, b) in sorted(self.terms):
            c = self.terms[(a, b)]
            mono = "*".join(s for s in (_pow_str("u", a), _pow_str("v", b)) if s)
            cs = c.to_str()
            if mono:
                cs = mono if cs == "1" else (f"-{mono}" if cs == "-1" else f"({cs})*{mono}")
            bits.append(cs)
        text = " + ".join(bits)
        if self.den:
            text = f"({text}) / den{list(self.den)}"
        return text


def _pow_str(name, e):
    if e == 0:
        return ""
    return name if e == 1 else f"{name}^{e}"


def _dict_mul(algebra: Algebra, t1: dict, t2: dict) -> dict:
    out: dict = {}
    for m1, c1 in t1.items():
        for m2, c2 in t2.items():
            c12 = c1 * c2
            for mono, factor in algebra.mono_mul(m1, m2).items():
                _acc(out, mono, c12 * factor)
    return out


def nc_multiply(x: NCPoly, y: NCPoly) -> NCPoly:
    return x * y


def graded_component(x: NCPoly, d: int) -> NCPoly:
    return x.graded_component(d)


def is_central_in_algebra(x: NCPoly) -> bool:
    """True iff x commutes with u and v (denominators are ignored: central)."""
    A = x.algebra
    bare = NCPoly(A, x.terms)
    return (bare * A.u() == A.u() * bare) and (bare * A.v() == A.v() * bare)


# ---------------------------------------------------------------------------
# groups


class Group:
    """Cyclic, order-2 or dihedral group with its fixed action data."""

    def __init__(self, kind: str, n: int = 1, omega: Cyclo | None = None):
        if kind not in ("cyclic", "sym2", "dihedral"):
            raise AlgebraError(f"unknown group kind {kind!r}")
        if kind == "sym2":
            if n != 1:
                raise AlgebraError("sym2 has no rotation part")
        elif n < 1:
            raise AlgebraError("rotation order must be positive")
        if omega is None:
            if n > 1:
                raise AlgebraError("a primitive root of unity is required when n > 1")
            omega = Cyclo.one()
        if multiplicative_order(omega, bound=4 * n + 4) != n:
            raise AlgebraError(f"omega must have multiplicative order exactly {n}")
        self.kind = kind
        self.n = n
        self.omega = omega
        self._wpow: dict[int, Cyclo] = {}

    @property
    def has_reflection(self) -> bool:
        return self.kind in ("sym2", "dihedral")

    @property
    def order(self) -> int:
        return self.n * (2 if self.has_reflection else 1)

    def identity(self) -> GroupElt:
        return (0, 0)

    def elements(self) -> list:
        js = (0, 1) if self.has_reflection else (0,)
        return [(i, j) for j in js for i in range(self.n)]

    def generators(self) -> list:
        gens = []
        if self.n > 1:
            gens.append((1, 0))
        if self.has_reflection:
            gens.append((0, 1))
        return gens

    def mul(self, x: GroupElt, y: GroupElt) -> GroupElt:
        i1, j1 = x
        i2, j2 = y
        i = (i1 - i2) % self.n if j1 else (i1 + i2) % self.n
        return (i, (j1 + j2) % 2)

    def inv(self, x: GroupElt) -> GroupElt:
        i, j = x
        return (i % self.n, j) if j else ((-i) % self.n, 0)

    def wpow(self, e: int) -> Cyclo:
        e %= self.n
        c = self._wpow.get(e)
        if c is None:
            c = self.omega ** e
            self._wpow[e] = c
        return c

    def key(self):
        return (self.kind, self.n, self.omega.n, self.omega.c)

    def __eq__(self, other):
        return isinstance(other, Group) and self.key() == other.key()

    def __hash__(self):
        return hash((self.kind, self.n))

    def __repr__(self):
        return {"cyclic": f"C{self.n}", "sym2": "S2", "dihedral": f"D{self.n}"}[self.kind]

    def element_str(self, f: GroupElt) -> str:
        i, j = f
        bits = []
        if i:
            bits.append("g" if i == 1 else f"g^{i}")
        if j:
            bits.append("h")
        return "*".join(bits) if bits else "e"


def group_multiply(group: Group, x: GroupElt, y: GroupElt) -> GroupElt:
    return group.mul(x, y)


def act_mono(algebra: Algebra, group: Group, f: GroupElt, mono: Mono):
    """Image of a monomial under f, as (monomial, scalar); actions are monomial."""
    i, j = f
    a, b = mono
    scalar = Cyclo.one(algebra.conductor)
    if j:
        # h: u^a v^b -> v^a u^b, then renormalize
        if algebra.kind == "jordan":
            raise ActionError("reflections do not act on the Jordan plane")
        if algebra.kind == "quantum":
            scalar = scalar * algebra.qpow(a * b)
        a, b = b, a
    if i:
        scalar = scalar * group.wpow(i * (a - b))
    return (a, b), scalar


def apply_automorphism(group: Group, f: GroupElt, x: NCPoly) -> NCPoly:
    A = x.algebra
    out: dict = {}
    for mono, coeff in x.terms.items():
        new_mono, scalar = act_mono(A, group, f, mono)
        _acc(out, new_mono, coeff * scalar)
    if not x.den:
        return NCPoly(A, out)
    perm, scalars = _denominator_action(A, group, f)
    den = []
    divisor = Cyclo.one(A.conductor)
    for idx in x.den:
        den.append(perm[idx])
        divisor = divisor * scalars[idx]
    inv = divisor.inverse()
    return NCPoly(A, {m: c * inv for m, c in out.items()}, tuple(sorted(den)))


def _denominator_action(algebra: Algebra, group: Group, f: GroupElt):
    """How f permutes (up to scalar) the adjoined denominators."""
    perm, scalars = [], []
    for d in algebra.denominators:
        bare = NCPoly(algebra, d.terms)
        image = apply_automorphism(group, f, bare)
        for idx, target in enumerate(algebra.denominators):
            scal = _scalar_multiple_of(image, NCPoly(algebra, target.terms))
            if scal is not None:
                perm.append(idx)
                scalars.append(scal)
                break
        else:
            raise ActionError(f"denominator {d} is not permuted by the action")
    return perm, scalars


def _scalar_multiple_of(x: NCPoly, y: NCPoly):
    """Return c with x == c*y, or None."""
    if x.is_zero() or y.is_zero():
        return None
    if set(x.terms) != set(y.terms):
        return None
    mono = next(iter(y.terms))
    c = x.terms[mono] * y.terms[mono].inverse()
    return c if x == y * c else None


def check_action_well_defined(algebra: Algebra, group: Group) -> bool:
    """True iff the generator images respect the defining relation, the
    inversion structure and the denominators, and the group relations act
    trivially."""
    try:
        for f in group.generators():
            fu = apply_automorphism(group, f, algebra.u())
            fv = apply_automorphism(group, f, algebra.v())
            if algebra.kind == "quantum":
                residue = fv * fu - algebra.q * (fu * fv)
            elif algebra.kind == "jordan":
                residue = fv * fu - fu * fv - fu * fu
            else:
                residue = fv * fu - fu * fv
            if not residue.is_zero():
                return False
            for name in algebra.inverted:
                gen = algebra.u() if name == "u" else algebra.v()
                image = apply_automorphism(group, f, gen)
                if len(image.terms) != 1:
                    return False
                ((a, b),) = image.terms
                if (a and "u" not in algebra.inverted) or (b and "v" not in algebra.inverted):
                    return False
            if algebra.denominators:
                _denominator_action(algebra, group, f)
        # group relations act as the identity automorphism
        words = []
        if group.n > 1:
            words.append([(1, 0)] * group.n)
        if group.has_reflection:
            words.append([(0, 1)] * 2)
        if group.kind == "dihedral":
            words.append([(0, 1), (1, 0)] * 2)  # (hg)^2
        for word in words:
            for gen_poly in (algebra.u(), algebra.v()):
                image = gen_poly
                for f in word:
                    image = apply_automorphism(group, f, image)
                if image != gen_poly:
                    return False
    except ActionError:
        return False
    return True


def check_inner_by(algebra: Algebra, group: Group, f: GroupElt, c: NCPoly) -> bool:
    """True iff conjugation by the unit c realizes the action of f."""
    if len(c.terms) == 1 and not c.den:
        ((mono, coeff),) = c.terms.items()
        algebra.mono_inverse(mono, coeff)  # raises if not a unit
    else:
        raise AlgebraError("conjugator must be a unit monomial")
    fu = apply_automorphism(group, f, algebra.u())
    fv = apply_automorphism(group, f, algebra.v())
    return (c * algebra.u() == fu * c) and (c * algebra.v() == fv * c)
