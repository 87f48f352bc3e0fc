"""The case catalog: Table-1 pairs, their localizations, claimed centers,
point samplers and fiber recipes.

Case ids
  0    k[u,v] # S_2           (swap action; the motivating commutative example)
  i    k_q[u,v] # C_n         (q of root-of-unity order k, or a non-root rational)
  ii   k_{-1}[u,v] # S_2
  iii  k_{-1}[u,v] # D_n
  iv   k_J[u,v] # C_2

Localizations: "none" (the graded ring), "torus" (u, v inverted), "full"
(torus plus the case's extra central denominator).  Expected fiber ranks were
filled in from the brute-force fiber oracle and agree with the crossed-product
rank bookkeeping: d = lcm(n, k) in case (i), d = |G| * 2 in cases (ii)/(iii).

Samplers draw from a fixed pool of small rationals (and conductor roots of
unity where the center is a Laurent ring), rejecting inadmissible points;
everything is driven by a seeded rng, so scans are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .cyclotomic import Cyclo, root_of_unity
from .fiber import FiberRecipe, inverse_power_rule, swap_uv
from .planes import Algebra, AlgebraError, Group
from .skew import CentralPoint, Presentation, SkewRing


RATIONAL_POOL = [Fraction(x) for x in (1, 2, 3, 5, -1, -2, -3)] + [
    Fraction(1, 2), Fraction(-1, 2), Fraction(3, 2), Fraction(5, 3), Fraction(-2, 3)]


class CatalogError(ValueError):
    pass


@dataclass
class CaseSpec:
    case_id: str
    label: str
    n: int | None
    k: int | None
    q_value: Fraction | None
    localization: str
    conductor: int
    ring: SkewRing
    presentation: Presentation | None
    x_outer: bool | None
    expected_d: int | None
    azumaya_expected: bool | None    # None: no pointwise claim to scan
    scan_reason: str | None          # set when scans are not applicable
    za_gens: list | None             # generators of Z(A) for freeness scans
    za_stab_allowed: bool | None     # does the localization keep stabilized points?

    def params(self) -> dict:
        out = {"localization": self.localization}
        if self.n is not None:
            out["n"] = self.n
        if self.k is not None:
            out["k"] = self.k
        if self.q_value is not None:
            out["q"] = str(self.q_value)
        return out


def make_case(case_id: str, n: int | None = None, k: int | None = None,
              q: Fraction | None = None, localization: str | None = None) -> CaseSpec:
    case_id = str(case_id)
    if case_id == "0":
        return _case_zero(localization or "full")
    if case_id == "i":
        return _case_i(n, k, q, localization or "torus")
    if case_id == "ii":
        return _case_ii(localization or "full")
    if case_id == "iii":
        if n is None:
            raise CatalogError("case iii needs n")
        return _case_iii(n, localization)
    if case_id == "iv":
        return _case_iv()
    raise CatalogError(f"unknown case id {case_id!r}")


# ---------------------------------------------------------------------------
# case 0: the commutative pair


def _case_zero(localization: str) -> CaseSpec:
    if localization not in ("none", "full"):
        raise CatalogError("case 0 supports localizations none | full")
    base = Algebra("commutative")
    dens = [base.u() - base.v()] if localization == "full" else []
    A = Algebra("commutative", denominators=dens)
    T = SkewRing(A, Group("sym2"))
    one = Cyclo.one()
    pres = Presentation(
        ring=T, names=("s", "m"),
        gens={"s": T.monomial(1, 0) + T.monomial(0, 1), "m": T.monomial(1, 1)},
        localized_at=[{(2, 0): one, (0, 1): Cyclo.rational(-4)}] if localization == "full" else [],
    ).validate()
    return CaseSpec(
        case_id="0", label="k[u,v]#S2", n=None, k=None, q_value=None,
        localization=localization, conductor=1, ring=T, presentation=pres,
        x_outer=True, expected_d=2,
        azumaya_expected=(localization == "full"), scan_reason=None,
        za_gens=[A.u(), A.v()], za_stab_allowed=(localization == "none"),
    )


# ---------------------------------------------------------------------------
# case i: quantum plane with a cyclic group


def _case_i(n, k, q: Fraction | None, localization: str) -> CaseSpec:
    if n is None:
        raise CatalogError("case i needs n")
    if localization not in ("none", "torus"):
        raise CatalogError("case i supports localizations none | torus")
    if q is not None:
        # q not a root of unity: not PI, no pointwise scan
        A = Algebra("quantum", q=Cyclo.rational(q),
                    inverted=frozenset({"u", "v"}) if localization == "torus" else frozenset())
        T = SkewRing(A, Group("cyclic", n, root_of_unity(1, n)))
        return CaseSpec(
            case_id="i", label=f"k_q[u,v]#C{n} (q={q})", n=n, k=None, q_value=q,
            localization=localization, conductor=n, ring=T, presentation=None,
            x_outer=True, expected_d=None, azumaya_expected=None,
            scan_reason="q is not a root of unity: T is not finite over its centre, "
                        "no pointwise fiber scan applies",
            za_gens=None, za_stab_allowed=None,
        )
    if k is None:
        raise CatalogError("case i needs k (order of q) or an explicit rational q")
    l = lcm(n, k)
    eps = root_of_unity(1, l)
    omega = eps ** (l // n)
    qq = eps ** (l // k)
    inverted = frozenset({"u", "v"}) if localization == "torus" else frozenset()
    A = Algebra("quantum", q=qq, conductor=l, inverted=inverted)
    T = SkewRing(A, Group("cyclic", n, omega))
    pres = None
    if localization == "torus":
        x_elt = T.monomial(l, 0)
        w_elt = T.from_poly(A.monomial(1, 1) ** (-(l // n)), ((l // k) % n, 0))
        pres = Presentation(
            ring=T, names=("x", "w"), gens={"x": x_elt, "w": w_elt},
            invertible=frozenset({"x", "w"}),
            localized_at=[{(1, 0): Cyclo.one()}, {(0, 1): Cyclo.one()}],
        ).validate()
    return CaseSpec(
        case_id="i", label=f"k_q[u,v]#C{n} (ord q = {k})", n=n, k=k, q_value=None,
        localization=localization, conductor=l, ring=T, presentation=pres,
        x_outer=(gcd(n, k) == 1), expected_d=l,
        azumaya_expected=(True if localization == "torus" else None),
        scan_reason=None if localization == "torus" else
        "the unlocalized quantum plane is not Azumaya; scan the torus localization",
        za_gens=[A.monomial(k, 0), A.monomial(0, k)] if localization == "torus" else None,
        za_stab_allowed=False if localization == "torus" else None,
    )


# ---------------------------------------------------------------------------
# case ii: (-1)-plane with the swap


def _case_ii(localization: str) -> CaseSpec:
    if localization not in ("none", "torus", "full"):
        raise CatalogError("case ii supports localizations none | torus | full")
    q = Cyclo.rational(-1)
    inverted = frozenset() if localization == "none" else frozenset({"u", "v"})
    dens = []
    if localization == "full":
        base = Algebra("quantum", q=q, inverted=inverted)
        dens = [base.monomial(2, 0) - base.monomial(0, 2)]
    A = Algebra("quantum", q=q, inverted=inverted, denominators=dens)
    T = SkewRing(A, Group("sym2"))
    one = Cyclo.one()
    localized_at = []
    if localization != "none":
        localized_at.append({(0, 1): one})                                # y != 0
    if localization == "full":
        localized_at.append({(2, 0): one, (0, 1): Cyclo.rational(-4)})    # s2^2 - 4y != 0
    pres = Presentation(
        ring=T, names=("s2", "y"),
        gens={"s2": T.monomial(2, 0) + T.monomial(0, 2), "y": T.monomial(2, 2)},
        invertible=frozenset({"y"}) if localization != "none" else frozenset(),
        localized_at=localized_at,
    ).validate()
    return CaseSpec(
        case_id="ii", label="k_{-1}[u,v]#S2", n=None, k=2, q_value=None,
        localization=localization, conductor=1, ring=T, presentation=pres,
        x_outer=True, expected_d=4,
        azumaya_expected={"none": None, "torus": False, "full": True}[localization],
        scan_reason="the unlocalized ring is not Azumaya; scan a localization"
        if localization == "none" else None,
        za_gens=[A.monomial(2, 0), A.monomial(0, 2)] if localization != "none" else None,
        za_stab_allowed=(localization == "torus") if localization != "none" else None,
    )


# ---------------------------------------------------------------------------
# case iii: (-1)-plane with a dihedral group


def _case_iii(n: int, localization: str | None) -> CaseSpec:
    odd = n % 2 == 1
    if localization is None:
        localization = "full" if odd else "torus"
    allowed = ("none", "torus", "full") if odd else ("none", "torus")
    if localization not in allowed:
        raise CatalogError(f"case iii with n={n} supports localizations {allowed}")
    conductor = n if odd else lcm(n, 4)
    omega = root_of_unity(1, n).coerce(conductor)
    q = Cyclo.rational(-1)
    inverted = frozenset() if localization == "none" else frozenset({"u", "v"})
    dens = []
    if localization == "full":
        base = Algebra("quantum", q=q, conductor=conductor, inverted=inverted)
        dens = [base.monomial(2 * n, 0) - base.monomial(0, 2 * n)]
    A = Algebra("quantum", q=q, conductor=conductor, inverted=inverted, denominators=dens)
    T = SkewRing(A, Group("dihedral", n, omega))
    one = Cyclo.one()
    if odd:
        # Z(T) = k[u^2 v^2, u^{2n} + v^{2n}]
        localized_at = []
        if localization != "none":
            localized_at.append({(1, 0): one})                                 # y != 0
        if localization == "full":
            # (u^{2n} - v^{2n})^2 = q2n^2 - 4 y^n != 0
            localized_at.append({(0, 2): one, (n, 0): Cyclo.rational(-4)})
        pres = Presentation(
            ring=T, names=("y", "q2n"),
            gens={"y": T.monomial(2, 2),
                  "q2n": T.monomial(2 * n, 0) + T.monomial(0, 2 * n)},
            invertible=frozenset({"y"}) if localization != "none" else frozenset(),
            localized_at=localized_at,
        ).validate()
        expected = 4 * n
        azu = {"none": None, "torus": False, "full": True}[localization]
    else:
        # Z(T) = k[x,y,z]/(x^2 y + y^{m+1} + z^2), m = n/2
        m = n // 2
        i_unit = root_of_unity(1, 4).coerce(conductor)
        half_i = i_unit * Fraction(1, 2)
        x_elt = (T.monomial(n, 0) + T.monomial(0, n)) * half_i
        z_elt = (T.monomial(n + 1, 1, (m, 0)) - T.monomial(1, n + 1, (m, 0))) * half_i
        relation = {  # x^2 y + y^(m+1) + z^2
            (2, 1, 0): one.coerce(conductor),
            (0, m + 1, 0): one.coerce(conductor),
            (0, 0, 2): one.coerce(conductor),
        }
        pres = Presentation(
            ring=T, names=("x", "y", "z"),
            gens={"x": x_elt, "y": T.monomial(2, 2), "z": z_elt},
            relations=[relation],
            invertible=frozenset({"y"}) if localization != "none" else frozenset(),
            localized_at=[{(0, 1, 0): one.coerce(conductor)}] if localization != "none" else [],
        ).validate()
        expected = 2 * n
        azu = {"none": None, "torus": True}[localization]
    return CaseSpec(
        case_id="iii", label=f"k_{{-1}}[u,v]#D{n}", n=n, k=2, q_value=None,
        localization=localization, conductor=conductor, ring=T, presentation=pres,
        x_outer=odd, expected_d=expected, azumaya_expected=azu,
        scan_reason="the unlocalized ring is not Azumaya; scan a localization"
        if localization == "none" else None,
        za_gens=[A.monomial(2, 0), A.monomial(0, 2)] if localization != "none" else None,
        za_stab_allowed=(localization == "torus" and odd) if localization != "none" else None,
    )


# ---------------------------------------------------------------------------
# case iv: Jordan plane


def _case_iv() -> CaseSpec:
    A = Algebra("jordan")
    T = SkewRing(A, Group("cyclic", 2, Cyclo.rational(-1)))
    return CaseSpec(
        case_id="iv", label="k_J[u,v]#C2", n=2, k=None, q_value=None,
        localization="none", conductor=1, ring=T, presentation=None,
        x_outer=True, expected_d=None, azumaya_expected=None,
        scan_reason="center too small for a pointwise scan: the Jordan plane is "
                    "not PI and Z(T) = k",
        za_gens=None, za_stab_allowed=None,
    )


# ---------------------------------------------------------------------------
# point sampling


def _pool_value(rng, conductor: int, nonzero: bool = True, allow_roots: bool = False) -> Cyclo:
    for _ in range(64):
        r = Cyclo.rational(rng.choice(RATIONAL_POOL), conductor)
        if allow_roots and conductor > 2 and rng.random() < 0.3:
            r = r * root_of_unity(rng.randrange(conductor), conductor)
        if not (nonzero and r.is_zero()):
            return r
    raise CatalogError("could not draw an admissible pool value")


def sample_point(case: CaseSpec, rng, stabilized: bool = False) -> CentralPoint:
    """One admissible point of the case's claimed center (seeded, reproducible).

    With stabilized=True the point is drawn on the stabilized locus the
    localization would normally remove; the case must keep such points."""
    if case.presentation is None:
        raise CatalogError(f"case {case.label} has no central presentation to sample")
    if stabilized and not _stabilized_supported(case):
        raise CatalogError(f"{case.label} ({case.localization}) removes stabilized points")
    for _ in range(200):
        try:
            values = _draw_values(case, rng, stabilized)
            return case.presentation.point(values)
        except AlgebraError:
            continue
    raise CatalogError("no admissible point found within the retry budget")


def _stabilized_supported(case: CaseSpec) -> bool:
    if case.case_id == "0":
        return case.localization == "none"
    if case.case_id == "ii":
        return case.localization in ("none", "torus")
    if case.case_id == "iii" and case.n % 2 == 1:
        return case.localization in ("none", "torus")
    return False


def _draw_values(case: CaseSpec, rng, stabilized: bool) -> dict:
    cond = case.conductor
    if case.case_id == "0":
        a = _pool_value(rng, cond, nonzero=False)
        b = a if stabilized else _pool_value(rng, cond, nonzero=False)
        if case.localization == "full" and a == b:
            raise AlgebraError("rejected: on the removed diagonal")
        return {"s": a + b, "m": a * b}
    if case.case_id == "i":
        return {"x": _pool_value(rng, cond),
                "w": _pool_value(rng, cond, allow_roots=True)}
    if case.case_id == "ii":
        if stabilized:
            w = _pool_value(rng, cond)
            return {"s2": w * 2, "y": w * w}
        return {"s2": _pool_value(rng, cond, nonzero=False), "y": _pool_value(rng, cond)}
    if case.case_id == "iii" and case.n % 2 == 1:
        if stabilized:
            w = _pool_value(rng, cond)
            return {"y": w * w, "q2n": (w ** case.n) * 2}
        return {"y": _pool_value(rng, cond), "q2n": _pool_value(rng, cond, nonzero=False)}
    if case.case_id == "iii":
        m = case.n // 2
        i_unit = root_of_unity(1, 4).coerce(cond)
        rho, tau = _pool_value(rng, cond), _pool_value(rng, cond)
        alpha, beta = rho * rho, tau * tau
        sign = Cyclo.rational(rng.choice((1, -1)), cond)
        half = Cyclo.rational(Fraction(1, 2), cond)
        values = {
            "x": i_unit * half * (alpha ** m + beta ** m),
            "y": alpha * beta,
            "z": half * (alpha ** m - beta ** m) * (i_unit * rho * tau * sign),
            "_s": alpha + beta,
        }
        return values
    raise CatalogError(f"no sampler for case {case.label}")


# ---------------------------------------------------------------------------
# fiber recipes


def recipe_for(case: CaseSpec, point: CentralPoint) -> FiberRecipe:
    A = case.ring.algebra
    T = case.ring
    vals = point.values
    if case.case_id == "0":
        s, m = vals["s"], vals["m"]
        return FiberRecipe(
            ku=2, kv=1,
            u_pow=A.poly({(1, 0): s, (0, 0): -m}),
            v_pow=A.poly({(0, 0): s, (1, 0): -A.scalar(1)}),
        )
    if case.case_id == "i":
        l = case.conductor
        a, c = vals["x"], vals["w"]
        x_elt = case.presentation.gens["x"]
        w_elt = case.presentation.gens["w"]
        vl_elt = T.monomial(0, l)
        scalar_elt = x_elt * (w_elt ** case.n) * vl_elt
        ((f0, poly),) = scalar_elt.comps.items()
        if f0 != T.group.identity() or set(poly.terms) != {(0, 0)}:
            raise CatalogError("internal: u^l X^n v^l is not scalar")
        gamma = poly.terms[(0, 0)]
        b_val = gamma * (a * c ** case.n).inverse()
        return FiberRecipe(
            ku=l, kv=l,
            u_pow=A.poly({(0, 0): a}), v_pow=A.poly({(0, 0): b_val}),
            u_inv=A.poly({(0, 0): a.inverse()}), v_inv=A.poly({(0, 0): b_val.inverse()}),
            residuals=[w_elt - T.one() * c],
        )
    if case.case_id == "ii":
        s2, y = vals["s2"], vals["y"]
        u_pow = A.poly({(2, 0): s2, (0, 0): -y})
        u_inv = inverse_power_rule(u_pow, 4) if A.inverted else None
        return FiberRecipe(
            ku=4, kv=4, u_pow=u_pow, v_pow=swap_uv(u_pow),
            u_inv=u_inv, v_inv=swap_uv(u_inv) if u_inv is not None else None,
            residuals=[case.presentation.gens["s2"] - T.one() * s2,
                       case.presentation.gens["y"] - T.one() * y],
        )
    if case.case_id == "iii" and case.n % 2 == 1:
        n = case.n
        p, q2n = vals["y"], vals["q2n"]
        u_pow = A.poly({(2 * n, 0): q2n, (0, 0): -(p ** n)})
        return FiberRecipe(
            ku=4 * n, kv=2,
            u_pow=u_pow,
            v_pow=A.poly({(-2, 0): p}),
            u_inv=inverse_power_rule(u_pow, 4 * n),
            v_inv=A.poly({(2, 0): p.inverse()}),
            residuals=[case.presentation.gens["y"] - T.one() * p,
                       case.presentation.gens["q2n"] - T.one() * q2n],
        )
    if case.case_id == "iii":
        if "_s" in vals:
            s = vals["_s"]
        elif case.n == 2:
            i_unit = root_of_unity(1, 4).coerce(case.conductor)
            s = vals["x"] * (i_unit * (-2))
        else:
            raise CatalogError("case iii even with n > 2 needs the auxiliary _s value")
        y = vals["y"]
        u_pow = A.poly({(2, 0): s, (0, 0): -y})
        u_inv = inverse_power_rule(u_pow, 4) if A.inverted else None
        residuals = [case.presentation.gens[name] - T.one() * vals[name]
                     for name in ("x", "y", "z")]
        return FiberRecipe(
            ku=4, kv=4, u_pow=u_pow, v_pow=swap_uv(u_pow),
            u_inv=u_inv, v_inv=swap_uv(u_inv) if u_inv is not None else None,
            residuals=residuals,
        )
    raise CatalogError(f"no fiber recipe for case {case.label}")


# ---------------------------------------------------------------------------
# Z(A) points for freeness scans


def sample_za_values(case: CaseSpec, rng, stabilized: bool = False) -> list:
    """Values for the case's Z(A) generators, honoring the localization."""
    if case.za_gens is None:
        raise CatalogError(f"case {case.label} has no freeness data")
    cond = case.conductor
    for _ in range(200):
        if case.case_id == "0":
            a = _pool_value(rng, cond, nonzero=False)
            b = a if stabilized else _pool_value(rng, cond, nonzero=False)
            if case.localization == "full" and a == b:
                continue
            return [a, b]
        alpha = _pool_value(rng, cond, allow_roots=(case.case_id == "iii"))
        beta = alpha if stabilized else _pool_value(rng, cond, allow_roots=(case.case_id == "iii"))
        if case.case_id == "ii" and case.localization == "full" and alpha == beta:
            continue
        if case.case_id == "iii" and case.localization == "full" \
                and (alpha ** case.n) == (beta ** case.n):
            continue
        return [alpha, beta]
    raise CatalogError("no admissible Z(A) point found within the retry budget")


# ---------------------------------------------------------------------------
# matched fibers for the inner-action rank comparison


def matched_inner_pair(rng):
    """One matched point on the (-1)-torus and on its C_2 skew ring.

    The skew-ring point (u^2 -> a, uvg-side generator -> c) determines the
    torus point (u^2 -> a, v^2 -> derived); returns (recipe_A, ring_A,
    recipe_T, ring_T, case) ready for build_fiber."""
    case = make_case("i", n=2, k=2, localization="torus")
    point = sample_point(case, rng)
    recipe_t = recipe_for(case, point)
    A = case.ring.algebra
    ring_a = SkewRing(A, Group("cyclic", 1))
    recipe_a = FiberRecipe(
        ku=2, kv=2,
        u_pow=recipe_t.u_pow, v_pow=recipe_t.v_pow,
        u_inv=recipe_t.u_inv, v_inv=recipe_t.v_inv,
    )
    return ring_a, recipe_a, case.ring, recipe_t, point
