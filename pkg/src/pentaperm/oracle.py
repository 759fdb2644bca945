"""Independent brute-force ground truth over concrete fields.

Nothing here consults the closed-form theory: permutation status comes
from exhaustive sweeps with a hit bitmap, the fractional map g = N/H is
evaluated on the unit circle point by point, and ramification indices
are root multiplicities computed by synthetic division over GF(2^(2m)).
That independence is what makes agreement with the theorem engine a
meaningful check.

Branch points are reported as images of critical points found among the
field points plus infinity.  The underlying definitions live over the
algebraic closure; for the maps in scope every critical point lies in
F_4, a subfield of every GF(2^(2m)), so the concrete sweep sees them all.
Inseparable maps such as x -> x^2 (where every point is critical) are
reported as such.
"""

from __future__ import annotations

from dataclasses import dataclass

from .families import FamilySpec, build_H, build_N, f_exponents
from .field import FieldCtx, FieldElem, _unit_circle_bits, make_field
from .gf2poly import BinPoly, poly_divmod, poly_gcd, poly_reverse

__all__ = [
    "INFINITY",
    "ProjPoint",
    "RationalMap",
    "DegreeOneMap",
    "BRUTE_CAP",
    "MU_CAP",
    "monomials_permute",
    "brute_is_permutation",
    "g_map",
    "g_eval",
    "g_permutes_unit_circle",
    "ramification_index",
    "fiber_indices",
    "ramification_profile",
    "branch_points",
    "branch_points_of_map",
    "critical_point_residual",
    "ramification_report",
    "deg1_bijects_mu",
    "deg1_bijects_mu_by_enumeration",
    "deg1_mu_to_p1",
    "deg1_mu_to_p1_by_enumeration",
]

BRUTE_CAP = 24  # largest field degree 2m swept exhaustively by default
MU_CAP = 20  # largest m whose unit circle is enumerated


class _Infinity:
    """The point at infinity on the projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

# A projective point is a FieldElem or INFINITY.
ProjPoint = FieldElem | _Infinity


# ---------------------------------------------------------------------------
# permutation sweeps
# ---------------------------------------------------------------------------

def monomials_permute(n: int, exponents, cap: int = BRUTE_CAP) -> bool:
    """Whether x -> xor of x^e over the exponent list permutes GF(2^n).

    All exponents must be positive, so 0 maps to 0; nonzero elements are
    swept through the antilog table and hits are marked in a bitmap of
    size 2^n.  Duplicate exponents cancel in characteristic 2.
    """
    import numpy as np

    if n > cap:
        raise ValueError(f"field degree {n} exceeds the brute cap {cap}")
    exps = list(exponents)
    if any(e < 1 for e in exps):
        raise ValueError("exponents must be positive")
    ctx = make_field(n)
    order = ctx.order
    table = ctx.exp_array()
    ks = np.arange(order, dtype=np.int64)
    values = np.zeros(order, dtype=np.int64)
    for e in exps:
        values ^= table[(ks * (e % order)) % order]
    bitmap = np.zeros(1 << n, dtype=bool)
    bitmap[values] = True
    return not bitmap[0] and int(bitmap.sum()) == order


def brute_is_permutation(spec: FamilySpec, m: int, cap: int = BRUTE_CAP) -> bool:
    """Exhaustive permutation test of the family member over GF(2^(2m))."""
    if 2 * m > cap:
        raise ValueError(f"2m = {2 * m} exceeds the brute cap {cap}")
    return monomials_permute(2 * m, f_exponents(spec, m), cap=cap)


# ---------------------------------------------------------------------------
# the fractional map g = N/H
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalMap:
    """Quotient of GF(2)[x] polynomials, with its reduced form cached."""

    num: BinPoly
    den: BinPoly
    reduced_num: BinPoly
    reduced_den: BinPoly

    @classmethod
    def make(cls, num: BinPoly, den: BinPoly) -> "RationalMap":
        if not den:
            raise ValueError("denominator must be nonzero")
        g = poly_gcd(num, den)
        return cls(num, den, poly_divmod(num, g)[0], poly_divmod(den, g)[0])

    @property
    def degree(self) -> int:
        dn = self.reduced_num.degree
        dd = self.reduced_den.degree
        return max(-1 if dn is None else dn, dd)

    def value_at_infinity(self, ctx: FieldCtx) -> ProjPoint:
        dn, dd = self.reduced_num.degree, self.reduced_den.degree
        dn = -1 if dn is None else dn
        if dn > dd:
            return INFINITY
        if dn < dd:
            return ctx.zero()
        return ctx.one()  # both monic over GF(2)

    def eval_bits(self, ctx: FieldCtx, x: int):
        """Reduced-form value as a bit mask, or INFINITY."""
        den = ctx.eval_poly_bits(self.reduced_den.bits, x)
        if den == 0:
            return INFINITY
        num = ctx.eval_poly_bits(self.reduced_num.bits, x)
        return ctx.mul(num, ctx.inv(den))

    def eval(self, ctx: FieldCtx, point: ProjPoint) -> ProjPoint:
        if point is INFINITY:
            return self.value_at_infinity(ctx)
        v = self.eval_bits(ctx, point.bits)
        return v if v is INFINITY else ctx.elem(v)

    def flipped(self) -> "RationalMap":
        """The map x -> self(1/x), reduced."""
        d = self.degree
        return RationalMap.make(
            poly_reverse(self.reduced_num, d), poly_reverse(self.reduced_den, d))


def g_map(spec: FamilySpec) -> RationalMap:
    """g = N/H for the family member, reduced by gcd(N, H) = Q^r."""
    return RationalMap.make(build_N(spec), build_H(spec))


def g_eval(spec: FamilySpec, ctx: FieldCtx, x: FieldElem) -> ProjPoint:
    """Value of the reduced g at x; INFINITY where the reduced denominator dies."""
    if ctx.subfield_m is None:
        raise ValueError("g_eval needs a context with subfield structure")
    if x.ctx != ctx:
        raise ValueError("element does not belong to the given context")
    return g_map(spec).eval(ctx, x)


def _batch_inverse(ctx: FieldCtx, vals: list[int]) -> list[int]:
    # Montgomery trick: one inversion plus 3(k-1) multiplications
    prefix = [0] * len(vals)
    acc = 1
    for k, v in enumerate(vals):
        prefix[k] = acc
        acc = ctx.mul(acc, v)
    inv = ctx.inv(acc)
    out = [0] * len(vals)
    for k in range(len(vals) - 1, -1, -1):
        out[k] = ctx.mul(inv, prefix[k])
        inv = ctx.mul(inv, vals[k])
    return out


def g_permutes_unit_circle(spec: FamilySpec, m: int, cap: int = MU_CAP) -> bool:
    """Whether the reduced g maps the unit circle bijectively onto itself.

    The circle is cyclic of order q+1, so the five-term N and H restrict
    to lookups in a (q+1)-entry power table; only the (at most two) common
    roots of N and H need the reduced polynomials directly.
    """
    import numpy as np

    if m > cap:
        raise ValueError(f"m = {m} exceeds the unit-circle cap {cap}")
    ctx = make_field(2 * m, m)
    q = 1 << m
    gmap = g_map(spec)
    zeta = ctx.pow(ctx.generator(), q - 1)
    zpow = [1] * (q + 1)
    v = 1
    for k in range(1, q + 1):
        v = ctx.mul(v, zeta)
        zpow[k] = v

    ztab = np.array(zpow, dtype=np.int64)
    ks = np.arange(q + 1, dtype=np.int64)

    def sparse_values(poly: BinPoly):
        acc = np.zeros(q + 1, dtype=np.int64)
        for e in poly.exponents():
            acc ^= ztab[(ks * (e % (q + 1))) % (q + 1)]
        return acc

    nvals = sparse_values(gmap.num)
    hvals = sparse_values(gmap.den)

    points: list[int] = []
    quotient_at: dict[int, int] = {}
    for k in range(q + 1):
        nv, hv = int(nvals[k]), int(hvals[k])
        if hv == 0:
            if nv != 0:
                return False  # g hits infinity on the circle
            # common root of N and H: fall back to the reduced form
            red = gmap.eval_bits(ctx, zpow[k])
            if red is INFINITY:
                return False
            quotient_at[k] = red
        else:
            points.append(k)
    denom_inv = _batch_inverse(ctx, [int(hvals[k]) for k in points])
    for k, inv in zip(points, denom_inv):
        quotient_at[k] = ctx.mul(int(nvals[k]), inv)
    return sorted(quotient_at.values()) == sorted(zpow)


# ---------------------------------------------------------------------------
# ramification over the concrete field
# ---------------------------------------------------------------------------

def _lift(poly: BinPoly) -> list[int]:
    bits = poly.bits
    return [bits >> k & 1 for k in range(max(1, bits.bit_length()))]


def _scale(ctx: FieldCtx, coeffs: list[int], c: int) -> list[int]:
    return [ctx.mul(a, c) for a in coeffs]


def _root_multiplicity(ctx: FieldCtx, coeffs: list[int], alpha: int) -> int:
    # repeated synthetic division by (x + alpha)
    mult = 0
    while len(coeffs) > 1 or (coeffs and coeffs[0]):
        acc = 0
        quot = [0] * (len(coeffs) - 1)
        for k in range(len(coeffs) - 1, 0, -1):
            acc = coeffs[k] ^ ctx.mul(acc, alpha)
            quot[k - 1] = acc
        rem = coeffs[0] ^ ctx.mul(acc, alpha)
        if rem:
            break
        mult += 1
        coeffs = quot or [0]
        if len(coeffs) == 1 and coeffs[0] == 0:
            break
    return mult


def ramification_index(g: RationalMap, alpha: ProjPoint, ctx: FieldCtx) -> int:
    """Multiplicity of alpha as a root of N - g(alpha)D (D when g(alpha) = inf).

    The index at infinity is computed through the substitution x -> 1/x.
    """
    if alpha is INFINITY:
        return ramification_index(g.flipped(), ctx.zero(), ctx)
    a = alpha.bits
    value = g.eval_bits(ctx, a)
    if value is INFINITY:
        coeffs = _lift(g.reduced_den)
    else:
        num = _lift(g.reduced_num)
        den = _scale(ctx, _lift(g.reduced_den), value)
        width = max(len(num), len(den))
        num += [0] * (width - len(num))
        den += [0] * (width - len(den))
        coeffs = [x ^ y for x, y in zip(num, den)]
    return _root_multiplicity(ctx, coeffs, a)


def critical_point_residual(g: RationalMap, alpha: FieldElem, ctx: FieldCtx) -> FieldElem:
    """N'(a)D(a) + N(a)D'(a); zero is necessary at every ramification point."""
    from .gf2poly import poly_derivative

    a = alpha.bits
    n, d = g.reduced_num, g.reduced_den
    nv = ctx.eval_poly_bits(n.bits, a)
    dv = ctx.eval_poly_bits(d.bits, a)
    npv = ctx.eval_poly_bits(poly_derivative(n).bits, a)
    dpv = ctx.eval_poly_bits(poly_derivative(d).bits, a)
    return ctx.elem(ctx.mul(npv, dv) ^ ctx.mul(nv, dpv))


def _critical_points(g: RationalMap, ctx: FieldCtx):
    for bits in range(1 << ctx.n):
        point = ctx.elem(bits)
        e = ramification_index(g, point, ctx)
        if e > 1:
            yield point, e
    e = ramification_index(g, INFINITY, ctx)
    if e > 1:
        yield INFINITY, e


def branch_points_of_map(g: RationalMap, ctx: FieldCtx) -> set:
    """Images of the critical points found among field points and infinity."""
    return {g.eval(ctx, point) for point, _ in _critical_points(g, ctx)}


def branch_points(spec: FamilySpec, ctx: FieldCtx) -> set:
    """Branch points of the reduced g over the given field."""
    return branch_points_of_map(g_map(spec), ctx)


def fiber_indices(g: RationalMap, beta: ProjPoint, ctx: FieldCtx) -> list[int]:
    """Sorted ramification indices over beta's preimages in the field plus
    infinity (the concrete part of the fiber)."""
    fiber = []
    for bits in range(1 << ctx.n):
        point = ctx.elem(bits)
        if g.eval(ctx, point) == beta:
            fiber.append(ramification_index(g, point, ctx))
    if g.eval(ctx, INFINITY) == beta:
        fiber.append(ramification_index(g, INFINITY, ctx))
    return sorted(fiber)


def ramification_profile(spec: FamilySpec, ctx: FieldCtx) -> dict:
    """Map each branch point to the sorted indices over its concrete fiber."""
    gmap = g_map(spec)
    return {
        beta: fiber_indices(gmap, beta, ctx)
        for beta in branch_points_of_map(gmap, ctx)
    }


def ramification_report(spec: FamilySpec, ctx: FieldCtx) -> list[dict]:
    """JSON-renderable critical-point report: point, index, image."""
    gmap = g_map(spec)
    report = []
    for point, e in _critical_points(gmap, ctx):
        image = gmap.eval(ctx, point)
        report.append({
            "point": "inf" if point is INFINITY else point.hex(),
            "index": e,
            "image": "inf" if image is INFINITY else image.hex(),
        })
    return report


# ---------------------------------------------------------------------------
# degree-one maps on the unit circle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DegreeOneMap:
    """x -> (a x + b) / (c x + d) with ad + bc != 0 (characteristic 2)."""

    a: FieldElem
    b: FieldElem
    c: FieldElem
    d: FieldElem

    def __post_init__(self):
        ctx = self.a.ctx
        if any(coef.ctx != ctx for coef in (self.b, self.c, self.d)):
            raise ValueError("coefficients from different field contexts")
        det = ctx.mul(self.a.bits, self.d.bits) ^ ctx.mul(self.b.bits, self.c.bits)
        if det == 0:
            raise ValueError("degenerate degree-one map (ad + bc = 0)")

    def eval(self, point: ProjPoint) -> ProjPoint:
        ctx = self.a.ctx
        if point is INFINITY:
            if self.c.bits == 0:
                return INFINITY
            return ctx.elem(ctx.mul(self.a.bits, ctx.inv(self.c.bits)))
        x = point.bits
        den = ctx.mul(self.c.bits, x) ^ self.d.bits
        if den == 0:
            return INFINITY
        num = ctx.mul(self.a.bits, x) ^ self.b.bits
        return ctx.elem(ctx.mul(num, ctx.inv(den)))


def _in_mu(ctx: FieldCtx, bits: int) -> bool:
    return bits != 0 and ctx.mul(ctx.frob_q(bits), bits) == 1


def deg1_bijects_mu(rho: DegreeOneMap, ctx: FieldCtx) -> bool:
    """Unit-circle bijection test by the classification of such maps.

    A degree-one map permutes the circle exactly when it is beta*x or
    beta/x with beta on the circle, or (x + gamma^q beta)/(gamma x + beta)
    with beta on the circle and gamma off it.
    """
    if ctx.subfield_m is None:
        raise ValueError("needs a context with subfield structure")
    a, b, c, d = rho.a.bits, rho.b.bits, rho.c.bits, rho.d.bits
    if c == 0 and b == 0:
        return _in_mu(ctx, ctx.mul(a, ctx.inv(d)))
    if a == 0 and d == 0:
        return _in_mu(ctx, ctx.mul(b, ctx.inv(c)))
    if a != 0 and c != 0:
        inv_a = ctx.inv(a)
        gamma = ctx.mul(c, inv_a)
        beta = ctx.mul(d, inv_a)
        return (_in_mu(ctx, beta) and not _in_mu(ctx, gamma)
                and ctx.mul(b, inv_a) == ctx.mul(ctx.frob_q(gamma), beta))
    return False


def deg1_bijects_mu_by_enumeration(rho: DegreeOneMap, ctx: FieldCtx) -> bool:
    """Ground truth for deg1_bijects_mu: walk the circle and compare images."""
    mu = _unit_circle_bits(ctx)
    image = set()
    for bits in mu:
        out = rho.eval(ctx.elem(bits))
        if out is INFINITY:
            return False
        image.add(out.bits)
    return image == set(mu)


def deg1_mu_to_p1(l: DegreeOneMap, ctx: FieldCtx) -> bool:
    """Circle-to-projective-line bijection test by classification.

    Such maps are exactly (delta x + beta delta^q)/(x + beta) with beta on
    the circle and delta outside the base field.
    """
    if ctx.subfield_m is None:
        raise ValueError("needs a context with subfield structure")
    a, b, c, d = l.a.bits, l.b.bits, l.c.bits, l.d.bits
    if c == 0:
        return False
    inv_c = ctx.inv(c)
    delta = ctx.mul(a, inv_c)
    beta = ctx.mul(d, inv_c)
    return (_in_mu(ctx, beta) and ctx.frob_q(delta) != delta
            and ctx.mul(b, inv_c) == ctx.mul(beta, ctx.frob_q(delta)))


def _base_field_bits(ctx: FieldCtx) -> set[int]:
    q = 1 << ctx.subfield_m
    out = {0, 1}
    g = ctx.pow(ctx.generator(), q + 1)  # the norm image generates GF(2^m)*
    v = 1
    for _ in range(q - 2):
        v = ctx.mul(v, g)
        out.add(v)
    return out


def deg1_mu_to_p1_by_enumeration(l: DegreeOneMap, ctx: FieldCtx) -> bool:
    """Ground truth for deg1_mu_to_p1: the image must be all of P1(F_q)."""
    mu = _unit_circle_bits(ctx)
    image = set()
    saw_infinity = False
    for bits in mu:
        out = l.eval(ctx.elem(bits))
        if out is INFINITY:
            saw_infinity = True
        else:
            image.add(out.bits)
    return saw_infinity and image == _base_field_bits(ctx)
