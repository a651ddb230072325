"""Brute-force and intermediate-form evaluators for every summed identity
in the package: the permutation-pair sum that collapses to the
Izergin-Korepin determinant, the bipartition summation lemma, the three
pre-determinant routes to the particle-number matrix element, a damped
direct-integration oracle at M <= 2, and the pole-residue probe.

Route map (all return MepnoValue, all agree with route "D" of
:mod:`deltagas.detlib` on real rapidity sets):

* route A - double permutation sum over both rapidity sets, one term per
  eigen-sector count n, cost M * (M!)^2;
* route B - sum over bipartition pairs of products of two smaller
  Izergin-Korepin determinants;
* route C - single bipartition sum over the ket set with one shifted
  full-size determinant per term;
* route "integral" - numerical integration of the position-space
  plane-wave sums over the eigen-sector domains, damped by
  exp(-eta * sum |x_i|) and Richardson-extrapolated to eta -> 0.

Shift convention: wherever a summation lemma moves a rapidity "down by
the coupling" the implemented shift is by ``i*c`` (subtracting ``1j*c``).
This is the unique choice under which the pointwise cleaning identities
(e.g. g(x, y - ic) = 1/h(x, y)) and all cross-route equalities hold.

Conjugated amplitudes are computed as complex conjugates of the
evaluated amplitude, which is exact for real rapidity sets; complex
inputs are accepted but carry no accuracy promise.
"""

from __future__ import annotations

import itertools
import math
import warnings

from .detlib import MepnoValue, ik_det
from .errors import (
    DomainError,
    LengthMismatch,
    QuadratureFailure,
    SingularArgument,
    SizeLimit,
)
from .kernels import (
    big_f,
    coupling_value,
    enumerate_bipartitions,
    guard_scale,
    set_product,
    set_values,
    shifted_set,
)

#: Relative guard for partial sums inside permutation sums.  Near-poles of
#: individual terms cancel in the total but destroy floating-point
#: accuracy, so the evaluation aborts and the harness resamples.
SUM_GUARD = 1e-8

#: Default damping schedule for the integration oracle.
DEFAULT_DAMPING = (0.2, 0.1, 0.05)

MAX_GAUDIN_SIZE = 6
MAX_LEMMA2_SIZE = 6
MAX_ROUTE_A_SIZE = 5
MAX_ROUTE_B_SIZE = 8
MAX_ROUTE_C_SIZE = 10
MAX_INTEGRAL_SIZE = 2


def _orderings_with_amplitude(values, c, conjugate=False):
    """All orderings of ``values`` paired with their Bethe amplitude."""
    out = []
    for ordering in itertools.permutations(values):
        amp = big_f(ordering, c)
        out.append((ordering, amp.conjugate() if conjugate else amp))
    return out


# ---------------------------------------------------------------------------
# permutation-pair sum (left side of the Izergin-Korepin collapse)
# ---------------------------------------------------------------------------

def gaudin_sum(u, v, c) -> complex:
    """Double permutation sum of amplitude-weighted inverse partial sums:

        sum_{P,Q} conj(F(Pu)) F(Qv) (ic)^M / prod_i cumsum_i(Pu - Qv)

    Collapses to the Izergin-Korepin determinant of (u, v).
    """
    uu, vv, cc = set_values(u), set_values(v), coupling_value(c)
    m = len(uu)
    if m != len(vv):
        raise LengthMismatch("permutation-pair sum requires equal lengths")
    if m > MAX_GAUDIN_SIZE:
        raise SizeLimit(f"permutation-pair sum capped at M = {MAX_GAUDIN_SIZE}")
    guard = SUM_GUARD * guard_scale(cc, uu, vv)
    bra = _orderings_with_amplitude(uu, cc, conjugate=True)
    ket = _orderings_with_amplitude(vv, cc)
    total = 0j
    for pu, amp_u in bra:
        for qv, amp_v in ket:
            s = 0j
            prod = 1.0 + 0j
            for a, b in zip(pu, qv):
                s += a - b
                if abs(s) < guard:
                    raise SingularArgument("vanishing partial sum in permutation-pair sum")
                prod *= s
            total += amp_u * amp_v / prod
    return (1j * cc) ** m * total


# ---------------------------------------------------------------------------
# bipartition summation lemma
# ---------------------------------------------------------------------------

def lemma2_sides(gamma, alpha, beta, c) -> tuple[complex, complex]:
    """Both sides of the bipartition summation lemma.

    Left: sum over normal-ordered bipartitions of ``gamma`` into parts of
    sizes (len(alpha), len(beta)) of
        K(gamma_I | alpha) * K(beta | gamma_II) * f(gamma_II, gamma_I).
    Right:
        (-1)^len(alpha) * f(gamma, alpha) * K({alpha - ic, beta} | gamma).
    """
    gg, aa, bb, cc = set_values(gamma), set_values(alpha), set_values(beta), coupling_value(c)
    m1, m2 = len(aa), len(bb)
    if len(gg) != m1 + m2:
        raise LengthMismatch("bipartition lemma requires len(gamma) = len(alpha) + len(beta)")
    if m1 + m2 > MAX_LEMMA2_SIZE:
        raise SizeLimit(f"bipartition lemma capped at total size {MAX_LEMMA2_SIZE}")
    lhs = 0j
    for bip in enumerate_bipartitions(m1 + m2, m1):
        g_one, g_two = bip.split(gg)
        lhs += (ik_det(g_one, aa, cc)
                * ik_det(bb, g_two, cc)
                * set_product("f", g_two, g_one, "all", cc))
    shifted = tuple(a - 1j * cc for a in aa) + bb
    rhs = ((-1) ** m1
           * set_product("f", gg, aa, "all", cc)
           * ik_det(shifted, gg, cc))
    return lhs, rhs


# ---------------------------------------------------------------------------
# route A: double permutation sum with eigen-sector weights
# ---------------------------------------------------------------------------

def mepno_route_a(u, v, c, kappa) -> MepnoValue:
    """Particle-number matrix element by brute force:

        sum_{n=0}^{M} kappa^n (-1)^(M-n)
            sum_{P,Q} (ic)^M conj(F(Pu)) F(Qv) / prod_i w_i(n)

    where w_i(n) is the prefix sum of (Pu - Qv) through i for i <= n and
    the suffix sum from i for i > n.
    """
    uu, vv, cc = set_values(u), set_values(v), coupling_value(c)
    kap = complex(kappa)
    m = len(uu)
    if m != len(vv):
        raise LengthMismatch("matrix element requires equal-length rapidity sets")
    if m > MAX_ROUTE_A_SIZE:
        raise SizeLimit(f"route A capped at M = {MAX_ROUTE_A_SIZE}")
    guard = SUM_GUARD * guard_scale(cc, uu, vv)
    bra = _orderings_with_amplitude(uu, cc, conjugate=True)
    ket = _orderings_with_amplitude(vv, cc)
    weights = [kap ** n * (-1.0 if (m - n) % 2 else 1.0) for n in range(m + 1)]
    total = 0j
    for pu, amp_u in bra:
        for qv, amp_v in ket:
            # prefix sums a[i] and suffix sums b[i] of the difference list
            a = []
            s = 0j
            for x, y in zip(pu, qv):
                s += x - y
                if abs(s) < guard:
                    raise SingularArgument("vanishing prefix sum in route A")
                a.append(s)
            full = a[-1]
            b = [full]
            for i in range(1, m):
                bi = full - a[i - 1]
                if abs(bi) < guard:
                    raise SingularArgument("vanishing suffix sum in route A")
                b.append(bi)
            # prefix products of a and suffix products of b
            pa = [1.0 + 0j] * (m + 1)
            for i in range(m):
                pa[i + 1] = pa[i] * a[i]
            sb = [1.0 + 0j] * (m + 1)
            for i in range(m - 1, -1, -1):
                sb[i] = sb[i + 1] * b[i]
            acc = 0j
            for n in range(m + 1):
                acc += weights[n] / (pa[n] * sb[n])
            total += amp_u * amp_v * acc
    value = (1j * cc) ** m * total
    return MepnoValue(value=value, route="A", inputs=(uu, vv, cc, kap))


def _permutation_pair_block(uu, vv, cc, guard, suffix: bool) -> complex:
    """Inner permutation-pair sum over one bipartition block.

    ``suffix=False`` divides by prefix sums (pivot at the block length);
    ``suffix=True`` divides by suffix sums (pivot at zero).
    """
    k = len(uu)
    if k == 0:
        return 1.0 + 0j
    total = 0j
    for pu, amp_u in _orderings_with_amplitude(uu, cc, conjugate=True):
        for qv, amp_v in _orderings_with_amplitude(vv, cc):
            diffs = [x - y for x, y in zip(pu, qv)]
            if suffix:
                diffs.reverse()
            s = 0j
            prod = 1.0 + 0j
            for d in diffs:
                s += d
                if abs(s) < guard:
                    raise SingularArgument("vanishing partial sum in bipartition block")
                prod *= s
            total += amp_u * amp_v / prod
    return (1j * cc) ** k * total


def mepno_route_a_regrouped(u, v, c, kappa) -> MepnoValue:
    """Route A with its (P, Q) terms grouped by the bipartitions they
    induce: a sum over bipartition pairs of cross f-factors times two
    independent permutation-pair blocks.  Equals route A exactly up to
    summation rounding; this checks the resummation bookkeeping itself.
    """
    uu, vv, cc = set_values(u), set_values(v), coupling_value(c)
    kap = complex(kappa)
    m = len(uu)
    if m != len(vv):
        raise LengthMismatch("matrix element requires equal-length rapidity sets")
    if m > MAX_ROUTE_A_SIZE:
        raise SizeLimit(f"regrouped route A capped at M = {MAX_ROUTE_A_SIZE}")
    guard = SUM_GUARD * guard_scale(cc, uu, vv)
    total = 0j
    for n in range(m + 1):
        weight = kap ** n * (-1.0 if (m - n) % 2 else 1.0)
        u_splits = [bip.split(uu) for bip in enumerate_bipartitions(m, n)]
        v_splits = [bip.split(vv) for bip in enumerate_bipartitions(m, n)]
        for u_one, u_two in u_splits:
            cross_u = set_product("f", u_one, u_two, "all", cc).conjugate()
            for v_one, v_two in v_splits:
                cross_v = set_product("f", v_one, v_two, "all", cc)
                block_one = _permutation_pair_block(u_one, v_one, cc, guard, suffix=False)
                block_two = _permutation_pair_block(u_two, v_two, cc, guard, suffix=True)
                total += weight * cross_u * cross_v * block_one * block_two
    return MepnoValue(value=total, route="A", inputs=(uu, vv, cc, kap))


# ---------------------------------------------------------------------------
# route B: bipartition pairs of two determinants
# ---------------------------------------------------------------------------

def mepno_route_b(u, v, c, kappa) -> MepnoValue:
    """Sum over bipartition pairs (equal first-part sizes) of

        kappa^k f(v_I, v_II) K(u_I | v_I) K(v_II | u_II) f(u_II, u_I).
    """
    uu, vv, cc = set_values(u), set_values(v), coupling_value(c)
    kap = complex(kappa)
    m = len(uu)
    if m != len(vv):
        raise LengthMismatch("matrix element requires equal-length rapidity sets")
    if m > MAX_ROUTE_B_SIZE:
        raise SizeLimit(f"route B capped at M = {MAX_ROUTE_B_SIZE}")
    total = 0j
    for k in range(m + 1):
        kap_k = kap ** k
        u_splits = [bip.split(uu) for bip in enumerate_bipartitions(m, k)]
        v_splits = [bip.split(vv) for bip in enumerate_bipartitions(m, k)]
        for u_one, u_two in u_splits:
            f_u = set_product("f", u_two, u_one, "all", cc)
            for v_one, v_two in v_splits:
                f_v = set_product("f", v_one, v_two, "all", cc)
                total += (kap_k * f_v
                          * ik_det(u_one, v_one, cc)
                          * ik_det(v_two, u_two, cc)
                          * f_u)
    return MepnoValue(value=total, route="B", inputs=(uu, vv, cc, kap))


# ---------------------------------------------------------------------------
# route C: single bipartition sum with a shifted full-size determinant
# ---------------------------------------------------------------------------

def mepno_route_c(u, v, c, kappa) -> MepnoValue:
    """Sum over ket-set bipartitions of

        (-kappa)^k f(v_I, v_II) f(u, v_I) K({v_I - ic, v_II} | u)

    with the shifted part written back into its parent slots (the
    determinant is symmetric, so any order of the merged set is valid).
    """
    uu, vv, cc = set_values(u), set_values(v), coupling_value(c)
    kap = complex(kappa)
    m = len(uu)
    if m != len(vv):
        raise LengthMismatch("matrix element requires equal-length rapidity sets")
    if m > MAX_ROUTE_C_SIZE:
        raise SizeLimit(f"route C capped at M = {MAX_ROUTE_C_SIZE}")
    ic = 1j * cc
    total = 0j
    for k in range(m + 1):
        weight_k = (-kap) ** k
        for bip in enumerate_bipartitions(m, k):
            v_one, v_two = bip.split(vv)
            merged = list(vv)
            for idx in bip.part_one:
                merged[idx] = merged[idx] - ic
            total += (weight_k
                      * set_product("f", v_one, v_two, "all", cc)
                      * set_product("f", uu, v_one, "all", cc)
                      * ik_det(tuple(merged), uu, cc))
    return MepnoValue(value=total, route="C", inputs=(uu, vv, cc, kap))


# ---------------------------------------------------------------------------
# direct integration oracle (M <= 2)
# ---------------------------------------------------------------------------

def richardson_extrapolate(values, etas) -> complex:
    """Polynomial extrapolation of samples (eta_i, value_i) to eta = 0
    via the Neville tableau."""
    vals = [complex(z) for z in values]
    nodes = [float(e) for e in etas]
    if len(vals) != len(nodes):
        raise LengthMismatch("one value per damping parameter required")
    if not vals:
        raise ValueError("extrapolation requires at least one sample")
    tab = list(vals)
    n = len(tab)
    for level in range(1, n):
        for i in range(n - level):
            num = nodes[i] * tab[i + 1] - nodes[i + level] * tab[i]
            tab[i] = num / (nodes[i] - nodes[i + level])
    return tab[0]


def _one_sided_fourier(w: float, eta: float) -> tuple[float, float]:
    """Adaptive quadrature of the damped half-line Fourier integrals

        C = int_0^inf exp(-eta x) cos(w x) dx
        S = int_0^inf exp(-eta x) sin(w x) dx
    """
    from scipy.integrate import IntegrationWarning, quad

    def decay(s: float) -> float:
        return math.exp(-eta * s)

    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            cos_val, cos_err = quad(decay, 0.0, math.inf, weight="cos", wvar=w, epsabs=1e-11)
            sin_val, sin_err = quad(decay, 0.0, math.inf, weight="sin", wvar=w, epsabs=1e-11)
        except IntegrationWarning as exc:
            raise QuadratureFailure(f"half-line quadrature did not converge: {exc}") from exc
    if max(cos_err, sin_err) > 1e-7:
        raise QuadratureFailure(
            f"half-line quadrature error {max(cos_err, sin_err):.3e} too large")
    return cos_val, sin_val


def mepno_integral_oracle(u, v, c, kappa, damping_schedule=None) -> MepnoValue:
    """Particle-number matrix element by damped position-space
    integration over the eigen-sector decomposition, extrapolated to
    zero damping.

    For each sector count n, each permutation-pair term contributes a
    product of one-axis integrals of exp(-i w x) against the damping
    exp(-eta |x|), the first n axes over the negative half line and the
    rest over the positive one; each axis integral is evaluated by
    adaptive quadrature.  The eta samples are then Richardson-
    extrapolated to eta -> 0.
    """
    uu, vv, cc = set_values(u), set_values(v), coupling_value(c)
    kap = complex(kappa)
    m = len(uu)
    if m != len(vv):
        raise LengthMismatch("matrix element requires equal-length rapidity sets")
    if not 1 <= m <= MAX_INTEGRAL_SIZE:
        raise SizeLimit(f"integration oracle supports M in 1..{MAX_INTEGRAL_SIZE}")
    if any(z.imag != 0.0 for z in uu + vv):
        raise DomainError("integration oracle requires real rapidities")
    schedule = tuple(float(e) for e in (damping_schedule or DEFAULT_DAMPING))
    if not schedule or any(e <= 0 for e in schedule):
        raise ValueError("damping schedule must be a non-empty list of positive reals")

    guard = SUM_GUARD * guard_scale(cc, uu, vv)
    if abs(sum(uu) - sum(vv)) < guard:
        raise SingularArgument("total momenta too close for the integration oracle")

    bra = _orderings_with_amplitude(uu, cc, conjugate=True)
    ket = _orderings_with_amplitude(vv, cc)

    # Per permutation pair and sector count, the frequency of axis i is
    # the shifted-set element i of the difference list; gather them once.
    terms = []
    for pu, amp_u in bra:
        for qv, amp_v in ket:
            diffs = tuple(x - y for x, y in zip(pu, qv))
            per_sector = []
            for n in range(m + 1):
                freqs = shifted_set(diffs, n, "rapidity")
                for w in freqs:
                    if abs(w) < guard:
                        raise SingularArgument("vanishing partial sum in integration oracle")
                per_sector.append(tuple(w.real for w in freqs))
            terms.append((amp_u * amp_v, per_sector))

    prefactor = float(cc) ** m
    samples = []
    for eta in schedule:
        cache: dict[float, tuple[float, float]] = {}

        def axis_integrals(w: float) -> tuple[complex, complex]:
            pair = cache.get(w)
            if pair is None:
                pair = _one_sided_fourier(w, eta)
                cache[w] = pair
            cos_val, sin_val = pair
            negative = complex(cos_val, sin_val)   # int_{-inf}^0 e^{eta x} e^{-i w x} dx
            positive = complex(cos_val, -sin_val)  # int_0^inf  e^{-eta x} e^{-i w x} dx
            return negative, positive

        total = 0j
        for amp, per_sector in terms:
            acc = 0j
            for n in range(m + 1):
                prod = kap ** n
                for i, w in enumerate(per_sector[n]):
                    negative, positive = axis_integrals(w)
                    prod *= negative if i < n else positive
                acc += prod
            total += amp * acc
        samples.append(prefactor * total)

    value = richardson_extrapolate(samples, schedule)
    return MepnoValue(value=value, route="integral", inputs=(uu, vv, cc, kap))


# ---------------------------------------------------------------------------
# pole-residue probe
# ---------------------------------------------------------------------------

def residue_probe(u, v0, eps: float, c) -> tuple[complex, complex]:
    """Stability probe of the simple pole of the Izergin-Korepin
    determinant on the equal-total-momentum hyperplane.

    Shifts the first ket rapidity so the total momentum mismatch equals
    ``eps`` (then ``eps/2``) and returns the two products
    ``mismatch * K``; a simple pole makes them nearly equal.
    """
    uu, vv, cc = set_values(u), set_values(v0), coupling_value(c)
    if len(uu) != len(vv):
        raise LengthMismatch("residue probe requires equal-length sets")
    if eps <= 0:
        raise ValueError("probe offset must be positive")

    def probe(offset: float) -> complex:
        delta = (sum(uu) - sum(vv)) - offset
        shifted = (vv[0] + delta,) + vv[1:]
        return offset * ik_det(uu, shifted, cc)

    return probe(eps), probe(eps / 2.0)
