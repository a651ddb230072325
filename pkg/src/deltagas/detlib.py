"""Dense complex determinants and the structured determinants built on
the rational kernels: the Cauchy determinant, the Izergin-Korepin
determinant, and the Slavnov-form determinant for the particle-number
matrix element.

The Izergin-Korepin determinant is evaluated by default as the quotient
det[t(u_i, v_j)] / det[1/h(u_i, v_j)]; the explicit prefactor form
g^<(u,u) g^>(v,v) h(u,v) det[t] is retained as an independent
cross-check, as is the closed-form factorization of the Cauchy
determinant.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isfinite

import numpy as np

from .errors import LengthMismatch, SingularArgument, SizeLimit
from .kernels import (
    KERNEL_GUARD,
    coupling_value,
    guard_scale,
    set_product,
    set_values,
)

#: Desk-scale cap on dense determinant dimension.
MAX_DET_SIZE = 64

MEPNO_ROUTES = ("A", "B", "C", "D", "integral")


@dataclass(frozen=True)
class MepnoValue:
    """A particle-number matrix element tagged with its evaluation route
    and an echo of the exact (u, v, c, kappa) configuration."""

    value: complex
    route: str
    inputs: tuple

    def __post_init__(self) -> None:
        if self.route not in MEPNO_ROUTES:
            raise ValueError(f"unknown route {self.route!r}; expected one of {MEPNO_ROUTES}")


# ---------------------------------------------------------------------------
# dense determinant
# ---------------------------------------------------------------------------

#: Kernel-built matrices are strongly graded (their determinants sit many
#: orders below the entry scale), which makes the determinant value
#: hypersensitive to entry rounding: by n = 8 even an exact elimination
#: of double-rounded entries keeps only ~8 digits.  From this size on,
#: both the entries and the elimination are carried in 80-bit extended
#: precision, which holds the determinant error near 1e-11 or better.
_EXTENDED_MIN_SIZE = 5


def det_complex(matrix) -> complex:
    """Determinant of a square complex matrix via elimination with
    partial pivoting on modulus.  A singular matrix returns 0."""
    rows = [list(map(complex, row)) for row in matrix]
    n = len(rows)
    if n == 0:
        raise ValueError("matrix must be at least 1x1")
    if n > MAX_DET_SIZE:
        raise SizeLimit(f"determinant dimension {n} exceeds cap {MAX_DET_SIZE}")
    for row in rows:
        if len(row) != n:
            raise ValueError("matrix must be square")
        for z in row:
            if not (isfinite(z.real) and isfinite(z.imag)):
                raise ValueError("matrix entries must be finite")
    return _det(rows)


def _det(rows: list[list[complex]]) -> complex:
    if len(rows) >= _EXTENDED_MIN_SIZE:
        return _det_extended(rows)
    return _det_inplace(rows)


def _det_inplace(rows: list[list[complex]]) -> complex:
    """Partial-pivot elimination on a row list that may be clobbered."""
    n = len(rows)
    det = 1.0 + 0j
    for k in range(n):
        pivot_row = max(range(k, n), key=lambda r: abs(rows[r][k]))
        pivot = rows[pivot_row][k]
        if pivot == 0:
            return 0j
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            det = -det
        det *= pivot
        inv = 1.0 / pivot
        row_k = rows[k]
        for r in range(k + 1, n):
            row_r = rows[r]
            factor = row_r[k] * inv
            if factor != 0:
                for j in range(k + 1, n):
                    row_r[j] -= factor * row_k[j]
    return det


def _det_extended(matrix) -> complex:
    """Same elimination, entries and accumulation in extended precision."""
    a = np.array(matrix, dtype=np.clongdouble)
    n = a.shape[0]
    det = np.clongdouble(1.0)
    for k in range(n):
        piv = int(np.argmax(np.abs(a[k:, k]))) + k
        pivot = a[piv, k]
        if pivot == 0:
            return 0j
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            det = -det
        det = det * pivot
        if k + 1 < n:
            factors = a[k + 1:, k] / pivot
            a[k + 1:, k + 1:] -= factors[:, None] * a[k, k + 1:][None, :]
    return complex(det)


def _extended_pair_grids(u, v, ic: complex):
    """Pairwise difference grids in extended precision.

    Returns (d, dh) with d[i][j] = u_i - v_j and dh = d + ic; double
    inputs convert exactly, so only the arithmetic rounds, at 80-bit.
    """
    ul = np.array(u, dtype=np.clongdouble)
    vl = np.array(v, dtype=np.clongdouble)
    d = ul[:, None] - vl[None, :]
    return d, d + np.clongdouble(ic)


def _h_inverse_matrix_extended(u, v, ic: complex, guard: float):
    _, dh = _extended_pair_grids(u, v, ic)
    if float(np.abs(dh).min()) < guard:
        raise SingularArgument("h-kernel pole u - v + ic near zero")
    return np.clongdouble(ic) / dh


def _t_matrix_extended(u, v, ic: complex, guard: float):
    d, dh = _extended_pair_grids(u, v, ic)
    if float(np.abs(d).min()) < guard or float(np.abs(dh).min()) < guard:
        raise SingularArgument("t-kernel pole in structured determinant")
    icl = np.clongdouble(ic)
    return icl * icl / (d * dh)


# ---------------------------------------------------------------------------
# structured matrices (guarded entrywise)
# ---------------------------------------------------------------------------

def _require_distinct(values, guard: float, label: str) -> None:
    n = len(values)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) < guard:
                raise SingularArgument(f"near-coincident {label} parameters")


def _h_inverse_matrix(u, v, ic: complex, guard: float) -> list[list[complex]]:
    rows = []
    for ui in u:
        row = []
        for vj in v:
            den = ui - vj + ic
            if abs(den) < guard:
                raise SingularArgument("h-kernel pole u - v + ic near zero")
            row.append(ic / den)
        rows.append(row)
    return rows


def _t_matrix(u, v, ic: complex, guard: float) -> list[list[complex]]:
    num = ic * ic
    rows = []
    for ui in u:
        row = []
        for vj in v:
            d = ui - vj
            dh = d + ic
            if abs(d) < guard or abs(dh) < guard:
                raise SingularArgument("t-kernel pole in structured determinant")
            row.append(num / (d * dh))
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# Cauchy determinant
# ---------------------------------------------------------------------------

def _structured_h_det(u, v, ic: complex, guard: float) -> complex:
    if len(u) >= _EXTENDED_MIN_SIZE:
        return _det_extended(_h_inverse_matrix_extended(u, v, ic, guard))
    return _det_inplace(_h_inverse_matrix(u, v, ic, guard))


def _structured_t_det(u, v, ic: complex, guard: float) -> complex:
    if len(u) >= _EXTENDED_MIN_SIZE:
        return _det_extended(_t_matrix_extended(u, v, ic, guard))
    return _det_inplace(_t_matrix(u, v, ic, guard))


def cauchy_det(u, v, c) -> complex:
    """det[1/h(u_i, v_j)] evaluated by pivoted elimination."""
    uu, vv, cc = set_values(u), set_values(v), coupling_value(c)
    if len(uu) != len(vv):
        raise LengthMismatch("Cauchy determinant requires equal lengths")
    if not uu:
        return 1.0 + 0j
    guard = KERNEL_GUARD * guard_scale(cc, uu, vv)
    return _structured_h_det(uu, vv, 1j * cc, guard)


def cauchy_det_factorized(u, v, c) -> complex:
    """Closed-form factorization of det[1/h(u_i, v_j)]:

        (ic)^n  prod_{i<j} (u_j - u_i)(v_i - v_j) / prod_{i,j} (u_i - v_j + ic)
    """
    uu, vv, cc = set_values(u), set_values(v), coupling_value(c)
    if len(uu) != len(vv):
        raise LengthMismatch("Cauchy determinant requires equal lengths")
    n = len(uu)
    if n == 0:
        return 1.0 + 0j
    ic = 1j * cc
    guard = KERNEL_GUARD * guard_scale(cc, uu, vv)
    num = ic ** n
    for i in range(n):
        for j in range(i + 1, n):
            num *= (uu[j] - uu[i]) * (vv[i] - vv[j])
    den = 1.0 + 0j
    for ui in uu:
        for vj in vv:
            d = ui - vj + ic
            if abs(d) < guard:
                raise SingularArgument("h-kernel pole u - v + ic near zero")
            den *= d
    return num / den


# ---------------------------------------------------------------------------
# Izergin-Korepin determinant
# ---------------------------------------------------------------------------

def ik_det(u, v, c) -> complex:
    """Izergin-Korepin determinant, Cauchy-quotient form:
    det[t(u_i, v_j)] / det[1/h(u_i, v_j)].  Empty sets give 1."""
    uu, vv, cc = set_values(u), set_values(v), coupling_value(c)
    if len(uu) != len(vv):
        raise LengthMismatch("Izergin-Korepin determinant requires equal lengths")
    if not uu:
        return 1.0 + 0j
    ic = 1j * cc
    guard = KERNEL_GUARD * guard_scale(cc, uu, vv)
    _require_distinct(uu, guard, "first-set")
    _require_distinct(vv, guard, "second-set")
    t_det = _det(_t_matrix(uu, vv, ic, guard))
    h_det = _det(_h_inverse_matrix(uu, vv, ic, guard))
    return t_det / h_det


def ik_det_factorized(u, v, c) -> complex:
    """Izergin-Korepin determinant with the ordered-product prefactor:
    g^<(u,u) g^>(v,v) h(u,v) det[t(u_i, v_j)]."""
    uu, vv, cc = set_values(u), set_values(v), coupling_value(c)
    if len(uu) != len(vv):
        raise LengthMismatch("Izergin-Korepin determinant requires equal lengths")
    if not uu:
        return 1.0 + 0j
    ic = 1j * cc
    guard = KERNEL_GUARD * guard_scale(cc, uu, vv)
    _require_distinct(uu, guard, "first-set")
    _require_distinct(vv, guard, "second-set")
    prefactor = (set_product("g", uu, uu, "i<j", cc)
                 * set_product("g", vv, vv, "i>j", cc)
                 * set_product("h", uu, vv, "all", cc))
    return prefactor * _det(_t_matrix(uu, vv, ic, guard))


# ---------------------------------------------------------------------------
# Slavnov-form particle-number matrix element (route D)
# ---------------------------------------------------------------------------

def mepno_det(u, v, c, kappa) -> MepnoValue:
    """Particle-number matrix element as a single M x M determinant
    quotient (evaluation route "D").

    The matrix mixes both kernel orientations, with the kappa-free term
    dressed by full-set h-ratios:

        A[i][j] = t(v_i, u_j) * d(v_i) + kappa * t(u_j, v_i)
        d(v_i)  = prod_k h(v_i, u_k)/h(u_k, v_i) * prod_k h(v_k, v_i)/h(v_i, v_k)

    and the value is det[A] / det[1/h(u_i, v_j)].
    """
    uu, vv, cc = set_values(u), set_values(v), coupling_value(c)
    kap = complex(kappa)
    m = len(uu)
    if m != len(vv):
        raise LengthMismatch("matrix element requires equal-length rapidity sets")
    if m == 0:
        raise ValueError("rapidity sets must be non-empty")
    if m > MAX_DET_SIZE:
        raise SizeLimit(f"dimension {m} exceeds cap {MAX_DET_SIZE}")
    ic = 1j * cc
    guard = KERNEL_GUARD * guard_scale(cc, uu, vv)
    _require_distinct(uu, guard, "bra-set")
    _require_distinct(vv, guard, "ket-set")

    dress = []
    for vi in vv:
        r = 1.0 + 0j
        for uk in uu:
            a = vi - uk + ic
            b = uk - vi + ic
            if abs(a) < guard or abs(b) < guard:
                raise SingularArgument("h-ratio pole between bra and ket sets")
            r *= a / b
        for vk in vv:
            a = vk - vi + ic
            b = vi - vk + ic
            if abs(a) < guard or abs(b) < guard:
                raise SingularArgument("h-ratio pole inside ket set")
            r *= a / b
        dress.append(r)

    num = ic * ic
    rows = []
    for i, vi in enumerate(vv):
        row = []
        for uj in uu:
            d1 = vi - uj
            d1h = d1 + ic
            d2h = -d1 + ic
            if abs(d1) < guard or abs(d1h) < guard or abs(d2h) < guard:
                raise SingularArgument("t-kernel pole between bra and ket sets")
            t_vu = num / (d1 * d1h)
            t_uv = num / (-d1 * d2h)
            row.append(t_vu * dress[i] + kap * t_uv)
        rows.append(row)

    h_det = _det(_h_inverse_matrix(uu, vv, ic, guard))
    value = _det(rows) / h_det
    return MepnoValue(value=value, route="D", inputs=(uu, vv, cc, kap))
