"""Rational kernels, ordered set products, shifted sets, and the
permutation/bipartition combinatorics shared by every evaluation route.

Conventions used throughout the package:

* A permutation acts on the *ordering* of a set, not on its labels:
  element ``i`` of the permuted list is ``values[p_inverse(i)]``, so that
  applying ``q`` after ``p`` equals applying the composition ``q * p``.
* A bipartition keeps the parent set's stored order inside both parts.
  This fixes the otherwise arbitrary choice of a representative per
  content-equivalence class ("normal ordering") and makes every
  partition sum in this package reproducible.
* Any guarded denominator whose magnitude falls below
  ``KERNEL_GUARD * scale`` raises :class:`SingularArgument` instead of
  silently returning a huge value; ``scale`` is ``max(1, |c|, max |z|)``
  over the participating points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import isfinite
from typing import Iterator, Sequence

from .errors import LengthMismatch, SingularArgument, SizeLimit

#: Relative singularity guard for kernel denominators.
KERNEL_GUARD = 1e-10

#: Cap on factorial enumeration (10! is the largest desk-scale stream).
MAX_PERMUTATION_SIZE = 10

KERNEL_KINDS = ("f", "g", "h", "t")

SET_PRODUCT_ORDERS = ("all", "i<j", "i>j")


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Coupling:
    """Interaction strength of the contact potential.  Must be nonzero."""

    c: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", float(self.c))
        if self.c == 0.0:
            raise ValueError("coupling strength must be nonzero")

    @property
    def ic(self) -> complex:
        return 1j * self.c


@dataclass(frozen=True)
class RapiditySet:
    """Ordered list of pairwise-distinct complex spectral parameters."""

    values: tuple[complex, ...]

    def __post_init__(self) -> None:
        values = tuple(complex(z) for z in self.values)
        object.__setattr__(self, "values", values)
        if not values:
            raise ValueError("rapidity set must contain at least one value")
        for a, b in itertools.combinations(values, 2):
            if a == b:
                raise ValueError("rapidities must be pairwise distinct")

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


@dataclass(frozen=True)
class PositionSet:
    """Ordered list of real coordinates.  Domain membership (e.g. strict
    ordering for the fundamental sector) is asserted by consumers."""

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        values = tuple(float(x) for x in self.values)
        object.__setattr__(self, "values", values)
        if not all(isfinite(x) for x in values):
            raise ValueError("positions must be finite")

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


@dataclass(frozen=True)
class Permutation:
    """Bijection on ``{0..n-1}`` stored as its image list.

    ``image[i]`` is the slot that element ``i`` is sent to, so the
    permuted copy of ``values`` has ``out[image[i]] = values[i]``.
    """

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        image = tuple(int(i) for i in self.image)
        object.__setattr__(self, "image", image)
        if sorted(image) != list(range(len(image))):
            raise ValueError("image list must be a bijection of 0..n-1")

    @property
    def size(self) -> int:
        return len(self.image)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.image)
        for i, target in enumerate(self.image):
            inv[target] = i
        return Permutation(tuple(inv))

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(i) = self(other(i))
        if self.size != other.size:
            raise LengthMismatch("cannot compose permutations of different sizes")
        return Permutation(tuple(self.image[other.image[i]] for i in range(self.size)))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def mirror(cls, n: int) -> "Permutation":
        """Order-reversing permutation: slot i goes to slot n-1-i."""
        return cls(tuple(n - 1 - i for i in range(n)))

    @classmethod
    def adjacent_transposition(cls, n: int, j: int) -> "Permutation":
        """Swap of slots ``j`` and ``j+1``."""
        if not 0 <= j < n - 1:
            raise IndexError("transposition index out of range")
        image = list(range(n))
        image[j], image[j + 1] = image[j + 1], image[j]
        return cls(tuple(image))


@dataclass(frozen=True)
class Bipartition:
    """Split of ``{0..size-1}`` into two strictly increasing index lists.

    Both parts inherit the parent order, which realizes the normal
    ordering convention used by all partition sums.
    """

    part_one: tuple[int, ...]
    part_two: tuple[int, ...]
    size: int

    def __post_init__(self) -> None:
        one = tuple(int(i) for i in self.part_one)
        two = tuple(int(i) for i in self.part_two)
        object.__setattr__(self, "part_one", one)
        object.__setattr__(self, "part_two", two)
        if list(one) != sorted(one) or list(two) != sorted(two):
            raise ValueError("bipartition parts must be strictly increasing")
        if sorted(one + two) != list(range(self.size)):
            raise ValueError("bipartition parts must partition 0..size-1")

    def split(self, values: Sequence) -> tuple[tuple, tuple]:
        """Project ``values`` onto the two parts, keeping stored order."""
        if len(values) != self.size:
            raise LengthMismatch("values do not match bipartition size")
        return (tuple(values[i] for i in self.part_one),
                tuple(values[i] for i in self.part_two))


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def coupling_value(c) -> float:
    """Accept either a Coupling or a bare real number."""
    if isinstance(c, Coupling):
        return c.c
    value = float(c)
    if value == 0.0:
        raise ValueError("coupling strength must be nonzero")
    return value


def set_values(obj) -> tuple[complex, ...]:
    """Accept RapiditySet / PositionSet / any sequence of numbers."""
    if isinstance(obj, (RapiditySet, PositionSet)):
        return tuple(complex(z) for z in obj.values)
    return tuple(complex(z) for z in obj)


def guard_scale(c: float, *sets: Sequence[complex]) -> float:
    """Characteristic magnitude used to normalize singularity guards."""
    s = max(1.0, abs(c))
    for values in sets:
        for z in values:
            a = abs(z)
            if a > s:
                s = a
    return s


# ---------------------------------------------------------------------------
# scalar kernels
# ---------------------------------------------------------------------------

def kernel_g(u: complex, v: complex, c) -> complex:
    """ic / (u - v)."""
    cc = coupling_value(c)
    d = complex(u) - complex(v)
    if abs(d) < KERNEL_GUARD * guard_scale(cc, (u, v)):
        raise SingularArgument(f"g-kernel pole: |u - v| = {abs(d):.3e}")
    return 1j * cc / d


def kernel_f(u: complex, v: complex, c) -> complex:
    """1 + ic / (u - v)."""
    return 1.0 + kernel_g(u, v, c)


def kernel_h(u: complex, v: complex, c) -> complex:
    """(u - v + ic) / (ic)."""
    cc = coupling_value(c)
    if abs(cc) < KERNEL_GUARD * guard_scale(cc, (u, v)):
        raise SingularArgument("h-kernel denominator ic is within guard of zero")
    return (complex(u) - complex(v) + 1j * cc) / (1j * cc)


def kernel_t(u: complex, v: complex, c) -> complex:
    """(ic)^2 / ((u - v)(u - v + ic))."""
    cc = coupling_value(c)
    scale = guard_scale(cc, (u, v))
    d = complex(u) - complex(v)
    dh = d + 1j * cc
    if abs(d) < KERNEL_GUARD * scale:
        raise SingularArgument(f"t-kernel pole: |u - v| = {abs(d):.3e}")
    if abs(dh) < KERNEL_GUARD * scale:
        raise SingularArgument(f"t-kernel pole: |u - v + ic| = {abs(dh):.3e}")
    return (1j * cc) ** 2 / (d * dh)


_KERNELS = {"f": kernel_f, "g": kernel_g, "h": kernel_h, "t": kernel_t}


def kernel(kind: str, u: complex, v: complex, c) -> complex:
    """Evaluate one of the four rational kernels by name."""
    try:
        fn = _KERNELS[kind]
    except KeyError:
        raise ValueError(f"unknown kernel kind {kind!r}; expected one of {KERNEL_KINDS}")
    return fn(u, v, c)


# ---------------------------------------------------------------------------
# set-valued products
# ---------------------------------------------------------------------------

def set_product(kind: str, alpha, beta, order: str, c) -> complex:
    """Product of ``kernel(kind, alpha[i], beta[j], c)`` over index pairs.

    ``order`` selects the pairs: ``"all"`` takes every (i, j), while
    ``"i<j"`` / ``"i>j"`` take the strictly ordered pairs and require the
    two sets to have equal length.  Empty products return 1.
    """
    if kind not in _KERNELS:
        raise ValueError(f"unknown kernel kind {kind!r}; expected one of {KERNEL_KINDS}")
    fn = _KERNELS[kind]
    a = set_values(alpha)
    b = set_values(beta)
    result = 1.0 + 0j
    if order == "all":
        for x in a:
            for y in b:
                result *= fn(x, y, c)
        return result
    if order not in ("i<j", "i>j"):
        raise ValueError(f"unknown order {order!r}; expected one of {SET_PRODUCT_ORDERS}")
    if len(a) != len(b):
        raise LengthMismatch("ordered set products require equal lengths")
    n = len(a)
    if order == "i<j":
        for i in range(n):
            for j in range(i + 1, n):
                result *= fn(a[i], b[j], c)
    else:
        for i in range(n):
            for j in range(i):
                result *= fn(a[i], b[j], c)
    return result


def big_f(u, c) -> complex:
    """Bethe amplitude: product of f(u_i, u_j) over i < j.

    Returns 1 for sets of length 0 or 1.
    """
    values = set_values(u)
    cc = coupling_value(c)
    n = len(values)
    if n < 2:
        return 1.0 + 0j
    scale = guard_scale(cc, values)
    guard = KERNEL_GUARD * scale
    ic = 1j * cc
    result = 1.0 + 0j
    for i in range(n):
        ui = values[i]
        for j in range(i + 1, n):
            d = ui - values[j]
            if abs(d) < guard:
                raise SingularArgument("coincident rapidities in amplitude product")
            result *= 1.0 + ic / d
    return result


# ---------------------------------------------------------------------------
# shifted sets and inner products
# ---------------------------------------------------------------------------

def shifted_set(values, n: int, side: str) -> tuple[complex, ...]:
    """Partial-sum reindexing of an ordered set, pivoting at slot ``n``.

    ``side="rapidity"`` builds element i (1-based) as the prefix sum
    ``v_1 + ... + v_i`` for i <= n and the suffix sum ``v_i + ... + v_m``
    for i > n.  ``side="position"`` builds the dual pattern: the inner
    sum ``x_i + ... + x_n`` for i <= n and ``x_{n+1} + ... + x_i`` for
    i > n.  The two sides are adjoint under the set inner product.
    """
    vals = set_values(values)
    m = len(vals)
    if not 0 <= n <= m:
        raise IndexError(f"pivot {n} outside [0, {m}]")
    out = []
    if side == "rapidity":
        for i in range(1, m + 1):
            if i <= n:
                out.append(sum(vals[:i]))
            else:
                out.append(sum(vals[i - 1:]))
    elif side == "position":
        for i in range(1, m + 1):
            if i <= n:
                out.append(sum(vals[i - 1:n]))
            else:
                out.append(sum(vals[n:i]))
    else:
        raise ValueError(f"unknown side {side!r}; expected 'position' or 'rapidity'")
    return tuple(out)


def set_inner(x, u) -> complex:
    """Sum of elementwise products of two equal-length ordered sets."""
    a = set_values(x)
    b = set_values(u)
    if len(a) != len(b):
        raise LengthMismatch("inner product requires equal lengths")
    return sum((p * q for p, q in zip(a, b)), 0j)


# ---------------------------------------------------------------------------
# permutation action and enumeration
# ---------------------------------------------------------------------------

def apply_permutation(p, values) -> tuple:
    """Reorder ``values`` so that element i of the result is
    ``values[p_inverse(i)]``.

    ``p`` may be a Permutation or a raw 0-based image list.  The action
    is associative: applying q to the result equals applying ``q * p``.
    """
    image = p.image if isinstance(p, Permutation) else tuple(int(i) for i in p)
    vals = tuple(values)
    if len(image) != len(vals):
        raise LengthMismatch("permutation size does not match set length")
    out = [None] * len(vals)
    for i, target in enumerate(image):
        out[target] = vals[i]
    return tuple(out)


def enumerate_permutations(n: int) -> Iterator[Permutation]:
    """Yield all of S_n in lexicographic image-list order."""
    if n < 1:
        raise ValueError("permutation size must be at least 1")
    if n > MAX_PERMUTATION_SIZE:
        raise SizeLimit(f"refusing to enumerate S_{n} (cap {MAX_PERMUTATION_SIZE})")
    for image in itertools.permutations(range(n)):
        yield Permutation(image)


def enumerate_bipartitions(m: int, k: int) -> Iterator[Bipartition]:
    """Yield every size-k / size-(m-k) normal-ordered bipartition of
    ``{0..m-1}`` in lexicographic order of the first part."""
    if not 0 <= k <= m:
        raise IndexError(f"part size {k} outside [0, {m}]")
    universe = range(m)
    for ones in itertools.combinations(universe, k):
        chosen = set(ones)
        twos = tuple(i for i in universe if i not in chosen)
        yield Bipartition(ones, twos, m)
