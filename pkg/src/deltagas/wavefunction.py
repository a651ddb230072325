"""Coordinate-Bethe-ansatz wavefunction on the infinite line.

The fundamental-sector wavefunction is the plane-wave superposition

    psi(x) = sum over orderings w of the rapidities of
             F(w) * exp(i * (x, w))

with amplitude F the pairwise product ``prod_{i<j} (1 + ic/(w_i - w_j))``
and phase convention ``exp(+i (x, w))``.  The symmetric extension to
arbitrary distinct coordinates follows from bosonic exchange symmetry.
The contact interaction enters only through the derivative-jump (cusp)
condition at coincident coordinates, which is checked analytically,
term by term, never by finite differences.

The global ``c^(M/2)`` normalization is stored on the state but applied
only where scalar products square it; the bare superposition above is
what these evaluators return.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass

from .errors import DomainError, SizeLimit
from .kernels import big_f, coupling_value, set_values

#: psi sums M! plane waves; cap the sector size accordingly.
MAX_PSI_SIZE = 7


@dataclass(frozen=True)
class BetheState:
    """Eigenstate data: rapidity list plus the coupling it was built for."""

    rapidities: tuple[complex, ...]
    coupling: float

    def __post_init__(self) -> None:
        values = tuple(complex(z) for z in self.rapidities)
        object.__setattr__(self, "rapidities", values)
        object.__setattr__(self, "coupling", coupling_value(self.coupling))
        if not values:
            raise ValueError("a Bethe state needs at least one rapidity")
        for i in range(len(values)):
            for j in range(i + 1, len(values)):
                if values[i] == values[j]:
                    raise ValueError("rapidities must be pairwise distinct")

    @property
    def size(self) -> int:
        return len(self.rapidities)

    @property
    def normalization(self) -> complex:
        """Global amplitude factor c^(M/2), complex for negative coupling."""
        return complex(self.coupling) ** (self.size / 2.0)


def energy(state: BetheState) -> complex:
    """Free-particle eigenvalue: sum of squared rapidities."""
    return sum((z * z for z in state.rapidities), 0j)


def plane_wave_sum(x, state: BetheState) -> complex:
    """Raw Bethe superposition at coordinates ``x`` with no domain checks.

    This is the analytic continuation of the fundamental-sector
    expression to any coordinate list; callers are responsible for
    knowing which sector it represents.
    """
    xs = [complex(p).real for p in set_values(x)]
    total = 0j
    c = state.coupling
    for ordering in itertools.permutations(state.rapidities):
        phase = sum(p * w for p, w in zip(xs, ordering))
        total += big_f(ordering, c) * cmath.exp(1j * phase)
    return total


def psi_fundamental(x, state: BetheState) -> complex:
    """Wavefunction on the fundamental sector x_1 < ... < x_M."""
    xs = _real_positions(x)
    _check_sizes(xs, state)
    for a, b in zip(xs, xs[1:]):
        if not a < b:
            raise DomainError("coordinates must be strictly increasing")
    return plane_wave_sum(xs, state)


def psi_symmetric(x, state: BetheState) -> complex:
    """Symmetric extension of the wavefunction to any pairwise-distinct
    coordinate list: sort into the fundamental sector and evaluate there."""
    xs = _real_positions(x)
    _check_sizes(xs, state)
    ordered = sorted(xs)
    for a, b in zip(ordered, ordered[1:]):
        if a == b:
            raise DomainError("coordinates must be pairwise distinct")
    return plane_wave_sum(ordered, state)


def cusp_residual(x, state: BetheState, pair_index: int) -> complex:
    """Derivative-jump defect at one coincident coordinate pair.

    ``x`` must be non-decreasing with exactly one coincidence, at
    positions ``pair_index`` and ``pair_index + 1``.  Returns

        [d psi/d x_{i+1} - d psi/d x_i](from the ordered side) - c * psi

    computed analytically term by term; an exact eigenstate gives zero.
    """
    xs = _real_positions(x)
    _check_sizes(xs, state)
    m = len(xs)
    if not 0 <= pair_index <= m - 2:
        raise DomainError("coincidence index out of range")
    for j in range(m - 1):
        if j == pair_index:
            if xs[j] != xs[j + 1]:
                raise DomainError("designated pair is not coincident")
        elif not xs[j] < xs[j + 1]:
            raise DomainError("coordinates away from the pair must be strictly increasing")
    c = state.coupling
    total = 0j
    for ordering in itertools.permutations(state.rapidities):
        phase = sum(p * w for p, w in zip(xs, ordering))
        jump = 1j * (ordering[pair_index + 1] - ordering[pair_index]) - c
        total += big_f(ordering, c) * cmath.exp(1j * phase) * jump
    return total


def _real_positions(x) -> tuple[float, ...]:
    out = []
    for p in set_values(x):
        if p.imag != 0.0:
            raise DomainError("coordinates must be real")
        out.append(p.real)
    return tuple(out)


def _check_sizes(xs, state: BetheState) -> None:
    if len(xs) != state.size:
        raise DomainError("coordinate count must match the rapidity count")
    if state.size > MAX_PSI_SIZE:
        raise SizeLimit(f"wavefunction size {state.size} exceeds cap {MAX_PSI_SIZE}")
