"""Generalized Pauli words over a prime dimension d.

A word is stored in canonical form ω^phase ⊗_i X^{x_i} Z^{z_i} with every exponent
reduced mod d, so structural equality is operator equality. Dense matrices are only
built as a verification oracle.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from graphcert.core.config import settings
from graphcert.core.exceptions import DenseLimitExceeded, PauliMismatchError

logger = logging.getLogger(__name__)


def omega_power(d: int, k: int) -> complex:
    """ω^k with ω = exp(2πi/d), exponent reduced first to keep the angle small."""
    return complex(np.exp(2j * np.pi * (k % d) / d))


@dataclass(frozen=True)
class PauliWord:
    """Canonical generalized Pauli operator on len(sites) qudits."""

    d: int
    phase: int
    sites: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        d = self.d
        object.__setattr__(self, "phase", self.phase % d)
        object.__setattr__(self, "sites", tuple((x % d, z % d) for x, z in self.sites))

    @classmethod
    def identity(cls, d: int, n: int) -> "PauliWord":
        return cls(d, 0, ((0, 0),) * n)

    @classmethod
    def from_exponents(
        cls, d: int, xs: Sequence[int], zs: Sequence[int], phase: int = 0
    ) -> "PauliWord":
        if len(xs) != len(zs):
            raise PauliMismatchError("X and Z exponent vectors differ in length")
        return cls(d, phase, tuple(zip(xs, zs)))

    @classmethod
    def single(cls, d: int, n: int, site: int, x: int = 0, z: int = 0) -> "PauliWord":
        """X^x Z^z on one site, identity elsewhere."""
        sites = [(0, 0)] * n
        sites[site] = (x, z)
        return cls(d, 0, tuple(sites))

    @property
    def n(self) -> int:
        return len(self.sites)

    @property
    def xs(self) -> Tuple[int, ...]:
        return tuple(x for x, _ in self.sites)

    @property
    def zs(self) -> Tuple[int, ...]:
        return tuple(z for _, z in self.sites)

    @property
    def support(self) -> Tuple[int, ...]:
        """Indices of sites acting nontrivially."""
        return tuple(i for i, (x, z) in enumerate(self.sites) if x or z)

    @property
    def is_identity(self) -> bool:
        return self.phase == 0 and not self.support

    def with_phase(self, phase: int) -> "PauliWord":
        return PauliWord(self.d, phase, self.sites)

    def __mul__(self, other: "PauliWord") -> "PauliWord":
        return pw_mul(self, other)

    def __pow__(self, k: int) -> "PauliWord":
        return pw_pow(self, k)

    def __str__(self) -> str:
        return format_word(self)


def format_word(word: PauliWord, labels: Optional[Sequence[str]] = None) -> str:
    """Human-readable form such as `ω^2 X1 Z2^2 Z3`; sites are 1-based unless labelled."""
    parts = []
    if word.phase:
        parts.append(f"ω^{word.phase}")
    for i, (x, z) in enumerate(word.sites):
        label = labels[i] if labels is not None else str(i + 1)
        if x:
            parts.append(f"X{label}" + (f"^{x}" if x != 1 else ""))
        if z:
            parts.append(f"Z{label}" + (f"^{z}" if z != 1 else ""))
    return " ".join(parts) or "I"


def _check_compatible(p: PauliWord, q: PauliWord) -> None:
    if p.d != q.d:
        raise PauliMismatchError(f"dimension mismatch: {p.d} vs {q.d}")
    if p.n != q.n:
        raise PauliMismatchError(f"site count mismatch: {p.n} vs {q.n}")


def pw_mul(p: PauliWord, q: PauliWord) -> PauliWord:
    """Canonical form of the product P·Q.

    Per site (X^a Z^b)(X^a' Z^b') = ω^{b·a'} X^{a+a'} Z^{b+b'}.
    """
    _check_compatible(p, q)
    phase = p.phase + q.phase
    sites = []
    for (xp, zp), (xq, zq) in zip(p.sites, q.sites):
        phase += zp * xq
        sites.append((xp + xq, zp + zq))
    return PauliWord(p.d, phase, tuple(sites))


def pw_commutation_exponent(p: PauliWord, q: PauliWord) -> int:
    """c with P·Q = ω^c Q·P."""
    _check_compatible(p, q)
    c = sum(zp * xq - xp * zq for (xp, zp), (xq, zq) in zip(p.sites, q.sites))
    return c % p.d


def pw_pow(p: PauliWord, k: int) -> PauliWord:
    """Canonical form of P^k for k ≥ 0.

    Uses the closed form P^k = ω^{k·s + C(k,2)·Σ_i z_i x_i} X^{k·x} Z^{k·z}.
    """
    if k < 0:
        raise PauliMismatchError(f"negative power {k}; use pw_pow(P, k mod d) for inverses")
    twist = sum(x * z for x, z in p.sites)
    phase = k * p.phase + (k * (k - 1) // 2) * twist
    return PauliWord(p.d, phase, tuple((k * x, k * z) for x, z in p.sites))


def pw_inverse(p: PauliWord) -> PauliWord:
    """P^{-1} = P^† for a word; P^{2d-1} always works since P^{2d} is the identity."""
    return pw_pow(p, 2 * p.d - 1)


def check_dense_size(d: int, n: int, limit: Optional[int]) -> None:
    limit = settings.DENSE_LIMIT if limit is None else limit
    if d ** n > limit:
        raise DenseLimitExceeded(f"dense dimension {d}^{n} exceeds the limit {limit}")


def shift_matrix(d: int) -> np.ndarray:
    """X = Σ_j |j+1⟩⟨j|."""
    x = np.zeros((d, d), dtype=complex)
    for j in range(d):
        x[(j + 1) % d, j] = 1.0
    return x


def clock_matrix(d: int) -> np.ndarray:
    """Z = Σ_j ω^j |j⟩⟨j|."""
    return np.diag(np.exp(2j * np.pi * np.arange(d) / d))


def pw_dense(p: PauliWord, limit: Optional[int] = None) -> np.ndarray:
    """Dense d^n × d^n matrix of the word; site 0 is the most significant tensor factor."""
    check_dense_size(p.d, p.n, limit)
    x, z = shift_matrix(p.d), clock_matrix(p.d)
    out = np.array([[omega_power(p.d, p.phase)]], dtype=complex)
    for xi, zi in p.sites:
        local = np.linalg.matrix_power(x, xi) @ np.linalg.matrix_power(z, zi)
        out = np.kron(out, local)
    return out


def pw_apply(p: PauliWord, state: np.ndarray, limit: Optional[int] = None) -> np.ndarray:
    """Matrix-free P|ψ⟩ for a state vector of length d^n."""
    d, n = p.d, p.n
    check_dense_size(d, n, limit)
    if state.shape != (d ** n,):
        raise PauliMismatchError(f"state has shape {state.shape}, expected ({d ** n},)")
    psi = state.reshape((d,) * n) if n else state.reshape(())
    levels = np.arange(d)
    for axis, (x, z) in enumerate(p.sites):
        if z:
            shape = [1] * n
            shape[axis] = d
            psi = psi * np.exp(2j * np.pi * ((z * levels) % d) / d).reshape(shape)
        if x:
            # X|k⟩ = |k+1⟩ moves amplitude up by x
            psi = np.roll(psi, x, axis=axis)
    return omega_power(d, p.phase) * psi.reshape(-1)
