"""Exact arithmetic over the prime field Z_p."""
from typing import List, Optional, Sequence

from graphcert.core.exceptions import InvalidArgumentError


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


def require_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidArgumentError(f"dimension must be prime, got {p!r}")
    return p


def mod_inverse(a: int, p: int) -> int:
    """Inverse of `a` in Z_p; raises for a ≡ 0."""
    a %= p
    if a == 0:
        raise InvalidArgumentError(f"0 has no inverse modulo {p}")
    return pow(a, -1, p)


def leading_zeros(row: Sequence[int]) -> int:
    j = 0
    while j < len(row) and row[j] == 0:
        j += 1
    return j


def solve_mod_p(a: Sequence[Sequence[int]], b: Sequence[int], p: int) -> Optional[List[int]]:
    """Solve a·x = b over Z_p by Gauss-Jordan elimination.

    Returns one solution (free variables set to 0) or None when the system is
    inconsistent.
    """
    rows = [[v % p for v in row] + [rhs % p] for row, rhs in zip(a, b)]
    if not rows:
        return []
    n = len(rows[0]) - 1
    pivots = []
    r = 0
    for col in range(n):
        pivot = next((k for k in range(r, len(rows)) if rows[k][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col]:
                f = rows[k][col]
                rows[k] = [(vk - f * vr) % p for vk, vr in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break

    # zero rows with a nonzero right-hand side
    for row in rows[r:]:
        if leading_zeros(row[:n]) == n and row[n]:
            return None

    x = [0] * n
    for k, col in enumerate(pivots):
        x[col] = rows[k][n]
    return x
