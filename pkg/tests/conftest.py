"""Shared test oracles, all deliberately independent of the library code:
plain trial division, Sylvester determinants over fractions, exhaustive
enumeration.  Slow but obviously correct."""

from __future__ import annotations

from fractions import Fraction

import pytest

from fiberfields.polyring import IntPoly, parse_poly


def oracle_factor(n: int) -> dict[int, int]:
    """Unsigned prime factorization of |n| by pure trial division."""
    assert n != 0
    m = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def oracle_is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def oracle_squarefree_kernel(n: int) -> int:
    k = 1 if n > 0 else -1
    for p, e in oracle_factor(n).items():
        if e % 2:
            k *= p
    return k


def oracle_p_free_value(n: int, p: int) -> int:
    """Reconstructed p-free kernel: sign (kept only for p = 2) times
    primes to exponents reduced mod p."""
    sign = 1 if n > 0 or p != 2 else -1
    if n < 0 and p == 2:
        sign = -1
    k = sign
    for q, e in oracle_factor(n).items():
        k *= q ** (e % p)
    return k


def oracle_resultant(f: IntPoly, g: IntPoly) -> Fraction:
    """Resultant as the Sylvester matrix determinant (fraction Gaussian
    elimination)."""
    m, n = f.degree, g.degree
    assert m >= 0 and n >= 0
    if m == 0 and n == 0:
        return Fraction(1)
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))  # highest degree first
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([Fraction(0)] * i + [Fraction(c) for c in fc] + [Fraction(0)] * (size - i - m - 1))
    for i in range(m):
        rows.append([Fraction(0)] * i + [Fraction(c) for c in gc] + [Fraction(0)] * (size - i - n - 1))
    det = Fraction(1)
    for col in range(size):
        pivot = None
        for r in range(col, size):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = Fraction(1) / rows[col][col]
        for r in range(col + 1, size):
            if rows[r][col] != 0:
                factor = rows[r][col] * inv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return det


def poly(text: str) -> IntPoly:
    p = parse_poly(text)
    assert isinstance(p, IntPoly)
    return p


@pytest.fixture
def x():
    return poly("x")
