"""Arithmetic in F_q for small odd prime powers q, by explicit tables.

Elements are encoded as integers ``0 <= a < q`` whose base-p digits are the
coefficients of a polynomial in the generator, reduced modulo a monic
irreducible found by exhaustive search.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, k)`` with ``q == p**k`` and p prime, or None."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


def _poly_mulmod(a: list[int], b: list[int], modulus: list[int], p: int) -> list[int]:
    k = len(modulus) - 1
    out = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    # modulus is monic of degree k
    for d in range(len(out) - 1, k - 1, -1):
        c = out[d]
        if c:
            for j in range(k + 1):
                out[d - k + j] = (out[d - k + j] - c * modulus[j]) % p
    return out[:k]


def _is_irreducible(f: list[int], p: int) -> bool:
    k = len(f) - 1
    # no factor of degree <= k // 2: brute force over monic candidates
    for deg in range(1, k // 2 + 1):
        for tail in product(range(p), repeat=deg):
            g = list(tail) + [1]
            # polynomial long division remainder of f by g
            r = list(f)
            for d in range(k, deg - 1, -1):
                c = r[d]
                if c:
                    for j in range(deg + 1):
                        r[d - deg + j] = (r[d - deg + j] - c * g[j]) % p
            if not any(r[:deg]):
                return False
    return True


class FiniteField:
    def __init__(self, q: int):
        pk = prime_power(q)
        if pk is None:
            raise ValueError(f"{q} is not a prime power")
        self.q = q
        self.p, self.k = pk
        p, k = self.p, self.k
        if k == 1:
            self.modulus = [0, 1]
        else:
            self.modulus = next(list(t) + [1] for t in product(range(p), repeat=k)
                                if _is_irreducible(list(t) + [1], p))
        digits = [self._digits(a) for a in range(q)]
        self._add = [[self._encode([(x + y) % p for x, y in zip(digits[a], digits[b])])
                      for b in range(q)] for a in range(q)]
        self._mul = [[self._encode(_poly_mulmod(digits[a], digits[b], self.modulus, p)) if k > 1
                      else (a * b) % p for b in range(q)] for a in range(q)]
        self._neg = [self._encode([(-x) % p for x in digits[a]]) for a in range(q)]

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, digits: list[int]) -> int:
        a = 0
        for x in reversed(digits):
            a = a * self.p + x
        return a

    @property
    def one(self) -> int:
        return 1

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    @lru_cache(maxsize=None)
    def squares(self) -> frozenset:
        return frozenset(self.mul(a, a) for a in self.units())

    def is_square(self, a: int) -> bool:
        return a in self.squares()


@lru_cache(maxsize=None)
def finite_field(q: int) -> FiniteField:
    return FiniteField(q)
