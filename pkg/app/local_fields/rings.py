"""Truncated rings of integers O_E / p^m O_E of quadratic extensions E/F_v.

Elements are pairs (a, b) standing for a + b*alpha, with both coordinates
reduced mod p^m and alpha a root of x^2 - t*x + n:

* split:    t = 1, n = 0 (alpha is an idempotent, O_E = O_F x O_F)
* inert:    x^2 - t*x + n irreducible mod p
* ramified: Eisenstein (p | t, v_p(n) = 1), so alpha is a uniformizer of E

Conjugation sends alpha to t - alpha. With an Eisenstein basis the p_w-adic
valuation of a + b*alpha is min(2 v_p(a), 2 v_p(b) + 1), which is what makes
ideal membership and reduction to a shallower level exact.
"""

from itertools import product
from typing import Iterator, List, Optional, Tuple

from app.errors import InconclusiveError
from app.local_fields.schemas import Splitting
from pydantic import BaseModel, ConfigDict, Field

Element = Tuple[int, int]


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


class TruncatedQuadRing(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int
    m: int = Field(..., ge=1)
    splitting: Splitting
    trace: int
    norm_constant: int
    name: Optional[str] = None

    @property
    def e(self) -> int:
        return 2 if self.splitting.is_ramified else 1

    @property
    def depth(self) -> int:
        """Number of powers of p_w retained."""
        return self.e * self.m

    @property
    def modulus(self) -> int:
        return self.p**self.m

    @property
    def size(self) -> int:
        return self.modulus**2

    # -- arithmetic -------------------------------------------------------

    def element(self, a: int, b: int = 0) -> Element:
        q = self.modulus
        return (a % q, b % q)

    @property
    def one(self) -> Element:
        return self.element(1)

    @property
    def zero(self) -> Element:
        return (0, 0)

    def add(self, x: Element, y: Element) -> Element:
        return self.element(x[0] + y[0], x[1] + y[1])

    def sub(self, x: Element, y: Element) -> Element:
        return self.element(x[0] - y[0], x[1] - y[1])

    def neg(self, x: Element) -> Element:
        return self.element(-x[0], -x[1])

    def mul(self, x: Element, y: Element) -> Element:
        a, b = x
        c, d = y
        bd = b * d
        return self.element(a * c - self.norm_constant * bd, a * d + b * c + self.trace * bd)

    def conj(self, x: Element) -> Element:
        a, b = x
        return self.element(a + self.trace * b, -b)

    def norm(self, x: Element) -> int:
        """N_{E/F}(x) as a residue mod p^m."""
        a, b = x
        return (a * a + self.trace * a * b + self.norm_constant * b * b) % self.modulus

    def is_unit(self, x: Element) -> bool:
        return self.norm(x) % self.p != 0

    def inverse(self, x: Element) -> Element:
        n_inv = pow(self.norm(x), -1, self.modulus)
        a, b = self.conj(x)
        return self.element(a * n_inv, b * n_inv)

    def power(self, x: Element, k: int) -> Element:
        if k < 0:
            return self.power(self.inverse(x), -k)
        result = self.one
        base = x
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def phi(self, x: Element) -> Element:
        """x / conj(x), computed as x^2 / N(x)."""
        n_inv = pow(self.norm(x), -1, self.modulus)
        a, b = self.mul(x, x)
        return self.element(a * n_inv, b * n_inv)

    # -- p_w-adic structure -----------------------------------------------

    def _ideal_moduli(self, k: int) -> Tuple[int, int]:
        return self.p ** _ceil_div(k, self.e), self.p ** (k // self.e)

    def in_ideal(self, x: Element, k: int) -> bool:
        """Membership of x in p_w^k, exact for 0 <= k <= depth."""
        if k <= 0:
            return True
        if k > self.depth:
            raise InconclusiveError(f"level {k} exceeds truncation depth {self.depth}")
        mod_a, mod_b = self._ideal_moduli(k)
        return x[0] % mod_a == 0 and x[1] % mod_b == 0

    def valuation(self, x: Element) -> int:
        """p_w-adic valuation, capped at the truncation depth."""
        k = 0
        while k < self.depth and self.in_ideal(x, k + 1):
            k += 1
        return k

    def reduce(self, x: Element, level: int) -> Element:
        """Canonical representative of x modulo p_w^level."""
        mod_a, mod_b = self._ideal_moduli(level)
        return (x[0] % mod_a, x[1] % mod_b)

    def different_element(self) -> Element:
        """2*alpha - t, the derivative of the minimal polynomial at alpha."""
        return self.element(-self.trace, 2)

    # -- enumeration ------------------------------------------------------

    def elements(self) -> Iterator[Element]:
        q = self.modulus
        return product(range(q), range(q))

    def units(self) -> Iterator[Element]:
        return (x for x in self.elements() if self.is_unit(x))

    def one_plus_ideal(self, k: int) -> Iterator[Element]:
        """Elements of 1 + p_w^k (all units when k = 0)."""
        if k <= 0:
            yield from self.units()
            return
        mod_a, mod_b = self._ideal_moduli(k)
        q = self.modulus
        for a in range(0, q, mod_a):
            for b in range(0, q, mod_b):
                yield self.element(1 + a, b)

    def residue_units(self) -> List[int]:
        """Units of O_F / p^m."""
        return [u for u in range(self.modulus) if u % self.p != 0]

    def format_element(self, x: Element) -> str:
        a, b = x
        if b == 0:
            return str(a)
        return f"{a}+{b}*a" if a else f"{b}*a"
