"""Exact coefficient carriers for the symbolic layer.

A carrier bundles ring arithmetic, the right action of ring elements on module
elements, and an endomorphism ``apply_sigma``. Module-side and ring-side values
may share a representation (a ring acting on itself) or not (``R/xR`` over
``K<x,y>``, finite tables), so additive operations take a ``side`` argument.
"""
from __future__ import annotations

from ..core import FiniteModule, RingEndo, identity_endo
from ..errors import DegreeBudgetExceeded, NotPrime, SigmaNotInvertibleForLaurent

MODULE = "module"
RING = "ring"


class ExactCarrier:
    """Interface; realizations override the arithmetic."""

    name = "abstract"

    def zero(self, side=RING):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def add(self, x, y, side=RING):
        raise NotImplementedError

    def neg(self, x, side=RING):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def act(self, m, a):
        return self.mul(m, a)

    def apply_sigma(self, a):
        return a

    def sigma_inverse(self, a):
        raise SigmaNotInvertibleForLaurent(f"sigma is not invertible on {self.name}")

    def is_zero(self, x, side=RING) -> bool:
        return x == self.zero(side)

    def text(self, x, side=RING) -> str:
        return str(x)

    def sub(self, x, y, side=RING):
        return self.add(x, self.neg(y, side), side)

    def sigma_power(self, a, k: int):
        step = self.apply_sigma if k >= 0 else self.sigma_inverse
        for _ in range(abs(k)):
            a = step(a)
        return a


class ExactInt(ExactCarrier):
    """Arbitrary-precision integers; the identity is the only unital endomorphism of Z."""

    name = "Z"

    def zero(self, side=RING):
        return 0

    def one(self):
        return 1

    def add(self, x, y, side=RING):
        return x + y

    def neg(self, x, side=RING):
        return -x

    def mul(self, a, b):
        return a * b

    def sigma_inverse(self, a):
        return a


class IntMatrix2(ExactCarrier):
    """Upper triangular integer matrices ``(a,b;0,c)`` stored as ``(a, b, c)``.

    ``apply_sigma`` negates the corner entry when ``negate`` is set; that map is
    an involutive ring automorphism.
    """

    name = "T2(Z)"

    def __init__(self, negate: bool = True):
        self.negate = negate

    def zero(self, side=RING):
        return (0, 0, 0)

    def one(self):
        return (1, 0, 1)

    def add(self, x, y, side=RING):
        return (x[0] + y[0], x[1] + y[1], x[2] + y[2])

    def neg(self, x, side=RING):
        return (-x[0], -x[1], -x[2])

    def mul(self, a, b):
        return (a[0] * b[0], a[0] * b[1] + a[1] * b[2], a[2] * b[2])

    def apply_sigma(self, a):
        return (a[0], -a[1], a[2]) if self.negate else a

    def sigma_inverse(self, a):
        return self.apply_sigma(a)

    def text(self, x, side=RING):
        return f"({x[0]},{x[1]};0,{x[2]})"

    @staticmethod
    def jordan(a: int, b: int):
        return (a, b, a)


def _check_prime(p: int):
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise NotPrime(f"{p} is not prime")


class PolyCoset(ExactCarrier):
    """``K[x]/(x^n)`` over the prime field ``F_p``; elements are length-``n`` tuples."""

    def __init__(self, n: int, p: int):
        if n < 1:
            raise ValueError("n must be positive")
        _check_prime(p)
        self.n, self.p = n, p
        self.name = f"F{p}[x]/(x^{n})"

    def elem(self, coeffs):
        c = [int(v) % self.p for v in coeffs][: self.n]
        return tuple(c + [0] * (self.n - len(c)))

    @property
    def x(self):
        return self.elem([0, 1])

    def zero(self, side=RING):
        return (0,) * self.n

    def one(self):
        return self.elem([1])

    def add(self, x, y, side=RING):
        return tuple((a + b) % self.p for a, b in zip(x, y))

    def neg(self, x, side=RING):
        return tuple((-a) % self.p for a in x)

    def mul(self, a, b):
        out = [0] * self.n
        for i, ai in enumerate(a):
            if ai:
                for j in range(self.n - i):
                    out[i + j] = (out[i + j] + ai * b[j]) % self.p
        return tuple(out)

    def sigma_inverse(self, a):
        return a

    def text(self, x, side=RING):
        terms = []
        for i, c in enumerate(x):
            if c:
                terms.append(str(c) if i == 0 else f"{c}*x" if i == 1 else f"{c}*x^{i}")
        return " + ".join(terms) if terms else "0"


class FreeAlgebra(ExactCarrier):
    """``K<x,y>`` over ``F_p`` (ring side) acting on the cosets ``K<x,y>/xK<x,y>``.

    Elements on both sides are sorted tuples of ``(word, coeff)`` pairs with
    nonzero coefficients; ``""`` is the empty word. The coset normal form drops
    every word beginning with ``x``. Products longer than ``max_degree`` raise.
    """

    def __init__(self, p: int = 2, max_degree: int = 8, alphabet: str = "xy"):
        _check_prime(p)
        self.p, self.max_degree, self.alphabet = p, max_degree, alphabet
        self.name = f"F{p}<{','.join(alphabet)}>"

    def _build(self, terms: dict, side):
        items = []
        for w, c in terms.items():
            c %= self.p
            if not c:
                continue
            if side == MODULE and w.startswith("x"):
                continue
            items.append((w, c))
        return tuple(sorted(items))

    def poly(self, terms=None, side=RING):
        """Build an element from ``{word: coeff}`` (module side is renormalised)."""
        terms = dict(terms or {})
        for w in terms:
            if any(ch not in self.alphabet for ch in w):
                raise ValueError(f"word {w!r} outside alphabet")
            if len(w) > self.max_degree:
                raise DegreeBudgetExceeded(f"word {w!r} exceeds degree {self.max_degree}")
        return self._build(terms, side)

    def word(self, w: str, side=RING):
        return self.poly({w: 1}, side)

    def coset(self, terms) -> tuple:
        """The class of a ring element in ``R/xR``."""
        if isinstance(terms, tuple):
            terms = dict(terms)
        return self.poly(terms, MODULE)

    def renormalize(self, m):
        return self._build(dict(m), MODULE)

    def zero(self, side=RING):
        return ()

    def one(self):
        return (("", 1),)

    def add(self, x, y, side=RING):
        acc = dict(x)
        for w, c in y:
            acc[w] = acc.get(w, 0) + c
        return self._build(acc, side)

    def neg(self, x, side=RING):
        return self._build({w: -c for w, c in x}, side)

    def _product(self, a, b, side):
        acc = {}
        for u, c in a:
            for v, d in b:
                w = u + v
                if len(w) > self.max_degree:
                    raise DegreeBudgetExceeded(f"product word of length {len(w)}")
                acc[w] = acc.get(w, 0) + c * d
        return self._build(acc, side)

    def mul(self, a, b):
        return self._product(a, b, RING)

    def act(self, m, a):
        return self._product(m, a, MODULE)

    def sigma_inverse(self, a):
        return a

    def text(self, x, side=RING):
        if not x:
            return "0"
        parts = []
        for w, c in x:
            w = w or "1"
            parts.append(w if c == 1 else f"{c}*{w}")
        return " + ".join(parts)


class FiniteElem(ExactCarrier):
    """Bridge to table-based structures: values are element indices."""

    def __init__(self, module: FiniteModule, endo: RingEndo | None = None):
        self.module = module
        self.ring = module.ring
        self.endo = endo if endo is not None else identity_endo(module.ring)
        self.name = f"finite({module.name or module.ring.name})"

    def _tables(self, side):
        return self.module if side == MODULE else self.ring

    def zero(self, side=RING):
        return self._tables(side).zero

    def one(self):
        return self.ring.one

    def add(self, x, y, side=RING):
        return int(self._tables(side).add[x, y])

    def neg(self, x, side=RING):
        return int(self._tables(side).neg[x])

    def mul(self, a, b):
        return int(self.ring.mul[a, b])

    def act(self, m, a):
        return int(self.module.action[m, a])

    def apply_sigma(self, a):
        return int(self.endo.image[a])

    def sigma_inverse(self, a):
        if not self.endo.is_bijective:
            raise SigmaNotInvertibleForLaurent("sigma is not an automorphism")
        return int(self.endo.inverse_image[a])

    def is_zero(self, x, side=RING) -> bool:
        return int(x) == self._tables(side).zero
