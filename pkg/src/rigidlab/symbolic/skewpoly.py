"""Skew (Laurent) polynomials over an exact carrier and the ``V_n`` scalar product."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import CarrierMismatch, DegreeBudgetExceeded, SigmaNotInvertibleForLaurent
from .carriers import MODULE, RING, ExactCarrier


@dataclass(frozen=True)
class SkewPoly:
    """``sum_i coeffs[i] x^(offset+i)``; stored trimmed, the zero polynomial is ``()``."""

    carrier: ExactCarrier
    coeffs: tuple
    offset: int = 0
    side: str = MODULE

    def __post_init__(self):
        c = list(self.coeffs)
        off = self.offset
        while c and self.carrier.is_zero(c[-1], self.side):
            c.pop()
        while c and self.carrier.is_zero(c[0], self.side):
            c.pop(0)
            off += 1
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "offset", off if c else 0)

    @classmethod
    def monomial(cls, carrier, coeff, exp=0, side=MODULE):
        return cls(carrier, (coeff,), exp, side)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return self.offset + len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def low(self) -> int:
        return self.offset

    def coefficient(self, k: int):
        i = k - self.offset
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.carrier.zero(self.side)

    def terms(self):
        for i, c in enumerate(self.coeffs):
            yield self.offset + i, c

    def shift(self, k: int) -> SkewPoly:
        """Multiply on the right by ``x^k``."""
        return SkewPoly(self.carrier, self.coeffs, self.offset + k, self.side)

    def map_coefficients(self, fn) -> SkewPoly:
        return SkewPoly(self.carrier, tuple(fn(c) for c in self.coeffs), self.offset, self.side)

    def __add__(self, other: SkewPoly) -> SkewPoly:
        _same(self, other)
        if other.side != self.side:
            raise CarrierMismatch("cannot add module and ring polynomials")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.low, other.low)
        hi = max(self.degree, other.degree)
        k = self.carrier
        coeffs = tuple(k.add(self.coefficient(e), other.coefficient(e), self.side)
                       for e in range(lo, hi + 1))
        return SkewPoly(k, coeffs, lo, self.side)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return (self.carrier is other.carrier and self.side == other.side
                and self.offset == other.offset and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((id(self.carrier), self.coeffs, self.offset, self.side))

    def text(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e, c in self.terms():
            if self.carrier.is_zero(c, self.side):
                continue
            s = self.carrier.text(c, self.side)
            parts.append(s if e == 0 else f"{s}*x" if e == 1 else f"{s}*x^{e}")
        return " + ".join(parts)

    __str__ = text


def _same(p: SkewPoly, q: SkewPoly):
    if p.carrier is not q.carrier:
        raise CarrierMismatch("polynomials over different carriers")


def skew_product(m: SkewPoly, f: SkewPoly, sigma=None, twist: bool = True) -> SkewPoly:
    """``m(x) f(x) = sum_k (sum_{i+j=k} m_i sigma^i(a_j)) x^k``.

    ``sigma`` overrides the carrier's endomorphism; ``twist=False`` gives the
    ordinary product with ``x`` central. Negative exponents need ``sigma``
    invertible.
    """
    _same(m, f)
    if f.side != RING:
        raise CarrierMismatch("right factor must be a ring polynomial")
    k = m.carrier
    prod = k.act if m.side == MODULE else k.mul
    if sigma is None:
        power = k.sigma_power
    else:
        def power(a, i):
            if i < 0:
                raise SigmaNotInvertibleForLaurent("explicit sigma has no inverse")
            for _ in range(i):
                a = sigma(a)
            return a
    if twist and (m.low < 0 or f.low < 0):
        if sigma is not None:
            raise SigmaNotInvertibleForLaurent("explicit sigma has no inverse")
        k.sigma_inverse(k.one())  # raises unless sigma is an automorphism
    if m.is_zero() or f.is_zero():
        return SkewPoly(k, (), 0, m.side)
    lo = m.low + f.low
    out = [k.zero(m.side)] * (m.degree + f.degree - lo + 1)
    for i, mi in m.terms():
        for j, aj in f.terms():
            coeff = aj if not twist else power(aj, i)
            out[i + j - lo] = k.add(out[i + j - lo], prod(mi, coeff), m.side)
    return SkewPoly(k, tuple(out), lo, m.side)


def apply_sigma_coefficientwise(f: SkewPoly) -> SkewPoly:
    """The coefficientwise extension of sigma fixing ``x``."""
    return f.map_coefficients(f.carrier.apply_sigma)


def vn_symbolic_action(U, A, carrier: ExactCarrier, side: str = MODULE) -> tuple:
    """Truncated convolution ``(sum_{i+j=k} U_i A_j)_{k<n}``; ``side`` says what ``U`` holds."""
    if len(U) != len(A):
        raise CarrierMismatch("tuples of different lengths")
    prod = carrier.act if side == MODULE else carrier.mul
    out = []
    for k in range(len(U)):
        acc = carrier.zero(side)
        for i in range(k + 1):
            acc = carrier.add(acc, prod(U[i], A[k - i]), side)
        out.append(acc)
    return tuple(out)


def vn_apply_sigma(A, carrier: ExactCarrier) -> tuple:
    return tuple(carrier.apply_sigma(a) for a in A)


def vn_is_zero(U, carrier: ExactCarrier, side: str = MODULE) -> bool:
    return all(carrier.is_zero(u, side) for u in U)


def poly_coset_arith(n: int, p: int):
    """``K[x]/(x^n)`` over ``F_p``."""
    from .carriers import PolyCoset

    return PolyCoset(n, p)


def rigidity_products(m: SkewPoly, f: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """``(m f, m f sigma-bar(f))`` in ``M[x]`` with ``x`` central."""
    mf = skew_product(m, f, twist=False)
    return mf, skew_product(mf, apply_sigma_coefficientwise(f), twist=False)


def skew_rigidity_products(m: SkewPoly, f: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """``(m f, m f f)`` in ``M[x; sigma]``."""
    mf = skew_product(m, f)
    return mf, skew_product(mf, f)


TO_POLYNOMIAL = "to_polynomial"
TO_LAURENT = "to_laurent"


def laurent_witness_transfer(witness, direction: str, max_degree: int = 8):
    """Move a rigidity witness ``(m, f)`` between ``M[x]`` and ``M[x, x^-1]``.

    ``x`` is central and regular, so shifting ``m`` by ``x^k`` and ``f`` by
    ``x^j`` multiplies ``m f`` by ``x^(k+j)`` and ``m f sigma(f)`` by
    ``x^(k+2j)``; zero-ness of both products is unchanged. The shifted pair is
    recomputed and compared before it is returned.
    """
    if witness is None or witness == ():
        return witness
    m, f = witness
    if direction == TO_LAURENT:
        return m, f
    if direction != TO_POLYNOMIAL:
        raise ValueError(f"unknown direction {direction!r}")
    k = max(0, -m.low)
    j = max(0, -f.low)
    m2, f2 = m.shift(k), f.shift(j)
    if max(m2.degree, f2.degree) > max_degree:
        raise DegreeBudgetExceeded(f"shifted witness exceeds degree {max_degree}")
    before = rigidity_products(m, f)
    after = rigidity_products(m2, f2)
    if [p.is_zero() for p in before] != [p.is_zero() for p in after]:
        raise AssertionError("witness transfer changed zero pattern")
    return m2, f2
