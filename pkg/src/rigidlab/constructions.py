"""Factories for the concrete rings, modules and endomorphisms used by the workbench.

Tuple-shaped carriers (matrices, ``V_n`` tuples, products) are indexed
lexicographically with slot 0 most significant.
"""
from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import (
    FiniteModule,
    FiniteRing,
    RingEndo,
    Submodule,
    identity_endo,
    regular_module,
    validate_endo,
    validate_module,
    validate_ring,
    validate_submodule,
)
from .errors import NotPrime, RingMismatch


def _digits(count: int, base: int, n: int) -> np.ndarray:
    """Row ``x`` holds the base-``base`` digits of ``x`` (most significant first)."""
    idx = np.arange(count, dtype=np.int64)
    out = np.empty((count, n), dtype=np.int64)
    for i in range(n - 1, -1, -1):
        out[:, i] = idx % base
        idx //= base
    return out


def _encode(slots, base: int):
    acc = np.zeros_like(slots[0])
    for s in slots:
        acc = acc * base + s
    return acc


def encode(values, base: int) -> int:
    acc = 0
    for v in values:
        acc = acc * base + int(v)
    return acc


def decode(index: int, base: int, n: int) -> tuple:
    out = []
    for _ in range(n):
        out.append(index % base)
        index //= base
    return tuple(reversed(out))


def make_zmod(n: int) -> FiniteRing:
    if n < 1:
        raise ValueError("modulus must be positive")
    i = np.arange(n)
    return validate_ring(n, (i[:, None] + i[None, :]) % n, (i[:, None] * i[None, :]) % n,
                         0, 1 % n, name=f"Z/{n}")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def make_prime_field(p: int) -> FiniteRing:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    R = make_zmod(p)
    return FiniteRing(R.size, R.add, R.mul, R.zero, R.one, name=f"F{p}")


def _with_meta(ring: FiniteRing, shape: str, base) -> FiniteRing:
    object.__setattr__(ring, "_shape", (shape, base))
    return ring


def ring_shape(ring: FiniteRing):
    """``(shape, base)`` for rings built here from a base ring, else ``None``."""
    return getattr(ring, "_shape", None)


def make_upper_triangular(F: FiniteRing) -> FiniteRing:
    """Matrices ``(a,b;0,c)`` over ``F``, carrier indexed by ``(a,b,c)``."""
    q = F.size
    D = _digits(q ** 3, q, 3)
    a, b, c = (D[:, i] for i in range(3))
    A, B = (lambda v: v[:, None]), (lambda v: v[None, :])
    add = _encode([F.add[A(a), B(a)], F.add[A(b), B(b)], F.add[A(c), B(c)]], q)
    mul = _encode([F.mul[A(a), B(a)],
                   F.add[F.mul[A(a), B(b)], F.mul[A(b), B(c)]],
                   F.mul[A(c), B(c)]], q)
    zero = encode((F.zero,) * 3, q)
    one = encode((F.one, F.zero, F.one), q)
    R = validate_ring(q ** 3, add, mul, zero, one, name=f"T({F.name})")
    return _with_meta(R, "triangular", F)


def make_jordan_ring(F: FiniteRing) -> FiniteRing:
    """Matrices ``(a,b;0,a)`` over ``F``, carrier indexed by ``(a,b)``."""
    q = F.size
    D = _digits(q ** 2, q, 2)
    a, b = D[:, 0], D[:, 1]
    add = _encode([F.add[a[:, None], a[None, :]], F.add[b[:, None], b[None, :]]], q)
    mul = _encode([F.mul[a[:, None], a[None, :]],
                   F.add[F.mul[a[:, None], b[None, :]], F.mul[b[:, None], a[None, :]]]], q)
    R = validate_ring(q ** 2, add, mul, encode((F.zero, F.zero), q),
                      encode((F.one, F.zero), q), name=f"J({F.name})")
    return _with_meta(R, "jordan", F)


def make_negating_endo(ring: FiniteRing) -> RingEndo:
    """Negate the strictly upper entry of a triangular or Jordan matrix ring."""
    shape = ring_shape(ring)
    if shape is None or shape[0] not in ("triangular", "jordan"):
        raise ValueError("ring was not built by make_upper_triangular/make_jordan_ring")
    kind, F = shape
    q = F.size
    n = 3 if kind == "triangular" else 2
    D = _digits(ring.size, q, n)
    D[:, 1] = F.neg[D[:, 1]]
    return validate_endo(ring, _encode([D[:, i] for i in range(n)], q), name="negate")


def make_example16_module(F: FiniteRing) -> tuple[FiniteModule, Submodule]:
    """Right module ``(0,F;F,F)`` over ``(F,F;0,F)`` and its submodule ``K = (0,F;0,F)``.

    An element ``(0,beta;alpha,gamma)`` is indexed by ``(beta, alpha, gamma)``.
    """
    R = make_upper_triangular(F)
    q = F.size
    DM = _digits(q ** 3, q, 3)
    DR = _digits(q ** 3, q, 3)
    beta, alpha, gamma = (DM[:, i][:, None] for i in range(3))
    x, y, z = (DR[:, i][None, :] for i in range(3))
    action = _encode([F.mul[beta, z], F.mul[alpha, x],
                      F.add[F.mul[alpha, y], F.mul[gamma, z]]], q)
    mb, ma, mg = (DM[:, i] for i in range(3))
    add = _encode([F.add[mb[:, None], mb[None, :]], F.add[ma[:, None], ma[None, :]],
                   F.add[mg[:, None], mg[None, :]]], q)
    M = validate_module(R, q ** 3, add, encode((F.zero,) * 3, q), action,
                        name=f"Ex16({F.name})")
    K = validate_submodule(M, np.flatnonzero(DM[:, 1] == F.zero).tolist())
    return M, K


@dataclass(frozen=True)
class VnDescriptor:
    n: int
    base_ring: FiniteRing
    base_endo: RingEndo | None = None
    base_module: FiniteModule | None = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.base_endo is None:
            object.__setattr__(self, "base_endo", identity_endo(self.base_ring))
        elif self.base_endo.ring.content_hash != self.base_ring.content_hash:
            raise RingMismatch("endomorphism is not over the base ring")
        if self.base_module is not None and \
                self.base_module.ring.content_hash != self.base_ring.content_hash:
            raise RingMismatch("module is not over the base ring")

    @property
    def module(self) -> FiniteModule:
        return self.base_module if self.base_module is not None \
            else regular_module(self.base_ring)


FULL_VALIDATION_MAX = 256
VN_CACHE_SLOTS = 4


class _LRU:
    """Keeps the most recent ``V_n`` builds; large ones hold hundreds of MB."""

    def __init__(self, slots):
        self.slots = slots
        self.data = OrderedDict()

    def __contains__(self, key):
        return key in self.data

    def __getitem__(self, key):
        self.data.move_to_end(key)
        return self.data[key]

    def __setitem__(self, key, value):
        self.data[key] = value
        while len(self.data) > self.slots:
            self.data.popitem(last=False)

    def clear(self):
        self.data.clear()


_VN_CACHE = _LRU(VN_CACHE_SLOTS)
_SBAR_CACHE = _LRU(4 * VN_CACHE_SLOTS)


def clear_caches() -> None:
    """Drop memoized V_n tables and extended endomorphisms."""
    _VN_CACHE.clear()
    _SBAR_CACHE.clear()


def make_vn_ring(d: VnDescriptor) -> tuple[FiniteRing, np.ndarray]:
    """``V_n(R)`` with truncated-convolution product, plus ``a -> (a,0,...,0)``."""
    key = ("ring", d.n, d.base_ring.content_hash)
    if key not in _VN_CACHE:
        F, n, q = d.base_ring, d.n, d.base_ring.size
        add = kernels.componentwise_table(kernels.table(F.add), n)
        mul = kernels.convolution_table(kernels.table(F.mul), kernels.table(F.add), n)
        zero = encode((F.zero,) * n, q)
        one = encode((F.one,) + (F.zero,) * (n - 1), q)
        R = validate_ring(q ** n, add, mul, zero, one, name=f"V{n}({F.name})",
                          exhaustive=q ** n <= FULL_VALIDATION_MAX)
        R = _with_meta(R, "vn", (n, F))
        embed = np.array([encode((a,) + (F.zero,) * (n - 1), q) for a in range(q)])
        _VN_CACHE[key] = (R, embed)
    return _VN_CACHE[key]


def make_vn_module(d: VnDescriptor) -> tuple[FiniteModule, np.ndarray]:
    """``V_n(M)`` over ``V_n(R)`` with ``UA = (m_0a_0, m_0a_1+m_1a_0, ...)``, plus ``m -> (m,0,...,0)``."""
    M = d.module
    R, ring_embed = make_vn_ring(d)
    if d.base_module is None:
        # V_n of R_R is the regular module of V_n(R): same tables, same embedding
        return regular_module(R), ring_embed
    key = ("module", d.n, M.content_hash)
    if key not in _VN_CACHE:
        n, p, q = d.n, M.size, d.base_ring.size
        add = kernels.componentwise_table(kernels.table(M.add), n)
        action = kernels.convolution_table(kernels.table(M.action), kernels.table(M.add), n)
        V = validate_module(R, p ** n, add, encode((M.zero,) * n, p), action,
                            name=f"V{n}({M.name or M.ring.name})",
                            exhaustive=max(p, q) ** n <= FULL_VALIDATION_MAX)
        embed = np.array([encode((m,) + (M.zero,) * (n - 1), p) for m in range(p)])
        _VN_CACHE[key] = (V, embed)
    return _VN_CACHE[key]


def extend_endo_vn(d: VnDescriptor) -> RingEndo:
    """Componentwise extension of the base endomorphism to ``V_n(R)``."""
    R, _ = make_vn_ring(d)
    if d.base_endo.is_identity:
        return identity_endo(R)
    key = (d.base_ring.content_hash, d.n, d.base_endo.image.tobytes())
    if key not in _SBAR_CACHE:
        q, n = d.base_ring.size, d.n
        D = _digits(R.size, q, n)
        img = _encode([d.base_endo.image[D[:, i]] for i in range(n)], q)
        _SBAR_CACHE[key] = validate_endo(R, img, name=f"{d.base_endo.label()}-bar")
    return _SBAR_CACHE[key]


def vn_regular(d: VnDescriptor) -> bool:
    return d.base_module is None


def direct_product(A, B):
    """Componentwise product of two rings, or of two modules over one ring."""
    if isinstance(A, FiniteRing) and isinstance(B, FiniteRing):
        nb = B.size
        idx = np.arange(A.size * nb)
        a, b = idx // nb, idx % nb
        add = A.add[a[:, None], a[None, :]] * nb + B.add[b[:, None], b[None, :]]
        mul = A.mul[a[:, None], a[None, :]] * nb + B.mul[b[:, None], b[None, :]]
        return validate_ring(A.size * nb, add, mul, A.zero * nb + B.zero,
                             A.one * nb + B.one, name=f"{A.name}x{B.name}")
    if isinstance(A, FiniteModule) and isinstance(B, FiniteModule):
        if A.ring.content_hash != B.ring.content_hash:
            raise RingMismatch("modules over different rings")
        nb = B.size
        idx = np.arange(A.size * nb)
        a, b = idx // nb, idx % nb
        add = A.add[a[:, None], a[None, :]] * nb + B.add[b[:, None], b[None, :]]
        action = A.action[a] * nb + B.action[b]
        return validate_module(A.ring, A.size * nb, add, A.zero * nb + B.zero, action,
                               name=f"{A.name or A.ring.name}x{B.name or B.ring.name}")
    raise TypeError("direct_product needs two rings or two modules")
