"""Exhaustive deciders for the module and ring properties.

Every decider returns a :class:`PropertyVerdict`. Failing verdicts list the
violating tuples in lexicographic order, capped at ``limit``; the first one is
always the least violation overall.

Witness shapes:
  * rigidity type, compatibility, (C1), (C2): ``(m, a)``
  * semicommutativity type and ``reduced_lz``: ``(m, a, r)``
  * intersection clause of sigma-reduced: ``(m, a, x)`` with ``0 != x`` in ``mR ∩ Ma``
  * abelian: ``(m, e, r)`` with ``e`` idempotent
  * bounded Armendariz: ``(m_0..m_d, a_0..a_d)``
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from . import kernels
from .constructions import VnDescriptor
from .core import (
    FiniteModule,
    FiniteRing,
    PropertyVerdict,
    RingEndo,
    Submodule,
    check_same_ring,
    identity_endo,
    validate_submodule,
    verdict_from_rows,
)
from .errors import (
    EndoRingMismatch,
    NonIdentityEndoForPlainProperty,
    PreconditionNotSigmaReduced,
)

DEFAULT_LIMIT = 1024
DEFAULT_DEGREE = 2

SIGMA_PROPERTIES = ("sigma_rigid", "sigma_reduced", "sigma_semicommutative",
                    "sigma_compatible", "cond_C1", "cond_C2",
                    "sigma_skew_armendariz_bounded")
PLAIN_PROPERTIES = ("rigid", "reduced_lz", "semicommutative", "abelian",
                    "armendariz_bounded")
ALL_PROPERTIES = PLAIN_PROPERTIES + SIGMA_PROPERTIES
ALIASES = {"reduced": "reduced_lz", "C1": "cond_C1", "C2": "cond_C2",
           "armendariz": "armendariz_bounded",
           "sigma_skew_armendariz": "sigma_skew_armendariz_bounded"}

_BOUNDED = re.compile(r"^(\w+?)(?:\((\d+)\))?$")


def parse_property(text: str) -> tuple[str, int | None]:
    """``"armendariz_bounded(3)"`` -> ``("armendariz_bounded", 3)``."""
    m = _BOUNDED.match(text.strip())
    if not m:
        raise ValueError(f"unknown property {text!r}")
    name = ALIASES.get(m.group(1), m.group(1))
    if name not in ALL_PROPERTIES:
        raise ValueError(f"unknown property {text!r}")
    degree = int(m.group(2)) if m.group(2) else None
    if degree is not None and not name.endswith("_bounded"):
        raise ValueError(f"{name} takes no degree bound")
    if name.endswith("_bounded"):
        degree = DEFAULT_DEGREE if degree is None else degree
        if degree < 1:
            raise ValueError("degree bound must be >= 1")
    return name, degree


def is_plain(prop: str) -> bool:
    return parse_property(prop)[0] in PLAIN_PROPERTIES


def find_idempotents(R: FiniteRing) -> list[int]:
    diag = R.mul[np.arange(R.size), np.arange(R.size)]
    return np.flatnonzero(diag == np.arange(R.size)).tolist()


def check(M: FiniteModule, sigma: RingEndo | None, prop: str, *,
          limit: int = DEFAULT_LIMIT, degree: int | None = None) -> PropertyVerdict:
    """Decide ``prop`` for ``M`` with endomorphism ``sigma`` by exhaustive scan."""
    name, bound = parse_property(prop)
    if degree is not None and name.endswith("_bounded"):
        if degree < 1:
            raise ValueError("degree bound must be >= 1")
        bound = degree
    if sigma is None:
        sigma = identity_endo(M.ring)
    check_same_ring(M, sigma)
    if name in PLAIN_PROPERTIES and not sigma.is_identity:
        raise NonIdentityEndoForPlainProperty(f"{name} is defined for sigma = identity")
    act, z, s = M.action, M.zero, sigma.image
    label = sigma.label()

    if name in ("rigid", "sigma_rigid"):
        rows = kernels.rigid_violations(act, s, z, limit)
    elif name in ("semicommutative", "sigma_semicommutative"):
        rows = kernels.semicomm_violations(act, s, z, limit)
    elif name == "reduced_lz":
        rows = kernels.reduced_lz_violations(act, M.ring.mul, z, limit)
    elif name == "sigma_compatible":
        rows = kernels.compat_violations(act, s, z, 3, limit)
    elif name == "cond_C1":
        rows = kernels.compat_violations(act, s, z, 1, limit)
    elif name == "cond_C2":
        rows = kernels.compat_violations(act, s, z, 2, limit)
    elif name == "sigma_reduced":
        rows = [tuple(r) for r in kernels.compat_violations(act, s, z, 3, limit)]
        rows += [tuple(r) for r in kernels.intersection_violations(act, z, limit)]
        rows = sorted(rows)[:limit]
    elif name == "abelian":
        idem = np.array(find_idempotents(M.ring), dtype=np.int64)
        rows = kernels.abelian_violations(act, idem, limit)
    else:
        sigpow = kernels.table(np.stack([sigma.power(i) for i in range(bound + 1)]))
        rows = kernels.armendariz_violations(act, M.add, sigpow, z, bound, limit)
    return verdict_from_rows(name if bound is None else f"{name}({bound})", rows, label,
                             bound)


def is_prime_submodule(M: FiniteModule, N: Submodule) -> PropertyVerdict:
    """``ma in N`` forces ``m in N`` or ``Ma ⊆ N``; witness ``(m, a)``."""
    N = validate_submodule(M, N.elements)
    inside = np.zeros(M.size, dtype=bool)
    inside[list(N.elements)] = True
    column_inside = inside[M.action].all(axis=0)
    mask = inside[M.action] & ~inside[:, None] & ~column_inside[None, :]
    return verdict_from_rows("prime_submodule", np.argwhere(mask)[:DEFAULT_LIMIT])


def regular_elements(R: FiniteRing) -> list[int]:
    """Elements with no nonzero left or right zero-divisor partner."""
    nonzero = np.arange(R.size) != R.zero
    left = ((R.mul == R.zero) & nonzero[None, :]).any(axis=1)
    right = ((R.mul == R.zero) & nonzero[:, None]).any(axis=0)
    return np.flatnonzero(~left & ~right).tolist()


def is_torsion_free(M: FiniteModule) -> PropertyVerdict:
    """Regular elements act injectively on nonzero elements.

    Over a finite ring every regular element is a unit, so this holds for every
    module over a nonzero finite ring; it is kept to state hypotheses faithfully.
    """
    reg = np.array(regular_elements(M.ring), dtype=np.int64)
    if reg.size == 0:
        return verdict_from_rows("torsion_free", [])
    mask = np.zeros(M.action.shape, dtype=bool)
    mask[:, reg] = M.action[:, reg] == M.zero
    mask[M.zero] = False
    return verdict_from_rows("torsion_free", np.argwhere(mask)[:DEFAULT_LIMIT])


def has_zero_divisors(R: FiniteRing, limit: int | None = None) -> PropertyVerdict:
    """Holds when ``R`` has no zero divisors; otherwise witnesses ``(a, b)`` with ``ab = 0``."""
    nonzero = np.arange(R.size) != R.zero
    mask = (R.mul == R.zero) & nonzero[:, None] & nonzero[None, :]
    rows = np.argwhere(mask)
    if limit is not None:
        rows = rows[:limit]
    return verdict_from_rows("no_zero_divisors", rows)


def central_elements(R: FiniteRing) -> list[int]:
    return np.flatnonzero((R.mul == R.mul.T).all(axis=1)).tolist()


@dataclass(frozen=True)
class AnnihilatorSet:
    elements: tuple
    side: str = "right"

    def __contains__(self, a) -> bool:
        return int(a) in self.elements

    def __len__(self) -> int:
        return len(self.elements)


def annihilator(M: FiniteModule, X) -> AnnihilatorSet:
    """``r_R(X) = {a | Xa = 0}``."""
    X = np.array(sorted({int(x) for x in X}), dtype=np.int64)
    if X.size == 0:
        return AnnihilatorSet(tuple(range(M.ring.size)))
    ok = (M.action[X] == M.zero).all(axis=0)
    return AnnihilatorSet(tuple(np.flatnonzero(ok).tolist()))


def left_annihilator(R: FiniteRing, X) -> AnnihilatorSet:
    """``l_R(X) = {a | aX = 0}`` for ``R`` as a module over itself."""
    X = np.array(sorted({int(x) for x in X}), dtype=np.int64)
    if X.size == 0:
        return AnnihilatorSet(tuple(range(R.size)), "left")
    ok = (R.mul[:, X] == R.zero).all(axis=1)
    return AnnihilatorSet(tuple(np.flatnonzero(ok).tolist()), "left")


def check_alpha_annihilation(d: VnDescriptor, limit: int = DEFAULT_LIMIT) -> PropertyVerdict:
    """For ``U A sigma-bar(A) = 0`` in ``V_n``, every ``alpha_i sigma(a_j)`` with ``i+j <= n-1`` vanishes.

    ``alpha_i = m_0 a_i + ... + m_i a_0``. Witness layout is
    ``(m_0..m_{n-1}, a_0..a_{n-1}, i, j)`` with the least failing ``(i, j)``.
    """
    M, sigma = d.module, d.base_endo
    if M.ring.content_hash != sigma.ring.content_hash:
        raise EndoRingMismatch("endomorphism is not over the module's ring")
    if not check(M, sigma, "sigma_reduced", limit=1):
        raise PreconditionNotSigmaReduced("base module is not sigma-reduced")
    rows = kernels.alpha_violations(M.action, M.add, sigma.image, M.zero, d.n, limit)
    return verdict_from_rows(f"alpha_annihilation(n={d.n})", rows, sigma.label())


def _poly_digits(count: int, degree: int) -> list[np.ndarray]:
    idx = np.arange(count ** (degree + 1))
    return [(idx // count ** (degree - i)) % count for i in range(degree + 1)]


def _skew_mul(M: FiniteModule, sigpow, mc, rc):
    out = [None] * (len(mc) + len(rc) - 1)
    for i, m in enumerate(mc):
        for j, a in enumerate(rc):
            t = M.action[m, sigpow[i][a]]
            out[i + j] = t if out[i + j] is None else M.add[out[i + j], t]
    return out


def check_skew_poly_reduced(M: FiniteModule, sigma: RingEndo | None = None,
                            degree: int = 1) -> PropertyVerdict:
    """Reducedness of ``M[x; sigma]`` over ``R[x; sigma]`` for polynomials of degree ``<= degree``.

    Tests ``m f f = 0 => m r f = 0`` with ``m``, ``f`` and ``r`` all of bounded
    degree, so a Holds verdict says nothing about higher degrees. Witness
    layout is ``(m_0..m_d, a_0..a_d, r_0..r_d)``. Cost grows like
    ``|M|^(d+1) |R|^(2d+2)``.
    """
    if degree < 0:
        raise ValueError("degree bound must be >= 0")
    sigma = sigma if sigma is not None else identity_endo(M.ring)
    check_same_ring(M, sigma)
    sigpow = [sigma.power(i) for i in range(2 * degree + 1)]
    mdig = [d[:, None] for d in _poly_digits(M.size, degree)]
    rdig = _poly_digits(M.ring.size, degree)
    fdig = [d[None, :] for d in rdig]
    mf = _skew_mul(M, sigpow, mdig, fdig)
    mff = _skew_mul(M, sigpow, mf, fdig)
    killed = np.logical_and.reduce([c == M.zero for c in mff])
    first_r = np.full(killed.shape, -1, dtype=np.int64)
    for r in range(len(rdig[0])):
        mr = _skew_mul(M, sigpow, mdig, [np.array([[d[r]]]) for d in rdig])
        mrf = _skew_mul(M, sigpow, mr, fdig)
        bad = killed & (first_r < 0) & np.logical_or.reduce([c != M.zero for c in mrf])
        first_r[bad] = r
    hits = np.argwhere(first_r >= 0)
    if not len(hits):
        return PropertyVerdict(f"skew_poly_reduced({degree})", True, [], sigma.label(), degree)
    mi, fi = (int(x) for x in hits[0])
    r = int(first_r[mi, fi])
    wit = tuple(int(d[mi, 0]) for d in mdig) + tuple(int(d[fi]) for d in rdig) \
        + tuple(int(d[r]) for d in rdig)
    return PropertyVerdict(f"skew_poly_reduced({degree})", False, [wit], sigma.label(), degree)
