"""Localization of finite modules at central regular multiplicative sets."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import (
    FiniteModule,
    FiniteRing,
    RingEndo,
    identity_endo,
    validate_endo,
    validate_module,
    validate_ring,
)
from ..errors import NotCentral, NotMultiplicativelyClosed, NotRegular, SigmaMovesS
from ..properties import central_elements, regular_elements


@dataclass(frozen=True)
class Localization:
    ring: FiniteRing          # S^-1 R
    module: FiniteModule      # S^-1 M over S^-1 R
    endo: RingEndo            # a/s -> sigma(a)/s
    ring_map: np.ndarray      # a -> a/1
    module_map: np.ndarray    # m -> m/1
    fractions: tuple          # representative (numerator, denominator) per module class

    def canonical_map_is_isomorphism(self, M: FiniteModule) -> bool:
        """``m -> m/1`` is a bijective module map along ``a -> a/1``."""
        f, g = self.module_map, self.ring_map
        if len(set(f.tolist())) != self.module.size or len(set(g.tolist())) != self.ring.size:
            return False
        L = self.module
        ok_add = (f[M.add] == L.add[f[:, None], f[None, :]]).all()
        ok_act = (f[M.action] == L.action[f[:, None], g[None, :]]).all()
        R = M.ring
        ok_ring = (g[R.mul] == self.ring.mul[g[:, None], g[None, :]]).all() and \
            (g[R.add] == self.ring.add[g[:, None], g[None, :]]).all()
        return bool(ok_add and ok_act and ok_ring)


def _classes(pairs, same):
    """Partition ``pairs`` (lexicographically ordered) into classes labelled by first member."""
    label = {}
    reps = []
    for p in pairs:
        for idx, r in enumerate(reps):
            if same(p, r):
                label[p] = idx
                break
        else:
            label[p] = len(reps)
            reps.append(p)
    return label, reps


def localize_finite(M: FiniteModule, S, sigma: RingEndo | None = None) -> Localization:
    """``S^-1 M`` over ``S^-1 R`` for central regular multiplicatively closed ``S``.

    Fractions ``m/s`` and ``m'/s'`` are equal iff ``m s' = m' s``.
    """
    R = M.ring
    sigma = sigma if sigma is not None else identity_endo(R)
    S = sorted({int(s) for s in S})
    regular, central = set(regular_elements(R)), set(central_elements(R))
    for s in S:
        if s not in regular:
            raise NotRegular(f"{s} is a zero divisor")
        if s not in central:
            raise NotCentral(f"{s} is not central")
        if int(sigma.image[s]) != s:
            raise SigmaMovesS(f"sigma moves {s}")
    if R.one not in S:
        raise NotMultiplicativelyClosed("S must contain 1")
    Sset = set(S)
    if any(int(R.mul[s, t]) not in Sset for s in S for t in S):
        raise NotMultiplicativelyClosed("S is not closed under products")

    rpairs = [(a, s) for a in range(R.size) for s in S]
    rlabel, rreps = _classes(
        rpairs, lambda p, q: R.mul[p[0], q[1]] == R.mul[q[0], p[1]])
    mpairs = [(m, s) for m in range(M.size) for s in S]
    mlabel, mreps = _classes(
        mpairs, lambda p, q: M.action[p[0], q[1]] == M.action[q[0], p[1]])

    nr, nm = len(rreps), len(mreps)
    radd = np.empty((nr, nr), dtype=np.int64)
    rmul = np.empty((nr, nr), dtype=np.int64)
    for i, (a, s) in enumerate(rreps):
        for j, (b, t) in enumerate(rreps):
            st = int(R.mul[s, t])
            num = int(R.add[R.mul[a, t], R.mul[b, s]])
            radd[i, j] = rlabel[(num, st)]
            rmul[i, j] = rlabel[(int(R.mul[a, b]), st)]
    ring = validate_ring(nr, radd, rmul, rlabel[(R.zero, R.one)], rlabel[(R.one, R.one)],
                         name=f"S^-1 {R.name}")

    madd = np.empty((nm, nm), dtype=np.int64)
    act = np.empty((nm, nr), dtype=np.int64)
    for i, (m, s) in enumerate(mreps):
        for j, (n, t) in enumerate(mreps):
            madd[i, j] = mlabel[(int(M.add[M.action[m, t], M.action[n, s]]), int(R.mul[s, t]))]
        for j, (a, t) in enumerate(rreps):
            act[i, j] = mlabel[(int(M.action[m, a]), int(R.mul[s, t]))]
    module = validate_module(ring, nm, madd, mlabel[(M.zero, R.one)], act,
                             name=f"S^-1 {M.name or R.name}")
    endo_img = [rlabel[(int(sigma.image[a]), s)] for a, s in rreps]
    endo = validate_endo(ring, endo_img, name=sigma.label())
    ring_map = np.array([rlabel[(a, R.one)] for a in range(R.size)])
    module_map = np.array([mlabel[(m, R.one)] for m in range(M.size)])
    return Localization(ring, module, endo, ring_map, module_map, tuple(mreps))


def default_multiplicative_set(R: FiniteRing, sigma: RingEndo) -> list[int]:
    """All central regular elements fixed by ``sigma``."""
    reg = set(regular_elements(R))
    return [s for s in central_elements(R) if s in reg and int(sigma.image[s]) == s]
