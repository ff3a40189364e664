"""Validated table representations of finite rings, right modules and endomorphisms.

Elements are opaque indices ``0..size-1``; every structure is defined by its
Cayley tables. Construction always goes through a validator, which either
returns an immutable structure or raises :class:`AxiomViolation` carrying the
lexicographically least offending tuple.
"""
from __future__ import annotations

import hashlib
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import kernels
from .errors import AxiomViolation, CapExceeded, NotASubmodule, RingMismatch, ShapeError


def _frozen(table, shape, bound, what):
    # int32 input is already in kernel layout; anything else goes through int64 so
    # out-of-range values are caught before narrowing
    wide = np.int32 if isinstance(table, np.ndarray) and table.dtype == np.int32 else np.int64
    try:
        arr = np.array(table, dtype=wide)
    except (ValueError, TypeError) as exc:
        raise ShapeError(f"{what}: not a rectangular integer table") from exc
    if arr.shape != shape:
        raise ShapeError(f"{what}: expected shape {shape}, got {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= bound):
        raise ShapeError(f"{what}: entries must lie in 0..{bound - 1}")
    out = kernels.table(arr)
    return out


def _first(rows):
    return tuple(int(x) for x in rows[0]) if len(rows) else None


def _check_group(add, zero, prefix):
    n = add.shape[0]
    bad = np.flatnonzero(add[zero] != np.arange(n))
    if bad.size:
        raise AxiomViolation(f"{prefix}_identity", (int(bad[0]),))
    w = _first(kernels.comm_violations(add, 1))
    if w:
        raise AxiomViolation(f"{prefix}_commutativity", w)
    w = _first(kernels.assoc_violations(add, 1))
    if w:
        raise AxiomViolation(f"{prefix}_associativity", w)
    bad = np.flatnonzero(~(add == zero).any(axis=1))
    if bad.size:
        raise AxiomViolation(f"{prefix}_inverse", (int(bad[0]),))


def _neg_table(add, zero):
    return np.argmax(add == zero, axis=1).astype(np.int32)


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """Associative unital ring on ``{0..size-1}``. Build with :func:`validate_ring`."""

    size: int
    add: np.ndarray
    mul: np.ndarray
    zero: int
    one: int
    name: str = ""

    @cached_property
    def neg(self) -> np.ndarray:
        return _neg_table(self.add, self.zero)

    @cached_property
    def content_hash(self) -> str:
        h = hashlib.sha256()
        h.update(np.array([self.size, self.zero, self.one], dtype=np.int64).tobytes())
        h.update(self.add.tobytes())
        h.update(self.mul.tobytes())
        return h.hexdigest()

    @cached_property
    def is_commutative(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    def sub(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    def to_json(self) -> dict:
        return {"size": self.size, "add": self.add.tolist(), "mul": self.mul.tolist(),
                "zero": self.zero, "one": self.one}


SAMPLE_TRIPLES = 1 << 17


def _sample(n: int, k: int = SAMPLE_TRIPLES):
    """Fixed pseudo-random triples for the cubic axioms of large structures."""
    rng = np.random.default_rng(n)
    return rng.integers(0, n, size=(3, k))


def _sampled_violation(lhs, rhs, triples):
    bad = np.flatnonzero(lhs != rhs)
    return tuple(int(t[bad[0]]) for t in triples) if bad.size else None


def _check_group_sampled(add, zero, prefix):
    n = add.shape[0]
    bad = np.flatnonzero(add[zero] != np.arange(n))
    if bad.size:
        raise AxiomViolation(f"{prefix}_identity", (int(bad[0]),))
    w = _first(kernels.comm_violations(add, 1))
    if w:
        raise AxiomViolation(f"{prefix}_commutativity", w)
    a, b, c = _sample(n)
    w = _sampled_violation(add[add[a, b], c], add[a, add[b, c]], (a, b, c))
    if w:
        raise AxiomViolation(f"{prefix}_associativity", w)
    bad = np.flatnonzero(~(add == zero).any(axis=1))
    if bad.size:
        raise AxiomViolation(f"{prefix}_inverse", (int(bad[0]),))


def validate_ring(size, add, mul, zero, one, name="", exhaustive=True) -> FiniteRing:
    """Check the ring axioms and wrap the tables.

    With ``exhaustive=False`` the quadratic axioms are still checked in full but
    associativity and distributivity are checked on a fixed sample of triples.
    This is meant for large tables produced by a construction known to yield a
    ring.
    """
    if int(size) < 1:
        raise ShapeError("ring size must be positive")
    n = int(size)
    if not (0 <= zero < n and 0 <= one < n):
        raise ShapeError("zero/one out of range")
    add = _frozen(add, (n, n), n, "add")
    mul = _frozen(mul, (n, n), n, "mul")
    if exhaustive:
        _check_group(add, zero, "additive")
        _check_ring_cubic(add, mul)
    else:
        _check_group_sampled(add, zero, "additive")
        a, b, c = _sample(n)
        for axiom, lhs, rhs in (
                ("multiplicative_associativity", mul[mul[a, b], c], mul[a, mul[b, c]]),
                ("left_distributivity", mul[a, add[b, c]], add[mul[a, b], mul[a, c]]),
                ("right_distributivity", mul[add[a, b], c], add[mul[a, c], mul[b, c]])):
            w = _sampled_violation(lhs, rhs, (a, b, c))
            if w:
                raise AxiomViolation(axiom, w)
    idx = np.arange(n)
    bad = np.flatnonzero((mul[one] != idx) | (mul[:, one] != idx))
    if bad.size:
        raise AxiomViolation("unity", (int(bad[0]),))
    return FiniteRing(n, add, mul, int(zero), int(one), name)


def _check_ring_cubic(add, mul):
    w = _first(kernels.assoc_violations(mul, 1))
    if w:
        raise AxiomViolation("multiplicative_associativity", w)
    w = _first(kernels.left_distrib_violations(add, mul, 1))
    if w:
        raise AxiomViolation("left_distributivity", w)
    w = _first(kernels.right_distrib_violations(add, mul, 1))
    if w:
        raise AxiomViolation("right_distributivity", w)


@dataclass(frozen=True, eq=False)
class RingEndo:
    """Unital ring endomorphism given by its image table."""

    ring: FiniteRing
    image: np.ndarray
    name: str = ""

    @cached_property
    def is_identity(self) -> bool:
        return bool((self.image == np.arange(self.ring.size)).all())

    @cached_property
    def is_bijective(self) -> bool:
        return len(set(self.image.tolist())) == self.ring.size

    @cached_property
    def inverse_image(self) -> np.ndarray:
        if not self.is_bijective:
            raise ValueError("endomorphism is not invertible")
        inv = np.empty_like(self.image)
        inv[self.image] = np.arange(self.ring.size, dtype=inv.dtype)
        return inv

    def power(self, k: int) -> np.ndarray:
        img = np.arange(self.ring.size, dtype=np.int32)
        for _ in range(k):
            img = self.image[img]
        return img

    def label(self) -> str:
        if self.is_identity:
            return "identity"
        return self.name or "custom"

    def __call__(self, a: int) -> int:
        return int(self.image[a])


def validate_endo(ring: FiniteRing, image, name="") -> RingEndo:
    n = ring.size
    img = _frozen(image, (n,), n, "endomorphism")
    if img[ring.one] != ring.one:
        raise AxiomViolation("unity", (ring.one,))
    w = _first(kernels.hom_violations(ring.add, img, 1))
    if w:
        raise AxiomViolation("additivity", w)
    w = _first(kernels.hom_violations(ring.mul, img, 1))
    if w:
        raise AxiomViolation("multiplicativity", w)
    return RingEndo(ring, img, name)


def identity_endo(ring: FiniteRing) -> RingEndo:
    return RingEndo(ring, kernels.table(np.arange(ring.size)), "identity")


@dataclass(frozen=True, eq=False)
class FiniteModule:
    """Right module over ``ring``; ``action[m, a]`` is the index of ``m·a``."""

    ring: FiniteRing
    size: int
    add: np.ndarray
    zero: int
    action: np.ndarray
    name: str = ""

    @cached_property
    def neg(self) -> np.ndarray:
        return _neg_table(self.add, self.zero)

    @cached_property
    def content_hash(self) -> str:
        h = hashlib.sha256(self.ring.content_hash.encode())
        h.update(np.array([self.size, self.zero], dtype=np.int64).tobytes())
        h.update(self.add.tobytes())
        h.update(self.action.tobytes())
        return h.hexdigest()

    def act(self, m: int, a: int) -> int:
        return int(self.action[m, a])

    def to_json(self) -> dict:
        return {"size": self.size, "add": self.add.tolist(), "zero": self.zero,
                "action": self.action.tolist()}


def validate_module(ring: FiniteRing, size, add, zero, action, name="",
                    exhaustive=True) -> FiniteModule:
    if int(size) < 1:
        raise ShapeError("module size must be positive")
    n = int(size)
    if not 0 <= zero < n:
        raise ShapeError("zero out of range")
    add = _frozen(add, (n, n), n, "module add")
    action = _frozen(action, (n, ring.size), n, "action")
    if exhaustive:
        _check_module_cubic(ring, add, zero, action)
    else:
        _check_group_sampled(add, zero, "module_additive")
        m, x, _ = _sample(n)
        a, b, _ = _sample(ring.size)
        for axiom, lhs, rhs, wit in (
                ("module_right_distributivity", action[add[m, x], a],
                 add[action[m, a], action[x, a]], (m, x, a)),
                ("module_left_distributivity", action[m, ring.add[a, b]],
                 add[action[m, a], action[m, b]], (m, a, b)),
                ("module_associativity", action[action[m, a], b],
                 action[m, ring.mul[a, b]], (m, a, b))):
            w = _sampled_violation(lhs, rhs, wit)
            if w:
                raise AxiomViolation(axiom, w)
    bad = np.flatnonzero(action[:, ring.one] != np.arange(n))
    if bad.size:
        raise AxiomViolation("module_unity", (int(bad[0]),))
    return FiniteModule(ring, n, add, int(zero), action, name)


def _check_module_cubic(ring, add, zero, action):
    _check_group(add, zero, "module_additive")
    w = _first(kernels.action_rdistrib_violations(action, add, 1))
    if w:
        raise AxiomViolation("module_right_distributivity", w)
    w = _first(kernels.action_ldistrib_violations(action, ring.add, add, 1))
    if w:
        raise AxiomViolation("module_left_distributivity", w)
    w = _first(kernels.action_assoc_violations(action, ring.mul, 1))
    if w:
        raise AxiomViolation("module_associativity", w)


def regular_module(ring: FiniteRing) -> FiniteModule:
    """The ring as a right module over itself."""
    return FiniteModule(ring, ring.size, ring.add, ring.zero, ring.mul, ring.name)


def check_same_ring(module: FiniteModule, endo: RingEndo) -> None:
    from .errors import EndoRingMismatch

    if module.ring is not endo.ring and module.ring.content_hash != endo.ring.content_hash:
        raise EndoRingMismatch("endomorphism is not over the module's ring")


@dataclass(frozen=True, eq=False)
class Submodule:
    parent: FiniteModule
    elements: tuple

    def __contains__(self, m) -> bool:
        return int(m) in self._members

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.elements)

    def as_module(self) -> FiniteModule:
        """Restriction to the submodule, relabelled by rank in ``elements``."""
        P = self.parent
        els = np.array(self.elements, dtype=np.int64)
        rank = np.full(P.size, -1, dtype=np.int64)
        rank[els] = np.arange(els.size)
        add = rank[P.add[np.ix_(els, els)]]
        action = rank[P.action[els]]
        return validate_module(P.ring, els.size, add, int(rank[P.zero]), action)


def validate_submodule(M: FiniteModule, elements: Iterable[int]) -> Submodule:
    els = sorted({int(x) for x in elements})
    if any(x < 0 or x >= M.size for x in els):
        raise NotASubmodule("element index out of range")
    members = set(els)
    if M.zero not in members:
        raise NotASubmodule("missing zero")
    arr = np.array(els)
    if not set(M.add[np.ix_(arr, arr)].ravel().tolist()) <= members:
        raise NotASubmodule("not closed under addition")
    if not set(M.action[arr].ravel().tolist()) <= members:
        raise NotASubmodule("not closed under the ring action")
    return Submodule(M, tuple(els))


def submodule_closure(M: FiniteModule, generators: Iterable[int]) -> Submodule:
    """Least submodule containing ``generators`` (worklist saturation)."""
    members = {M.zero}
    work = [M.zero]
    for g in generators:
        g = int(g)
        if g not in members:
            members.add(g)
            work.append(g)
    while work:
        x = work.pop()
        new = set(M.action[x].tolist())
        new.update(int(M.add[x, y]) for y in members)
        for y in new - members:
            members.add(y)
            work.append(y)
    return Submodule(M, tuple(sorted(members)))


def enumerate_submodules(M: FiniteModule, limit: int | None = None) -> list[Submodule]:
    """All submodules, ordered by (size, elements)."""
    seen = {}
    start = submodule_closure(M, [])
    queue = [start]
    seen[start.elements] = start
    while queue:
        S = queue.pop()
        for m in range(M.size):
            if m in S:
                continue
            T = submodule_closure(M, S.elements + (m,))
            if T.elements not in seen:
                seen[T.elements] = T
                queue.append(T)
                if limit is not None and len(seen) > limit:
                    raise CapExceeded(f"more than {limit} submodules")
    return sorted(seen.values(), key=lambda s: (len(s.elements), s.elements))


def quotient_module(M: FiniteModule, N: Submodule) -> tuple[FiniteModule, np.ndarray]:
    """``M/N`` with cosets labelled by their least element, plus the projection."""
    if N.parent is not M:
        N = validate_submodule(M, N.elements)
    else:
        validate_submodule(M, N.elements)
    els = np.array(N.elements)
    rep = M.add[:, els].min(axis=1)
    reps = np.unique(rep)
    label = np.full(M.size, -1, dtype=np.int64)
    label[reps] = np.arange(reps.size)
    proj = label[rep]
    add = proj[M.add[np.ix_(reps, reps)]]
    action = proj[M.action[reps]]
    Q = validate_module(M.ring, reps.size, add, int(proj[M.zero]), action,
                        name=f"{M.name}/N" if M.name else "")
    proj = kernels.table(proj)
    return Q, proj


def check_ring_match(A, B) -> None:
    if A.content_hash != B.content_hash:
        raise RingMismatch("structures are over different rings")


@dataclass
class PropertyVerdict:
    """Holds, or Fails with witnesses sorted lexicographically (least first)."""

    property: str
    holds: bool
    witnesses: list = field(default_factory=list)
    sigma: str = "identity"
    bound: int | None = None

    def __post_init__(self):
        self.witnesses = sorted(tuple(int(x) for x in w) for w in self.witnesses)
        if self.holds and self.witnesses:
            raise ValueError("a holding verdict carries no witnesses")
        if not self.holds and not self.witnesses:
            raise ValueError("a failing verdict needs a witness")

    @property
    def verdict(self) -> str:
        return "holds" if self.holds else "fails"

    @property
    def least(self):
        return self.witnesses[0] if self.witnesses else None

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {"property": self.property, "sigma": self.sigma, "verdict": self.verdict,
                "witnesses": [list(w) for w in self.witnesses], "bound": self.bound}


def verdict_from_rows(prop: str, rows: Sequence, sigma: str = "identity",
                      bound: int | None = None) -> PropertyVerdict:
    rows = [tuple(int(x) for x in r) for r in rows]
    return PropertyVerdict(prop, not rows, rows, sigma, bound)
