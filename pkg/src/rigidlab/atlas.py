"""Corpus generation, property vectors, implication checking and searches."""
from __future__ import annotations

import contextlib
import json
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import formula as fm
from .constructions import (
    VnDescriptor,
    direct_product,
    extend_endo_vn,
    make_example16_module,
    make_jordan_ring,
    make_negating_endo,
    make_prime_field,
    make_upper_triangular,
    make_vn_module,
    make_vn_ring,
    make_zmod,
)
from .core import (
    FiniteModule,
    FiniteRing,
    RingEndo,
    Submodule,
    enumerate_submodules,
    identity_endo,
    quotient_module,
    regular_module,
    validate_endo,
)
from .errors import (
    AssertionFailure,
    AxiomViolation,
    BudgetExceeded,
    CapExceeded,
    PreconditionNotSigmaReduced,
)
from .properties import (
    check,
    check_alpha_annihilation,
    check_skew_poly_reduced,
    has_zero_divisors,
    is_prime_submodule,
    is_torsion_free,
)
from .symbolic import (
    RING,
    FiniteElem,
    SkewPoly,
    default_multiplicative_set,
    localize_finite,
    skew_product,
)

DEFAULT_CAP = 16
VN_MAX_SIZE = 4096
ALPHA_BUDGET = 1 << 24
ARMENDARIZ_BUDGET = 1 << 24
SUBMODULE_CAP = 64

# ---------------------------------------------------------------- endomorphisms


def _additive_generators(R: FiniteRing) -> list[int]:
    gens, span = [], {R.zero}
    for x in [R.one] + list(range(R.size)):
        if x in span:
            continue
        gens.append(x)
        frontier = list(span)
        span = set(frontier)
        for s in frontier:
            t = int(R.add[s, x])
            while t not in span:
                span.add(t)
                t = int(R.add[t, x])
        # close under sums of new elements
        changed = True
        while changed:
            changed = False
            for a in list(span):
                for b in list(span):
                    c = int(R.add[a, b])
                    if c not in span:
                        span.add(c)
                        changed = True
    return gens


def enumerate_endomorphisms(R: FiniteRing, cap: int = DEFAULT_CAP) -> list[RingEndo]:
    """All unital ring endomorphisms of ``R``; the identity comes first, the rest by image.

    Depth-first over an additive generating set: fixing images of the
    generators fixes the map by additivity, and every partial map is pruned
    on additive conflicts and on multiplicativity within its domain.
    """
    if R.size > cap:
        raise CapExceeded(f"|R| = {R.size} exceeds endomorphism cap {cap}")
    gens = _additive_generators(R)
    add, mul = R.add, R.mul
    found = []

    def extend(phi: dict, g: int, h: int):
        phi = dict(phi)
        frontier = list(phi.items())
        while frontier:
            nxt = []
            for s, fs in frontier:
                for base, fb in ((g, h),):
                    t, ft = int(add[s, base]), int(add[fs, fb])
                    if t in phi:
                        if phi[t] != ft:
                            return None
                    else:
                        phi[t] = ft
                        nxt.append((t, ft))
            frontier = nxt
        # additive closure of the domain
        changed = True
        while changed:
            changed = False
            items = list(phi.items())
            for a, fa in items:
                for b, fb in items:
                    c, fc = int(add[a, b]), int(add[fa, fb])
                    if c in phi:
                        if phi[c] != fc:
                            return None
                    else:
                        phi[c] = fc
                        changed = True
        for a, fa in phi.items():
            for b, fb in phi.items():
                c = int(mul[a, b])
                if c in phi and phi[c] != int(mul[fa, fb]):
                    return None
        return phi

    def dfs(phi, k):
        if k == len(gens):
            if len(phi) == R.size:
                img = [phi[a] for a in range(R.size)]
                # a partial check can miss products outside the domain
                with contextlib.suppress(AxiomViolation):
                    found.append(validate_endo(R, img))
            return
        g = gens[k]
        candidates = [R.one] if g == R.one else range(R.size)
        for h in candidates:
            ext = extend(phi, g, h)
            if ext is not None:
                dfs(ext, k + 1)

    dfs({R.zero: R.zero}, 0)
    ident = [e for e in found if e.is_identity]
    rest = sorted((e for e in found if not e.is_identity), key=lambda e: e.image.tolist())
    out = []
    for i, e in enumerate(ident + rest):
        name = "identity" if e.is_identity else f"endo{i}"
        out.append(RingEndo(R, e.image, name))
    return out


# ---------------------------------------------------------------- corpus


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    module: FiniteModule
    endo: RingEndo
    provenance: str
    regular: bool = False

    @property
    def ring(self) -> FiniteRing:
        return self.module.ring

    @property
    def key(self) -> tuple:
        return (self.module.content_hash, self.endo.image.tobytes())


@dataclass
class Corpus:
    entries: list = field(default_factory=list)

    def __post_init__(self):
        names = [e.name for e in self.entries]
        if len(set(names)) != len(names):
            raise ValueError("corpus names must be unique")

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def find(self, name: str) -> CorpusEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)


@dataclass(frozen=True)
class CorpusSpec:
    """Construction grammar switches and caps.

    ``max_size`` bounds ``|M|`` and ``|R|`` of generated entries. The pinned
    worked-example instances bypass it unless ``pinned_max_size`` is given.
    """

    max_size: int = DEFAULT_CAP
    pinned: bool = True
    pinned_max_size: int | None = None
    zmod_max: int = 16
    prime_max: int = 7
    matrix_rings: bool = True
    vn_rings: bool = True
    products: bool = True
    quotients: bool = True
    free_modules: bool = True
    endo_cap: int = DEFAULT_CAP

    @classmethod
    def empty(cls) -> CorpusSpec:
        return cls(pinned=False, zmod_max=0, prime_max=0, matrix_rings=False,
                   vn_rings=False, products=False, quotients=False, free_modules=False)

    @classmethod
    def capped(cls, n: int) -> CorpusSpec:
        return cls(max_size=n, pinned_max_size=n)


BUDGET_MAX_SIZE = 64


def _pinned_entries():
    F2, F3 = make_prime_field(2), make_prime_field(3)
    z12 = make_zmod(12)
    M, K = make_example16_module(F3)
    neg = make_negating_endo(M.ring)
    KM = K.as_module()
    Q, _ = quotient_module(M, K)
    v2, _ = make_vn_ring(VnDescriptor(2, F2))
    return [
        ("F2", regular_module(F2), identity_endo(F2), "prime field F2 over itself", True),
        ("Z/12", regular_module(z12), identity_endo(z12), "Z/12 over itself", True),
        ("Ex16(F3)", M, neg, "triangular module over T(F3) with negating endomorphism", False),
        ("Ex16(F3)/K", Q, neg, "quotient of Ex16(F3) by K = {alpha = 0}", False),
        ("Ex16(F3).K", KM, neg, "submodule K = {alpha = 0} of Ex16(F3)", False),
        ("V2(F2)", regular_module(v2), identity_endo(v2), "V_2 of F2 over itself", True),
    ]


def _grammar_rings(spec: CorpusSpec):
    """``(ring, provenance)`` pairs in a fixed order."""
    out = []
    fields = {p: make_prime_field(p) for p in (2, 3, 5, 7) if p <= spec.prime_max}
    for p, F in fields.items():
        out.append((F, f"prime field F{p}"))
    for n in range(1, spec.zmod_max + 1):
        out.append((make_zmod(n), f"integers mod {n}"))
    small = [F for p, F in fields.items() if p <= 3]
    if spec.matrix_rings:
        for F in small:
            out.append((make_jordan_ring(F), f"jordan ring over {F.name}"))
            out.append((make_upper_triangular(F), f"upper triangular 2x2 over {F.name}"))
    base_for_vn = [(R, prov) for R, prov in list(out) if R.size <= 4 and R.size > 1]
    if spec.vn_rings:
        for n in (2, 3):
            for R, _ in base_for_vn:
                if R.size ** n <= spec.max_size:
                    v, _ = make_vn_ring(VnDescriptor(n, R))
                    out.append((v, f"V_{n} of {R.name}"))
    if spec.products:
        factors = [(R, p) for R, p in out if 1 < R.size <= spec.max_size // 2]
        seen = set()
        for i, (A, _) in enumerate(factors):
            for B, _ in factors[i:]:
                if A.size * B.size > spec.max_size:
                    continue
                key = (A.content_hash, B.content_hash)
                if key in seen:
                    continue
                seen.add(key)
                out.append((direct_product(A, B), f"direct product {A.name} x {B.name}"))
    return [(R, p) for R, p in out if R.size <= spec.max_size]


def _modules_for(R: FiniteRing, prov: str, spec: CorpusSpec):
    """Modules built over ``R``: regular, free of rank 2, and proper quotients."""
    RR = regular_module(R)
    mods = [(RR, f"{prov}, regular module", True)]
    if spec.free_modules and R.size ** 2 <= spec.max_size:
        mods.append((direct_product(RR, RR), f"{prov}, free module of rank 2", False))
    if spec.quotients:
        for M, mprov, _ in list(mods):
            try:
                subs = enumerate_submodules(M, limit=SUBMODULE_CAP)
            except CapExceeded:
                continue
            for N in subs:
                if len(N) in (1, M.size):
                    continue
                Q, _ = quotient_module(M, N)
                mods.append((Q, f"{mprov} modulo submodule {list(N.elements)}", False))
    return mods


def generate_corpus(spec: CorpusSpec | None = None) -> Corpus:
    """Deterministic corpus: pinned instances, then the grammar, each module with every endomorphism."""
    spec = spec or CorpusSpec()
    if spec.max_size > BUDGET_MAX_SIZE or spec.endo_cap > BUDGET_MAX_SIZE:
        raise BudgetExceeded(f"size caps above {BUDGET_MAX_SIZE} are out of budget")
    entries, seen, names = [], set(), set()

    def add(name, module, endo, prov, regular):
        key = (module.content_hash, endo.image.tobytes())
        if key in seen:
            return
        seen.add(key)
        base, k = name, 2
        while name in names:
            name, k = f"{base}#{k}", k + 1
        names.add(name)
        entries.append(CorpusEntry(name, module, endo, prov, regular))

    if spec.pinned:
        cap = spec.pinned_max_size
        for name, M, e, prov, reg in _pinned_entries():
            if cap is None or max(M.size, M.ring.size) <= cap:
                add(name, M, e, prov, reg)

    ring_seen = set()
    for R, prov in _grammar_rings(spec):
        if R.content_hash in ring_seen:
            continue
        ring_seen.add(R.content_hash)
        endos = enumerate_endomorphisms(R, cap=spec.endo_cap)
        for M, mprov, regular in _modules_for(R, prov, spec):
            if M.size > spec.max_size:
                continue
            label = R.name if regular else (M.name or R.name)
            for e in endos:
                suffix = "" if e.is_identity else f"|{e.name}"
                add(f"{label}{suffix}", M, e,
                    f"{mprov}; endomorphism {e.label()} {e.image.tolist()}", regular)
    return Corpus(entries)


def corpus_from_structures(structures) -> Corpus:
    """Corpus from loaded :class:`~rigidlab.structfile.Structure` objects, in order."""
    entries = []
    for i, s in enumerate(structures):
        name = s.name or f"structure{i}"
        entries.append(CorpusEntry(name, s.module, s.endo, f"file entry {i}", s.module_is_regular))
    return Corpus(entries)


# ---------------------------------------------------------------- property vectors

BASE_KEYS = ("rigid", "sigma_rigid", "reduced_lz", "sigma_reduced", "semicommutative",
             "sigma_semicommutative", "sigma_compatible", "cond_C1", "cond_C2", "abelian")
FACT_KEYS = ("torsion_free", "ring_domain", "ring_commutative", "sigma_is_identity")
VN_BASE = ("sigma_rigid", "sigma_semicommutative", "sigma_reduced", "rigid",
           "semicommutative", "reduced")
DERIVED = ("sigma_skew_armendariz_d2", "localization_agrees", "rigid_skew_transfer",
           "prime_decomposition")


def vector_keys(vn=(2, 3)) -> list[str]:
    keys = list(BASE_KEYS) + list(FACT_KEYS)
    for n in vn:
        keys += [f"vn{n}_{p}" for p in VN_BASE]
        keys += [f"vn{n}_alpha_annihilation", f"vn{n}_armendariz_d2"]
    return keys + list(DERIVED)


@dataclass
class Settings:
    vn_max_size: int = VN_MAX_SIZE
    alpha_budget: int = ALPHA_BUDGET
    armendariz_budget: int = ARMENDARIZ_BUDGET
    armendariz_degree: int = 2
    submodule_cap: int = SUBMODULE_CAP


class PropertyCache:
    """Memo of ``(value, least witness)`` keyed by structure content hash and property key."""

    def __init__(self):
        self._data: dict = {}
        self._lock = threading.Lock()

    def get(self, key):
        with self._lock:
            return self._data.get(key)

    def put(self, key, value):
        with self._lock:
            self._data.setdefault(key, value)
            return self._data[key]

    def __len__(self):
        return len(self._data)


class PropertyVector:
    """Lazy property lookups for one corpus entry."""

    def __init__(self, entry: CorpusEntry, cache: PropertyCache | None = None,
                 settings: Settings | None = None):
        self.entry = entry
        self.cache = cache if cache is not None else PropertyCache()
        self.settings = settings or Settings()
        self.witness: dict = {}
        self.values: dict = {}
        self._built: dict = {}

    # public -------------------------------------------------------------
    def __call__(self, key: str):
        return self.get(key)

    def get(self, key: str):
        if key in self.values:
            return self.values[key]
        ck = (self.entry.key, key, self.settings.armendariz_degree)
        hit = self.cache.get(ck)
        if hit is None:
            hit = self.cache.put(ck, self._compute(key))
        value, wit = hit
        self.values[key] = value
        if wit is not None:
            self.witness[key] = wit
        return value

    def compute_fresh(self, key: str):
        return self._compute(key)[0]

    # internals ----------------------------------------------------------
    @property
    def _identity(self):
        return identity_endo(self.entry.ring)

    def _verdict(self, M, sigma, prop, **kw):
        v = check(M, sigma, prop, limit=1, **kw)
        return bool(v.holds), (list(v.least) if v.least is not None else None)

    def _vn(self, n: int):
        if n not in self._built:
            self._built[n] = self._build_vn(n)
        return self._built[n]

    def _build_vn(self, n: int):
        e = self.entry
        M, R = e.module, e.ring
        if max(M.size, R.size) ** n > self.settings.vn_max_size:
            return None
        d = VnDescriptor(n, R, e.endo, None if e.regular else M)
        V, _ = make_vn_module(d)
        return d, V, extend_endo_vn(d)

    def _compute(self, key: str):
        e = self.entry
        M, sigma = e.module, e.endo
        if key in BASE_KEYS:
            plain = key in ("rigid", "reduced_lz", "semicommutative", "abelian")
            return self._verdict(M, self._identity if plain else sigma, key)
        if key == "torsion_free":
            return self._verdict_obj(is_torsion_free(M))
        if key == "ring_domain":
            return self._verdict_obj(has_zero_divisors(e.ring, limit=1))
        if key == "ring_commutative":
            return bool(e.ring.is_commutative), None
        if key == "sigma_is_identity":
            return bool(sigma.is_identity), None
        if key.startswith("vn"):
            n_text, _, prop = key[2:].partition("_")
            return self._compute_vn(int(n_text), prop)
        if key == "sigma_skew_armendariz_d2":
            if not self._armendariz_affordable(M):
                return None, None
            return self._verdict(M, sigma, "sigma_skew_armendariz_bounded",
                                 degree=self.settings.armendariz_degree)
        if key == "skew_reduced_d1":
            # on demand only (search targets); not part of the atlas vector
            if M.size ** 2 * e.ring.size ** 4 > self.settings.armendariz_budget:
                return None, None
            return self._verdict_obj(check_skew_poly_reduced(M, sigma, degree=1))
        if key == "localization_agrees":
            return self._localization()
        if key == "rigid_skew_transfer":
            return self._skew_transfer()
        if key == "prime_decomposition":
            return self._prime_decomposition()
        raise KeyError(f"unknown property key {key!r}")

    def _armendariz_affordable(self, M) -> bool:
        return (M.size * M.ring.size) ** (self.settings.armendariz_degree + 1) \
            <= self.settings.armendariz_budget

    @staticmethod
    def _verdict_obj(v):
        return bool(v.holds), (list(v.least) if v.least is not None else None)

    def _compute_vn(self, n: int, prop: str):
        e = self.entry
        M, R = e.module, e.ring
        if prop == "alpha_annihilation":
            # works on base tables, so the V_n size cap does not apply
            if (M.size * R.size) ** n > self.settings.alpha_budget:
                return None, None
            d = VnDescriptor(n, R, e.endo, None if e.regular else M)
            try:
                return self._verdict_obj(check_alpha_annihilation(d, limit=1))
            except PreconditionNotSigmaReduced:
                return None, None
        if prop == "armendariz_d2" and (M.size * R.size) ** (
                n * (self.settings.armendariz_degree + 1)) > self.settings.armendariz_budget:
            return None, None
        built = self._vn(n)
        if built is None:
            return None, None
        d, V, sbar = built
        if prop in ("sigma_rigid", "sigma_semicommutative", "sigma_reduced"):
            return self._verdict(V, sbar, prop)
        if prop in ("rigid", "semicommutative"):
            return self._verdict(V, identity_endo(V.ring), prop)
        if prop == "reduced":
            return self._verdict(V, identity_endo(V.ring), "sigma_reduced")
        if prop == "armendariz_d2":
            if not self._armendariz_affordable(V):
                return None, None
            return self._verdict(V, identity_endo(V.ring), "armendariz_bounded",
                                 degree=self.settings.armendariz_degree)
        raise KeyError(f"unknown V_n property {prop!r}")

    def _localization(self):
        e = self.entry
        S = default_multiplicative_set(e.ring, e.endo)
        L = localize_finite(e.module, S, e.endo)
        if not L.canonical_map_is_isomorphism(e.module):
            return False, ["canonical map"]
        a = check(e.module, e.endo, "sigma_rigid", limit=1).holds
        b = check(L.module, L.endo, "sigma_rigid", limit=1).holds
        return a == b, (None if a == b else [int(a), int(b)])

    def _skew_transfer(self):
        """Every rigidity failure ``(m, a)`` gives ``m (ax)^2 = 0 != m (ax)`` in ``M[x; sigma]``."""
        e = self.entry
        v = check(e.module, e.endo, "sigma_rigid", limit=1 << 20)
        if v.holds:
            return True, None
        k = FiniteElem(e.module, e.endo)
        for m, a in v.witnesses:
            mx = SkewPoly(k, (m,))
            fx = SkewPoly(k, (k.zero(RING), a), side=RING)
            once = skew_product(mx, fx)
            twice = skew_product(once, fx)
            if once.is_zero() or not twice.is_zero():
                return False, [int(m), int(a)]
        return True, None

    def _prime_decomposition(self):
        """Decomposition over prime submodules with torsion-free quotient and a domain base.

        ``None`` when no submodule satisfies the hypotheses.
        """
        e = self.entry
        tested = False
        try:
            subs = enumerate_submodules(e.module, limit=self.settings.submodule_cap)
        except CapExceeded:
            return None, None
        for N in subs:
            rep = check_prop15_decomposition(e.module, N, e.endo)
            if rep.mode != "assert":
                continue
            tested = True
            if not rep.biconditional:
                return False, list(N.elements)
        return (True if tested else None), None


# ---------------------------------------------------------------- decomposition report


@dataclass
class DecompositionReport:
    domain: bool
    prime: bool
    torsion_free_quotient: bool
    module_rigid: bool
    submodule_rigid: bool
    quotient_rigid: bool

    @property
    def hypotheses_met(self) -> bool:
        return self.domain and self.prime and self.torsion_free_quotient

    @property
    def mode(self) -> str:
        return "assert" if self.hypotheses_met else "log"

    @property
    def biconditional(self) -> bool:
        return self.module_rigid == (self.submodule_rigid and self.quotient_rigid)

    def to_json(self) -> dict:
        return {"mode": self.mode, "domain": self.domain, "prime": self.prime,
                "torsion_free_quotient": self.torsion_free_quotient,
                "module_rigid": self.module_rigid, "submodule_rigid": self.submodule_rigid,
                "quotient_rigid": self.quotient_rigid, "biconditional": self.biconditional}


def check_prop15_decomposition(M: FiniteModule, N: Submodule,
                               sigma: RingEndo | None = None) -> DecompositionReport:
    """Compare sigma-rigidity of ``M`` with that of ``N`` and ``M/N``.

    The biconditional is only claimed over a ring without zero divisors, for a
    prime ``N`` with torsion-free quotient; otherwise the report is in log mode.
    """
    sigma = sigma or identity_endo(M.ring)
    Q, _ = quotient_module(M, N)
    return DecompositionReport(
        domain=bool(has_zero_divisors(M.ring, limit=1).holds),
        prime=bool(is_prime_submodule(M, N).holds),
        torsion_free_quotient=bool(is_torsion_free(Q).holds),
        module_rigid=bool(check(M, sigma, "sigma_rigid", limit=1).holds),
        submodule_rigid=bool(check(N.as_module(), sigma, "sigma_rigid", limit=1).holds),
        quotient_rigid=bool(check(Q, sigma, "sigma_rigid", limit=1).holds),
    )


# ---------------------------------------------------------------- implications


@dataclass(frozen=True)
class Implication:
    id: str
    formula: str
    mode: str = "assert"
    claim: str = ""

    def __post_init__(self):
        if self.mode not in ("assert", "report"):
            raise ValueError("mode must be assert or report")
        fm.parse(self.formula)

    @property
    def ast(self):
        return fm.parse(self.formula)


def default_implications(vn=(2, 3)) -> list[Implication]:
    I = Implication
    out = [
        I("reduced_implies_rigid", "sigma_reduced -> sigma_rigid"),
        I("reduced_iff_semicomm_and_rigid",
          "sigma_reduced <-> (sigma_semicommutative & sigma_rigid)"),
        I("reduced_lz_iff_reduced_at_identity",
          "sigma_is_identity -> (reduced_lz <-> sigma_reduced)"),
        I("c2_rigid_gives_sigma_rigid", "cond_C2 & rigid -> sigma_rigid"),
        I("c2_sigma_semicomm_gives_semicomm", "cond_C2 & sigma_semicommutative -> semicommutative"),
        I("c1_sigma_rigid_gives_rigid", "cond_C1 & sigma_rigid -> rigid"),
        I("c1_semicomm_gives_sigma_semicomm", "cond_C1 & semicommutative -> sigma_semicommutative"),
        I("compatible_rigid_iff", "sigma_compatible -> (rigid <-> sigma_rigid)"),
        I("compatible_semicomm_iff",
          "sigma_compatible -> (semicommutative <-> sigma_semicommutative)"),
        I("rigid_implies_abelian", "rigid -> abelian"),
        I("sigma_semicomm_implies_abelian", "sigma_semicommutative -> abelian"),
        I("sigma_rigid_c1_implies_abelian", "sigma_rigid & cond_C1 -> abelian"),
        I("sigma_semicomm_gives_c1", "sigma_semicommutative -> cond_C1"),
        I("prime_decomposition", "prime_decomposition"),
        I("localization_agrees", "localization_agrees"),
        I("rigid_skew_transfer", "rigid_skew_transfer"),
    ]
    for n in vn:
        p = f"vn{n}_"
        out += [
            I(f"vn{n}_rigid_descends", f"{p}sigma_rigid -> sigma_rigid"),
            I(f"vn{n}_semicomm_descends", f"{p}sigma_semicommutative -> sigma_semicommutative"),
            I(f"vn{n}_reduced_descends", f"{p}sigma_reduced -> sigma_reduced"),
            I(f"vn{n}_rigid_semicomm_lifts",
              f"sigma_rigid & sigma_semicommutative -> {p}sigma_semicommutative"),
            I(f"vn{n}_semicomm_iff_on_rigid",
              f"sigma_rigid -> (sigma_semicommutative <-> {p}sigma_semicommutative)"),
            I(f"vn{n}_reduced_gives_armendariz", f"{p}sigma_reduced -> sigma_skew_armendariz_d2"),
            I(f"vn{n}_alpha_annihilation", f"sigma_reduced -> {p}alpha_annihilation"),
            I(f"vn{n}_reduced_transfer",
              f"sigma_reduced & torsion_free & ring_domain & ring_commutative -> "
              f"{p}sigma_reduced", "report",
              "sigma-reduced torsion-free module over a commutative domain has sigma-reduced V_n"),
            I(f"vn{n}_plain_reduced_transfer",
              f"sigma_is_identity & reduced_lz & torsion_free & ring_domain & ring_commutative"
              f" -> {p}reduced", "report",
              "reduced torsion-free module over a commutative domain has reduced V_n"),
            I(f"vn{n}_armendariz_semicomm",
              f"{p}armendariz_d2 -> {p}semicommutative", "report",
              "bounded Armendariz V_n is semicommutative"),
        ]
    return out


def _vn_arg(keys):
    return tuple(sorted({int(k[2]) for k in keys if k.startswith("vn")}))


@dataclass
class AtlasReport:
    entries: list
    implications: list
    discrepancies: list
    header: dict = field(default_factory=dict)

    @property
    def assert_violations(self) -> int:
        return sum(len(i["violations"]) for i in self.implications if i["mode"] == "assert")

    def to_json(self) -> dict:
        return {"header": self.header, "entries": self.entries,
                "implications": self.implications, "discrepancies": self.discrepancies}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=False) + "\n"


def thread_count() -> int:
    raw = os.environ.get("RIGIDLAB_THREADS", "0").strip() or "0"
    n = int(raw)
    return n if n > 0 else (os.cpu_count() or 1)


def run_atlas(corpus: Corpus, implications: list[Implication] | None = None, *,
              vn=(2, 3), strict: bool = False, settings: Settings | None = None,
              cache: PropertyCache | None = None) -> AtlasReport:
    """Evaluate every implication on every entry.

    ``strict`` raises :class:`AssertionFailure` at the first assert-mode violation.
    """
    implications = implications if implications is not None else default_implications(vn)
    settings = settings or Settings()
    cache = cache if cache is not None else PropertyCache()
    keys = vector_keys(vn)
    parsed = [(imp, imp.ast, fm.literals(imp.ast)) for imp in implications]

    def evaluate(entry):
        vec = PropertyVector(entry, cache, settings)
        outcomes = []
        for imp, ast, lits in parsed:
            value = fm.evaluate(ast, vec)
            if value is False and imp.mode == "assert" and strict:
                wit = {k: vec.witness.get(k) for k in lits if k in vec.values}
                raise AssertionFailure(imp.id, entry.name, wit)
            outcomes.append(value)
        for k in keys:
            vec.get(k)
        return vec, outcomes

    workers = thread_count()
    if workers > 1 and len(corpus) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(evaluate, corpus.entries))
    else:
        results = [evaluate(e) for e in corpus.entries]

    entries_json = []
    for entry, (vec, _) in zip(corpus.entries, results):
        entries_json.append({
            "name": entry.name,
            "provenance": entry.provenance,
            "sigma": entry.endo.image.tolist(),
            "sizes": [entry.module.size, entry.ring.size],
            "properties": {k: vec.values.get(k) for k in keys},
            "witnesses": {k: vec.witness[k] for k in keys if k in vec.witness},
        })

    imps_json, discrepancies = [], []
    for idx, (imp, ast, lits) in enumerate(parsed):
        counts = {"holds": 0, "violated": 0, "skipped": 0}
        violations = []
        for entry, (vec, outcomes) in zip(corpus.entries, results):
            value = outcomes[idx]
            status = "skipped" if value is None else "holds" if value else "violated"
            counts[status] += 1
            if value is False:
                item = {"entry": entry.name,
                        "literals": {k: vec.values.get(k) for k in lits},
                        "witnesses": {k: vec.witness[k] for k in lits if k in vec.witness}}
                violations.append(item)
                if imp.mode == "report":
                    discrepancies.append({"implication": imp.id, "claim": imp.claim, **item})
        status = "violated" if violations else "holds" if counts["holds"] else "skipped"
        imps_json.append({"id": imp.id, "mode": imp.mode, "formula": imp.formula,
                          "status": status, "counts": counts, "violations": violations})

    header = {
        "entries": len(corpus),
        "vn": list(vn),
        "armendariz_degree": settings.armendariz_degree,
        "note": ("hypotheses requiring a commutative domain are read over finite rings, "
                 "where they select finite fields; null property values were not "
                 "computed because the structure exceeded a size budget or the "
                 "property's precondition failed"),
    }
    return AtlasReport(entries_json, imps_json, discrepancies, header)


# ---------------------------------------------------------------- search


@dataclass
class SearchResult:
    found: bool
    entry: CorpusEntry | None = None
    literals: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    scanned: int = 0

    def to_json(self) -> dict:
        if not self.found:
            return {"result": "not_found", "scanned": self.scanned}
        return {"result": "found", "name": self.entry.name,
                "provenance": self.entry.provenance,
                "sigma": self.entry.endo.image.tolist(),
                "literals": self.literals, "witnesses": self.witnesses,
                "scanned": self.scanned}


NOT_FOUND = SearchResult(False)


def search_counterexample(target: str, corpus: Corpus | None = None, budget: int | None = None,
                          settings: Settings | None = None,
                          cache: PropertyCache | None = None) -> SearchResult:
    """First entry (corpus order) on which ``target`` evaluates to true."""
    if budget is not None and budget <= 0:
        raise ValueError("budget must be positive")
    ast = fm.parse(target)
    lits = fm.literals(ast)
    corpus = corpus if corpus is not None else generate_corpus()
    cache = cache if cache is not None else PropertyCache()
    scanned = 0
    for entry in corpus:
        if budget is not None and scanned >= budget:
            break
        scanned += 1
        vec = PropertyVector(entry, cache, settings)
        if fm.evaluate(ast, vec) is True:
            values = {k: vec.get(k) for k in lits}
            return SearchResult(True, entry, values,
                                {k: vec.witness[k] for k in lits if k in vec.witness}, scanned)
    return SearchResult(False, scanned=scanned)
