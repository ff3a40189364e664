import json

import numpy as np
import pytest
from oracles import brute_endomorphisms

from rigidlab.atlas import (
    NOT_FOUND,
    Corpus,
    CorpusEntry,
    CorpusSpec,
    Implication,
    PropertyCache,
    PropertyVector,
    Settings,
    check_prop15_decomposition,
    corpus_from_structures,
    default_implications,
    enumerate_endomorphisms,
    generate_corpus,
    run_atlas,
    search_counterexample,
    vector_keys,
)
from rigidlab.constructions import (
    direct_product,
    encode,
    make_example16_module,
    make_jordan_ring,
    make_negating_endo,
    make_prime_field,
    make_upper_triangular,
    make_zmod,
)
from rigidlab.core import identity_endo, regular_module, validate_submodule
from rigidlab.errors import AssertionFailure, BudgetExceeded, CapExceeded


@pytest.fixture(scope="module")
def small_corpus():
    return generate_corpus(CorpusSpec.capped(4))


@pytest.mark.parametrize("R", [
    make_zmod(6), make_zmod(8), make_prime_field(5),
    make_jordan_ring(make_prime_field(2)), make_jordan_ring(make_prime_field(3)),
    direct_product(make_prime_field(2), make_prime_field(2)),
    direct_product(make_prime_field(2), make_prime_field(3)),
], ids=lambda R: R.name)
def test_endomorphisms_match_brute_force(R):
    got = sorted(e.image.tolist() for e in enumerate_endomorphisms(R))
    assert got == brute_endomorphisms(R)


def test_endomorphism_examples():
    for n in (2, 7, 12, 16):
        endos = enumerate_endomorphisms(make_zmod(n))
        assert len(endos) == 1 and endos[0].is_identity
    J = make_jordan_ring(make_prime_field(3))
    images = [e.image.tolist() for e in enumerate_endomorphisms(J)]
    assert images[0] == list(range(9))
    assert make_negating_endo(J).image.tolist() in images
    F = make_prime_field(2)
    P = direct_product(F, F)
    swap = [encode(tuple(reversed(divmod(i, 2))), 2) for i in range(4)]
    assert swap in [e.image.tolist() for e in enumerate_endomorphisms(P)]
    with pytest.raises(CapExceeded):
        enumerate_endomorphisms(make_upper_triangular(make_prime_field(3)))


def test_empty_and_capped_corpora(small_corpus):
    assert len(generate_corpus(CorpusSpec.empty())) == 0
    assert all(max(e.module.size, e.ring.size) <= 4 for e in small_corpus)
    names = [e.name for e in small_corpus]
    assert "F2" in names and "V2(F2)" in names
    assert len({e.key for e in small_corpus}) == len(small_corpus)
    with pytest.raises(BudgetExceeded):
        generate_corpus(CorpusSpec(max_size=128))


def test_corpus_is_deterministic():
    a = [(e.name, e.key) for e in generate_corpus(CorpusSpec.capped(6))]
    b = [(e.name, e.key) for e in generate_corpus(CorpusSpec.capped(6))]
    assert a == b


def test_corpus_rejects_duplicate_names():
    F2 = make_prime_field(2)
    e = CorpusEntry("x", regular_module(F2), identity_endo(F2), "", True)
    with pytest.raises(ValueError):
        Corpus([e, e])


def test_default_corpus_has_pinned_entries():
    c = generate_corpus(CorpusSpec(max_size=2))
    names = [e.name for e in c]
    assert names[:6] == ["F2", "Z/12", "Ex16(F3)", "Ex16(F3)/K", "Ex16(F3).K", "V2(F2)"]
    assert not c.find("Ex16(F3)").endo.is_identity


def test_memoized_vector_matches_fresh(small_corpus):
    cache = PropertyCache()
    settings = Settings()
    run_atlas(small_corpus, vn=(2,), settings=settings, cache=cache)
    rng = np.random.default_rng(5)
    keys = vector_keys((2,))
    for i in rng.choice(len(small_corpus), size=6, replace=False):
        vec = PropertyVector(small_corpus[int(i)], cache, settings)
        for k in keys:
            assert vec.get(k) == vec.compute_fresh(k)


def test_memo_is_keyed_by_content():
    F2 = make_prime_field(2)
    a = CorpusEntry("a", regular_module(F2), identity_endo(F2), "", True)
    b = CorpusEntry("b", regular_module(F2), identity_endo(F2), "", True)
    cache = PropertyCache()
    PropertyVector(a, cache).get("rigid")
    size = len(cache)
    PropertyVector(b, cache).get("rigid")
    assert len(cache) == size


def test_f2_alone_holds_everything():
    c = generate_corpus(CorpusSpec(max_size=2, pinned_max_size=2, zmod_max=0))
    f2 = Corpus([c.find("F2")])
    report = run_atlas(f2, vn=(2,), strict=True)
    assert report.assert_violations == 0
    props = report.entries[0]["properties"]
    for k in ("rigid", "reduced_lz", "semicommutative", "abelian"):
        assert props[k] is True
    assert props["vn2_rigid"] is False
    found = {d["implication"] for d in report.discrepancies}
    assert "vn2_plain_reduced_transfer" in found


def test_strict_mode_raises_with_witness():
    Z12 = make_zmod(12)
    entry = CorpusEntry("Z/12", regular_module(Z12), identity_endo(Z12), "", True)
    bogus = [Implication("everything_rigid", "rigid")]
    with pytest.raises(AssertionFailure) as err:
        run_atlas(Corpus([entry]), bogus, vn=(), strict=True)
    assert err.value.args and "everything_rigid" in str(err.value)
    report = run_atlas(Corpus([entry]), bogus, vn=())
    assert report.implications[0]["status"] == "violated"
    assert report.implications[0]["violations"][0]["witnesses"]["rigid"] == [1, 6]


def test_report_json_shape(small_corpus):
    report = run_atlas(small_corpus, vn=(2,))
    doc = json.loads(report.dumps())
    assert list(doc) == ["header", "entries", "implications", "discrepancies"]
    assert {"name", "provenance", "properties"} <= set(doc["entries"][0])
    assert {"id", "mode", "status", "violations"} <= set(doc["implications"][0])
    assert report.dumps() == run_atlas(small_corpus, vn=(2,)).dumps()


def test_implication_modes():
    ids = {i.id: i.mode for i in default_implications((2, 3))}
    assert ids["vn2_reduced_transfer"] == "report"
    assert ids["vn3_plain_reduced_transfer"] == "report"
    assert ids["vn2_armendariz_semicomm"] == "report"
    assert ids["rigid_implies_abelian"] == "assert"
    with pytest.raises(ValueError):
        Implication("x", "rigid", mode="maybe")


def test_search_presets(small_corpus):
    hit = search_counterexample("q2.9", small_corpus)
    assert hit.found and hit.entry.name == "F2"
    assert hit.literals == {"sigma_rigid": True, "vn2_sigma_rigid": False}
    assert hit.witnesses["vn2_sigma_rigid"] == [2, 1]
    miss = search_counterexample("false", small_corpus)
    assert not miss.found and miss.to_json()["result"] == "not_found"
    assert NOT_FOUND.to_json()["result"] == "not_found"
    assert not search_counterexample("q2.9", small_corpus[1:], budget=1).found
    with pytest.raises(ValueError):
        search_counterexample("rigid", small_corpus, budget=0)


def test_search_abelian_not_rigid_finds_z12():
    c = generate_corpus(CorpusSpec(max_size=2))
    hit = search_counterexample("abelian & !rigid", c)
    assert hit.entry.name == "Z/12"
    # the search reports the least witness; (3, 2) is one of the later ones
    assert hit.witnesses["rigid"] == [1, 6]


def test_decomposition_example16_logs():
    M, K = make_example16_module(make_prime_field(3))
    r = check_prop15_decomposition(M, K, make_negating_endo(M.ring))
    assert r.mode == "log" and not r.domain and r.prime
    assert (r.module_rigid, r.submodule_rigid, r.quotient_rigid) == (False, True, True)
    assert not r.biconditional


def test_decomposition_coordinate_line():
    F3 = make_prime_field(3)
    RR = regular_module(F3)
    M = direct_product(RR, RR)
    line = validate_submodule(M, [encode((a, 0), 3) for a in range(3)])
    r = check_prop15_decomposition(M, line)
    assert r.hypotheses_met and r.mode == "assert"
    assert r.module_rigid and r.submodule_rigid and r.quotient_rigid and r.biconditional


def test_decomposition_full_submodule():
    M = regular_module(make_zmod(12))
    r = check_prop15_decomposition(M, validate_submodule(M, range(12)))
    assert r.submodule_rigid == r.module_rigid
    assert r.quotient_rigid


def test_corpus_from_structures():
    from rigidlab import structfile
    F2 = make_prime_field(2)
    doc = structfile.to_dict("f2", regular_module(F2), regular=True)
    c = corpus_from_structures([structfile.from_dict(doc)])
    assert [e.name for e in c] == ["f2"] and c[0].regular


def test_drop_semicomm_preset(small_corpus):
    hit = search_counterexample("drop_semicomm", small_corpus)
    assert not hit.found and hit.scanned == len(small_corpus)
    Z4 = make_zmod(4)
    vec = PropertyVector(CorpusEntry("Z/4", regular_module(Z4), identity_endo(Z4), "", True))
    assert vec.get("skew_reduced_d1") is False
    assert vec.witness["skew_reduced_d1"] == [0, 1, 0, 2, 0, 1]
    assert "skew_reduced_d1" not in vector_keys()
