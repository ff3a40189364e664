import itertools

import numpy as np
import pytest
from oracles import crt_map, poly_mod_xn_tables

from rigidlab.constructions import (
    VnDescriptor,
    clear_caches,
    decode,
    direct_product,
    encode,
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
from rigidlab.core import regular_module, validate_endo
from rigidlab.errors import NotPrime, RingMismatch


def test_prime_field_rejects_composites():
    assert make_prime_field(7).size == 7
    with pytest.raises(NotPrime):
        make_prime_field(6)


def test_encode_decode_roundtrip():
    for idx in range(27):
        assert encode(decode(idx, 3, 3), 3) == idx
    assert decode(5, 2, 3) == (1, 0, 1)


def test_triangular_zero_divisors_over_f3():
    T = make_upper_triangular(make_prime_field(3))
    assert T.size == 27
    a, b = encode((0, 1, 2), 3), encode((1, 1, 0), 3)
    assert T.mul[a, b] == T.zero and T.mul[b, a] == T.zero
    assert T.one == encode((1, 0, 1), 3)


def test_jordan_ring():
    J = make_jordan_ring(make_prime_field(2))
    nil = encode((0, 1), 2)
    assert J.size == 4 and J.mul[nil, nil] == J.zero
    assert make_jordan_ring(make_zmod(4)).size == 16
    assert make_negating_endo(J).is_identity


def test_negating_endo_images():
    T = make_upper_triangular(make_prime_field(3))
    s = make_negating_endo(T)
    assert s(encode((0, 1, 2), 3)) == encode((0, 2, 2), 3)
    J4 = make_jordan_ring(make_zmod(4))
    assert make_negating_endo(J4)(encode((1, 1), 4)) == encode((1, 3), 4)
    with pytest.raises(ValueError):
        make_negating_endo(make_zmod(4))


def test_example16_action_formula():
    F3 = make_prime_field(3)
    M, K = make_example16_module(F3)
    assert (M.size, len(K)) == (27, 9)
    for m, a in itertools.product(range(27), repeat=2):
        beta, alpha, gamma = decode(m, 3, 3)
        x, y, z = decode(a, 3, 3)
        expect = ((beta * z) % 3, (alpha * x) % 3, (alpha * y + gamma * z) % 3)
        assert decode(int(M.action[m, a]), 3, 3) == expect
    M2, K2 = make_example16_module(make_prime_field(2))
    assert (M2.size, len(K2)) == (8, 4)


def test_vn_ring_matches_polynomial_cosets():
    for p, n in [(2, 2), (3, 2), (2, 3)]:
        V, embed = make_vn_ring(VnDescriptor(n, make_prime_field(p)))
        elems, add, mul = poly_mod_xn_tables(p, n)
        index = {e: encode(e, p) for e in elems}
        for u in elems:
            for v in elems:
                assert V.add[index[u], index[v]] == index[add[u, v]]
                assert V.mul[index[u], index[v]] == index[mul[u, v]]
        assert embed.tolist() == [index[(a,) + (0,) * (n - 1)] for a in range(p)]


def test_vn_ring_over_z12_formula():
    V, _ = make_vn_ring(VnDescriptor(2, make_zmod(12)))
    rng = np.random.default_rng(0)
    for _ in range(200):
        a, b, c, d = (int(x) for x in rng.integers(0, 12, 4))
        got = decode(int(V.mul[encode((a, b), 12), encode((c, d), 12)]), 12, 2)
        assert got == ((a * c) % 12, (a * d + b * c) % 12)


def test_vn_module_embedding_respects_action():
    M, _ = make_example16_module(make_prime_field(2))
    d = VnDescriptor(2, M.ring, base_module=M)
    V, em = make_vn_module(d)
    _, er = make_vn_ring(d)
    for m in range(M.size):
        for a in range(M.ring.size):
            assert V.action[em[m], er[a]] == em[M.action[m, a]]
    F2 = make_prime_field(2)
    V2, _ = make_vn_module(VnDescriptor(2, F2, base_module=regular_module(F2)))
    assert V2.action[encode((1, 0), 2), encode((0, 1), 2)] == encode((0, 1), 2)


def test_extension_commutes_with_embedding():
    J = make_jordan_ring(make_zmod(4))
    s = make_negating_endo(J)
    d = VnDescriptor(2, J, s)
    sbar = extend_endo_vn(d)
    _, er = make_vn_ring(d)
    for a in range(J.size):
        assert sbar(int(er[a])) == er[s(a)]
    R, _ = make_vn_ring(d)
    assert sbar(R.one) == R.one
    assert extend_endo_vn(VnDescriptor(3, make_prime_field(2))).is_identity


def test_vn_descriptor_checks():
    with pytest.raises(ValueError):
        VnDescriptor(1, make_zmod(2))
    with pytest.raises(RingMismatch):
        VnDescriptor(2, make_zmod(2), base_endo=validate_endo(make_zmod(3), [0, 1, 2]))


def test_crt_product():
    P = direct_product(make_zmod(2), make_zmod(3))
    relabel = [f[0] * 3 + f[1] for f in crt_map(6, (2, 3))]
    for a in range(6):
        for b in range(6):
            assert P.add[relabel[a], relabel[b]] == relabel[(a + b) % 6]
            assert P.mul[relabel[a], relabel[b]] == relabel[(a * b) % 6]
    assert P.one == relabel[1]


def test_module_product_with_zero_module():
    R = make_zmod(4)
    M = regular_module(R)
    Z = regular_module(make_zmod(1))
    with pytest.raises(RingMismatch):
        direct_product(M, Z)
    from rigidlab.core import quotient_module, validate_submodule
    zero, _ = quotient_module(M, validate_submodule(M, range(4)))
    P = direct_product(M, zero)
    assert P.size == 4 and np.array_equal(P.action, M.action)


def test_large_vn_ring_matches_convolution():
    # 512 elements, past the exhaustive-validation threshold
    Z8 = make_zmod(8)
    R, _ = make_vn_ring(VnDescriptor(3, Z8))
    rng = np.random.default_rng(4)
    for u, v in rng.integers(0, R.size, size=(300, 2)):
        a, b = decode(int(u), 8, 3), decode(int(v), 8, 3)
        want = tuple(sum(a[i] * b[k - i] for i in range(k + 1)) % 8 for k in range(3))
        assert decode(int(R.mul[u, v]), 8, 3) == want
        assert decode(int(R.add[u, v]), 8, 3) == tuple((x + y) % 8 for x, y in zip(a, b))


def test_vn_tables_are_memoized_and_clearable():
    d = VnDescriptor(2, make_jordan_ring(make_prime_field(3)),
                     make_negating_endo(make_jordan_ring(make_prime_field(3))))
    R1, _ = make_vn_ring(d)
    s1 = extend_endo_vn(d)
    assert make_vn_ring(d)[0] is R1 and extend_endo_vn(d) is s1
    clear_caches()
    R2, _ = make_vn_ring(d)
    assert R2 is not R1 and R2.content_hash == R1.content_hash
    assert extend_endo_vn(d).image.tolist() == s1.image.tolist()
