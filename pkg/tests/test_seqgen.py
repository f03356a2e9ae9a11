from itertools import combinations

import numpy as np
import pytest

from iptm import fps, seqgen as S


def test_thue_morse_values():
    assert [S.thue_morse(n) for n in (0, 3, 7)] == [0, 0, 1]
    t = S.thue_morse_batch(1 << 12)
    assert all(t[n] == S.thue_morse_rec(n) == bin(n).count("1") % 2 for n in range(1 << 12))


def test_odious_evil_values():
    assert [S.odious(n) for n in (1, 2, 3, 4, 8)] == [1, 2, 4, 7, 14]
    assert [S.evil(n) for n in (1, 2, 3, 4)] == [0, 3, 5, 6]
    with pytest.raises(IndexError):
        S.odious(0)
    with pytest.raises(IndexError):
        S.evil(0)


def test_odious_evil_partition():
    count = 5000
    o, e = S.odious_batch(count), S.evil_batch(count)
    assert all(bin(int(x)).count("1") % 2 == 1 for x in o)
    assert all(bin(int(x)).count("1") % 2 == 0 for x in e)
    assert sorted(set(o[:count // 2]) | set(e[:count // 2])) == list(range(count))
    assert [S.odious(n) for n in range(1, 200)] == list(o[:199])
    assert [S.evil(n) for n in range(1, 200)] == list(e[:199])


def test_iptm_prefix():
    assert list(S.iptm_batch(11)) == [0, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1]
    assert S.iptm(3) == 0
    assert S.iptm(31) == 1


@pytest.mark.parametrize("method", S.IPTM_METHODS)
def test_iptm_methods_agree(method):
    limit = 1 << 16
    ref = S.iptm_batch(limit, "digits4")
    assert np.array_equal(S.iptm_batch(limit, method), ref)


def test_iptm_single_terms_agree():
    ref = S.iptm_batch(4096)
    for method in ("recurrence4", "recurrence8", "digits4"):
        assert [S.iptm(n, method) for n in range(0, 4096, 7)] == list(ref[::7])


def test_iptm_reversion_method_matches_series():
    g = fps.series_reverse(fps.ptm_series(999))
    assert list(S.iptm_batch(1000)) == list(g.coeffs)


def test_iptm_unknown_method():
    with pytest.raises(ValueError):
        S.iptm(5, "guess")


def test_b_values():
    assert [S.b_seq(n) for n in (0, 1, 5)] == [0, 2, 34]
    assert all(S.b_seq(2 ** k) == 2 * 4 ** k for k in range(21))
    b = S.b_batch(3000)
    assert all(b[n] == S.b_seq(n) == S.b_seq_rec(n) for n in range(3000))


def test_b_rank():
    b = [S.b_seq(n) for n in range(600)]
    for x in range(0, b[-1], 13):
        assert S.b_rank(x) == sum(1 for v in b if v <= x)


def test_a_values():
    assert [S.a_seq(n) for n in range(4)] == [0, 1, 2, 7]
    assert S.a_seq(7) == 31
    assert S.a_seq(11) == 39


def test_a_batch_matches_enumeration():
    assert np.array_equal(S.a_batch(5000), S.a_enum(5000))


def test_d_u_values():
    assert [S.d_seq(n) for n in range(5)] == [3, 4, 5, 6, 11]
    assert S.d_seq(8) == 15
    assert [S.u_seq(n) for n in (0, 1, 2, 6)] == [1, 3, 4, 9]
    for m in range(1, 11):
        assert S.u_seq(4 ** m - 2 ** m) == 4 ** m


def test_u_paths_agree():
    ub = S.u_batch(20000)
    assert all(ub[n] == S.u_seq(n) for n in range(0, 20000, 3))
    assert all(ub[n] == S.u_seq_rec(n) for n in range(0, 20000, 5))


def test_d_fast_path_against_scan():
    scan = S.d_scan(4 * 10000)
    assert all(S.d_seq(n) == scan[n] for n in range(0, 4 * 10000, 3))


def test_a_d_partition_of_c():
    count = 100000
    a = S.a_batch(count)
    assert all(S.iptm(int(x)) == 1 for x in a[1::97])
    d = [S.d_seq(n) for n in range(count)]
    assert not any(S.iptm(x) for x in d[::89])
    # on a window, ones of c are exactly a and zeros after c_0 are exactly d
    c = S.iptm_batch(1 << 20)
    ones = np.flatnonzero(c)
    assert np.array_equal(ones, a[1:len(ones) + 1])
    zeros = np.flatnonzero(c == 0)[1:count + 1]
    assert np.array_equal(zeros, np.array(d))


def test_z_values():
    assert S.z_seq(0) == 1
    assert S.z_seq(6) == 1
    assert [S.z_seq(n) for n in range(1, 6)] == [0] * 5


def test_z_characterisation():
    z = S.z_batch(10000)
    assert all(z[n] == S.z_char_pred(n) for n in range(10000))


def test_z_char_against_subset_sums():
    gens = [S.generator(m) for m in range(2, 10)]
    sums = {sum(c) for r in range(len(gens) + 1) for c in combinations(gens, r)}
    assert all(S.z_char_pred(n) == (n in sums) for n in range(1 << 14))


def test_generators_and_predicates():
    assert [S.generator(m) for m in range(2, 8)] == [6, 28, 120, 496, 2016, 8128]
    assert S.mdb_pred(0) and S.mdb_pred(5) and not S.mdb_pred(2)
    assert S.z_char_pred(0) and S.z_char_pred(34) and not S.z_char_pred(7)
    assert S.z_char_decompose(34) == [2, 3]


def test_z_char_large_input():
    n = sum(S.generator(m) for m in (3, 100, 5000))
    assert S.z_char_decompose(n) == [3, 100, 5000]
    assert not S.z_char_pred(n + 1)


@pytest.mark.parametrize("name", ["o", "e", "a", "b", "d", "u"])
def test_strictly_increasing(name):
    vals = S.sequence(name).batch(3000)
    assert all(x < y for x, y in zip(vals, vals[1:]))


def test_sequence_handles():
    assert S.sequence("o").first == 1
    assert list(S.sequence("o").indices(3)) == [1, 2, 3]
    assert S.sequence("c").batch(4) == [0, 1, 1, 0]
    for name, h in S.SEQUENCES.items():
        vals = h.batch(40)
        assert vals == [h.term(n) for n in h.indices(40)], name
    with pytest.raises(KeyError):
        S.sequence("nope")
