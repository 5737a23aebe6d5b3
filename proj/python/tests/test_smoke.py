import itertools

import pytest

import expander_ec as ee


def brute_list(code, received):
    """Completions of the erased positions that are codewords."""
    holes = [i for i, ch in enumerate(received) if ch == "?"]
    out = []
    for bits in itertools.product("01", repeat=len(holes)):
        w = list(received)
        for i, b in zip(holes, bits):
            w[i] = b
        w = "".join(w)
        if code.is_codeword(w):
            out.append(w)
    return sorted(out)


def test_square_in_k33():
    code = ee.Code("complete_bipartite:3", "parity:3")
    z = code.erase_explicit("0" * 9, [0, 1, 3, 4])
    assert z == "??0??0000"
    fast = code.list_decode_fast(z, r=1)
    assert fast["status"] == "ok"
    assert len(fast["basis"]) == 1
    assert ee.enumerate_affine(fast["offset"], fast["basis"]) == ["000000000", "110110000"]
    slow = code.list_decode_slow(z, r=1)
    assert slow["words"] == ["000000000", "110110000"]
    assert code.unique_decode(z)["status"] == "stuck"


def test_fast_matches_oracle_and_brute_force():
    code = ee.Code("random_regular:8:3", "parity:3", seed=5)
    code.estimate_lambda()
    for seed in range(20):
        c = code.sample_codeword(seed)
        z = code.erase_count(c, 5 + seed % 6, seed)
        fast = code.list_decode_fast(z, r=2)
        if fast["status"] != "ok":
            continue
        offset, basis = code.oracle_list_decode(z)
        assert ee.affine_equal(fast["offset"], fast["basis"], offset, basis)
        assert ee.enumerate_affine(fast["offset"], fast["basis"]) == brute_list(code, z)


def test_inner_code_distances():
    h = ee.InnerCode.from_spec("hamming74")
    assert [h.generalized_distance(r) for r in range(1, 5)] == ["3/7", "5/7", "6/7", "1"]
    assert ee.Code("complete_bipartite:3", "parity:3").second_generalized_distance() == "2/3"


def test_unique_decode_recovers_codeword():
    code = ee.Code("complete:8", "hamming74")
    assert code.max_guaranteed_erasures("1", "1/10") == (6, True)
    c = code.sample_codeword(7)
    res = code.unique_decode(code.erase_count(c, 6, 3))
    assert res["status"] == "complete"
    assert res["codeword"] == c


def test_advice_cap_raises():
    code = ee.Code("random_regular:32:3", "parity:3", seed=4)
    z = code.erase_count("0" * code.block_length, 40, 1)
    assert code.list_decode_fast(z, r=1)["report"]["s_actual"] > 0
    with pytest.raises(ee.AdviceTooLarge):
        code.list_decode_slow(z, r=1, s_cap=0)
