import random

import pytest

from depthlab.cli import example_registry
from depthlab.invariants import (EXACT_PD, FAILS, HOLDS, INCONCLUSIVE, KINDS, WINDOW, CrosscheckFailure,
                                 b_window, check_depth_formula, check_derived_formula, check_uac_bound,
                                 check_ubc, ext_module, lemma_crosscheck, pd_detect, q_window,
                                 qr_formula_at_m, tor_module, totally_reflexive)
from depthlab.invariants.crosscheck import FAIL, PASS
from depthlab.rings import syzygy
from conftest import cyclic, free, form, random_free_complex, random_module, ring


def hf(M, top=6):
    return M.hilbert_function(range(-2, top))


def same_invariants(A, B):
    return hf(A) == hf(B) and A.dim == B.dim


# --- Tor and Ext

def test_tor_zero_is_tensor():
    R = ring("xy")
    M, N = cyclic(R, "x"), cyclic(R, "y^2")
    assert hf(tor_module(M, N, 0)) == hf(M.tensor(N))


def test_tor_one_of_regular_sequence():
    R = ring("xy")
    assert tor_module(cyclic(R, "x"), cyclic(R, "y"), 1).is_zero()


def test_tor_and_ext_of_k_over_dual_numbers():
    R = ring("x", ["x^2"])
    k = cyclic(R, "x")
    assert tor_module(k, k, 1).length() == 1
    assert ext_module(k, k, 1).length() == 1


def test_ext_of_free_modules():
    R = ring("xy", ["x*y"])
    N = cyclic(R, "x")
    assert hf(ext_module(free(R), N, 0)) == hf(N)
    F = free(R, (0, 1))
    assert all(ext_module(F, N, i).is_zero() for i in (1, 2, 3))


@pytest.mark.parametrize("seed", range(4))
def test_tor_symmetry(seed):
    rng = random.Random(seed)
    R = ring("xy", ["x*y"])
    M, N = random_module(R, rng), random_module(R, rng)
    for i in range(3):
        assert same_invariants(tor_module(M, N, i), tor_module(N, M, i))


@pytest.mark.parametrize("seed", range(3))
def test_dimension_shifting(seed):
    rng = random.Random(seed + 40)
    R = ring("xy", ["x^2"])
    M, N = random_module(R, rng), random_module(R, rng)
    Om = syzygy(M, 1)
    for i in (1, 2):
        assert same_invariants(tor_module(Om, N, i), tor_module(M, N, i + 1))


# --- q and b windows

def test_q_window_regular_ring():
    R = ring("xy")
    k = cyclic(R, "x", "y")
    q = q_window(k, k, 5)
    assert q.max_nonzero == 2 and q.certification == EXACT_PD and q.tail_vanishes


def test_q_window_flat_argument():
    R = ring("xy", ["x*y"])
    q = q_window(cyclic(R, "x"), free(R), 4)
    assert q.max_nonzero == 0 and q.certified


def test_q_window_hypersurface_periodicity():
    R = ring("xy", ["x*y"])
    q = q_window(cyclic(R, "x"), cyclic(R, "y"), 8)
    assert q.nonzero == [2, 4, 6, 8]
    assert not q.tail_vanishes and q.certification == WINDOW


def test_q_window_sides_agree():
    R = ring("xy", ["x^2"])
    M, N = cyclic(R, "x"), cyclic(R, "x", "y")
    a = q_window(M, N, 4, resolve="left")
    b = q_window(M, N, 4, resolve="right")
    assert a.nonzero == b.nonzero


def test_q_window_is_monotone():
    rng = random.Random(5)
    R = ring("xy", ["x*y"])
    for _ in range(3):
        M, N = random_module(R, rng), random_module(R, rng)
        small, big = q_window(M, N, 3), q_window(M, N, 5)
        assert [i for i in big.nonzero if i <= 3] == small.nonzero


def test_b_window_examples():
    R = ring("xy")
    k = cyclic(R, "x", "y")
    b = b_window(k, k, 4)
    assert b.max_nonzero == 2 and b.certified
    D = ring("x", ["x^2"])
    kd = cyclic(D, "x")
    b = b_window(kd, kd, 6)
    assert b.nonzero == [1, 2, 3, 4, 5, 6] and not b.tail_vanishes


def test_b_reaches_pd():
    R = ring("xyz", ["x*y"])
    M = cyclic(R, "z")
    N = cyclic(R, "x")
    b = b_window(M, N, 4)
    assert b.max_nonzero == pd_detect(M, 4) == 1


def test_pd_detect():
    R = ring("xy")
    assert pd_detect(cyclic(R, "x", "y"), 4) == 2
    assert pd_detect(free(R, (0, 0, 1)), 3) == 0
    D = ring("x", ["x^2"])
    assert pd_detect(cyclic(D, "x"), 10) is None


def test_window_must_be_positive():
    R = ring("x")
    with pytest.raises(ValueError):
        q_window(free(R), free(R), 0)
    with pytest.raises(ValueError):
        b_window(free(R), free(R), 0)


def test_vanishing_report_json():
    R = ring("xy", ["x*y"])
    d = q_window(cyclic(R, "x"), cyclic(R, "y"), 4).as_dict()
    assert d["nonzero"] == [2, 4] and d["tail_vanishes"] is False and d["certification"] == WINDOW


# --- depth formula checks

def test_depth_formula_free_pair():
    R = ring("xy")
    rep = check_depth_formula(free(R), free(R), 4)
    assert rep.verdict == HOLDS and rep.lhs == rep.rhs == 0


def test_depth_formula_hypersurface_pair():
    R = ring("xy", ["x*y"])
    rep = check_depth_formula(cyclic(R, "x+y"), cyclic(R, "x"), 6, "dep")
    assert rep.verdict == HOLDS
    assert (rep.codepth_T, rep.codepth_M, rep.codepth_N) == (1, 1, 0)


def test_depth_formula_needs_tor_independence():
    R = ring("xy", ["x*y"])
    rep = check_depth_formula(cyclic(R, "x"), cyclic(R, "y"), 4)
    assert rep.verdict == INCONCLUSIVE and "Tor" in rep.reason


def test_depth_formula_zero_module():
    R = ring("xy")
    rep = check_depth_formula(cyclic(R, "1"), free(R), 3)
    assert rep.verdict == INCONCLUSIVE


def test_depth_formula_unknown_mode():
    R = ring("x")
    with pytest.raises(ValueError):
        check_depth_formula(free(R), free(R), 2, "both")


def test_depth_formula_on_trivial_vanishing_ring():
    from depthlab.rings.duality import canonical_module
    R = example_registry("js06")["ring"]
    om = canonical_module(R)
    for M in (cyclic(R, "v"), cyclic(R, "z")):
        assert check_depth_formula(M, om, 3).verdict != FAILS


def test_derived_formula_artinian_rdep():
    R = ring("x", ["x^2"])
    k = cyclic(R, "x")
    rep = check_derived_formula(k, free(R), 6, "rdep")
    assert rep.verdict == HOLDS and rep.depth_T == 0


def test_derived_formula_regular_ring_equality():
    rng = random.Random(11)
    R = ring("xy")
    for _ in range(4):
        M, N = random_module(R, rng), random_module(R, rng)
        if M.is_zero() or N.is_zero():
            continue
        rep = check_derived_formula(M, N, 6, "dep")
        assert rep.verdict == HOLDS


def test_derived_formula_hypersurface_samples():
    rng = random.Random(13)
    R = ring("xy", ["x^2"])
    seen = 0
    for _ in range(8):
        M, N = random_module(R, rng), random_module(R, rng)
        if M.is_zero() or N.is_zero():
            continue
        rep = check_derived_formula(M, N, 6, "dep")
        assert rep.verdict != FAILS
        seen += rep.verdict == HOLDS
    assert seen


def test_plain_and_derived_agree_when_tor_independent():
    R = ring("xy", ["x*y"])
    M, N = cyclic(R, "x+y"), cyclic(R, "x")
    a = check_depth_formula(M, N, 6)
    b = check_derived_formula(M, N, 6)
    assert a.verdict == b.verdict == HOLDS
    assert a.depth_T == b.depth_T


# --- UBC and UAC pair checks

def test_ubc_pd_finite_against_ring():
    R = ring("xy", ["x*y"])
    M = cyclic(R, "x+y")
    rep = check_ubc(M, free(R), 4)
    assert rep.verdict == HOLDS and rep.lhs == rep.rhs == 1


def test_ubc_free_module():
    R = ring("xy")
    rep = check_ubc(free(R), cyclic(R, "x"), 3)
    assert rep.verdict == HOLDS and rep.lhs == rep.rhs == 0


def test_ubc_golod_samples():
    rng = random.Random(17)
    R = ring("xy", ["x^2", "x*y"])
    for _ in range(5):
        M, N = random_module(R, rng), random_module(R, rng)
        if M.is_zero() or N.is_zero():
            continue
        assert check_ubc(M, N, 4).verdict != FAILS


def test_uac_regular_samples():
    rng = random.Random(19)
    R = ring("xy")
    for _ in range(5):
        M, N = random_module(R, rng), random_module(R, rng)
        if M.is_zero() or N.is_zero():
            continue
        rep = check_uac_bound(M, N, 4)
        assert rep.verdict in (HOLDS, INCONCLUSIVE)
        if rep.verdict == HOLDS:
            assert rep.lhs <= rep.rhs


def test_uac_mcm_over_gorenstein_artinian():
    R = ring("x", ["x^2"])
    rep = check_uac_bound(free(R), cyclic(R, "x"), 4)
    assert rep.verdict == HOLDS and rep.lhs == 0


# --- total reflexivity

def test_free_is_totally_reflexive():
    R = ring("xy", ["x*y"])
    assert totally_reflexive(free(R, (0, 1)), 4).verdict == "totally-reflexive"


def test_residue_field_of_plane_not_totally_reflexive():
    R = ring("xy")
    rep = totally_reflexive(cyclic(R, "x", "y"), 4)
    assert rep.verdict == "not-totally-reflexive"
    assert rep.b_MR.max_nonzero == 2


def test_residue_field_of_dual_numbers():
    R = ring("x", ["x^2"])
    rep = totally_reflexive(cyclic(R, "x"), 6)
    assert rep.biduality_iso
    assert rep.b_MR.nonzero == [] and rep.b_MstarR.nonzero == []
    assert rep.verdict in ("totally-reflexive", INCONCLUSIVE)


def test_mcm_over_hypersurface_is_reflexive():
    R = ring("xy", ["x*y"])
    rep = totally_reflexive(cyclic(R, "x"), 4)
    assert rep.biduality_iso and not rep.b_MR.nonzero


# --- lemma cross-checks

def test_kinds():
    assert set(KINDS) == {"negativeqr", "koszul_cutdown", "torcutdown", "cutdownMCM", "exttorall",
                          "replacesyz", "mcmext", "transposeextend"}
    with pytest.raises(ValueError):
        lemma_crosscheck("nonsense", None)


def test_negativeqr_dual_numbers():
    R = ring("x", ["x^2"])
    k = cyclic(R, "x")
    rep = lemma_crosscheck("negativeqr", k, free(R), 6)
    assert rep.verdict == PASS


def test_negativeqr_periodic_pair_is_not_a_failure():
    R = ring("x", ["x^2"])
    k = cyclic(R, "x")
    rep = lemma_crosscheck("negativeqr", k, k, 6)
    assert rep.verdict != FAIL


@pytest.mark.parametrize("seed", range(3))
def test_koszul_cutdown_random_complex(seed):
    rng = random.Random(seed)
    R = ring("xy", ["x*y"])
    X = random_free_complex(R, rng)
    if X.is_exact():
        pytest.skip("exact sample")
    assert lemma_crosscheck("koszul_cutdown", X, x=form(R, rng, 1)).verdict == PASS


def test_torcutdown_hypersurface():
    R = ring("xy", ["x*y"])
    rep = lemma_crosscheck("torcutdown", cyclic(R, "x"), cyclic(R, "x", "y"), 6)
    assert rep.verdict != FAIL


def test_cutdown_mcm_pair():
    R = ring("xy", ["x*y"])
    rep = lemma_crosscheck("cutdownMCM", cyclic(R, "x"), cyclic(R, "y"), 4)
    assert rep.verdict != FAIL


@pytest.mark.parametrize("kind", ["exttorall", "replacesyz", "mcmext", "transposeextend"])
def test_remaining_crosschecks_on_hypersurface(kind):
    R = ring("xy", ["x*y"])
    rep = lemma_crosscheck(kind, cyclic(R, "x"), cyclic(R, "x+y"), 4)
    assert rep.verdict != FAIL


def test_crosscheck_needs_second_module():
    R = ring("x")
    with pytest.raises(ValueError):
        lemma_crosscheck("torcutdown", free(R))


def test_crosscheck_zero_module():
    R = ring("x")
    rep = lemma_crosscheck("torcutdown", cyclic(R, "1"), free(R))
    assert rep.verdict == INCONCLUSIVE


def test_failure_exception_carries_report():
    from depthlab.invariants import CrosscheckReport
    err = CrosscheckFailure(CrosscheckReport("negativeqr", FAIL, {"q": 1}, "synthetic"))
    assert isinstance(err, AssertionError) and err.report.values == {"q": 1}


# --- the q_R formula at the maximal ideal

def test_qr_formula_regular():
    R = ring("xy")
    k = cyclic(R, "x", "y")
    rep = qr_formula_at_m(k, k, 4)
    assert rep.verdict == HOLDS and rep.lhs == rep.rhs == 2


def test_qr_formula_flat():
    R = ring("x")
    rep = qr_formula_at_m(cyclic(R, "x"), free(R), 4)
    assert rep.verdict == HOLDS and rep.lhs == rep.rhs == 0


def test_qr_formula_hypersurface():
    R = ring("xy", ["x*y"])
    rep = qr_formula_at_m(cyclic(R, "x+y"), cyclic(R, "x", "y"), 4)
    assert rep.verdict == HOLDS and rep.lhs == rep.rhs == 1


def test_qr_formula_uncertified():
    R = ring("xy", ["x*y"])
    rep = qr_formula_at_m(cyclic(R, "x"), cyclic(R, "y"), 4)
    assert rep.verdict == INCONCLUSIVE
