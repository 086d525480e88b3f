import warnings

import pytest

from cartan235.errors import IncompleteData, InconsistentInput
from cartan235.topology import (
    ManifoldInvariants, SimplyConnectedData, decide_decomposition,
    euler_square_pairings, kervaire, rokhlin_check, smale_remark,
)

S5 = (1, 0, 0, 0, 0, 1)
S2xS3 = (1, 0, 1, 1, 0, 1)
T5 = (1, 5, 10, 10, 5, 1)
SU3_SO3 = (1, 0, 1, 1, 0, 1)  # Wu manifold has the same Betti pattern


# ------------------------------------------------------------- kervaire

def test_kervaire_examples():
    assert kervaire(S5) == 1
    assert kervaire(S2xS3) == 0
    assert kervaire(T5) == 0


def test_kervaire_mod_two():
    assert kervaire((1, 0, 2, 2, 0, 1)) == 1   # 1 + 2 + 0
    assert kervaire((1, 1, 2, 2, 1, 1)) == 0   # 1 + 2 + 1
    assert kervaire((1, 0, 4, 4, 0, 1)) == 1   # 1 + 4 + 0


def test_kervaire_rejects_nonzero_euler_characteristic():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # these also break duality
        with pytest.raises(InconsistentInput):
            kervaire((1, 0, 0, 0, 0, 0))   # chi = 1
        with pytest.raises(InconsistentInput):
            kervaire((1, 0, 1, 0, 0, 1))   # chi = 1


def test_kervaire_warns_on_broken_duality():
    # chi = 0 but b_i != b_{5-i}: still computable, flagged suspicious
    with pytest.warns(UserWarning, match="duality"):
        kervaire((1, 1, 2, 1, 1, 2))


def test_kervaire_validates_shape():
    with pytest.raises(InconsistentInput):
        kervaire((1, 0, 0, 1))
    with pytest.raises(InconsistentInput):
        kervaire((1, 0, -1, -1, 0, 1))


# ---------------------------------------------------- euler square pairings

def test_euler_square_pairings_diagonal():
    # cup_tensor[i][j][k] = <b_i b_j, beta_k>; e = sum e_i b_i
    cup = [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]
    assert euler_square_pairings((1, 0), cup) == (1, 0)
    assert euler_square_pairings((0, 2), cup) == (0, 4)
    assert euler_square_pairings((1, 1), cup) == (1, 1)


def test_euler_square_pairings_cross_terms():
    # slice i is the matrix <x_j x_k, a_i>; here x1 x2 pairs to 1 on a_1
    cup = [[[0, 1], [1, 0]], [[0, 0], [0, 0]]]
    assert euler_square_pairings((1, 1), cup) == (2, 0)
    assert euler_square_pairings((2, 3), cup) == (12, 0)


def test_euler_square_pairings_validates():
    with pytest.raises(InconsistentInput):
        euler_square_pairings((1, 2), [[[1, 0]]])   # slice is not 2x2


# --------------------------------------------------------- decomposition

def test_decomposition_s2xs3_true():
    inv = ManifoldInvariants(name="S2xS3", spinnable=True, betti=S2xS3,
                             half_p1=(0,), e_squared=(0,))
    verdict = decide_decomposition(inv)
    assert verdict.value is True
    assert verdict.failed == ()
    names = [c.name for c in verdict.clauses]
    assert names == ["spinnable", "pairings", "kervaire"]


def test_decomposition_t5_true():
    inv = ManifoldInvariants(name="T5", spinnable=True, betti=T5,
                             half_p1=(0,) * 5, e_squared=(0,) * 5)
    assert decide_decomposition(inv).value is True


def test_decomposition_open_skips_kervaire():
    inv = ManifoldInvariants(name="R5", is_open=True, spinnable=True,
                             half_p1=(), e_squared=())
    verdict = decide_decomposition(inv)
    assert verdict.value is True
    assert all(c.name != "kervaire" for c in verdict.clauses)


def test_decomposition_fails_not_spinnable():
    inv = ManifoldInvariants(spinnable=False, betti=S2xS3,
                             half_p1=(0,), e_squared=(0,))
    verdict = decide_decomposition(inv)
    assert verdict.value is False
    assert "spinnable" in verdict.failed


def test_decomposition_fails_pairing_mismatch():
    inv = ManifoldInvariants(spinnable=True, betti=S2xS3,
                             half_p1=(2,), e_squared=(0,))
    verdict = decide_decomposition(inv)
    assert verdict.value is False
    assert "pairings" in verdict.failed


def test_decomposition_fails_kervaire():
    inv = ManifoldInvariants(spinnable=True, betti=S5,
                             half_p1=(), e_squared=())
    verdict = decide_decomposition(inv)
    assert verdict.value is False
    assert "kervaire" in verdict.failed


def test_decomposition_pairing_length_mismatch():
    inv = ManifoldInvariants(spinnable=True, betti=S2xS3,
                             half_p1=(0, 0), e_squared=(0,))
    with pytest.raises(InconsistentInput):
        decide_decomposition(inv)


def test_decomposition_p1_cross_check():
    # open manifold, so the closed-spin divisibility gate stays out of
    # the way and only the p1 == 2 * half_p1 consistency is exercised
    good = ManifoldInvariants(is_open=True, spinnable=True, half_p1=(3,),
                              e_squared=(3,), p1=(6,))
    assert decide_decomposition(good).value is True
    bad = ManifoldInvariants(is_open=True, spinnable=True, half_p1=(3,),
                             e_squared=(3,), p1=(5,))
    with pytest.raises(InconsistentInput):
        decide_decomposition(bad)


def test_decomposition_closed_spin_rokhlin_gate():
    # closed spin 5-manifold: p1 pairings must be divisible by 48
    # (24 from the 4-dim spin bound, doubled through the half-integrality
    # of p1/2 demanded by the pairing hypothesis)
    inv = ManifoldInvariants(spinnable=True, betti=S2xS3, half_p1=(12,),
                             e_squared=(12,), p1=(24,))
    with pytest.raises(InconsistentInput):
        decide_decomposition(inv)
    ok = ManifoldInvariants(spinnable=True, betti=S2xS3, half_p1=(24,),
                            e_squared=(24,), p1=(48,))
    assert decide_decomposition(ok).value is True


def test_decomposition_incomplete_data():
    with pytest.raises(IncompleteData):
        decide_decomposition(ManifoldInvariants(spinnable=True,
                                                half_p1=(0,)))
    with pytest.raises(IncompleteData):
        decide_decomposition(ManifoldInvariants(betti=S5, half_p1=(),
                                                e_squared=()))
    with pytest.raises(IncompleteData):
        # closed manifold needs betti for the kervaire clause
        decide_decomposition(ManifoldInvariants(spinnable=True,
                                                half_p1=(0,),
                                                e_squared=(0,)))


def test_clause_details_are_strings():
    inv = ManifoldInvariants(spinnable=True, betti=T5,
                             half_p1=(0,) * 5, e_squared=(0,) * 5)
    for clause in decide_decomposition(inv).clauses:
        assert isinstance(clause.detail, str) and clause.detail


# ----------------------------------------------------------------- rokhlin

def test_rokhlin_multiples_of_48():
    result = rokhlin_check((48, 96, 0, -144))
    assert result.all_pass
    assert result.per_class == (True, True, True, True)


def test_rokhlin_rejects_24():
    result = rokhlin_check((24,))
    assert not result.all_pass
    assert result.per_class == (False,)


# ------------------------------------------------------------------- smale

def test_smale_sphere():
    report = smale_remark(SimplyConnectedData(b2=0, w2_zero=True))
    assert not report.admits          # b2 = 0 is even
    assert report.description == "S5"


def test_smale_s2xs3():
    report = smale_remark(SimplyConnectedData(b2=1, w2_zero=True))
    assert report.admits
    assert report.description == "S2xS3"


def test_smale_connected_sum():
    report = smale_remark(SimplyConnectedData(b2=3, w2_zero=True))
    assert report.admits
    assert report.description == "#3(S2xS3)"


def test_smale_with_torsion():
    report = smale_remark(SimplyConnectedData(b2=1, torsion=(2, 7),
                                              w2_zero=True))
    assert report.admits
    assert report.description == "S2xS3 # M_2 # M_7"


def test_smale_nonspin():
    report = smale_remark(SimplyConnectedData(b2=1, w2_zero=False,
                                              name="SU3/SO3"))
    assert not report.admits
    assert report.description is None
    assert "not spin" in report.reason


def test_smale_validates_torsion():
    with pytest.raises(InconsistentInput):
        SimplyConnectedData(b2=1, torsion=(1,))
    with pytest.raises(InconsistentInput):
        SimplyConnectedData(b2=-1)


# ------------------------------------------------------------- robustness

def test_int_coercion_accepts_numpy_like():
    inv = ManifoldInvariants(spinnable=True, betti=[1, 0, 1, 1, 0, 1],
                             half_p1=[0], e_squared=[0])
    assert inv.betti == S2xS3
    assert decide_decomposition(inv).value is True


def test_no_warning_on_good_duality():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        kervaire(T5)
