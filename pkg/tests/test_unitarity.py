import pytest

from gapvir.algebra import AntiInvolution, GapVirasoro
from gapvir.errors import ConfigError
from gapvir.forms import pairing
from gapvir.oscillator import shifted_weight, sugawara_sum
from gapvir.scalars import Scalar, scalar
from gapvir.unitarity import (classify, discrete_series, discrete_series_match,
                              heisenberg_condition, highest_weight_unitary,
                              lowest_weight_dualize, oracle_is_psd,
                              unitarity_oracle, unitarity_verdict)
from gapvir.verma import HighestWeight, Sector, VermaModule


def hw2(l0, c0, c1="1"):
    return HighestWeight.make(2, l0, [c0, c1])


def test_heisenberg_condition_flags():
    rep = heisenberg_condition(hw2("0", "2", "1"), ["1"])
    assert rep[1] == {"value": "1", "realNonzero": True, "positive": True}
    rep = heisenberg_condition(hw2("0", "2", "-1"), ["1"])
    assert rep[1]["realNonzero"] and not rep[1]["positive"]
    rep = heisenberg_condition(hw2("0", "2", "1"), ["1*i"])
    assert not rep[1]["realNonzero"]


def test_heisenberg_condition_validates_beta():
    with pytest.raises(ConfigError):
        heisenberg_condition(hw2("0", "2"), ["2"])


def test_discrete_series_m3_virasoro():
    pts = discrete_series(2, frozenset(), 3)
    assert [(str(p["c0"]), str(p["l0"])) for p in pts] == [
        ("1/2", "0"), ("1/2", "1/16"), ("1/2", "1/2")]


def test_discrete_series_m2_single_point():
    pts = discrete_series(2, frozenset(), 2)
    assert [(p["m"], p["r"], p["s"]) for p in pts] == [(2, 0, 1)]
    assert str(pts[0]["c0"]) == "0" and str(pts[0]["l0"]) == "0"


def test_discrete_series_shifted_for_gap_module():
    pts = discrete_series(2, frozenset({1}), 3)
    assert [str(p["c0"]) for p in pts] == ["3/2"] * 3
    assert [str(p["l0"]) for p in pts] == ["1/16", "1/8", "9/16"]


def test_discrete_series_rejects_small_m():
    with pytest.raises(ConfigError):
        discrete_series(2, frozenset(), 1)


def test_closed_form_boundary_point():
    rep = highest_weight_unitary(hw2("1/16", "2"), ["1"])
    assert rep["closedForm"] and rep["continuum"] and rep["discreteSeries"] is None


def test_closed_form_discrete_point():
    rep = highest_weight_unitary(hw2("1/16", "3/2"), ["1"])
    assert rep["closedForm"]
    assert rep["discreteSeries"] == {"m": 3, "r": 0, "s": 1}
    assert not rep["continuum"]


def test_closed_form_off_list_probe():
    rep = highest_weight_unitary(hw2("5/16", "3/2"), ["1"])
    assert not rep["closedForm"] and rep["discreteSeries"] is None


def test_discrete_match_requires_exact_equality():
    assert discrete_series_match(hw2("1/8", "3/2")) == {"m": 3, "r": 0, "s": 2}
    assert discrete_series_match(hw2("1/8", "1501/1000")) is None


def test_variant_discrepancy_flag():
    rep = highest_weight_unitary(hw2("1", "3", "-1"), ["1"])
    assert rep["clause1Literal"] and not rep["clause1Strict"]
    assert rep["variantDiscrepancy"] and not rep["closedForm"]


def test_oracle_on_continuum_interior():
    alg = GapVirasoro(2)
    levels = unitarity_oracle(alg, hw2("1", "3"), ["1"], 6)
    assert all(e["verdict"] == "positive-definite" for e in levels)


def test_oracle_on_discrete_point_sees_kernel():
    alg = GapVirasoro(2)
    levels = unitarity_oracle(alg, hw2("1/16", "3/2"), ["1"], 6)
    assert oracle_is_psd(levels)
    assert any(e["verdict"] == "positive-semidefinite-singular" for e in levels)


def test_oracle_negative_heisenberg_diagonal():
    alg = GapVirasoro(2)
    levels = unitarity_oracle(alg, hw2("1", "3", "-1"), ["1"], 1)
    assert levels[1]["verdict"] == "negative-containing"


def test_oracle_flags_non_hermitian_form():
    alg = GapVirasoro(2)
    levels = unitarity_oracle(alg, hw2("1", "3", "1"), ["3/5+4/5*i"], 1)
    assert levels[1]["verdict"] == "not-hermitian"
    verdict = unitarity_verdict(alg, hw2("1", "3", "1"), ["3/5+4/5*i"], 1)
    assert verdict["verdict"] == "not-unitary" and verdict["agreement"]


def test_dualize_swaps_beta_components():
    lw3 = HighestWeight.make(3, "-1", ["-3", "-1"])
    dual, beta = lowest_weight_dualize(lw3, ["2", "1/2"])
    assert dual.l0 == Scalar(1) and dual.c_value(0) == Scalar(3)
    assert [str(b) for b in beta] == ["1/2", "2"]
    lw2 = hw2("-1/16", "-2", "-1")
    dual2, beta2 = lowest_weight_dualize(lw2, ["1"])
    assert dual2.l0 == scalar("1/16") and [str(b) for b in beta2] == ["1"]


def test_dualize_is_involutive():
    lw = HighestWeight.make(3, "-1", ["-3", "-1"])
    dual, beta = lowest_weight_dualize(lw, ["2", "1/2"])
    back, beta_back = lowest_weight_dualize(dual, beta)
    assert back == lw and [str(b) for b in beta_back] == ["2", "1/2"]


def test_classify_intermediate_series():
    alg = GapVirasoro(2)
    res = classify(alg, {"type": "intermediate-series", "a": "1/3", "b": "1/2",
                         "f": [["1", "1"]], "beta": ["1"]})
    assert res["bucket"] == 1 and res["verdict"] == "unitary"


def test_classify_highest_weight_discrete():
    alg = GapVirasoro(2)
    res = classify(alg, {"type": "highest-weight", "l0": "1/16", "c0": "3/2",
                         "c1": "1", "beta": ["1"]}, max_level=4)
    assert res["bucket"] == 2 and res["clauses"]["discreteSeries"]["m"] == 3


def test_classify_lowest_weight():
    alg = GapVirasoro(2)
    res = classify(alg, {"type": "lowest-weight", "l0": "-1/16", "c0": "-2",
                         "c1": "-1", "beta": ["1"]}, max_level=4)
    assert res["bucket"] == 3 and res["verdict"] == "unitary"
    assert res["dualWeight"]["l0"] == "1/16"


def test_classify_not_unitary_reports_failing_clause():
    alg = GapVirasoro(2)
    res = classify(alg, {"type": "highest-weight", "l0": "5/16", "c0": "3/2",
                         "c1": "1", "beta": ["1"]}, max_level=4)
    assert res["bucket"] is None and res["verdict"] == "not-unitary"
    assert not res["clauses"]["clause2"]


def test_classify_flags_zero_a_discrepancy():
    alg = GapVirasoro(2)
    res = classify(alg, {"type": "intermediate-series", "a": "0", "b": "1/2",
                         "f": [["1", "1"]], "beta": ["1"]})
    assert res["bucket"] == 1 and res["notes"]


def test_dualization_preserves_verdicts():
    alg = GapVirasoro(3)
    samples = [
        ("1/9", "3", "1", True),     # continuum boundary for J = {1, 2}
        ("0", "3", "1", False),      # l0 below the vacuum energy
        ("1", "4", "-1", False),     # heisenberg sign violation
    ]
    for l0, c0, c1, expected in samples:
        hw = HighestWeight.make(3, l0, [c0, c1])
        direct = highest_weight_unitary(hw, ["2", "1/2"])["closedForm"]
        lw = HighestWeight.make(3, "-" + l0 if l0 != "0" else "0",
                                ["-" + c0, "-" + c1 if c1 != "-1" else "1"])
        dual, beta = lowest_weight_dualize(lw, ["2", "1/2"])
        assert dual.l0 == hw.l0 and dual.c == hw.c
        assert highest_weight_unitary(dual, beta)["closedForm"] == direct == expected


def test_empty_j_degenerates_to_virasoro_conditions():
    # with the J-part split off, the order clause at phi equals the pure
    # Virasoro clause at the shifted weight
    for l0, c0 in [("1/16", "2"), ("0", "2"), ("1/16", "3/2"), ("5/16", "3/2"),
                   ("9/16", "3/2"), ("2", "5")]:
        hw = hw2(l0, c0, "1")
        psi = shifted_weight(hw)
        rep_full = highest_weight_unitary(hw, ["1"])
        rep_vira = highest_weight_unitary(psi, ["1"])
        assert rep_full["clause2"] == rep_vira["clause2"]
        full_pt = rep_full["discreteSeries"]
        vira_pt = rep_vira["discreteSeries"]
        assert (full_pt is None) == (vira_pt is None)
        if full_pt:
            assert (full_pt["m"], full_pt["r"], full_pt["s"]) == \
                (vira_pt["m"], vira_pt["r"], vira_pt["s"])


def tensor_vector(module, hw, i_mono, l_mono):
    """Image of a split-basis pair inside the unrestricted Verma module.

    The Virasoro-type factors act through L_{-n} minus its quadratic
    Heisenberg part, so they commute with the Fock factors and generate the
    complementary tensor slot.
    """
    alg = module.alg
    vec = module.highest_vector()
    for n in reversed(l_mono.lparts):
        quad = sugawara_sum(module, hw.j_set(), hw.c_value, -n, vec)
        vec = module.act(alg.L(-n), vec) - quad
    for m, i in reversed(i_mono.iparts):
        vec = module.act(alg.I(-m, i), vec)
    return vec


def test_tensor_form_factorizes():
    # the contravariant form on the full module, written on the split basis,
    # is the product of the Fock-sector form and the Virasoro-sector form at
    # the shifted weight
    alg = GapVirasoro(2)
    hw = hw2("1/16", "2", "1")
    theta = AntiInvolution.plus(2)
    full = VermaModule(alg, hw)
    heis = VermaModule(alg, hw, Sector.heisenberg(hw.j_set()))
    vira = VermaModule(alg, shifted_weight(hw), Sector.virasoro())

    split = []
    for d in range(5):
        for a in range(d + 1):
            for xm in heis.pbw_basis(a):
                for ym in vira.pbw_basis(d - a):
                    split.append((d, xm, ym, tensor_vector(full, hw, xm, ym)))
    for d1, x1, y1, t1 in split:
        for d2, x2, y2, t2 in split:
            lhs = pairing(full, theta, t1, t2)
            rhs = (pairing(heis, theta, heis.basis_vector(x1),
                           heis.basis_vector(x2))
                   * pairing(vira, theta, vira.basis_vector(y1),
                             vira.basis_vector(y2)))
            assert lhs == rhs, (x1.text(), y1.text(), x2.text(), y2.text())
