from fractions import Fraction

import pytest

from cyclovertex.cycfield import root
from cyclovertex.vla import (PRESETS, AxiomError, VlaElem, VlaPresentation, check_axioms,
                             gamma_act, gamma_weight, nth_product, preset, with_product)

g, K = VlaElem.gen, VlaElem.cent


@pytest.mark.parametrize("name", PRESETS)
@pytest.mark.parametrize("T", [1, 2, 3, 4])
def test_presets_satisfy_axioms(name, T):
    rep = check_axioms(preset(name, T), 6)
    assert rep.ok, rep.message()
    assert rep.checked > 0


@pytest.mark.parametrize("sigma,T", [("inner:1", 3), ("inner:1", 4), ("swap", 2), ("swap", 4)])
def test_affine_with_nontrivial_sigma(sigma, T):
    assert check_axioms(preset("affine_sl2", T, sigma), 5).ok


def test_virasoro_table():
    P = preset("virasoro")
    w = g("w")
    assert nth_product(P, w, w, 0) == g("w", 1)
    assert nth_product(P, w, w, 1) == g("w").scale(2)
    assert nth_product(P, w, w, 2) == VlaElem()
    assert nth_product(P, w, w, 3) == K(Fraction(1, 2))


def test_translation_rule():
    # (Da)_(n) b = -n a_(n-1) b
    P = preset("affine_sl2")
    for n in range(1, 4):
        assert nth_product(P, g("e", 1), g("f"), n) == nth_product(P, g("e"), g("f"), n - 1).scale(-n)
    assert nth_product(P, g("e", 1), g("f"), 0) == VlaElem()


def test_corrupted_skew_symmetry_is_caught():
    P = preset("virasoro")
    bad = with_product(P, "w", "w", 1, g("w").scale(3))
    rep = check_axioms(bad, 6)
    assert not rep.ok
    assert rep.failure["axiom"] == "skew-symmetry"


def test_corrupted_jacobi_is_caught():
    P = preset("affine_sl2")
    bad = with_product(P, "h", "h", 1, K(5))
    assert not check_axioms(bad, 4).ok


def test_config_roundtrip_and_rejection():
    P = preset("affine_sl2", 2)
    cfg = P.to_config()
    Q = VlaPresentation.from_config(cfg)
    assert Q.products == P.products
    cfg["products"] = [p for p in cfg["products"] if not (p["a"] == "f" and p["b"] == "e" and p["n"] == 0)]
    with pytest.raises(AxiomError):
        VlaPresentation.from_config(cfg)


def test_config_validation_errors():
    base = {"order": 2, "central": "c", "generators": [{"name": "a", "degree": 1, "sigma_exponent": 0}]}
    with pytest.raises(ValueError):
        VlaPresentation.from_config({**base, "generators": base["generators"] * 2})
    with pytest.raises(ValueError):
        VlaPresentation.from_config({**base, "generators": [{"name": "a", "degree": 1, "sigma_exponent": 0.5}]})
    with pytest.raises(ValueError):
        VlaPresentation.from_config({**base, "products": [{"a": "a", "b": "a", "n": -1, "value": []}]})
    with pytest.raises(ValueError):
        VlaPresentation.from_config({**base, "order": 0})


def test_gamma_action_weights():
    T = 4
    P = preset("affine_sl2", T, "inner:1")
    # R_w (D^j e) = w^(j + deg e + s) D^j e
    for j in range(3):
        assert gamma_weight(P, "e", j) == 1 + j + 1
        assert gamma_act(P, 1, g("e", j)) == g("e", j).scale(root(T, j + 2))
    assert gamma_act(P, 3, K()) == K()


def test_unknown_preset():
    with pytest.raises(ValueError):
        preset("e8")
    with pytest.raises(ValueError):
        preset("affine_sl2", 3, "swap")
