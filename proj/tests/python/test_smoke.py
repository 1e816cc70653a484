import math

import pytest

import milnorkit as mk


def test_corpus_and_weights():
    assert "ex_nisol" in mk.corpus_ids()
    assert mk.detect_radial("ex_nisol") == {"q": [1, 1, 1], "d": 3}
    assert mk.detect_polar("ex_nisol") == {"p": [3, 2, 1], "k": 1}
    assert mk.detect_radial("e_thom") == {}


def test_parse_and_realify():
    assert mk.parse_mixed("z1*z1 + 0*z2") == "z1^2"
    psi = mk.realify("z^2")
    assert (psi.source_dim, psi.target_dim) == (2, 2)
    assert psi([1.0, 2.0]) == pytest.approx([-3.0, 4.0])
    with pytest.raises(mk.MilnorkitError):
        mk.parse_mixed("z1 + * z2")


def test_defects():
    psi = mk.corpus("e_thom")
    assert mk.sing_defect(psi, [0.0, 0.0, 0.3]) <= 1e-12
    z1 = mk.realify("z1 + 0*z2")
    assert mk.milnor_defect(z1, [0.3, 0.1, 0.0, 0.0]) <= 1e-12
    assert mk.milnor_defect(z1, [0.0, 0.0, 0.3, 0.4]) == pytest.approx(0.5)


def test_certification():
    v = mk.bb_positivity("x1^2 + x2^2 + 1/10", "box:[-1,1]^2", 2)
    assert v.status == mk.Certified
    assert v.mode == "rigorous"
    assert v.bound_value > 0
    bad = mk.bb_positivity("x1^2 + x2^2 - 1/2", "box:[-1,1]^2", 2)
    assert bad.status == mk.CounterexampleFound
    assert mk.check_sing_in_V(mk.corpus("e_thom")).status == mk.Certified


def test_pipeline_and_sum():
    report = mk.run_pipeline("ex_nisol")
    assert report["theorem_path"] == "Thm1.7"
    h, weights = mk.sebastiani_sum("z1^2", "w^3")
    assert h.source_dim == 4
    assert weights == {"q": [3, 3, 2, 2], "d": 6}


def test_sampling():
    pts = mk.sample_sphere(4, 0.5, 10, 3)
    assert all(math.isclose(math.hypot(*p), 0.5) for p in pts)
    pages = mk.page_decompose(mk.corpus("holo_a1"), n=200, bins=4)
    assert len(pages) == 4


def test_cli_exit_code():
    assert mk.run_cli(["weights", "ex_nisol"]) == 0
    assert mk.run_cli(["frobnicate"]) == 64
