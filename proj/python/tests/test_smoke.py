import pytest

import kgsym


def test_expressions_are_canonical():
    e = kgsym.parse("(x^2 - y^2)/(x - y)")
    assert e == kgsym.parse("x + y")
    assert str(kgsym.Expr("u_tx - u_xt")) == "0"
    assert kgsym.parse("arctan(x/y)").diff("x") == kgsym.parse("y/(x^2 + y^2)")
    assert kgsym.parse("u*u_x").total_diff("t") == kgsym.parse("u_t*u_x + u*u_tx")
    assert kgsym.parse("eps^2 - 1").is_zero()
    assert not kgsym.parse("eps - 1").is_zero()
    assert kgsym.parse("eps - 1").is_zero(eps="+1")


def test_parse_error_is_a_value_error():
    with pytest.raises(ValueError):
        kgsym.parse("V(x,")


def test_catalog_and_classification():
    cat = kgsym.catalog()
    assert [c["kind"] for c in cat] == ["KV"] * 3 + ["HV"] + ["KV"] * 3 + ["sCKV"] * 3
    assert str(cat[7]["psi"]) == "2*y"
    kind, psi = kgsym.classify(["x", "-eps*t", "0"])
    assert kind == "KV" and psi.is_zero()
    assert kgsym.classify(["x^2", "0", "0"]) == ("none", None)


def test_single_checks():
    assert kgsym.constraint_residual(["1", "0", "0"], "0", "V(x, y)").is_zero()
    r = kgsym.constraint_residual(["1", "0", "0"], "0", "V(t, x)")
    assert str(r) == "V[1,0](t, x)"
    sckv = ["2*t*y", "2*x*y", "y^2 - x^2 - eps*t^2"]
    assert kgsym.invariance_residual(sckv, "1/t^2*V(x/t, (eps*t^2 + x^2 + y^2)/t)").is_zero()


def test_conserved_vector_and_reduction():
    T = kgsym.conserved_vector(["1", "0", "0"], "V(x, y)")
    assert T[1] == kgsym.parse("-u_t*u_x")
    with pytest.raises(ArithmeticError):
        kgsym.conserved_vector(["x^2", "0", "0"], "V(x, y)")
    red = kgsym.reduce("exp(k*x)*phi(t)", "V(t)")
    assert red == kgsym.parse("phi[2](t)/eps + (k^2 + V(t))*phi(t)")


def test_suites():
    kgsym.set_jobs(2)
    wave = kgsym.verify("wave")
    assert wave.ok() and len(wave) == 20
    br = kgsym.verify("brackets")
    assert br.count(kgsym.Status.PASS) == 58 and br.count(kgsym.Status.FAIL) == 42
    red = kgsym.verify("reductions", eps="+1")
    assert red.ok()
    t4 = kgsym.verify("potentials", table="4")
    assert [r.id for r in t4.records if r.status == kgsym.Status.FAIL] == ["table4/row15/constraint"]


def test_missing_data(tmp_path):
    with pytest.raises(OSError):
        kgsym.verify("brackets", data_dir=tmp_path)
