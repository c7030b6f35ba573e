import json

import pytest

from gramfaces import harness
from gramfaces.forms import apolar_complement, space_from_dict, square_codim
from gramfaces.harness import REGISTRY, conjecture_mkkk, example_gallery, resolve_params, verify


def test_registry_has_every_check():
    expected = {
        "codim1-bpf", "codim1-bp", "codim2-bpf", "var-reduction", "quotient-generic",
        "deg-reduction", "lift-formula", "hf-codim2-quadrics", "restriction-dichotomy",
        "quotient-vanishes", "gin-counting", "stay-bpf", "main-bound", "macaulay-growth",
        "green-bound", "conj-bpf-intersection",
    }
    assert expected <= set(REGISTRY)


def test_codim1_with_base_point():
    rep = verify("codim1-bp", n=4, d=3, trials=20, seed=7)
    assert rep.counts["pass"] == 20
    assert {r.values["codim_U2"] for r in rep.results} == {4}


def test_degree_reduction_run():
    rep = verify("deg-reduction", n=3, d=4, k=2, trials=50, seed=1)
    assert rep.counts["pass"] + rep.counts["violation"] == 50 and rep.ok


def test_variable_reduction_trivial_instance():
    rep = verify("var-reduction", n=3, d=2, k=0, trials=3, seed=0)
    assert rep.ok
    for r in rep.results:
        assert r.status == "pass" and r.values["codim_U2"] == r.values["bound"] == 0


@pytest.mark.parametrize("check_id", sorted(REGISTRY))
def test_every_check_runs_clean_on_a_few_trials(check_id):
    rep = verify(check_id, trials=6, seed=3)
    assert rep.trials == 6
    assert rep.counts["fail"] == 0, rep.to_text()


def test_reports_are_deterministic_across_jobs():
    a = verify("codim2-bpf", trials=8, seed=11, jobs=1)
    b = verify("codim2-bpf", trials=8, seed=11, jobs=2)
    assert a.to_records() == b.to_records()
    assert a.to_text() == b.to_text()


def test_stay_bpf_reports_outside_hypothesis_separately():
    rep = verify("stay-bpf", n=3, d=2, k=2, trials=12, seed=0)
    assert rep.counts["outside"] == 12 and rep.ok
    # the x_n^{d-1} A(n-1)_1 construction restricts to a space holding a square
    assert any(r.values["W_bar_has_power"] is True for r in rep.results)


def test_parameter_validation():
    with pytest.raises(KeyError):
        resolve_params("no-such-check")
    with pytest.raises(ValueError):
        resolve_params("main-bound", n=[4], d=[2], k=[3])


def test_failure_payload_reloads(monkeypatch):
    """A failing instance is stored as interchange data that reproduces the failure."""

    def always_small(t):
        W, U = t.bpf_pair()
        c = square_codim(U)
        return c < 0, {"codim_U2": c}

    check = harness.Check(always_small, "fails on purpose", {"n": [3], "d": [3], "k": [1]}, lambda n, d, k: True)
    monkeypatch.setitem(REGISTRY, "always-fails", check)
    rep = verify("always-fails", trials=2, seed=0)
    assert rep.counts["fail"] == 2 and not rep.ok
    for r in rep.failures():
        rec = json.loads(json.dumps(r.record("always-fails")))
        W = space_from_dict(rec["payload"]["spaces"]["W"])
        assert square_codim(apolar_complement(W)) == rec["values"]["codim_U2"]
    assert "FAIL trial 0" in rep.to_text()


def test_gallery_matches():
    items = example_gallery()
    assert items and all(i.match for i in items), [i.line() for i in items if not i.match]


def test_conjecture_report():
    rows = {r["k"]: r for r in conjecture_mkkk(k_max=3)}
    assert rows[2]["m_kkk"] == 4 and rows[3]["m_kkk"] == 10
    assert rows[2]["witness_kkk"] == 4 and rows[3]["witness_kkk"] == 10
    assert [rows[k]["m_3kkk"] for k in (1, 2, 3)] == [3, 12, 28]
    text = harness.conjecture_text(list(rows.values()))
    assert "mismatch" not in text
