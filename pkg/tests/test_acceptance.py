"""The fourteen acceptance criteria, each with its runtime budget.

Every test prints one ``PASS``/``FAIL`` line (visible with ``pytest -s`` or
in the captured output of a failure).
"""
import pytest

from hallquant.suites import LIMITS, SUITES, run_suite

ORDER = list(SUITES)


def _run(name, **kw):
    r = run_suite(name, **kw)
    limit = LIMITS[r["id"]] * (6 if kw.get("include_g2") else 1)
    ok = r["passed"] and r["seconds"] < limit
    print(f"criterion {r['id']:2d} {name:15s} {'PASS' if ok else 'FAIL'} "
          f"checked={r['checked']} failed={r['failed']} {r['seconds']:.2f}s (limit {limit}s)")
    return r, limit


def _assert(r, limit):
    assert r["checked"] > 0
    assert r["failed"] == 0, f"{r['failed']} of {r['checked']} failed, e.g. {r['failures']}"
    assert r["seconds"] < limit


def test_criterion_01_qbinom():
    _assert(*_run("qbinom"))


def test_criterion_02_euler_form_is_hom_minus_ext():
    _assert(*_run("euler"))


def test_criterion_03_hall_associativity():
    _assert(*_run("associativity"))


def test_criterion_04_serre_relations():
    _assert(*_run("serre"))


def test_criterion_05_indecomposable_at_sink():
    _assert(*_run("indecomposable"))


def test_criterion_06_reflection_functors():
    _assert(*_run("bgp"))


def test_criterion_07_straightening_compatibility():
    _assert(*_run("straightening"))


def test_criterion_08_coincidence_with_lusztig():
    _assert(*_run("coincidence"))


def test_criterion_09_mutual_inverses():
    _assert(*_run("inverse"))


def test_criterion_10_braid_relations():
    _assert(*_run("braid"))


@pytest.mark.g2
def test_criterion_10_braid_relations_g2():
    _assert(*_run("braid", include_g2=True))


def test_criterion_11_projection_compatibility():
    _assert(*_run("projection"))


def test_criterion_12_commutators_transport_scaling():
    _assert(*_run("identities"))


def test_criterion_13_psi_invariance():
    # Known red: see README.  psi(<b>, <b>) = q^dim b / a_b is not preserved
    # by the symmetry when b is a simple at a non-reflected vertex.
    _assert(*_run("psi"))


def test_criterion_14_dimension_agreement():
    _assert(*_run("dimensions"))
