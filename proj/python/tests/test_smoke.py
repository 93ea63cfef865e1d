import os
from fractions import Fraction

import pytest

import liebv

FIXTURES = os.environ.get(
    "LIEBV_FIXTURES", os.path.join(os.path.dirname(__file__), "..", "..", "tests", "fixtures")
)


def fixture(name):
    return os.path.join(FIXTURES, name)


def test_version():
    assert liebv.__version__ == liebv.version()


def test_load_emit_round_trip():
    b = liebv.load_algebra(fixture("gl11_standard.json"))
    assert b.dim == 4
    again = liebv.parse_algebra(liebv.emit_algebra(b))
    assert again == b
    assert liebv.fingerprint(again) == liebv.fingerprint(b)
    assert b == liebv.standard_bialgebra(1, 1)


def test_parse_error_is_value_error():
    with pytest.raises(ValueError):
        liebv.load_algebra(fixture("malformed.json"))
    with pytest.raises(liebv.ParseError):
        liebv.parse_algebra("{")


def test_validate():
    ok = liebv.validate(liebv.standard_bialgebra(2, 0))
    assert ok and all(c["passed"] for c in ok)
    broken = liebv.validate(liebv.load_algebra(fixture("broken_jacobi.json")))
    assert not all(c["passed"] for c in broken)


def test_borel_cohomology():
    b = liebv.load_algebra(fixture("borel_sl11.json"))
    h = liebv.cohomology(b, 0, 1, 6)
    assert len(h) == 14
    assert set(h.values()) == {1}


def test_gl2_delta():
    b = liebv.standard_bialgebra(2, 0)
    rows = liebv.delta_on_generators(b)
    assert len(rows) == 4
    assert all(isinstance(x, Fraction) for row in rows for x in row)
    assert liebv.eigenvalues(b) == [(Fraction(-1), 1), (Fraction(0), 2), (Fraction(1), 1)]
    assert not liebv.is_involutive(b)
    assert liebv.is_involutive(liebv.standard_bialgebra(1, 1, "sl"))


def test_rank_kernel():
    rank, kernel = liebv.rank_kernel([[1, 2, 3], [2, 4, 6], ["1/2", 0, Fraction(1, 3)]])
    assert rank == 2
    assert len(kernel) == 1
    v = kernel[0]
    assert v[0] + 2 * v[1] + 3 * v[2] == 0
    assert Fraction(1, 2) * v[0] + Fraction(1, 3) * v[2] == 0


def test_dual_and_double():
    b = liebv.standard_bialgebra(1, 1)
    assert liebv.dual_bialgebra(liebv.dual_bialgebra(b)) == b
    assert liebv.double_roundtrip(b) == b


def test_scenario():
    r = liebv.run_scenario("rcom", dims=[(0, 1), (1, 1), (2, 1)])
    assert set(r) == {"version", "fingerprint", "checks", "tables"}
    assert all(c["passed"] for c in r["checks"])
    assert r == liebv.run_scenario("rcom", dims=[(0, 1), (1, 1), (2, 1)])
    with pytest.raises(ValueError):
        liebv.run_scenario("nope")
