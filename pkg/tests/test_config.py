import dataclasses
import math

import pytest
from hypothesis import given, strategies as st

from dualirs.config import (ParamsError, SystemParams, db_to_linear, dbm_to_watts, default_params,
                            dump_params, load_params, watts_to_dbm)


def test_db_to_linear_examples():
    assert db_to_linear(0) == 1.0
    assert db_to_linear(-43) == pytest.approx(5.0119e-5, rel=1e-4)
    assert db_to_linear(-43) == pytest.approx(10 ** -4.3, rel=1e-12)
    assert dbm_to_watts(20) == pytest.approx(0.1, rel=1e-12)
    assert watts_to_dbm(0.025) == pytest.approx(13.9794, abs=1e-4)


@pytest.mark.parametrize("bad", [math.inf, -math.inf, math.nan])
def test_db_to_linear_rejects_non_finite(bad):
    with pytest.raises(ParamsError):
        db_to_linear(bad)


@given(st.floats(-100, 100), st.floats(-100, 100))
def test_db_addition_is_multiplication(a, b):
    assert db_to_linear(a + b) == pytest.approx(db_to_linear(a) * db_to_linear(b), rel=1e-12)


def test_default_params():
    p = default_params()
    assert (p.D, p.H_A, p.H_P, p.lam) == (30.0, 6.0, 5.0, 0.087)
    assert p.beta == pytest.approx(5.0119e-5, rel=1e-4)
    assert p.P_t == pytest.approx(0.1)
    assert p.sigma2 == pytest.approx(1e-11)
    assert p.sigmaF2 / p.sigma2 == pytest.approx(4.0)
    assert (p.N_a, p.N_p) == (450, 600)
    assert p.delta_A == p.delta_P == pytest.approx(0.087 / 2)
    assert p.P_F is None
    # the N_p threshold, often quoted as roughly 700
    assert p.H_P / math.sqrt(p.beta) == pytest.approx(706.3, abs=0.1)


def test_unset_power_budget_raises():
    with pytest.raises(ParamsError, match="P_F"):
        default_params().pf


def test_load_empty_document_gives_defaults():
    p = load_params("")
    assert p == default_params()
    with pytest.raises(ParamsError):
        p.pf


def test_load_dbm_and_db_keys():
    p = load_params("P_F_dbm = 10\nbeta_db = -43  # reference gain\n# comment line\n\nN_p = 300\n")
    assert p.P_F == pytest.approx(0.01, rel=1e-12)
    assert p.beta == pytest.approx(10 ** -4.3, rel=1e-12)
    assert p.N_p == 300


def test_load_lambda_alias():
    p = load_params("lambda = 0.1")
    assert p.lam == 0.1
    assert p.delta_A == 0.05


@pytest.mark.parametrize("text, match", [
    ("N_a = 0", "N_a"),
    ("N_p = -3", "N_p"),
    ("D = 0", "D"),
    ("sigma2 = -1e-11", "sigma2"),
    ("delta_A = 1.0", "delta_A"),
    ("bogus = 1", "line 1: unknown key 'bogus'"),
    ("D = 30\nH_A 6", "line 2"),
    ("D = abc", "line 1: key 'D'"),
    ("N_a = 4.5", "line 1"),
    ("D = 1\nD = 2", "duplicate"),
    ("D_dbm = 3", "dBm applies to powers"),
])
def test_load_rejects(text, match):
    with pytest.raises(ParamsError, match=match):
        load_params(text)


def test_construction_validates():
    with pytest.raises(ParamsError, match="N_a"):
        SystemParams(N_a=0)
    with pytest.raises(ParamsError, match="P_t"):
        SystemParams(P_t=-1.0)


positive = st.floats(1e-12, 1e6, allow_nan=False, allow_infinity=False)


@given(D=positive, H_A=positive, beta=positive, P_t=positive, P_F=st.none() | positive,
       N_a=st.integers(1, 10_000), N_p=st.integers(1, 10_000), frac=st.floats(0.01, 1.0))
def test_dump_load_round_trip(D, H_A, beta, P_t, P_F, N_a, N_p, frac):
    p = SystemParams(D=D, H_A=H_A, beta=beta, P_t=P_t, P_F=P_F, N_a=N_a, N_p=N_p,
                     delta_P=frac * 0.087)
    q = load_params(dump_params(p))
    for f in dataclasses.fields(SystemParams):
        assert getattr(q, f.name) == getattr(p, f.name), f.name
