import json
import math

import pytest

from qweigh.protocols import BoundsReport, classical_bounds, wm_budget, sls_bounds, corollary_family
from qweigh.protocols import reports_to_frame
from qweigh.utils import SizeCapError


def test_w43_bounds():
    b = classical_bounds(4, 3, 0)
    assert b.bound_log3 == pytest.approx(1.2619, abs=1e-4)
    assert b.bound_nk == pytest.approx(1.0)
    assert b.bound_log2 == pytest.approx(1.0)
    assert b.quantum_upper == 2
    assert b.min_depth == 2


@pytest.mark.parametrize('n', [2, 5, 16, 100])
def test_identity_bound(n):
    assert classical_bounds(n, 1, 0).bound_nk == pytest.approx(n-1)


@pytest.mark.parametrize('t', range(1, 8))
def test_hadamard_bound(t):
    b = classical_bounds(2**t, 2**t, 0)
    assert b.bound_log2 == pytest.approx(t)
    eps = 0.25
    assert classical_bounds(2**t, 2**t, eps).bound_log2 == pytest.approx(t + math.log2(1-eps))


def test_bounds_eps():
    b = classical_bounds(16, 1, 0.5)
    assert b.bound_nk == pytest.approx(0.5*16 - 1)
    assert b.bound_log3 == pytest.approx(math.log(16, 3) + math.log(0.5, 3))
    with pytest.raises(ValueError):
        classical_bounds(4, 3, 1.0)
    with pytest.raises(ValueError):
        classical_bounds(4, 5, 0)


def test_bounds_report_json():
    data = json.loads(classical_bounds(4, 3).to_json())
    assert list(data) == BoundsReport.keys()
    frame = reports_to_frame([classical_bounds(4, 3), classical_bounds(8, 1)])
    assert list(frame.columns) == BoundsReport.keys()
    assert len(frame) == 2


def test_wm_budget():
    assert wm_budget(4, 4) == 1
    assert wm_budget(4, 3) == 2
    assert wm_budget(4, 1) == 3


def test_sls_bounds():
    b = sls_bounds(13)
    assert b.bound_stated == pytest.approx(math.log2(13) - 1)
    assert b.bound_proof == pytest.approx(math.log2(14) - 1)
    assert b.quantum_upper == 2
    assert b.classical_upper == math.ceil(math.log(13)/math.log(4/3)) + 3
    assert 2**(b.min_depth+1) - 1 >= 13


def test_tensor_family_gamma():
    table = corollary_family(4, 3, 3)
    assert list(table['t']) == [1, 2, 3]
    assert table['gamma'].iloc[0] == pytest.approx(0.2075, abs=5e-4)
    row = table[table['t'] == 2].iloc[0]
    assert (row['N'], row['K'], row['quantum']) == (16, 9, 3)
    assert table[table['t'] == 3].iloc[0]['quantum'] == 3


def test_tensor_family_hadamard():
    table = corollary_family(2, 2, 6)
    assert (table['gamma'] == 0).all()
    assert (table['quantum'] == 2).all()


def test_tensor_family_cap():
    with pytest.raises(SizeCapError):
        corollary_family(4, 3, 7)
    with pytest.raises(ValueError):
        corollary_family(4, 3, 0)


@pytest.mark.parametrize('q', [1, 8, 15, 16, 100])
def test_sls_bounds_rejects_non_field_orders(q):
    with pytest.raises(ValueError, match='odd prime power'):
        sls_bounds(q)
