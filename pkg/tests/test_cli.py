import io
import json

import pandas as pd

from qweigh.cli import dispatch, table_reproduction
from qweigh.designs import serialize_matrix, w43_power
from qweigh.protocols import RunReport, BoundsReport


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = dispatch(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_matrix_verify(tmp_path):
    path = tmp_path / 'w43.wm'
    path.write_text(serialize_matrix(w43_power(1)))
    assert _run(['matrix', 'verify', '--file', str(path)]) == (0, 'W(4,3) verified\n', '')
    path.write_text('4 -1\n+++0\n+-0+\n+0--\n0+-+\n')
    code, out, _ = _run(['matrix', 'verify', '--file', str(path), '--format', 'json'])
    assert code == 0
    assert json.loads(out)['k'] == 3


def test_matrix_not_weighing(tmp_path):
    path = tmp_path / 'ones.wm'
    path.write_text('2 -1\n++\n++\n')
    code, out, err = _run(['matrix', 'verify', '--file', str(path)])
    assert code == 1
    assert out == ''
    assert 'not orthogonal' in err


def test_matrix_construct_and_tensor(tmp_path):
    code, out, _ = _run(['matrix', 'w43', '--t', '1'])
    assert (code, out) == (0, serialize_matrix(w43_power(1)))
    left = tmp_path / 'a.wm'
    assert _run(['matrix', 'w43', '--t', '1', '--out', str(left)])[0] == 0
    code, out, _ = _run(['matrix', 'tensor', '--file', str(left), str(left), '--format', 'json'])
    data = json.loads(out)
    assert (data['n'], data['k'], len(data['rows'])) == (16, 9, 16)


def test_paley_wrong_class_is_usage_error():
    code, _, err = _run(['matrix', 'paley1', '--q', '5'])
    assert code == 2
    assert '3 mod 4' in err


def test_unknown_flag():
    assert _run(['bounds', '--n', '4', '--k', '3', '--bogus'])[0] == 2
    assert _run(['nothing'])[0] == 2


def test_run_sls_quantum_json():
    code, out, _ = _run(['run', 'sls-quantum', '--p', '7', '--k', '1', '--s', '4', '--mode', 'full', '--format', 'json'])
    assert code == 0
    data = json.loads(out)
    assert list(data) == RunReport.keys()
    assert data['recovered_s'] == 4
    assert data['queries_used'] <= 2


def test_run_all_s_in_rank_order():
    code, out, _ = _run(['run', 'sls-classical', '--p', '7', '--all-s', '--format', 'json'])
    assert code == 0
    data = json.loads(out)
    assert [r['hidden_s'] for r in data] == list(range(7))
    assert all(r['recovered_s'] == r['hidden_s'] for r in data)


def test_run_wm_and_bv():
    code, out, _ = _run(['run', 'wm', '--matrix', 'w43', '--param', '2', '--s', '5', '--format', 'json'])
    assert code == 0 and json.loads(out)['recovered_s'] == 5
    code, out, _ = _run(['run', 'bv', '--n', '3', '--s', '101', '--format', 'json'])
    assert code == 0 and json.loads(out)['recovered_s'] == 5
    code, out, _ = _run(['run', 'bv', '--n', '2', '--all-s', '--format', 'csv'])
    assert code == 0
    assert out.splitlines()[0].split(',') == RunReport.keys()
    assert _run(['run', 'bv', '--n', '2'])[0] == 2


def test_sample_mode_reproducible():
    argv = ['run', 'sls-quantum', '--p', '3', '--k', '2', '--s', '5', '--mode', 'sample', '--seed', '9']
    first = _run(argv)
    assert first[0] == 0
    assert all(_run(argv) == first for _ in range(3))


def test_bounds_command():
    code, out, _ = _run(['bounds', '--n', '4', '--k', '3', '--eps', '0', '--format', 'json'])
    assert code == 0
    data = json.loads(out)
    assert list(data) == BoundsReport.keys()
    assert data['quantum_upper'] == 2
    code, out, _ = _run(['bounds', '--q', '13'])
    assert code == 0 and 'bound_proof' in out


def test_field_and_chi():
    code, out, _ = _run(['field', 'info', '--p', '3', '--k', '2', '--format', 'json'])
    data = json.loads(out)
    assert (data['q'], data['generator'], data['generator_rank']) == (9, [1, 1], 4)
    code, out, _ = _run(['chi', '--p', '7', '--x', '3', '--format', 'json'])
    assert json.loads(out)['chi'] == -1
    code, out, _ = _run(['chi', '--p', '5', '--format', 'csv'])
    assert out.splitlines() == ['x,chi', '0,0', '1,1', '2,-1', '3,-1', '4,1']
    assert _run(['field', 'info', '--p', '2'])[0] == 1


def test_family_and_tree():
    code, out, _ = _run(['family', '--n', '4', '--k', '3', '--t-max', '3', '--format', 'csv'])
    assert code == 0
    assert out.splitlines()[0] == 't,N,K,gamma,quantum,classical_lower'
    code, out, _ = _run(['tree', '--family', 'identity', '--param', '4', '--format', 'json'])
    assert json.loads(out)['depth'] == 3
    code, out, _ = _run(['tree', '--family', 'sls', '--param', '3', '--format', 'json'])
    assert json.loads(out)['depth'] == 1


def test_table_reproduction():
    table = table_reproduction()
    assert isinstance(table, pd.DataFrame)
    hadamard = table[table['family'] == 'k = n'].iloc[0]
    assert hadamard['quantum'] == '1'
    assert table[table['family'] == 'k = o(n)'].iloc[0]['quantum'] == 'pi/4 sqrt(n/k) + 2'
    w43 = table[table['family'] == 'w43(3)'].iloc[0]
    assert (w43['n'], w43['k'], w43['quantum']) == ('64', '27', '3')
    syl = table[table['family'] == 'sylvester(6)'].iloc[0]
    assert syl['quantum'] == '1'
    code, out, _ = _run(['table'])
    assert code == 0 and 'w43(3)' in out


def test_zero_dimension_is_usage_error():
    for argv in (['matrix', 'identity', '--n', '0'],
                 ['run', 'wm', '--matrix', 'identity', '--param', '0', '--s', '0'],
                 ['tree', '--family', 'identity', '--param', '0']):
        code, out, err = _run(argv)
        assert (code, out) == (2, '')
        assert 'must be positive' in err


def test_bounds_q_must_be_odd_prime_power():
    code, out, err = _run(['bounds', '--q', '15'])
    assert (code, out) == (2, '')
    assert 'odd prime power' in err


def test_usage_messages_go_to_given_streams():
    code, out, err = _run(['bounds', '--n', '4', '--bogus'])
    assert (code, out) == (2, '')
    assert 'unrecognized arguments: --bogus' in err
    code, out, err = _run(['--help'])
    assert (code, err) == (0, '')
    assert out.startswith('usage: qweigh')
