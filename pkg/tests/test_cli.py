import json

import pytest

from pyoptcurve.cli import run_cli


def _run(capsys, *argv):
    code = run_cli(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_no_arguments(capsys):
    code, _, err = _run(capsys)
    assert code == 2
    assert 'usage' in err


def test_unknown_flag(capsys):
    code, _, err = _run(capsys, 'fields', '--bogus')
    assert code == 2
    assert 'usage' in err


def test_help(capsys):
    code, out, _ = _run(capsys, '--help')
    assert code == 0
    assert 'genus3' in out


def test_fields_csv(capsys):
    code, out, _ = _run(capsys, 'fields', '--max', '1000', '--format', 'csv')
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == 'q,m'
    assert len(lines) == 11
    assert lines[1] == '47,13'
    assert lines[-1] == '997,63'


def test_flags_before_command(capsys):
    code, out, _ = _run(capsys, '--format', 'json', 'fields', '--max', '61')
    assert code == 0
    assert json.loads(out) == [{'q': 47, 'm': 13}, {'q': 61, 'm': 15}]
    code, out, _ = _run(capsys, '--format', 'json', 'fields', '--max', '61',
                        '--format', 'csv')
    assert code == 0
    assert out.strip().splitlines()[0] == 'q,m'


def test_elliptic_verify(capsys):
    code, out, _ = _run(capsys, 'elliptic', 'verify', '--q', '47', '--a', '1',
                        '--b', '38', '--expect', 'max', '--format', 'json')
    assert code == 0
    report = json.loads(out)
    assert report['count'] == 61 and report['kind'] == 'maximal'


def test_elliptic_verify_failure(capsys):
    code, out, _ = _run(capsys, 'elliptic', 'verify', '--q', '47', '--a', '1',
                        '--b', '39', '--expect', 'max', '--format', 'json')
    assert code == 1
    assert not json.loads(out)['pass']


def test_invalid_field(capsys):
    code, _, err = _run(capsys, 'elliptic', 'find', '--q', '53', '--kind',
                        'max')
    assert code == 2
    assert 'discriminant' in err


def test_invalid_kind(capsys):
    code, _, _ = _run(capsys, 'elliptic', 'find', '--q', '47', '--kind',
                      'best')
    assert code == 2


def test_singular_curve(capsys):
    code, _, _ = _run(capsys, 'elliptic', 'verify', '--q', '47', '--a', '0',
                      '--b', '0')
    assert code == 2


def test_genus2_construct(capsys):
    code, out, _ = _run(capsys, 'genus2', 'construct', '--q', '47', '--a',
                        '1', '--b', '38', '--alpha', '1', '--beta', '30',
                        '--format', 'json')
    assert code == 0
    payload = json.loads(out)
    assert payload['sextic'] == [33, 0, 22, 0, 4, 0, 1]
    assert payload['count'] == 74


def test_genus2_verify_mismatch(capsys):
    code, _, _ = _run(capsys, 'genus2', 'verify', '--q', '47', '--a', '1',
                      '--b', '38', '--alpha', '1', '--beta', '30',
                      '--expect', 'max', '--sextic', '34,0,22,0,4,0,1')
    assert code == 1


def test_genus3_verify(capsys):
    base = ['genus3', 'verify', '--q', '47', '--a', '1', '--b', '38',
            '--expect', 'max', '--format', 'json']
    code, out, _ = _run(capsys, *base, '--u', '23,19,44', '--v', '1')
    assert code == 0
    report = json.loads(out)
    assert report['count'] == 87 and report['branch_B'] == 4
    code, out, _ = _run(capsys, *base, '--u', '39,46,10', '--v', '1')
    assert code == 1
    report = json.loads(out)
    assert report['count'] == 57 and report['failure'] == 'count'
    code, out, _ = _run(capsys, *base, '--u', '0', '--v', '45,1')
    assert code == 1
    assert json.loads(out)['failure'] == 'genus'


def test_genus3_find_with_store(capsys, tmp_path):
    store = str(tmp_path / 'hits.jsonl')
    argv = ['genus3', 'find', '--q', '47', '--kind', 'max', '--forms', '1',
            '--store', store, '--format', 'json']
    # the first hit lies in slice 44
    code, out, _ = _run(capsys, *argv, '--budget', str(30 * 47 * 47))
    assert code == 1
    assert json.loads(out)['cursor'] == 30
    code, out, _ = _run(capsys, *argv)
    assert code == 0
    assert json.loads(out)['status'] == 'exhausted'
    with open(store) as f:
        before = f.read()
    code, out, _ = _run(capsys, *argv)
    assert code == 0
    assert json.loads(out)['hits'] == []
    with open(store) as f:
        assert f.read() == before


def test_genus3_find_without_hits(capsys):
    code, out, _ = _run(capsys, 'genus3', 'find', '--q', '47', '--kind',
                        'min', '--forms', '1', '--format', 'json')
    assert code == 1
    payload = json.loads(out)
    assert payload['hits'] == [] and payload['status'] == 'exhausted'



def test_zeta(capsys):
    code, out, _ = _run(capsys, 'zeta', '--q', '47', '--genus', '1',
                        '--curve', '{"a": 1, "b": 38}', '--max-r', '2',
                        '--format', 'json')
    assert code == 0
    payload = json.loads(out)
    assert payload['N'] == [61, 2135]
    assert payload['L'] == [1, 13, 47]
    assert payload['kind'] == 'maximal'


def test_zeta_bad_curve(capsys):
    code, _, _ = _run(capsys, 'zeta', '--q', '47', '--genus', '2',
                      '--curve', '{"a": 1}')
    assert code == 2
    code, _, _ = _run(capsys, 'zeta', '--q', '47', '--genus', '1',
                      '--curve', 'not json')
    assert code == 2


def test_audit(capsys):
    code, out, _ = _run(capsys, 'audit', '--q', '47', '--format', 'json')
    assert code == 1
    report = json.loads(out)
    assert report['summary'] == {'FAIL(count)': 1, 'PASS': 3}
    code, out, _ = _run(capsys, 'audit', '--q', '47', '--table', 'elliptic')
    assert code == 0
    assert 'PASS: 2' in out


@pytest.mark.parametrize('table', ['elliptic', 'genus3'])
def test_audit_independent_of_threads(capsys, table):
    outputs = set()
    for threads in ('1', '4', '8'):
        _, out, _ = _run(capsys, 'audit', '--table', table, '--threads',
                         threads, '--format', 'json')
        outputs.add(out)
    assert len(outputs) == 1



def test_audit_failing_dataset(capsys, tmp_path):
    path = tmp_path / 'rows.csv'
    path.write_text('table,q,role,payload,normalization\n'
                    'elliptic,47,maximal,"a=1 b=39",\n')
    code, out, _ = _run(capsys, 'audit', '--dataset', str(path))
    assert code == 1
    assert 'FAIL(count)' in out


def test_table(capsys):
    code, out, _ = _run(capsys, 'table', '--genus', '1', '--max', '61',
                        '--format', 'json')
    assert code == 0
    payload = json.loads(out)
    assert [r['q'] for r in payload['rows']] == [47, 61]
    assert payload['scope']['genus'] == 1


def test_out_file(capsys, tmp_path):
    target = tmp_path / 'fields.txt'
    code, out, _ = _run(capsys, 'fields', '--max', '61', '--out',
                        str(target))
    assert code == 0 and out == ''
    assert '47' in target.read_text()


def test_settings_dir_created(capsys, optcurve_home):
    code, _, _ = _run(capsys, 'fields', '--max', '47', '--verbose')
    assert code == 0
    assert optcurve_home.is_dir()
