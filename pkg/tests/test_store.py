import pytest

from pyoptcurve.curves1 import EllipticCurve
from pyoptcurve.disc19 import Disc19Field
from pyoptcurve.search import find_optimal_genus3
from pyoptcurve.store import ResultStore

F47 = Disc19Field.from_q(47)
E47 = EllipticCurve(F47, 1, 38)
PARAMS = {'q': 47, 'kind': 'maximal', 'forms': [1], 'E': {'a': 1, 'b': 38}}


def _run(store, budget=None):
    start = store.last_cursor('genus3 find', PARAMS) or 0
    result = find_optimal_genus3(F47, 'max', forms=(1,), budget=budget,
                                 cursor=start, curve=E47)
    written = store.record_search('genus3 find', PARAMS, result, start)
    return result, written


def test_empty_store(tmp_path):
    store = ResultStore(str(tmp_path / 'none.jsonl'))
    assert list(store.records()) == []
    assert store.last_cursor('genus3 find', PARAMS) is None


def test_resume_until_finished(tmp_path):
    store = ResultStore(str(tmp_path / 'runs' / 'hits.jsonl'))
    head, _ = _run(store, budget=20 * 47 * 47)
    assert store.last_cursor('genus3 find', PARAMS) == head.cursor == 20
    tail, _ = _run(store)
    assert tail.status == 'exhausted'
    assert store.last_cursor('genus3 find', PARAMS) == 94
    hits = [r for r in store.records('genus3 find', PARAMS)
            if r['hit'] is not None]
    assert len(hits) == len(head) + len(tail)
    assert all(r['report']['pass'] for r in hits)
    assert all(set(r) == {'cmd', 'params', 'hit', 'report', 'cursor', 'ts'}
               for r in store.records())


def test_finished_search_appends_nothing(tmp_path):
    path = tmp_path / 'hits.jsonl'
    store = ResultStore(str(path))
    _run(store)
    before = path.read_text()
    again, written = _run(store)
    assert written == 0
    assert not again
    assert path.read_text() == before


def test_cursor_must_not_decrease(tmp_path):
    store = ResultStore(str(tmp_path / 'hits.jsonl'))
    store.append('genus3 find', PARAMS, None, {}, 10)
    with pytest.raises(ValueError):
        store.append('genus3 find', PARAMS, None, {}, 5)
    other = dict(PARAMS, kind='minimal')
    store.append('genus3 find', other, None, {}, 5)
    assert store.last_cursor('genus3 find', other) == 5


def test_record_hit_once(tmp_path):
    store = ResultStore(str(tmp_path / 'hits.jsonl'))
    params = {'q': 47, 'kind': 'maximal'}
    assert store.record_hit('elliptic find', params, {'a': 1}, {}) == 1
    assert store.record_hit('elliptic find', params, {'a': 1}, {}) == 0
    assert len(list(store.records('elliptic find'))) == 1
