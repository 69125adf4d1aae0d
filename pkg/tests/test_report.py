import csv
import io
import json

import pytest
from hypothesis import given, strategies as st

from chern.errors import InputError
from chern.lab import VERDICTS, ExperimentReport, sign_test
from chern.report import CSV_HEADER, from_json, to_csv, to_json, write_report

ints = st.integers(-(10**20), 10**20)
reports = st.builds(
    ExperimentReport,
    claim=st.sampled_from(["sign", "ses", "northcott", "module"]),
    entry=st.from_regex(r"[a-z][a-z0-9_]{0,7}", fullmatch=True),
    inputs=st.lists(st.tuples(st.text(max_size=5), st.text(max_size=10)), max_size=2, unique_by=lambda t: t[0]).map(tuple),
    e=st.lists(ints, max_size=4).map(tuple),
    lam=st.none() | st.integers(0, 100),
    evidence=st.lists(
        st.tuples(st.text(max_size=5), ints | st.lists(ints, max_size=3).map(tuple) | st.text(max_size=5)),
        max_size=3,
        unique_by=lambda t: t[0],
    ).map(tuple),
    verdict=st.sampled_from(VERDICTS),
    seed=st.integers(0, 2**63 - 1),
)


def test_empty_report():
    assert to_json([]) == '{"schema_version":"1","runs":[]}'


@given(st.lists(reports, max_size=4))
def test_json_round_trip(rs):
    back, header = from_json(to_json(rs, seed=7, config={"nmax": 12}))
    assert back == rs
    assert header == {"seed": 7, "config": {"nmax": 12}}


@given(st.lists(reports, max_size=4))
def test_json_has_no_floats(rs):
    def walk(v):
        assert not isinstance(v, float)
        if isinstance(v, dict):
            for x in v.values():
                walk(x)
        elif isinstance(v, list):
            for x in v:
                walk(x)

    walk(json.loads(to_json(rs)))


@given(st.lists(reports, min_size=3, max_size=3))
def test_csv_rows(rs):
    rows = list(csv.reader(io.StringIO(to_csv(rs))))
    assert tuple(rows[0]) == CSV_HEADER
    assert len(rows) == 4
    assert [r[6] for r in rows[1:]] == [r.verdict for r in rs]


def test_csv_three_runs_is_four_lines():
    r = ExperimentReport("sign", "two_planes", (), (2, -1, 0), None, (), "pass", 1)
    assert to_csv([r, r, r]).count("\n") == 4
    assert to_csv([r]).splitlines()[1] == "two_planes,sign,2,-1,0,,pass,1"


def test_sign_record_on_two_planes(rings):
    rep = sign_test(rings["two_planes"], trials=2, seed=1)
    run = json.loads(to_json([rep]))["runs"][0]
    assert run["e"] == [2, -1, 0]
    assert run["verdict"] == "pass"
    assert list(run) == ["claim", "entry", "inputs", "e", "lambda", "evidence", "verdict", "seed"]


def test_write_failure_is_input_error(tmp_path):
    with pytest.raises(InputError):
        write_report([], "json", tmp_path / "missing" / "out.json")
    with pytest.raises(InputError):
        write_report([], "xml")
    out = tmp_path / "r.json"
    assert write_report([], "json", out) == out.read_text()
