import csv
import io
import json
from fractions import Fraction

import pytest

from stpreach import RMatrix, RVector, delta
from stpreach.cli import (
    ParseError,
    cmd_dims,
    cmd_report,
    main,
    parse_matrix_text,
    parse_vector_text,
    poly_from_json,
)

from .conftest import A_EX3


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


@pytest.fixture
def ex3(files):
    return files("a.txt", "2 4\n1 0 1 1\n0 1 0 1\n")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestParsing:
    def test_matrix(self):
        assert parse_matrix_text("2 4\n1 0 1 1\n0 1 0 1\n") == A_EX3

    def test_vector(self):
        assert parse_vector_text("3\n1 0 0\n") == delta(3, 1)

    def test_rationals(self):
        M = parse_matrix_text("2 2\n1/2 0 0 1/3\n")
        assert M == RMatrix([[Fraction(1, 2), 0], [0, Fraction(1, 3)]])

    def test_free_layout(self):
        assert parse_matrix_text("2 4\n1 0\n1 1 0 1\n0\n1") == A_EX3

    @pytest.mark.parametrize("text,msg", [
        ("2 2\n1 x 0 1\n", "line 2, column 3"),
        ("2 2\n1 0 0\n", "expected 4 entries"),
        ("2 2\n1 0 0 1 5\n", "line 2, column 9"),
        ("2 2\n1/0 0 0 1\n", "zero denominator"),
        ("2\n1 0\n", "header"),
        ("0 2\n", "positive"),
    ])
    def test_errors(self, text, msg):
        with pytest.raises(ParseError, match=msg):
            parse_matrix_text(text)


class TestDims:
    @pytest.mark.parametrize("m,k,p,expected", [
        (10, 6, 68040, [68040, 11340, 1890, 630, 210, 70, 70, 70]),
        (6, 20, 30, [30, 6, 6, 6, 6, 6, 6, 6]),
    ])
    def test_table1(self, m, k, p, expected):
        rep = cmd_dims(m, k, p, 7)
        rows = rep.tables["dims"].rows
        assert [r[1] for r in rows] == expected
        assert [r[2] for r in rows[1:]] == expected[1:]

    def test_ex3_setup(self):
        rep = cmd_dims(2, 2, 3, 3)
        assert [r[1] for r in rep.tables["dims"].rows] == [3, 6, 6, 6]
        assert rep.fields["minimal_t_star"] == 1 and rep.fields["r_star"] == 6

    def test_csv_matches_text(self, capsys):
        _, text, _ = run(capsys, "dims", "--m", "10", "--k", "6", "--p", "68040", "--t-max", "7", "--no-timing")
        _, csv_out, _ = run(capsys, "dims", "--m", "10", "--k", "6", "--p", "68040", "--t-max", "7",
                            "--format", "csv")
        table = text.split("## dims\n")[1].strip().splitlines()
        rows = list(csv.reader(io.StringIO(csv_out)))
        assert len(rows) == len(table)
        for line, row in zip(table, rows):
            assert line.split() == [c for c in row if c]

    def test_matrix_shape(self, capsys, ex3):
        code, out, _ = run(capsys, "dims", "--matrix", ex3, "--p", "3", "--format", "json", "--no-timing")
        assert code == 0
        assert [r[1] for r in json.loads(out)["tables"]["dims"]["rows"]] == [3, 6, 6]

    def test_unbounded_matrix(self, capsys, files):
        path = files("b.txt", "2 3\n1 2 3\n4 5 6\n")
        code, out, err = run(capsys, "dims", "--matrix", path, "--p", "3")
        assert code == 3 and "does not divide" in err and out == ""


class TestCommands:
    def test_profile_json(self, capsys):
        code, out, _ = run(capsys, "profile", "--m", "48", "--k", "1715", "--p", "18900", "--format", "json")
        doc = json.loads(out)
        assert code == 0 and doc["fields"]["r_star"] == 432 and doc["fields"]["t_star_bound"] == 3

    def test_reachdim(self, capsys):
        _, out, _ = run(capsys, "reachdim", "--m", "10", "--k", "6", "--p", "68040", "--r", "100",
                        "--format", "json")
        doc = json.loads(out)
        assert doc["fields"]["reachable"] is False

    def test_basis(self, capsys, ex3):
        _, out, _ = run(capsys, "basis", "--matrix", ex3, "--p", "3", "--t", "1", "--format", "json")
        doc = json.loads(out)
        assert doc["fields"] == {"ambient": 6, "dim": 3}

    def test_member_negative_exits_zero(self, capsys, ex3, files):
        y2 = files("y2.txt", "6\n3 3 3 2 3 3\n")
        code, out, _ = run(capsys, "member", "--matrix", ex3, "--p", "3", "--vector", y2, "--t", "1",
                           "--format", "json")
        doc = json.loads(out)
        assert code == 0
        row = doc["tables"]["verdicts"]["rows"][0]
        assert row[3] is False and row[4] == 4

    def test_member_scan(self, capsys, ex3, files):
        y1 = files("y1.txt", "6\n2 2 3 2 1 1\n")
        _, out, _ = run(capsys, "member", "--matrix", ex3, "--p", "3", "--vector", y1, "--t-max", "2",
                        "--format", "json")
        assert json.loads(out)["fields"]["reachable_times"] == [1, 2]

    def test_annihilator(self, capsys, ex3, files):
        x = files("x.txt", "3\n0 1 0\n")
        _, out, _ = run(capsys, "annihilator", "--matrix", ex3, "--vector", x, "--p", "3", "--r", "6",
                        "--format", "json")
        f = json.loads(out)["fields"]
        assert f["min_annihilator"]["text"] == "z^3 - z^2 - 3z - 1"
        assert f["union_annihilator"]["text"] == "z^4 - 2z^3 - 2z^2 + 2z + 1"
        assert f["space_annihilator"]["text"] == "z^6 - 2z^5 - 2z^4 + 2z^3 + z^2"
        assert f["union_test"] == "ProperSubset"

    def test_malformed_exit_2(self, capsys, files):
        bad = files("bad.txt", "2 4\n1 0 1\n")
        code, _, err = run(capsys, "report", "--matrix", bad, "--p", "3")
        assert code == 2 and "expected 8 entries" in err

    def test_missing_file_exit_2(self, capsys):
        code, _, _ = run(capsys, "report", "--matrix", "/nonexistent/file", "--p", "3")
        assert code == 2

    def test_bad_p(self, capsys):
        code, _, _ = run(capsys, "dims", "--m", "2", "--k", "2", "--p", "0")
        assert code == 2


class TestReport:
    def test_ex3(self):
        rep = cmd_report(A_EX3, 3)
        f = rep.fields
        assert not rep.errors
        assert f["minimal_t_star"] == 1 and f["r_star"] == 6
        assert str(f["union_annihilator"]) == "z^4 - 2z^3 - 2z^2 + 2z + 1"
        assert str(f["invariant_space_annihilator"]) == "z^6 - 2z^5 - 2z^4 + 2z^3 + z^2"
        assert str(f["f_over_q"]) == "z^2"
        assert f["union_test"] == "ProperSubset"
        rel = {(r[0], r[1]): r[2] for r in rep.tables["relations"].rows}
        assert rel[("R_1", "R_2")] == "incomparable"

    def test_identity(self):
        rep = cmd_report(RMatrix([[1, 0], [0, 1]]), 2)
        assert str(rep.fields["union_annihilator"]) == "z - 1"
        assert str(rep.fields["invariant_space_annihilator"]) == "z - 1"
        assert rep.fields["union_test"] == "Inconclusive"

    def test_p6(self):
        rep = cmd_report(A_EX3, 6)
        assert rep.fields["minimal_t_star"] == 0
        assert rep.fields["union_test"] == "Inconclusive"

    def test_unbounded_partial(self, capsys, files):
        path = files("b.txt", "2 3\n1 2 0\n0 1 -1\n")
        code, out, err = run(capsys, "report", "--matrix", path, "--p", "2", "--format", "json")
        doc = json.loads(out)
        assert code == 3
        assert "profile" in doc["errors"] and "annihilators" in doc["errors"]
        assert "R_2" in doc["tables"]

    def test_json_roundtrip(self, capsys, ex3):
        _, out, _ = run(capsys, "report", "--matrix", ex3, "--p", "3", "--format", "json")
        doc = json.loads(out)
        q = poly_from_json(doc["fields"]["union_annihilator"])
        assert str(q) == "z^4 - 2z^3 - 2z^2 + 2z + 1"
        basis = [RVector(Fraction(c) for c in row[1]) for row in doc["tables"]["R_3"]["rows"]]
        assert basis[2].entries[-1] == Fraction(-14, 3)
        from stpreach import reach_basis

        assert tuple(basis) == reach_basis(A_EX3, 3, 3).basis

    def test_deterministic(self, capsys, ex3):
        outs = [run(capsys, "report", "--matrix", ex3, "--p", "3", "--no-timing")[1] for _ in range(2)]
        assert outs[0] == outs[1]
        assert "elapsed" not in outs[0]
        _, timed, _ = run(capsys, "report", "--matrix", ex3, "--p", "3")
        assert "elapsed" in timed
