import csv
import io
import json

import pytest

from trinocong.cli import parse_int_set, parse_range, run
from trinocong.report import FIELDS


def run_to_file(tmp_path, name, *argv):
    out = tmp_path / name
    code = run([*argv, "--out", str(out)])
    return code, out.read_text()


def test_list_claims(capsys):
    assert run(["list-claims"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) >= 21
    assert any(line.startswith("thm1 ") for line in lines)


def test_usage_errors(capsys):
    assert run([]) == 2
    assert run(["verify", "--bogus"]) == 2
    assert run(["verify", "--primes", "9..3"]) == 2
    assert run(["verify", "--claims", "nope"]) == 2
    assert run(["verify", "--threads", "0"]) == 2
    assert run(["verify", "--format", "xml"]) == 2


def test_io_error(tmp_path):
    assert run(["verify", "--claims", "thm1", "--primes", "5..7", "--out",
                str(tmp_path / "missing" / "r.jsonl")]) == 2


def test_wolst_negative_control(tmp_path, capsys):
    code, text = run_to_file(
        tmp_path, "r.jsonl", "verify", "--claims", "wolst", "--primes", "3..3", "--include-small-primes"
    )
    assert code == 1
    records = [json.loads(line) for line in text.splitlines()]
    assert records == [{
        "type": "congruence", "id": "wolst", "p": 3, "params": {}, "modulus": "3^3",
        "lhs": "10", "rhs": "1", "pass": False, "micros": 0,
    }]
    assert "0 pass, 1 fail" in capsys.readouterr().err


def test_schema_and_key_order(tmp_path):
    code, text = run_to_file(
        tmp_path, "r.jsonl", "all", "--claims", "thm1,thm3,sunN2", "--primes", "5..13",
        "--m-set", "-3,2", "--sun-n-max", "3", "--lemma-n", "3", "--th3id-n", "2",
        "--certificate-n", "2", "--forms-n", "3",
    )
    assert code == 0
    types = set()
    for line in text.splitlines():
        rec = json.loads(line)
        assert tuple(rec) == FIELDS
        assert list(rec["params"]) == sorted(rec["params"])
        assert isinstance(rec["pass"], bool) and isinstance(rec["micros"], int)
        assert rec["lhs"] is None or rec["lhs"].isdigit()
        types.add(rec["type"])
        if rec["type"] == "identity":
            assert rec["modulus"] is None and rec["p"] is None
    assert types == {"identity", "congruence", "oracle"}


def test_csv_format(tmp_path):
    code, text = run_to_file(
        tmp_path, "r.csv", "verify", "--claims", "thm3", "--primes", "5..7", "--m-set", "2..3",
        "--format", "csv",
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert tuple(rows[0]) == FIELDS
    assert rows[0]["params"] == "m=2" and rows[0]["pass"] == "true"


def test_perturb_hook_sets_exit_code(tmp_path):
    code, text = run_to_file(
        tmp_path, "r.jsonl", "verify", "--claims", "thm1", "--primes", "5..97", "--perturb-rhs", "thm1=1"
    )
    assert code == 1
    assert all(not json.loads(line)["pass"] for line in text.splitlines())


@pytest.mark.parametrize("claim", ["thm1", "lem2.2", "pansun", "sunN2"])
def test_injected_failure_exit_codes(tmp_path, claim):
    base = ["verify", "--claims", claim, "--primes", "5..11", "--sun-n-max", "4"]
    assert run_to_file(tmp_path, "a", *base)[0] == 0
    assert run_to_file(tmp_path, "b", *base, "--perturb-rhs", f"{claim}=1")[0] == 1


def test_oracle_subcommand(tmp_path):
    code, text = run_to_file(
        tmp_path, "r.jsonl", "oracle", "--claims", "thm2,thm3,lem3.2", "--primes", "5..23", "--m-set", "2,6",
    )
    assert code == 0
    records = [json.loads(line) for line in text.splitlines()]
    assert {r["id"] for r in records} == {"thm2", "thm3", "lem3.2"}
    assert all(r["lhs"] == r["rhs"] for r in records)


def test_parsers():
    assert parse_int_set("-10..10") == tuple(range(-10, 11))
    assert parse_int_set("-3,2,5..7") == (-3, 2, 5, 6, 7)
    assert parse_range("5..3000") == (5, 3000)
    assert parse_range("3") == (3, 3)


def test_timings_opt_in(tmp_path):
    _, text = run_to_file(tmp_path, "r", "verify", "--claims", "thm2", "--primes", "500..600", "--timings")
    assert any(json.loads(line)["micros"] > 0 for line in text.splitlines())
