import subprocess
import sys
from pathlib import Path

import pytest

from hyperradix.cli import main

GOLDEN = Path(__file__).parent / "golden"


def load_cases():
    cases = []
    for line in (GOLDEN / "cases.tsv").read_text().splitlines():
        if not line or line.startswith("#"):
            continue
        name, code, *args = line.split("\t")
        cases.append(pytest.param(name, int(code), args, id=name))
    return cases


def run_cli(args):
    p = subprocess.run([sys.executable, "-m", "hyperradix", *args], capture_output=True)
    return p.returncode, p.stdout, p.stderr


def call(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name,code,args", load_cases())
def test_golden(name, code, args):
    got_code, out, _ = run_cli(args)
    assert got_code == code
    assert out == (GOLDEN / f"{name}.out").read_bytes()


@pytest.mark.parametrize(
    "args",
    [
        ["domain", "hC(-2)", "--depth=5"],
        ["domain", "hN(-3,-2)", "--depth=6", "--format=pgm", "--width=48", "--height=32"],
        ["verify", "sweep", "--box=4"],
    ],
    ids=["domain-csv", "domain-pgm", "sweep"],
)
def test_worker_count_invariance(args):
    outs = {run_cli(args + [f"--workers={w}"])[1] for w in (1, 2, 3)}
    assert len(outs) == 1


class TestExitCodes:
    def test_valid(self, capsys):
        code, out, _ = call(capsys, "validate", "hG(-3,+1)")
        assert code == 0 and out == "valid (paper: Verified)\n"

    def test_disagreement(self, capsys):
        code, out, _ = call(capsys, "validate", "hG(-2,+1)", "--mode=empirical", "--box=5")
        assert code == 2 and "witness 1+j\n" in out

    def test_empirical_valid(self, capsys):
        code, out, _ = call(capsys, "validate", "dG(-2,+1)", "--mode=empirical", "--box=5")
        assert code == 0 and out.startswith("valid (empirical")

    def test_empirical_invalid_agrees(self, capsys):
        code, out, _ = call(capsys, "validate", "hN(2,-3)", "--mode=empirical", "--box=5")
        assert code == 1 and "witness h(-1,0)" in out

    def test_non_terminating(self, capsys):
        code, out, _ = call(capsys, "encode", "hC(-1)", "h(1,0)")
        assert code == 3 and out.startswith("non-terminating: cycle h(1,0) -> h(-1,0)")

    def test_no_contraction(self, capsys):
        code, out, _ = call(capsys, "expand", "hG(-2,+1)", "1/3")
        assert code == 4 and out == "no contraction\n"

    @pytest.mark.parametrize(
        "args",
        [
            ["validate", "hX(1)"],
            ["encode", "dG(-2,+1)", "1/2"],
            ["decode", "dG(-2,+1)", "1,,3"],
            ["encode", "dG(-2,+1)", "5", "--bogus"],
            ["validate", "hG(-3,+1)", "--mode=sideways"],
            ["frobnicate"],
        ],
    )
    def test_usage_errors(self, capsys, args):
        with pytest.raises(SystemExit) as exc:
            sys.exit(main(args))
        assert exc.value.code == 64
        out, err = capsys.readouterr()
        assert out == "" and err

    def test_parse_error_reports_position(self, capsys):
        code, _, err = call(capsys, "decode", "dG(-2,+1)", "1,,3")
        assert code == 64 and "position 2" in err

    def test_out_of_range_digit(self, capsys):
        code, _, err = call(capsys, "decode", "dG(-2,+1)", "1,4")
        assert code == 1 and "digit" in err

    def test_negative_values_are_not_flags(self, capsys):
        code, out, _ = call(capsys, "encode", "hG(-3,+1)", "-1-j")
        assert code == 0
        code, back, _ = call(capsys, "decode", "hG(-3,+1)", out.strip())
        assert back == "-1-j\n"


class TestShellRoundTrip:
    @pytest.mark.parametrize(
        "base",
        ["hN(-2,-2)", "hN(-3,-2)", "hC(-2)", "hC(-3)", "hG(-3,+1)", "hG(-3,-1)", "hG(-4,+1)", "dG(-2,+1)", "dG(-3,-1)"],
    )
    def test_box(self, capsys, base):
        for c1 in range(-6, 7, 3):
            for c2 in range(-6, 7, 2):
                if base.startswith("hN") or base.startswith("hC"):
                    value = f"h({c1},{c2})"
                elif base.startswith("hG"):
                    value = f"h({c1 + c2},{c1 - c2})"
                else:
                    value = f"{c1}{c2:+d}e" if c2 else str(c1)
                code, digits, _ = call(capsys, "encode", base, value)
                assert code == 0
                code, back, _ = call(capsys, "decode", base, digits.strip())
                code2, again, _ = call(capsys, "encode", base, back.strip())
                assert code == code2 == 0 and again == digits


def test_domain_to_file(tmp_path, capsys):
    out = tmp_path / "cloud.csv"
    code, stdout, err = call(capsys, "domain", "hN(-2,-2)", "--depth=2", f"--out={out}")
    assert code == 0 and stdout == ""
    assert out.read_text().splitlines()[0] == "c1,c2,basis"
    assert len(out.read_text().splitlines()) == 17
    assert "16 points (enumerated), inside bbox: true" in err
