import io
import subprocess
import sys

import pytest

from rank1.cli import main
from rank1.verdict import Verdict


@pytest.fixture
def files(tmp_path):
    specs = {
        "chacon": "period:\nstage r=3 s=0,1\n",
        "mirror": "period:\nstage r=3 s=1,0\n",
        "r2": "period:\nstage r=2 s=2\n",
        "r3": "period:\nstage r=3 s=0,0\n",
        "deg": "period:\nstage r=2 s=1\n",
        "bad": "period:\nstage r=3 s=0\n",
        "empty": "",
    }
    out = {}
    for name, text in specs.items():
        p = tmp_path / f"{name}.spec"
        p.write_text(text)
        out[name] = str(p)
    return out


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def machine_lines(text):
    return [line for line in text.splitlines() if line]


def test_check_iso(files):
    code, out, _ = run("check-iso", files["chacon"], files["mirror"])
    assert code == 1 and "Thm3.1" in out and "certificates" in out


def test_check_disjoint(files):
    code, out, _ = run("check-disjoint", files["chacon"], files["mirror"], "--format", "machine")
    assert code == 0
    v = Verdict.from_lines(out.splitlines())
    assert v.rule == "Cor3.5-2′"


def test_ergodic_upto(files):
    code, out, _ = run("ergodic", files["chacon"], "--upto", "5")
    assert code == 0 and "traces: 4" in out
    code, out, _ = run("ergodic", files["r2"], "--d", "2")
    assert code == 1 and "fails at N=1" in out


def test_check_msj(files):
    assert run("check-msj", files["chacon"])[0] == 0
    code, out, _ = run("check-msj", files["r3"], "--format", "machine")
    assert code == 2 and "answer: NotApplicable" in out and 'witness.failed: ["c"]' in out
    code, out, _ = run("check-msj", files["r2"])
    assert code == 1 and "Cor4.6" in out


def test_machine_output_is_key_value(files):
    for argv in (("check-iso", files["chacon"], files["mirror"]),
                 ("check-msj", files["chacon"]),
                 ("generate", files["chacon"], "--depth", "3")):
        code, out, _ = run(*argv, "--format", "machine")
        for line in machine_lines(out):
            key, sep, value = line.partition(": ")
            assert sep and key and " " not in key


def test_verify_round_trip(files, tmp_path):
    for argv, specs in ((("check-iso",), ("chacon", "mirror")),
                        (("check-disjoint",), ("chacon", "mirror")),
                        (("check-msj",), ("chacon",)),
                        (("check-msj",), ("r2",))):
        paths = [files[s] for s in specs]
        _, out, _ = run(*argv, *paths, "--format", "machine")
        vf = tmp_path / "v.txt"
        vf.write_text(out)
        code, res, _ = run("verify", *paths, "--verdict", str(vf))
        assert code == 0 and "verified: true" in res
    # a verdict checked against the wrong specs is rejected
    _, out, _ = run("check-msj", files["chacon"], "--format", "machine")
    vf.write_text(out)
    code, res, _ = run("verify", files["r3"], "--verdict", str(vf))
    assert code == 1 and "verified: false" in res


def test_generate_and_labels(files):
    code, out, _ = run("generate", files["chacon"], "--depth", "2")
    assert code == 0 and "0010001010010" in out
    code, out, _ = run("labels", "--spec", files["chacon"], "--level", "2", "--offset", "9")
    assert code == 0 and "lambda: inf,inf" in out
    code, _, err = run("labels", "--spec", files["chacon"], "--level", "2", "--offset", "99")
    assert code == 64 and "outside" in err


def test_canonical(files):
    code, out, _ = run("canonical", files["chacon"])
    assert code == 0 and "degenerate: false" in out
    code, out, _ = run("canonical", files["deg"])
    assert code == 2 and "degenerate: true" in out


def test_validate(files):
    code, out, _ = run("validate", files["chacon"])
    assert code == 0 and "valid: true" in out and "R: 3" in out
    code, _, err = run("validate", files["bad"])
    assert code == 65 and ":2:1:" in err and "lh(s)" in err
    code, _, err = run("validate", files["empty"])
    assert code == 65 and "no stages" in err
    code, _, err = run("validate", files["chacon"] + ".missing")
    assert code == 65 and "cannot read" in err


def test_usage_errors(files):
    assert run()[0] == 64
    assert run("nope")[0] == 64
    assert run("check-iso", files["chacon"])[0] == 64
    assert run("ergodic", files["chacon"], "--d", "1")[0] == 64
    assert run("ergodic", files["chacon"], "--d", "x")[0] == 64
    assert run("generate", files["chacon"], "--depth", "-1")[0] == 64


def test_degenerate_is_reported_not_raised(files):
    code, _, err = run("check-iso", files["deg"], files["deg"])
    assert code == 2 and "hypotheses not met" in err and "Traceback" not in err


def test_cap_and_depth_limits(files):
    code, _, err = run("generate", files["chacon"], "--depth", "12", "--cap", "100")
    assert code == 2 and "cap" in err


def test_stdin_and_module_entry(files):
    text = open(files["chacon"]).read()
    proc = subprocess.run([sys.executable, "-m", "rank1", "validate", "-"], input=text,
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "valid: true" in proc.stdout
