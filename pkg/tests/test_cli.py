import io
import json
import pathlib
import subprocess
import sys

import pytest

from corelab.cli import EXIT_FINDING, EXIT_OK, EXIT_USAGE, main, run_command

PROBLEMS = pathlib.Path(__file__).resolve().parent.parent / "problems"
EX52 = str(PROBLEMS / "ex52.ring")
EX52P = str(PROBLEMS / "ex52_p32003.ring")
EX53 = str(PROBLEMS / "ex53.ring")
MPOW = str(PROBLEMS / "mpowers.ring")


def run(*argv):
    return run_command(argv)


def run_json(*argv):
    code, out, err = run("--json", *argv)
    return code, (json.loads(out) if out else None), err


def test_spread_and_height():
    assert run("spread", "-f", EX52, "-i", "I")[:2] == (EXIT_OK, "analytic spread: 2\n")
    assert run("height", "-f", MPOW, "-i", "P")[:2] == (EXIT_OK, "height: 2\n")


def test_global_options_before_or_after_command():
    a = run("-f", EX52, "-i", "I", "spread")
    b = run("spread", "-f", EX52, "-i", "I")
    assert a == b


def test_fiber_text_and_json():
    code, out, _ = run("fiber", "-f", EX52, "-i", "I")
    assert code == EXIT_OK
    assert "# T1 -> x^6" in out and "T3^2 + T1*T4" in out and "# dimension 2" in out
    code, doc, _ = run_json("fiber", "-f", EX52, "-i", "I")
    assert doc["result"]["dimension"] == 2
    assert sorted(doc["result"]["ideal"]) == doc["result"]["ideal"]
    assert doc["result"]["generator_map"]["T5"] == "y^9"


def test_json_keys():
    code, doc, _ = run_json("height", "-f", MPOW, "-i", "M")
    assert code == EXIT_OK
    assert set(doc) == {"command", "inputs", "result", "notes", "seed", "timings_ms"}
    assert doc["command"] == "height" and doc["result"] == 2
    assert doc["inputs"]["field"] == "field p=32003"
    assert "total" in doc["timings_ms"]


def test_rednum_reduction_and_non_reduction():
    code, out, _ = run("rednum", "-f", EX52, "-i", "I", "-j", "H")
    assert code == EXIT_OK and out.strip() == "reduction number r_H(I) = 2"
    code, doc, _ = run_json("rednum", "-f", EX53, "-i", "I", "-j", "K", "--bound", "12")
    assert code == EXIT_FINDING
    assert doc["result"] == {"verified": False, "r": None, "bound": 12}


def test_randomized_commands_need_a_seed():
    for cmd in (["core"], ["mc-core", "--trials", "8"], ["decomp", "--s", "1", "--nmax", "3"]):
        code, out, err = run(*cmd, "-f", MPOW, "-i", "M2")
        assert code == EXIT_USAGE and "needs --seed" in err and out == ""


def test_usage_errors():
    assert run()[0] == EXIT_USAGE
    assert run("frobnicate")[0] == EXIT_USAGE
    code, _, err = run("spread", "-f", MPOW, "-i", "Nope")
    assert code == EXIT_USAGE and "defined: M, M2" in err
    code, _, err = run("spread", "-f", str(PROBLEMS / "missing.ring"), "-i", "I")
    assert code == EXIT_USAGE
    code, _, err = run("spread", "-i", "I")
    assert code == EXIT_USAGE and "-f" in err


def test_parse_error_is_positioned(tmp_path):
    bad = tmp_path / "bad.ring"
    bad.write_text("field p=7\nring x y\nideal I = x, z^2\n")
    code, _, err = run("spread", "-f", str(bad), "-i", "I")
    assert code == EXIT_USAGE and "line 3, column 14" in err


def test_core_on_m_squared():
    code, doc, _ = run_json("core", "-f", MPOW, "-i", "M2", "--seed", "3")
    assert code == EXIT_OK
    assert doc["result"]["core"] == ["x*y^2", "x^2*y", "x^3", "y^3"]
    assert doc["seed"] == 3
    assert any("char condition PASS" in n for n in doc["notes"])
    assert any(n.startswith("warning:") for n in doc["notes"])  # F_32003 is a small field


def test_core_below_threshold_is_usage_error():
    code, _, err = run("core", "-f", EX52P, "-i", "I", "--seed", "1", "--n", "0")
    assert code == EXIT_USAGE and "threshold" in err


def test_mc_core_and_decomp():
    code, doc, _ = run_json("mc-core", "-f", MPOW, "-i", "M", "--trials", "8", "--stall", "8",
                            "--seed", "1")
    assert code == EXIT_OK and doc["result"]["core"] == ["x", "y"]
    code, out, _ = run("mc-core", "-f", MPOW, "-i", "M", "--trials", "8", "--stall", "4",
                       "--seed", "1")
    assert code == EXIT_USAGE
    code, doc, _ = run_json("decomp", "-f", EX52, "-i", "I", "--s", "1", "--nmax", "4",
                            "--seed", "2")
    assert code == EXIT_OK and doc["result"]["holds"] is False
    assert doc["result"]["window"] == [3, 4]


def test_hyp_example_52():
    code, doc, _ = run_json("hyp", "-f", EX52, "-i", "I", "-j", "H", "--prime", "T2,T3,T4",
                            "--seed", "4")
    assert code == EXIT_OK
    r = doc["result"]
    assert (r["g"], r["l"], r["r"], r["char_condition"]) == (2, 2, 2, "FAIL")
    assert r["edims"] == {"(T2,T3,T4)": 2}
    assert doc["seed"] == 4


def test_hyp_seed_rules():
    # without candidate primes nothing is sampled, so no seed is needed
    code, doc, _ = run_json("hyp", "-f", EX52P, "-i", "I", "-j", "H")
    assert code == EXIT_OK and doc["result"]["char_condition"] == "PASS"
    code, _, err = run("hyp", "-f", EX52, "-i", "I", "-j", "H", "--prime", "T2,T3,T4")
    assert code == EXIT_USAGE and "needs --seed" in err


def test_json_is_reproducible():
    argv = ["core", "-f", EX52P, "-i", "I", "--seed", "7", "--n", "2"]
    docs = []
    for _ in range(2):
        code, doc, _ = run_json(*argv)
        assert code == EXIT_OK
        doc.pop("timings_ms")
        docs.append(json.dumps(doc, sort_keys=True))
    assert docs[0] == docs[1]


def test_verify_mpowers():
    code, out, _ = run("verify", "--example", "mpowers")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert len(lines) == 5 and all(line.startswith("PASS") for line in lines)


def test_verify_unknown_example():
    assert run("verify", "--example", "9.9")[0] == EXIT_USAGE


def test_main_writes_to_given_streams():
    out, err = io.StringIO(), io.StringIO()
    assert main(["height", "-f", MPOW, "-i", "P"], out=out, err=err) == EXIT_OK
    assert out.getvalue() == "height: 2\n" and err.getvalue() == ""


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "corelab.cli", "height", "-f", MPOW, "-i", "P"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and proc.stdout == "height: 2\n"


def test_verify_example_53_json():
    code, doc, _ = run_json("verify", "--example", "5.3")
    assert code == EXIT_OK
    assert [c["passed"] for c in doc["result"]] == [True, True, True]
