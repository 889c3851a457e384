#!/usr/bin/env python3
"""
Integration Test Suite — Command Line
=====================================
Drives ``main.main([...])`` end to end for every subcommand and checks
stdout payloads, stderr status lines and exit codes:

    0 ok · 2 usage / parse · 3 size bound · 4 domain · 5 audit failure

Run:   python test_integration.py
       python -m pytest test_integration.py -v
"""
import sys
import os
import io
import json
import tempfile
import traceback
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction
from unittest import mock

import pandas as pd

# ── Ensure project root is on sys.path ──────────────────────────────
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import main as cli


def _cli(*argv):
    """Run the CLI in-process; returns (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        try:
            code = cli.main(list(argv))
        except SystemExit as exc:
            code = exc.code
    return code, out.getvalue(), err.getvalue()


# =====================================================================
#  Test harness
# =====================================================================

PASS = 0
FAIL = 0
SKIP = 0


def _run(label, fn):
    """Execute a test function; track pass/fail/skip."""
    global PASS, FAIL, SKIP
    try:
        result = fn()
        if result == 'SKIP':
            SKIP += 1
            print(f"  ⏭️  {label} — skipped")
        else:
            PASS += 1
            print(f"  ✅  {label}")
    except Exception as e:
        FAIL += 1
        print(f"  ❌  {label}  →  {e}")
        traceback.print_exc(limit=4)
        print()


# ─────────────────────────────────────────────────────────────────────
#  1. Config — singleton and defaults
# ─────────────────────────────────────────────────────────────────────
def test_config():
    from config import config, Config
    assert isinstance(config, Config)
    assert config.export.format_tag == "ultratree/1"
    assert config.bounds.max_tree_nodes == 10 ** 6
    assert config.bounds.max_census_words == 10 ** 6
    assert config.sampling.corpus_size == 500
    print(f"        seed={config.sampling.default_seed}, "
          f"precision={config.export.default_precision}, "
          f"output_dir={config.output_dir}")
    return True


# ─────────────────────────────────────────────────────────────────────
#  2. tree
# ─────────────────────────────────────────────────────────────────────
def test_tree_dot():
    code, out, err = _cli("tree", "--p", "2", "--e", "1", "--f", "1",
                          "--omega", "-1:2", "--depth", "3", "--format", "dot")
    assert code == 0, err
    assert out.startswith('graph "ultratree_p2_e1_f1" {')
    assert '"w=-1;word=[]"' in out and '"w=2;word=[]"' in out
    assert "✓ tree slice" in err
    code2, out2, _ = _cli("tree", "--p", "2", "--omega", "-1:2", "--depth", "3", "--format", "dot")
    assert code2 == 0 and out2 == out
    return True


def test_tree_json_parse_back():
    from tree.export import slice_from_json
    code, out, err = _cli("tree", "--p", "2", "--f", "2", "--omega", "0:2", "--format", "json")
    assert code == 0, err
    ts = slice_from_json(out)
    assert ts.spec.q == 4
    deg = ts.tree_degrees()
    assert all(deg[i] == 5 for i in ts.interior_indices())
    doc = json.loads(out)
    assert doc["spec"] == {"p": 2, "e": 1, "f": 2} and doc["format"] == "ultratree/1"
    return True


def test_tree_enhanced_and_text():
    code, out, _ = _cli("tree", "--p", "2", "--omega", "0:1", "--enhanced", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["refinement"]["m_max"] == 2
    assert len(doc["refinement"]["nodes"]) == len(doc["nodes"]) * (2 + 8)

    code, out, _ = _cli("tree", "--p", "2", "--e", "2", "--omega", "0:1", "--depth", "0", "--format", "text")
    assert code == 0
    assert out.splitlines() == ["w=0;word=[]", "w=1/2;word=[]", "w=1;word=[]"]
    return True


# ─────────────────────────────────────────────────────────────────────
#  3. distance
# ─────────────────────────────────────────────────────────────────────
def test_distance_examples():
    code, out, _ = _cli("distance", "--metric", "rho", "--p", "3", "center=0,rexp=0", "center=0,rexp=-3")
    assert code == 0 and out.strip() == "3"
    code, out, _ = _cli("distance", "--metric", "chordal", "--p", "3", "z0=1,z=0", "z0=3,z=0")
    assert code == 0 and out.strip() == "3^1"
    code, out, _ = _cli("distance", "--metric", "chordal", "--p", "3", "z0=1,z=0", "z0=1,z=0")
    assert code == 0 and out.strip() == "0"
    code, out, _ = _cli("distance", "--metric", "graph", "--p", "3", "z=5,omega=2", "z=5,omega=2")
    assert code == 0 and out.strip() == "0"
    code, out, _ = _cli("distance", "--metric", "graph", "--p", "3", "z=5,omega=2", "z=2,omega=2")
    assert code == 0 and out.strip() == "2"
    code, out, _ = _cli("distance", "--metric", "rho", "--p", "3", "--format", "json",
                        "center=0,rexp=0", "center=1,rexp=-sqrt2")
    assert code == 0 and json.loads(out)["value"] == "sqrt2"
    return True


def test_digit_literals_match_rationals():
    """A p^q * [digits] literal is the finite sum it spells out."""
    code, out, _ = _cli("distance", "--metric", "chordal", "--p", "3", "z0=1,z=0", "z0=10,z=0")
    assert code == 0
    code2, out2, _ = _cli("distance", "--metric", "chordal", "--p", "3",
                          "z0=3^0 * [1],z=0", "z0=3^0 * [1, 0, 1],z=0")
    assert code2 == 0 and out2 == out
    assert out.strip() != "0"

    code, out, _ = _cli("distance", "--metric", "chordal", "--p", "3",
                        "z0=3^0 * [1],z=0", "z0=1,z=0")
    assert code == 0 and out.strip() == "0"

    code, lit, err = _cli("classify", "--p", "3", "--point", "z0=9,z=3^0 * [1]", "--class")
    assert code == 0, err
    code, rat, _ = _cli("classify", "--p", "3", "--point", "z0=9,z=1", "--class")
    assert code == 0
    assert json.loads(lit)["class_rep"] == json.loads(rat)["class_rep"]

    code, lit, _ = _cli("distance", "--metric", "graph", "--p", "2", "--precision", "4",
                        "z=2^0 * [1, 1],omega=3", "z=3,omega=3")
    assert code == 0 and lit.strip() == "0"
    return True


# ─────────────────────────────────────────────────────────────────────
#  4. classify
# ─────────────────────────────────────────────────────────────────────
def test_classify_examples():
    code, out, _ = _cli("classify", "--p", "3", "--berk", "center=0,rexp=0", "--map", "phi")
    assert code == 0
    doc = json.loads(out)
    assert doc["type"] == "II"
    assert doc["phi_image"] == {"omega": "0", "center": "0"}

    code, out, _ = _cli("classify", "--p", "3", "--w", "omega=sqrt2,center=1", "--map", "phi-inv")
    assert code == 0
    doc = json.loads(out)
    assert doc["type"] == "III" and doc["phi_preimage"]["radius_exp"] == "-sqrt2"

    code, out, _ = _cli("classify", "--p", "3", "--point", "z0=3,z=5", "--class")
    assert code == 0
    rep = json.loads(out)["class_rep"]
    assert rep["omega"] == "1/1" and rep["word"] == ["2"] and rep["level"] == 0

    code, out, _ = _cli("classify", "--p", "2", "--point", "z0=1,z=6", "--class", "--level", "2")
    assert code == 0
    rep = json.loads(out)["class_rep"]
    assert rep["z0_word"] == ["1", "0"] and rep["z_word"] == ["0", "1"]

    code, out, _ = _cli("classify", "--p", "3", "--berk", "center=5,rexp=-1", "--map", "phi", "--canonical")
    assert code == 0 and json.loads(out)["phi_image"]["omega"] == "1"
    return True


def test_classify_rejects_mismatched_flags():
    bad = [
        ("--berk", "center=0,rexp=0", "--map", "phi-inv"),
        ("--w", "omega=1,center=0", "--map", "phi"),
        ("--point", "z0=3,z=5", "--map", "phi"),
        ("--berk", "center=0,rexp=0", "--class"),
        ("--w", "omega=1,center=0", "--level", "1"),
        ("--berk", "center=0,rexp=0", "--canonical"),
    ]
    for flags in bad:
        code, out, err = _cli("classify", "--p", "3", *flags)
        assert code == 2 and out == "", flags
    code, out, _ = _cli("classify", "--p", "3", "--point", "z0=3,z=5")
    assert code == 0 and "class_rep" in json.loads(out)
    return True


# ─────────────────────────────────────────────────────────────────────
#  5. audit
# ─────────────────────────────────────────────────────────────────────
def test_audit_census():
    code, out, err = _cli("audit", "census", "--p", "2", "--f", "1", "--m", "3")
    assert code == 0, err
    doc = json.loads(out)
    assert doc["passed"] is True
    last = doc["rows"][-1]
    assert last["m"] == 3 and last["closed_form"] == 32 and last["enumerated"] == 32
    return True


def test_audit_partition():
    code, out, err = _cli("audit", "partition", "--p", "3", "--n", "500", "--seed", "7",
                          "--precision", "8")
    assert code == 0, err
    doc = json.loads(out)
    assert doc["passed"] is True and doc["seed"] == 7
    assert [r["level"] for r in doc["reports"]] == [0, 1, 2]
    assert "[audit] sampling 500 points" in err
    return True


def test_audit_siblings_and_nesting():
    code, out, _ = _cli("audit", "siblings", "--p", "2", "--f", "2", "--m", "2")
    assert code == 0
    assert [r["n_children"] for r in json.loads(out)["reports"]] == [12, 16, 16]

    code, out, _ = _cli("audit", "nesting", "--p", "3", "--z", "5", "--omegas", "1,2,3", "--format", "text")
    assert code == 0
    assert "w=3;word=[2,1,0]" in out
    return True


def test_audit_csv_and_out():
    with tempfile.TemporaryDirectory() as tmp:
        csv_path = os.path.join(tmp, "census.csv")
        json_path = os.path.join(tmp, "census.json")
        code, out, err = _cli("audit", "census", "--p", "3", "--m", "2",
                              "--csv", csv_path, "--out", json_path)
        assert code == 0 and out == ""
        df = pd.read_csv(csv_path)
        assert df["closed_form"].tolist() == [6, 54]
        with open(json_path, encoding="utf-8") as fh:
            assert json.load(fh)["passed"] is True
        assert "✓ wrote" in err and "✓ table written" in err
    return True


def test_audit_failure_exit_code():
    import audit.coarse_grain as coarse_grain
    from audit.coarse_grain import SiblingReport
    broken = SiblingReport(m=0, n_children=2, expected_exponent=Fraction(0),
                           observed=["0", "1"], violations=[(0, 1)])
    with mock.patch.object(coarse_grain, "sibling_distance_audit", return_value=broken):
        code, out, err = _cli("audit", "siblings", "--p", "2", "--m", "0")
    assert code == 5
    assert json.loads(out)["passed"] is False
    assert "✗ audit 'siblings' failed" in err
    return True


# ─────────────────────────────────────────────────────────────────────
#  6. Error exit codes
# ─────────────────────────────────────────────────────────────────────
def test_exit_codes():
    assert _cli("tree", "--p", "2", "--bogus")[0] == 2
    assert _cli("tree", "--p", "4", "--omega", "0:1")[0] == 2
    assert _cli("classify", "--p", "3", "--berk", "rexp=1")[0] == 2
    assert _cli("tree", "--p", "2", "--omega", "0:1:2")[0] == 2
    assert _cli("tree", "--p", "3", "--omega", "0:30")[0] == 3
    assert _cli("tree", "--p", "2", "--f", "21", "--omega", "0:1")[0] == 3
    assert _cli("audit", "census", "--p", "2", "--m", "11")[0] == 3
    assert _cli("classify", "--p", "3", "--point", "z0=0,z=1")[0] == 4
    assert _cli("distance", "--metric", "rho", "--p", "3", "center=1", "center=0,rexp=0")[0] == 4
    assert _cli("audit", "nesting", "--p", "3", "--z", "5", "--omegas", "2,1")[0] == 4
    code, _, err = _cli("tree", "--p", "2", "--e", "2", "--omega", "0:1/3")
    assert code == 4 and "✗" in err
    return True


# =====================================================================
#  Runner
# =====================================================================

def main():
    print("\n" + "=" * 65)
    print("  Integration Test Suite — Command Line")
    print("=" * 65)

    tests = [
        ("Config singleton & defaults", test_config),
        ("tree → DOT (deterministic)", test_tree_dot),
        ("tree → JSON → slice", test_tree_json_parse_back),
        ("tree --enhanced / text labels", test_tree_enhanced_and_text),
        ("distance (rho / chordal / graph)", test_distance_examples),
        ("Digit literals vs rationals", test_digit_literals_match_rationals),
        ("classify (berk / w / point)", test_classify_examples),
        ("classify rejects mismatched flags", test_classify_rejects_mismatched_flags),
        ("audit census", test_audit_census),
        ("audit partition (500 points)", test_audit_partition),
        ("audit siblings & nesting", test_audit_siblings_and_nesting),
        ("audit --csv / --out", test_audit_csv_and_out),
        ("audit failure → exit 5", test_audit_failure_exit_code),
        ("Error exit codes", test_exit_codes),
    ]

    for label, fn in tests:
        _run(label, fn)

    print("\n" + "─" * 65)
    total = PASS + FAIL + SKIP
    print(f"  Results:  {PASS} passed  |  {FAIL} failed  |  {SKIP} skipped  "
          f"({total} total)")
    print("─" * 65 + "\n")

    if FAIL > 0:
        sys.exit(1)


if __name__ == "__main__":
    main()
