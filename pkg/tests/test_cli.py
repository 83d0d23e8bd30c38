import json
from pathlib import Path

import pytest

from crystaltopo.cli import main

SAMPLES = Path(__file__).resolve().parents[1] / "docs" / "samples"

TORUS_DOC = {
    "dimension": 2,
    "ambient": 2,
    "generators": [[1.0, 0.0], [0.0, 1.0]],
    "index_box": [[0, 3], [0, 3]],
    "scheme": "triangular",
    "boundary_condition": {"kind": "periodic", "axes": [1, 2]},
}


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def write_doc(tmp_path, payload, name="doc.json"):
    p = tmp_path / name
    p.write_text(json.dumps(payload))
    return str(p)


# ---------------------------------------------------------------------------
# build
# ---------------------------------------------------------------------------

def test_build_reports_counts(capsys, tmp_path):
    rc, out, _ = run(capsys, "build", write_doc(tmp_path, TORUS_DOC))
    assert rc == 0
    assert "9 vertices, 27 edges, 18 faces" in out
    assert "euler characteristic (cells): 0" in out
    assert "validation: ok" in out


def test_build_json_report_is_machine_readable(capsys, tmp_path):
    rc, out, _ = run(capsys, "build", write_doc(tmp_path, TORUS_DOC),
                     "--report", "json")
    assert rc == 0
    doc = json.loads(out)
    assert doc["cells"] == [9, 27, 18]
    assert doc["euler_characteristic_cells"] == 0
    assert len(doc["document_sha256"]) == 64
    # serialization is deterministic: sorted keys, stable indentation
    assert out == json.dumps(doc, indent=2, sort_keys=True) + "\n"


def test_build_dump_matrices(capsys):
    rc, out, _ = run(capsys, "build", str(SAMPLES / "disc.json"),
                     "--dump-matrices")
    assert rc == 0
    assert "d1: 4 x 6" in out
    assert "d2: 6 x 3" in out


def test_explicit_complex_document(capsys):
    rc, out, _ = run(capsys, "build", str(SAMPLES / "tetrahedron.json"))
    assert rc == 0
    assert "4 vertices, 6 edges, 4 faces" in out
    assert "euler characteristic (cells): 2" in out


# ---------------------------------------------------------------------------
# homology
# ---------------------------------------------------------------------------

def test_homology_table(capsys, tmp_path):
    rc, out, _ = run(capsys, "homology", write_doc(tmp_path, TORUS_DOC))
    assert rc == 0
    assert "H_1: Z + Z" in out
    assert "euler characteristic: 0" in out
    assert "orientable: yes, closed" in out


def test_homology_of_nonorientable_sample(capsys):
    rc, out, _ = run(capsys, "homology", str(SAMPLES / "mobius.json"))
    assert rc == 0
    assert "H_1: Z" in out
    assert "orientable: no, with boundary" in out


def test_homology_mod2_ring(capsys, tmp_path):
    rc, out, _ = run(capsys, "homology", write_doc(tmp_path, TORUS_DOC),
                     "--ring", "z2")
    assert rc == 0
    assert "H_1: (Z/2)^2" in out
    assert "H_2: (Z/2)" in out


def test_homology_generators_flag(capsys, tmp_path):
    rc, out, _ = run(capsys, "homology", write_doc(tmp_path, TORUS_DOC),
                     "--generators")
    assert rc == 0
    assert out.count("H_1 generator (free)") == 2
    assert "H_2 generator (free)" in out


def test_homology_torsion_generator_listing(capsys, tmp_path):
    doc = {"complex": {"cells": [
        [1, 2, 5], [1, 2, 6], [1, 3, 4], [1, 3, 6], [1, 4, 5],
        [2, 3, 4], [2, 3, 5], [2, 4, 6], [3, 5, 6], [4, 5, 6]]}}
    rc, out, _ = run(capsys, "homology", write_doc(tmp_path, doc),
                     "--generators")
    assert rc == 0
    assert "H_1: Z/2" in out
    assert "H_1 generator (order 2)" in out


# ---------------------------------------------------------------------------
# obstruct
# ---------------------------------------------------------------------------

def test_obstruct_vortex_pair_sample(capsys):
    rc, out, _ = run(capsys, "obstruct", str(SAMPLES / "sphere_vortex_pair.json"))
    assert rc == 0
    assert "skeleton 2: BLOCKED" in out
    assert "extends over full complex: no" in out
    assert "cocycle check: pass" in out
    assert "obstruction class: trivial" in out


def test_obstruct_json_shape(capsys):
    rc, out, _ = run(capsys, "obstruct", str(SAMPLES / "sphere_vortex_pair.json"),
                     "--report", "json")
    assert rc == 0
    doc = json.loads(out)
    assert doc["extends"] is False
    assert doc["blocked_at"] == 2
    values = dict((int(k), v) for k, v in doc["cochain"]["values"])
    assert sorted(values.values()) == [-1, 1]
    assert doc["index_sum"]["index_sum"] == 0


def test_obstruct_spin_interface_sample(capsys):
    rc, out, _ = run(capsys, "obstruct", str(SAMPLES / "spin_interface.json"))
    assert rc == 0
    assert "skeleton 1: BLOCKED" in out
    assert "constant" in out


def test_obstruct_requires_field(capsys, tmp_path):
    rc, out, err = run(capsys, "obstruct", write_doc(tmp_path, TORUS_DOC))
    assert rc == 2
    assert "field" in err


# ---------------------------------------------------------------------------
# network
# ---------------------------------------------------------------------------

def test_network_sample_document(capsys):
    rc, out, _ = run(capsys, "network", str(SAMPLES / "circle_network.json"))
    assert rc == 0
    assert "current law: pass" in out
    assert "potential check: FAIL" in out
    assert "violating loop circulation: 3" in out


def test_network_json(capsys):
    rc, out, _ = run(capsys, "network", str(SAMPLES / "circle_network.json"),
                     "--report", "json")
    doc = json.loads(out)
    assert doc["current_law"]["ok"] is True
    assert doc["potential"]["consistent"] is False
    assert abs(doc["potential"]["loop_circulation"]) == pytest.approx(3.0)


# ---------------------------------------------------------------------------
# validation and exit codes
# ---------------------------------------------------------------------------

def test_missing_file(capsys):
    rc, _, err = run(capsys, "build", "/no/such/file.json")
    assert rc == 2
    assert "error:" in err


def test_malformed_json(capsys, tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{"dimension": [,]}')
    rc, _, err = run(capsys, "build", str(p))
    assert rc == 2
    assert "line" in err


def test_unknown_keys_are_rejected(capsys, tmp_path):
    doc = dict(TORUS_DOC, flavor="strange")
    rc, _, err = run(capsys, "build", write_doc(tmp_path, doc))
    assert rc == 2
    assert "flavor" in err


def test_misaddressed_defect_exits_2(capsys, tmp_path):
    doc = dict(TORUS_DOC, defects=[{"kind": "vacancy", "index": [9, 9]}])
    rc, _, err = run(capsys, "build", write_doc(tmp_path, doc))
    assert rc == 2
    assert "vacancy" in err


def test_negative_math_results_still_exit_zero(capsys):
    # a violated exactness check is a finding, not a tool failure
    rc, _, _ = run(capsys, "network", str(SAMPLES / "circle_network.json"))
    assert rc == 0


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
