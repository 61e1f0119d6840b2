import json
from pathlib import Path

import pytest

from sesh import certificate
from sesh.cli import main

DATA = Path(__file__).resolve().parents[1] / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(scope="module")
def quad_cert(tmp_path_factory):
    path = tmp_path_factory.mktemp("cert") / "q.json"
    assert main(["p2", "compute", "--minpoly", "t^2-2", "--point", "th,1,0", "--gamma", "3/5",
                 "--output", str(path), "--threads", "1"]) == 0
    return path


def test_compute_exact(quad_cert):
    doc = json.loads(quad_cert.read_text())
    assert doc["result"]["kind"] == "Exact" and doc["result"]["value"] == "1/2"
    assert doc["witness"]["text"] == "x2"
    assert doc["degree_bound"]["d"] == 5


def test_compute_interval(tmp_path, capsys):
    out = tmp_path / "c.json"
    code, text, _ = run(capsys, "p2", "compute", "--point", "0,0,1", "--gamma", "9/10", "--output", str(out))
    assert code == 0
    assert "epsilon in [9/10, 1]" in text
    doc = json.loads(out.read_text())
    assert (doc["result"]["lower"], doc["result"]["upper_candidate"]) == ("9/10", "1")


def test_input_errors_exit_2(tmp_path, capsys):
    out = str(tmp_path / "c.json")
    code, _, err = run(capsys, "p2", "compute", "--minpoly", "t^2-1", "--point", "th,1,0",
                       "--gamma", "3/5", "--output", out)
    assert code == 2 and "reducible" in err
    assert run(capsys, "p2", "compute", "--point", "0,0,1", "--gamma", "1", "--output", out)[0] == 2
    assert run(capsys, "p2", "compute", "--point", "0,0", "--gamma", "1/2", "--output", out)[0] == 2
    assert run(capsys, "p2", "compute", "--point", "0,0,0", "--gamma", "1/2", "--output", out)[0] == 2
    assert run(capsys, "p2", "compute", "--point", "th,1,0", "--gamma", "1/2", "--output", out)[0] == 2
    assert run(capsys, "p2", "compute", "--minpoly", "t^2", "--point", "th,1,0",
               "--gamma", "1/2", "--output", out)[0] == 2
    assert run(capsys, "bounds", "--alpha", "0", "--selfint", "1")[0] == 2
    assert run(capsys, "lattice", "--file", str(tmp_path / "missing.json"), "chi", "--D", "1")[0] == 2


def test_verify_roundtrip(quad_cert, capsys):
    code, text, _ = run(capsys, "verify", str(quad_cert))
    assert code == 0 and "certificate verified" in text


def test_verify_deep(quad_cert, capsys):
    assert run(capsys, "verify", "--deep", str(quad_cert))[0] == 0


def test_verify_tampered_witness(quad_cert, tmp_path, capsys):
    doc = json.loads(quad_cert.read_text())
    doc["witness"]["terms"] = [[0, 1, 0, "1"]]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 4 and "order" in err
    doc = json.loads(quad_cert.read_text())
    doc["witness"]["terms"][0][3] = "2"
    bad.write_text(json.dumps(doc))
    assert run(capsys, "verify", str(bad))[0] == 4


def test_verify_tampered_claims(quad_cert, tmp_path, capsys):
    for path, value in [(("result", "value"), "1/3"), (("degree_bound", "d"), 10), (("alpha",), 1)]:
        doc = json.loads(quad_cert.read_text())
        target = doc
        for k in path[:-1]:
            target = target[k]
        target[path[-1]] = value
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(doc))
        assert run(capsys, "verify", str(bad))[0] == 4, path
    doc = json.loads(quad_cert.read_text())
    doc["table"][2]["m_max"] = 1
    bad.write_text(json.dumps(doc))
    assert run(capsys, "verify", str(bad))[0] == 4


def test_verify_malformed(quad_cert, tmp_path, capsys):
    trunc = tmp_path / "t.json"
    trunc.write_text(quad_cert.read_text()[:200])
    assert run(capsys, "verify", str(trunc))[0] == 3
    trunc.write_text('{"schema_version": 99}')
    assert run(capsys, "verify", str(trunc))[0] == 3
    trunc.write_text('{"schema_version": 1}')
    assert run(capsys, "verify", str(trunc))[0] == 3
    assert run(capsys, "verify", str(tmp_path / "nope.json"))[0] == 3


def test_certificates_are_deterministic(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p, threads in zip(paths, ("1", "2")):
        assert main(["p2", "compute", "--minpoly", "t^3-t-1", "--point", "th,th^2,1", "--gamma", "1/2",
                     "--output", str(p), "--threads", threads]) == 0
    a, b = (json.loads(p.read_text()) for p in paths)
    a.pop("toolchain"), b.pop("toolchain")
    assert certificate.dumps(a) == certificate.dumps(b)
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_shipped_example_certificate_verifies(capsys):
    assert run(capsys, "verify", str(DATA / "example_certificate.json"))[0] == 0


def test_bounds(capsys):
    assert run(capsys, "bounds", "--alpha", "3", "--selfint", "1")[1].strip() == "epsilon^2 <= 1/3"
    assert run(capsys, "bounds", "--top", "8", "--degs", "2,2", "--m", "3")[1].strip() == "epsilon^3 <= 2"


def test_lattice_commands(capsys):
    p2 = str(DATA / "p2.json")
    ab = str(DATA / "abelian.json")
    assert run(capsys, "lattice", "--file", p2, "seshadri", "--point", "0", "--L", "3", "--complete")[1].strip() == "3"
    assert run(capsys, "lattice", "--file", ab, "seshadri", "--L", "1")[1].strip() == "epsilon <= 2, epsilon^2 <= 2"
    assert run(capsys, "lattice", "--file", p2, "chi", "--D", "3")[1].strip() == "10"
    assert run(capsys, "lattice", "--file", p2, "nef", "--class", "1,-1")[1].strip() == "nef"
    assert run(capsys, "lattice", "--file", p2, "nef", "--class", "1,-2")[1].strip() == "not nef"
    assert run(capsys, "lattice", "--file", ab, "scaling", "--L", "1", "--n", "5")[0] == 0


def test_base_change_command(capsys):
    code, text, _ = run(capsys, "base-change", "--minpoly", "t^2-2", "--point", "th,1,0", "--ext", "self",
                        "--gamma", "3/5")
    assert code == 0
    assert text.strip() == "eps_Q = 1/2, eps_K in [9/10,1], inequality holds (strict)"
    code, text, _ = run(capsys, "base-change", "--point", "0,0,1", "--ext", "t^2+1", "--gamma", "9/10")
    assert code == 0 and "tables identical: True" in text
    assert run(capsys, "base-change", "--minpoly", "t^2-2", "--point", "th,1,0", "--ext", "t^3-2",
               "--gamma", "3/5")[0] == 2
