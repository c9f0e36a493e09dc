import json

from orbgw.groups import FIXTURE_SPECS
from orbgw.ring import perturb
from orbgw.serialize import dumps_presentation, loads_presentation
from orbgw.teardrop import export_presentation


def test_nd(cli):
    code, out, _ = cli("nd", "--max-d", 5)
    assert code == 0
    assert out.strip().splitlines()[-1] == "5 87304"


def test_nd_structured(cli):
    code, out, _ = cli("nd", "--max-d", 4, "--format", "structured")
    data = json.loads(out)
    assert code == 0 and data["command"] == "nd"
    assert all(c["pass"] for c in data["checks"])
    assert "620" in out


def test_teardrop_multiply(cli):
    assert cli("teardrop", "--p", 2, "multiply", "A1", "A1")[1].strip() == "x"
    assert cli("teardrop", "--p", 3, "multiply", "x", "A1")[1].strip() == "1/3*q"


def test_teardrop_export_round_trip(cli, tmp_path):
    code, out, _ = cli("teardrop", "--p", 3, "export")
    assert code == 0
    assert loads_presentation(out) == export_presentation(3)
    target = tmp_path / "t3.json"
    assert cli("teardrop", "--p", 3, "--output", target, "export")[0] == 0
    assert cli("ring-check", target)[0] == 0


def test_ring_check_perturbed(cli, tmp_path):
    bad = perturb(export_presentation(3), "A1", "A2", "A1")
    path = tmp_path / "bad.json"
    path.write_text(dumps_presentation(bad))
    code, out, err = cli("ring-check", path)
    assert code == 2
    assert "associativity violated at (A1, A1, A1)" in out
    assert "check failed: associativity" in err
    assert "associativity: FAIL" in out


def test_bg_ring(cli, tmp_path):
    spec = tmp_path / "s3.txt"
    spec.write_text(FIXTURE_SPECS["S3"] + "\n")
    code, out, _ = cli("bg-ring", "--group", spec, "--verify-center")
    assert code == 0
    ring = loads_presentation(out)
    assert len(ring.labels) == 3


def test_cross_ratio(cli):
    assert cli("cross-ratio", 2, 0, 1, 3)[1].strip() == "4"
    assert cli("cross-ratio", "1/2", 0, 1, "inf")[1].strip() == "1/2"
    assert cli("cross-ratio", 1, 1, 2, 3)[0] == 1


def test_age_and_sectors(cli):
    code, out, _ = cli("age", "--r", 7, "--weights", "1,3,0", "--format", "structured")
    assert code == 0 and "4/7" in out
    code, out, _ = cli("sectors", "--p", 5)
    assert code == 0 and "4/5" in out


def test_chi(cli):
    assert cli("chi", "--rank", 2, "--deg", 3, "--chi0", 1, "--ages", "1/2,1/2")[1].strip() == "chi = 4"
    assert cli("chi", "--rank", 1, "--deg", "2/3", "--chi0", 1)[0] == 2


def test_usage_errors(cli):
    assert cli("frobnicate")[0] == 1
    assert cli("nd")[0] == 1
    assert cli("nd", "--max-d", 0)[0] == 1
    assert cli("teardrop", "--p", 3, "multiply", "A9")[0] == 1


def test_deterministic(cli):
    for argv in (("nd", "--max-d", 8, "--format", "structured"),
                 ("teardrop", "--p", 5, "export"),
                 ("sectors", "--p", 7, "--format", "structured")):
        assert cli(*argv) == cli(*argv)
