import json

import pytest

from quandlehom.cli import EXIT_CAP, EXIT_CHECK, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_homology_r3(capsys):
    code, out, _ = run(capsys, "homology", "R3", "--n", "2", "--kind", "Q")
    assert code == EXIT_OK and json.loads(out) == {"free_rank": 0, "torsion": []}


def test_homology_generators_and_cohomology(capsys):
    code, out, _ = run(capsys, "homology", "R4", "--n", "2", "--kind", "Q", "--generators")
    data = json.loads(out)
    assert data["free_rank"] == 2 and data["torsion"] == [2, 2] and len(data["generators"]) == 4
    code, out, _ = run(capsys, "homology", "R4", "--n", "2", "--kind", "Q", "--coeffs", "Z2", "--cohomology")
    assert json.loads(out) == {"free_rank": 0, "torsion": [2, 2, 2, 2]}


def test_betti_table_matches_formulas(capsys):
    code, out, _ = run(capsys, "betti", "T3", "--n", "4")
    rows = json.loads(out)["betti"]
    assert all(r["D"] == r["bounds"]["D"] and r["R"] == r["bounds"]["R"] and r["Q"] == r["bounds"]["Q"]
               for r in rows)


def test_sx_coker_cocycles(capsys):
    assert json.loads(run(capsys, "sx", "R3", "--max", "4")[1])["display"] == ">4"
    assert json.loads(run(capsys, "connecting-index", "R5", "--max", "3")[1])["display"] == ">3"
    assert json.loads(run(capsys, "coker", "R4", "--n", "2", "--kind", "R")[1])["torsion"] == [2, 2]
    data = json.loads(run(capsys, "cocycles", "R4", "--group", "Z2")[1])
    assert data["cocycle_dim"] == 6 and data["coboundary_dim"] == 2


def test_make_orbits_boundary(tmp_path, capsys):
    path = tmp_path / "s4.json"
    code, _, _ = run(capsys, "make", "--kind", "alexander", "--n", "2", "--h", "T^2+T+1", "--out", str(path))
    assert code == EXIT_OK and path.exists()
    assert json.loads(run(capsys, "orbits", str(path))[1])["sizes"] == [4]
    mpath = tmp_path / "m.triplets"
    code, out, _ = run(capsys, "boundary", "R3", "--n", "3", "--kind", "Q", "--out", str(mpath))
    assert json.loads(out)["rows"] == 6 and mpath.read_text().startswith("# shape 6 12")


def test_invariant_and_shadow(tmp_path, capsys):
    (tmp_path / "tre.vb").write_text("s1 s1 s1\n")
    phi = {"group": [2], "values": [[a, b, 1] for a, b in
                                     [("0", "1"), ("0", "T+1"), ("1", "0"), ("1", "T+1"), ("T+1", "0"), ("T+1", "1")]]}
    (tmp_path / "phi.json").write_text(json.dumps(phi))
    code, out, _ = run(capsys, "invariant", "--diagram", str(tmp_path / "tre.vb"), "--quandle", "S4",
                       "--cocycle", str(tmp_path / "phi.json"), "--coeffs", "Z2")
    assert json.loads(out) == {"colorings": 16, "state_sum": {"0": 4, "t": 12}}
    code, out, _ = run(capsys, "invariant", "--diagram", "strands 1", "--quandle", "S4",
                       "--cocycle", str(tmp_path / "phi.json"))
    assert json.loads(out)["state_sum"] == {"0": 4}
    code, out, _ = run(capsys, "shadow", "--diagram", "s1 s1 s1", "--quandle", "R3", "--top", "0,2",
                       "--outer", "2", "--coeffs", "Z3")
    data = json.loads(out)
    assert data["cycle"] == {"2,0,2": 1, "2,1,0": 1, "2,2,1": 1} and data["is_boundary"] is False


def test_verify_command(tmp_path, capsys):
    code, out, _ = run(capsys, "verify", "--scope", "fast", "--only", "2,3", "--out", str(tmp_path / "r.json"))
    assert code == EXIT_OK and json.loads(out)["passed"]


def test_verify_failure_exit_code(monkeypatch, capsys):
    import quandlehom.verify as verify
    bad = verify.CheckSpec(99, "always fails", "-", lambda: (1, 2, False))
    monkeypatch.setattr(verify, "CHECKS", [bad])
    assert run(capsys, "verify", "--scope", "fast")[0] == EXIT_CHECK


@pytest.mark.parametrize("argv,code", [
    (["homology", "R9", "--n", "9"], EXIT_CAP),
    (["homology", "X9", "--n", "2"], EXIT_USAGE),
    (["homology", "R3"], EXIT_USAGE),
    (["nonsense"], EXIT_USAGE),
    (["cocycles", "R3", "--group", "Z"], EXIT_USAGE),
])
def test_error_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code
