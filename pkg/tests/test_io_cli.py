import json

import numpy as np
import pytest

from ncq import crossed as cr
from ncq import io
from ncq import nilpotent as nil
from ncq.cli import main
from ncq.harmonic import norm, random_symbol, symbol_distance

from conftest import group


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


# -- io round trips --------------------------------------------------------------------------------


def test_group_and_dual_round_trip():
    G, D = group("dihedral:4")
    G2 = io.group_from_json(json.loads(io.dumps(io.group_to_json(G))))
    D2 = io.dual_from_json(json.loads(io.dumps(io.dual_to_json(D))))
    assert np.array_equal(G2.mul, G.mul)
    assert [r.label for r in D2] == [r.label for r in D]
    assert all(np.array_equal(a.matrices, b.matrices) for a, b in zip(D2, D))


def test_symbol_round_trip_and_omega_key():
    _, D = group("symmetric:3")
    a = random_symbol(D, np.random.default_rng(0), 4)
    d = json.loads(io.dumps(io.symbol_to_json(D, a, "omega")))
    assert d["omega"] == 4
    assert symbol_distance(io.symbol_from_json(D, d), a) == 0


def test_symbol_errors():
    _, D = group("symmetric:3")
    d = io.symbol_to_json(D, random_symbol(D, np.random.default_rng(0)))
    with pytest.raises(io.InputError, match="missing index"):
        io.symbol_from_json(D, d, size=7)
    d["symbol"]["0"].pop(D.irreps[0].label)
    with pytest.raises(io.InputError, match="missing irrep"):
        io.symbol_from_json(D, d)


def test_decode_rejects_non_pairs():
    with pytest.raises(io.InputError):
        io.decode([[1, 2, 3]])


def test_system_round_trip_and_validation():
    G, _ = group("symmetric:3")
    S = cr.coset_system(G, cr.normal_subgroup(G))
    assert np.array_equal(io.system_from_json(G, io.system_to_json(S)).action, S.action)
    bad = io.system_to_json(S)
    bad["action"]["1"] = [0, 0]
    with pytest.raises(io.InputError):
        io.system_from_json(G, bad)


def test_algebra_round_trip():
    alg = nil.engel_algebra()
    d = io.algebra_to_json(alg)
    assert d["step"] == 3
    assert np.array_equal(io.algebra_from_json(d).structure, alg.structure)
    d["step"] = 2
    with pytest.raises(io.InputError, match="declared step"):
        io.algebra_from_json(d)


def test_scalar_symbol_round_trip():
    g = nil.Grid(1, 2.0, 4)
    s = nil.ScalarSymbol(g, func=lambda x, X: x[..., 0] + 1j * X[..., 0])
    back = io.scalar_symbol_from_json(json.loads(io.dumps(io.scalar_symbol_to_json(s))))
    assert back.grid == g and np.array_equal(back.sampled(), s.sampled())


def test_read_json_errors(tmp_path):
    with pytest.raises(io.InputError, match="not found"):
        io.read_json(tmp_path / "missing.json")
    (tmp_path / "x.json").write_text("{oops")
    with pytest.raises(io.InputError, match="invalid JSON"):
        io.read_json(tmp_path / "x.json")


# -- cli -------------------------------------------------------------------------------------------


def test_identity_symbol_on_z4_gives_identity(capsys, tmp_path):
    sym = tmp_path / "id.json"
    assert run(capsys, "symbol", "identity", "--group", "cyclic:4", "--out", str(sym))[0] == 0
    code, out = run(capsys, "quantize", "--group", "cyclic:4", "--symbol", str(sym), "--tau", "random:5")
    assert code == 0
    assert np.allclose(io.decode(json.loads(out)["matrix"]), np.eye(4))


def test_hs_norm_metric_on_d4(capsys, tmp_path):
    sym = tmp_path / "a.json"
    run(capsys, "symbol", "random", "--group", "dihedral:4", "--seed", "3", "--out", str(sym))
    _, D = group("dihedral:4")
    a = io.symbol_from_json(D, io.read_json(sym))
    code, out = run(capsys, "quantize", "--group", "dihedral:4", "--symbol", str(sym), "--tau", "inv")
    assert code == 0
    assert json.loads(out)["metrics"]["hs_norm"] == pytest.approx(norm("B2_gamma", a, D), rel=1e-12)


def test_left_right_flags_differ_on_s3(capsys, tmp_path):
    sym = tmp_path / "a.json"
    run(capsys, "symbol", "random", "--group", "symmetric:3", "--seed", "1", "--out", str(sym))
    mats = []
    for side in ("left", "right"):
        _, out = run(capsys, "quantize", "--group", "symmetric:3", "--symbol", str(sym), "--side", side)
        mats.append(io.decode(json.loads(out)["matrix"]))
    assert np.linalg.norm(mats[0] - mats[1], 2) > 0.1


def test_quantize_is_deterministic(capsys, tmp_path):
    sym = tmp_path / "a.json"
    run(capsys, "symbol", "random", "--group", "quaternion8", "--seed", "9", "--out", str(sym))
    args = ("quantize", "--group", "quaternion8", "--symbol", str(sym), "--tau", "random:2", "--side", "left")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_adjoint_and_convert_modes(capsys, tmp_path):
    sym = tmp_path / "a.json"
    run(capsys, "symbol", "random", "--group", "symmetric:3", "--seed", "2", "--out", str(sym))
    code, out = run(capsys, "quantize", "--group", "symmetric:3", "--symbol", str(sym), "--mode", "adjoint")
    assert code == 0 and json.loads(out)["tau"] == list(range(6))
    code, out = run(capsys, "quantize", "--group", "symmetric:3", "--symbol", str(sym), "--mode", "convert", "--to-tau", "inv")
    assert code == 0 and "symbol" in json.loads(out)


@pytest.mark.parametrize(
    "argv",
    [
        ["quantize", "--group", "cyclic:3", "--symbol", "/nonexistent.json"],
        ["quantize", "--group", "cyclic:4", "--symbol", "x.json", "--tau", "sigma"],
        ["quantize", "--group", "bogus:3", "--symbol", "x.json"],
        ["quantize", "--group", "cyclic:3", "--symbol", "x.json", "--tau", "random:abc"],
        ["suite", "--criteria", "0,11"],
        ["nope"],
        ["nilpotent", "op", "--algebra", "engel", "--points", "3"],
    ],
)
def test_input_errors_exit_2_with_json(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 2
    assert "message" in json.loads(out)["error"]


def test_wrong_symbol_shape_is_input_error(capsys, tmp_path):
    sym = tmp_path / "a.json"
    run(capsys, "symbol", "random", "--group", "cyclic:3", "--out", str(sym))
    code, out = run(capsys, "quantize", "--group", "symmetric:3", "--symbol", str(sym))
    assert code == 2 and json.loads(out)["error"]["kind"] == "input"


def _export(capsys, tmp_path, spec):
    path = tmp_path / "g.json"
    run(capsys, "group", "export", "--group", spec, "--out", str(path))
    return path, json.loads(path.read_text())


def test_corrupted_dual_fails_with_named_check(capsys, tmp_path):
    path, d = _export(capsys, tmp_path, "symmetric:3")
    d["dual"]["irreps"][-1]["matrices"][1][0][0] = [0.3, 0.0]
    path.write_text(json.dumps(d))
    code, out = run(capsys, "suite", "--group-file", str(path), "--criteria", "1", "--no-nilpotent", "--quiet")
    failed = {c["name"] for c in json.loads(out)["checks"] if c["status"] == "fail"}
    assert code == 1
    assert "c0.irrep[std].homomorphism[symmetric:3]" in failed


def test_missing_irrep_fails_completeness(capsys, tmp_path):
    path, d = _export(capsys, tmp_path, "dihedral:3")
    d["dual"]["irreps"].pop(0)
    path.write_text(json.dumps(d))
    code, out = run(capsys, "group", "info", "--group-file", str(path))
    assert code == 1
    assert "dual.completeness" in {c["name"] for c in json.loads(out)["validation"]["checks"] if c["status"] == "fail"}


def test_valid_group_file_passes(capsys, tmp_path):
    path, _ = _export(capsys, tmp_path, "cyclic:5")
    code, out = run(capsys, "suite", "--group-file", str(path), "--criteria", "1,2,4", "--no-nilpotent")
    assert code == 0 and json.loads(out)["pass"]


def test_tiny_tolerance_gives_controlled_failures(capsys):
    code, out = run(capsys, "suite", "--groups", "symmetric:3", "--criteria", "1,2", "--tol", "1e-20", "--quiet")
    report = json.loads(out)
    assert code == 1 and not report["pass"]
    assert all(c["tol"] == 1e-20 for c in report["checks"])
    assert any(c["status"] == "fail" for c in report["checks"])


def test_suite_output_is_deterministic(capsys):
    args = ("suite", "--groups", "dihedral:3", "--criteria", "1,5,10", "--no-nilpotent", "--seed", "4")
    first, second = run(capsys, *args), run(capsys, *args)
    assert first == second and first[0] == 0


def test_suite_seed_is_reported(capsys):
    _, out = run(capsys, "suite", "--groups", "cyclic:2", "--criteria", "1", "--seed", "77", "--no-nilpotent")
    assert json.loads(out)["seed"] == 77


def test_spectra_on_translation_system(capsys):
    code, out = run(capsys, "spectra", "--group", "cyclic:3", "--system", "translation", "--tau", "id")
    d = json.loads(out)
    assert code == 0 and len(d["spectra"]) == 1 and d["spectra"][0]["max_distance"] <= 1e-8


def test_spectra_on_singleton(capsys):
    code, out = run(capsys, "spectra", "--group", "cyclic:3", "--system", "trivial")
    d = json.loads(out)
    assert code == 0 and len(d["spectra"]) == 1 and d["spectra"][0]["max_distance"] == 0


def test_spectra_reported_per_orbit(capsys, tmp_path):
    G, _ = group("symmetric:3")
    two = cr.DynamicalSystem(np.concatenate([G.mul, cr.coset_system(G, cr.normal_subgroup(G)).action + 6], axis=1))
    path = tmp_path / "sys.json"
    io.write_json(path, io.system_to_json(two))
    code, out = run(capsys, "spectra", "--group", "symmetric:3", "--system", str(path))
    d = json.loads(out)
    assert code == 0 and [len(o["orbit"]) for o in d["spectra"]] == [6, 2]


def test_covariant_operator(capsys):
    code, out = run(capsys, "covariant", "--group", "dihedral:3", "--system", "seeded:2", "--omega-point", "0")
    assert code == 0 and json.loads(out)["operator"]["order"] == 6


def test_symmetry_commands(capsys):
    _, out = run(capsys, "symmetry", "--group", "cyclic:3")
    assert json.loads(out)["count"] == 9
    _, out = run(capsys, "symmetry", "--group", "symmetric:3")
    assert json.loads(out)["exists"] is False
    code, out = run(capsys, "symmetry", "--group", "heisenberg:3", "--strategy", "construct", "--side", "left")
    assert code == 0 and json.loads(out)["valid"]


def test_sigma_tau_on_odd_group(capsys, tmp_path):
    sym = tmp_path / "a.json"
    run(capsys, "symbol", "random", "--group", "cyclic:3xcyclic:3", "--out", str(sym))
    assert run(capsys, "quantize", "--group", "cyclic:3xcyclic:3", "--symbol", str(sym), "--tau", "sigma")[0] == 0


def test_nilpotent_commands(capsys, tmp_path):
    code, out = run(capsys, "nilpotent", "cocycle-check", "--algebra", "heisenberg:1", "--samples", "20")
    assert code == 0 and json.loads(out)["pass"]
    code, out = run(capsys, "nilpotent", "rn-check", "--tau", "id", "--points", "16", "--half-width", "5")
    assert code == 0 and json.loads(out)["pass"]
    code, out = run(capsys, "nilpotent", "op", "--symbol", "one", "--points", "4", "--half-width", "2")
    assert code == 0 and np.allclose(io.decode(json.loads(out)["matrix"]), np.eye(64))
    g = nil.Grid(3, 2.0, 4)
    path = tmp_path / "s.json"
    io.write_json(path, io.scalar_symbol_to_json(nil.ScalarSymbol(g, func=lambda x, X: np.exp(-np.sum(X**2, -1)))))
    code, out = run(capsys, "nilpotent", "kernel", "--symbol", str(path), "--points", "4", "--half-width", "2")
    assert code == 0 and len(json.loads(out)["kernel"]) == 64
    code, _ = run(capsys, "nilpotent", "kernel", "--symbol", str(path), "--points", "6", "--half-width", "2")
    assert code == 2


def test_out_and_json_flags(capsys, tmp_path):
    path = tmp_path / "list.json"
    code, out = run(capsys, "group", "list", "--out", str(path), "--json")
    assert code == 0 and out == path.read_text()
    assert "heisenberg:3" in json.loads(out)["catalog"]
