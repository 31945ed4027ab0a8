import csv
import json

import pytest

from ostro_stab import cli


def run_json(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def read_csv(path):
    with open(path) as fh:
        comment = fh.readline()
        rows = list(csv.reader(fh))
    return comment, rows


class TestExitCodes:
    def test_threshold_ok(self, capsys):
        code, doc = run_json(capsys, ["threshold", "--beta", "1", "--gamma", "6"])
        assert code == 0
        assert doc["results"]["k_min"] == pytest.approx(2.2133638394006434,
                                                        rel=1e-12)

    def test_resonant_wavenumber_domain_error(self, capsys):
        code = cli.main(["wave", "--beta", "1", "--gamma", "1",
                         "--k", "0.70710678"])
        assert code == 2

    def test_threshold_wrong_sign_domain_error(self):
        assert cli.main(["threshold", "--beta", "-1", "--gamma", "1"]) == 2

    def test_reduced_below_threshold_domain_error(self):
        assert cli.main(["reduced", "--beta", "1", "--gamma", "1", "--k", "1.2",
                         "--n", "-1", "--m", "0", "--a", "0.01"]) == 2

    def test_unknown_command_usage_error(self):
        assert cli.main(["frobnicate"]) == 64

    def test_missing_flags_usage_error(self):
        assert cli.main(["threshold", "--beta", "1"]) == 64

    def test_xi_zero_domain_error(self):
        assert cli.main(["spectrum", "--beta", "1", "--gamma", "1", "--k", "1.3",
                         "--a", "0.01", "--xi", "0"]) == 2


class TestEnvelope:
    def test_round_trip_and_schema(self, capsys):
        code, doc = run_json(capsys, ["wave", "--beta", "1", "--gamma", "1",
                                      "--k", "1", "--a", "0.05"])
        assert code == 0
        cli.validate_envelope(doc)
        assert doc["schema_version"] == "1"
        assert doc["inputs"]["beta"] == 1.0
        assert doc["results"]["A2"] == pytest.approx(-2 / 9, rel=1e-15)
        assert doc["results"]["residual_l2"] < 1e-7
        assert "wall_time_s" in doc["diagnostics"]
        assert doc["diagnostics"]["tolerances"]["pairing"] == 1e-9

    def test_determinism_modulo_wall_time(self, capsys):
        argv = ["collisions", "--beta", "-1", "--gamma", "1",
                "--dn-max", "4", "--n-range", "6"]
        _, doc1 = run_json(capsys, argv)
        _, doc2 = run_json(capsys, argv)
        doc1["diagnostics"].pop("wall_time_s")
        doc2["diagnostics"].pop("wall_time_s")
        assert json.dumps(doc1, indent=2) == json.dumps(doc2, indent=2)

    def test_validate_rejects_bad_docs(self):
        with pytest.raises(ValueError):
            cli.validate_envelope({"schema_version": "1"})
        with pytest.raises(ValueError):
            cli.validate_envelope({
                "schema_version": "0", "command": "x", "inputs": {},
                "results": {}, "diagnostics": {},
            })


class TestCommands:
    def test_collisions_table(self, capsys):
        code, doc = run_json(capsys, [
            "collisions", "--beta", "1", "--gamma", "1", "--dn-max", "4",
            "--n-range", "6", "--opposite-krein"])
        assert code == 0
        pairs = {(p["n"], p["m"]) for p in doc["results"]["pairs"]}
        assert pairs == {(-1, 0), (-2, 1), (-1, 2), (-3, 1), (-2, 2), (-1, 3)}
        origin = doc["results"]["origin"]
        assert any(e["n"] == 0 and e["k"] == pytest.approx(2**0.5)
                   for e in origin)

    def test_collisions_csv(self, capsys):
        code = cli.main(["collisions", "--beta", "-1", "--gamma", "1",
                         "--dn-max", "2", "--n-range", "6",
                         "--opposite-krein", "--format", "csv"])
        out = capsys.readouterr().out
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("# beta=-1.0")
        assert lines[1] == "n,m,dn,opposite_krein"
        assert lines[2:] == ["-2,0,2,True", "-1,1,2,True"]

    def test_krein_events(self, capsys):
        code, doc = run_json(capsys, ["krein", "--beta", "1", "--gamma", "1",
                                      "--k", "1.6", "--n", "-1", "--m", "0"])
        assert code == 0
        ev = doc["results"]["events"][0]
        assert ev["xi0"] == pytest.approx(0.2798306772509555, abs=1e-9)
        assert ev["opposite_krein"] is True
        assert ev["kappa_n"] * ev["kappa_m"] == -1

    def test_reduced_pencil(self, capsys):
        code, doc = run_json(capsys, [
            "reduced", "--beta", "1", "--gamma", "1", "--k", "1.6",
            "--n", "-1", "--m", "0", "--a", "0.01"])
        assert code == 0
        pen = doc["results"]["pencils"][0]
        assert pen["unstable"] is True
        assert pen["growth_rate"] == pytest.approx(pen["predicted_growth_rate"],
                                                   rel=1e-3)

    def test_spectrum_slice(self, capsys):
        code, doc = run_json(capsys, [
            "spectrum", "--beta", "1", "--gamma", "1", "--k", "1.3",
            "--a", "0.01", "--xi", "0.25", "--N", "16"])
        assert code == 0
        r = doc["results"]
        assert r["paired"] is True
        assert len(r["eigenvalues"]) == 33
        assert r["max_real_part"] < 1e-8

    def test_dispersion_modes(self, capsys):
        code, doc = run_json(capsys, [
            "dispersion", "--beta", "1", "--gamma", "1", "--k", "1",
            "--xi", "0.25", "--n-range", "2"])
        assert code == 0
        by_n = {m["n"]: m for m in doc["results"]["modes"]}
        assert by_n[0]["omega"] == pytest.approx(-3.515625, rel=1e-12)
        assert by_n[0]["krein"] == -1

    def test_output_file(self, tmp_path, capsys):
        out = tmp_path / "th.json"
        code = cli.main(["threshold", "--beta", "1", "--gamma", "1",
                         "--out", str(out)])
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["results"]["k_min"] == pytest.approx(2**0.5, rel=1e-12)


class TestFigures:
    def test_k_curves(self, tmp_path, capsys):
        code, doc = run_json(capsys, ["figures", "--which", "K_curves",
                                      "--beta", "1", "--gamma", "1",
                                      "--out", str(tmp_path)])
        assert code == 0
        assert len(doc["results"]["files"]) == 4
        comment, rows = read_csv(tmp_path / "k_curves_dn1.csv")
        assert comment.startswith("#")
        assert rows[0] == ["x", "K"]
        by_x = {r[0]: r for r in rows[1:] if r}
        assert float(by_x["-0.5"][1]) == pytest.approx(4.0, rel=1e-12)
        # singular points become blank rows
        assert by_x["0.0"] == [] if "0.0" in by_x else True
        assert any(r == [] for r in rows[1:])

    def test_collision_ranges(self, tmp_path, capsys):
        code, doc = run_json(capsys, [
            "figures", "--which", "collision_ranges", "--beta", "1",
            "--gamma", "1", "--n", "-3", "--m", "-1", "--out", str(tmp_path)])
        assert code == 0
        _, rows = read_csv(tmp_path / "collision_ranges_n-3_m-1.csv")
        ks = [float(r[1]) for r in rows[1:] if len(r) == 2]
        assert min(ks) == pytest.approx(0.502, abs=0.02)
        assert max(ks) == pytest.approx(0.7186, abs=0.02)

    def test_collision_contour(self, tmp_path, capsys):
        code, doc = run_json(capsys, [
            "figures", "--which", "collision_contour", "--beta", "1",
            "--gamma", "6", "--out", str(tmp_path)])
        assert code == 0
        _, rows = read_csv(tmp_path / "collision_contour.csv")
        pts = [(float(r[0]), float(r[1])) for r in rows[1:] if len(r) == 2]
        xi_min, k_min = min(pts, key=lambda t: t[1])
        assert k_min == pytest.approx(2.2134, abs=1e-3)
        assert xi_min == pytest.approx(0.5, abs=1e-9)

    def test_contour_needs_positive_beta(self, tmp_path):
        assert cli.main(["figures", "--which", "collision_contour",
                         "--beta", "-1", "--gamma", "1",
                         "--out", str(tmp_path)]) == 2

    def test_figures_deterministic(self, tmp_path, capsys):
        a = tmp_path / "a"
        b = tmp_path / "b"
        for d in (a, b):
            cli.main(["figures", "--which", "K_curves", "--beta", "1",
                      "--gamma", "1", "--out", str(d)])
        assert (a / "k_curves_dn2.csv").read_bytes() == \
               (b / "k_curves_dn2.csv").read_bytes()

    def test_figures_requires_which(self):
        assert cli.main(["figures", "--beta", "1", "--gamma", "1"]) == 64
