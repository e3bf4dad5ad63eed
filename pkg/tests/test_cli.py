import json

import numpy as np
import pytest

from cabl.cli import main, render_json
from cabl.ingest import CSV_HEADER

HEADER = ",".join(CSV_HEADER)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out), out


class TestMatchCommand:
    def test_table1_guinn4(self, capsys):
        payload, _ = run_json(capsys, "match", "--fixture", "table1", "--criterion", "guinn4")
        assert payload["pairs_total"] == 10
        assert payload["pairs_matched"] == 4
        matched = {(p["a"], p["b"]) for p in payload["pairs"] if p["matched"]}
        assert matched == {
            ("CE 399", "CE 842"),
            ("CE 567", "CE 840"),
            ("CE 567", "CE 843"),
            ("CE 840", "CE 843"),
        }

    def test_antimony_only_panel(self, capsys):
        payload, _ = run_json(capsys, "match", "--fixture", "table1", "--elements", "Sb", "--k", "4")
        for pair in payload["pairs"]:
            assert list(pair["per_element"]) == ["Sb"]
        assert payload["criterion"]["elements"] == ["Sb"]

    def test_bad_flag_exits_2(self, capsys):
        code, _, _ = run(capsys, "match", "--bogus")
        assert code == 2

    def test_unknown_element_exits_2(self, capsys):
        code, _, err = run(capsys, "match", "--fixture", "table1", "--elements", "Pb")
        assert code == 2
        assert "unknown element" in err

    def test_missing_file_exits_2(self, capsys):
        code, _, err = run(capsys, "match", "--input", "/nonexistent/x.csv")
        assert code == 2

    def test_input_required(self, capsys):
        code, _, err = run(capsys, "match")
        assert code == 2
        assert "input" in err


class TestGroupCommand:
    def test_guinn_grouping(self, capsys):
        payload, _ = run_json(capsys, "group", "--fixture", "table1", "--criterion", "guinn4")
        assert payload["groups"] == [
            ["CE 399", "CE 842"],
            ["CE 567", "CE 840", "CE 843"],
        ]

    def test_clique_mode_reports_triples(self, capsys):
        payload, _ = run_json(
            capsys,
            "group", "--fixture", "table1", "--criterion", "guinn4",
            "--boundary", "open", "--mode", "clique",
        )
        assert payload["mode"] == "maximal_cliques"
        assert ["CE 567", "CE 843", "CE 840"] in payload["nontransitive_triples"]

    def test_empty_dataset_exits_2(self, capsys, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text(HEADER + "\n")
        code, _, err = run(capsys, "group", "--input", str(empty))
        assert code == 2
        assert "no specimens" in err

    def test_text_output(self, capsys):
        code, out, _ = run(capsys, "group", "--fixture", "table1", "--criterion", "guinn4")
        assert code == 0
        assert "CE 399, CE 842" in out
        assert "CE 567, CE 840, CE 843" in out


class TestEvidenceCommand:
    def test_published_numbers(self, capsys):
        payload, _ = run_json(
            capsys,
            "evidence", "--box", "6,4", "--draws-t", "2", "--draws-not-t", "3",
            "--groups-observed", "2",
        )
        assert payload["p_given_t_exact"] == "8/15"
        assert payload["p_given_not_t_exact"] == "4/5"
        assert payload["likelihood_ratio_exact"] == "2/3"
        assert payload["likelihood_ratio"] == pytest.approx(2 / 3, abs=1e-15)

    def test_single_group_box(self, capsys):
        payload, _ = run_json(
            capsys,
            "evidence", "--box", "10", "--draws-t", "2", "--draws-not-t", "3",
            "--groups-observed", "1",
        )
        assert payload["likelihood_ratio_exact"] == "1"

    def test_posterior_odds(self, capsys):
        payload, _ = run_json(
            capsys,
            "evidence", "--box", "6,4", "--draws-t", "2", "--draws-not-t", "3",
            "--groups-observed", "2", "--prior-odds", "1.0",
        )
        assert payload["posterior_odds"] == pytest.approx(2 / 3, abs=1e-15)

    def test_invalid_box_exits_2(self, capsys):
        code, _, _ = run(
            capsys,
            "evidence", "--box", "0,4", "--draws-t", "2", "--draws-not-t", "3",
            "--groups-observed", "2",
        )
        assert code == 2


class TestHeteroCommand:
    def test_table2_silver_outer_middle(self, capsys):
        payload, _ = run_json(
            capsys,
            "hetero", "--fixture", "table2", "--element", "Ag",
            "--locations", "outer,middle",
        )
        assert abs(payload["t"]) == pytest.approx(2.2583963760295228, abs=1e-9)
        assert payload["df"] == 5
        assert payload["p_two_sided"] == pytest.approx(0.07349924037670497, abs=1e-9)

    def test_ids_selection(self, capsys):
        payload, _ = run_json(
            capsys,
            "hetero", "--fixture", "table2", "--element", "Sb",
            "--ids", "bullet-1-outer,bullet-1-inner",
        )
        assert payload["samples"][0]["id"] == "bullet-1-outer"

    def test_ambiguous_location_exits_2(self, capsys):
        code, _, err = run(
            capsys,
            "hetero", "--fixture", "table3", "--element", "Ag",
            "--locations", "outer,middle",
        )
        assert code == 2
        assert "ambiguous" in err

    def test_single_count_series_exits_2(self, capsys):
        code, _, err = run(
            capsys,
            "hetero", "--fixture", "table1", "--element", "Ag",
            "--ids", "CE 399,CE 842",
        )
        assert code == 2
        assert "single-count" in err

    def test_manova_on_raw_rows(self, capsys, tmp_path):
        rng = np.random.default_rng(0)
        lines = [HEADER]
        for bullet in ("b1", "b2"):
            for location in ("outer", "middle", "inner"):
                for _ in range(3):
                    ag = rng.lognormal(1.9, 0.05)
                    asv = rng.lognormal(1.2, 0.05)
                    lines.append(f"{bullet},bullet,6003,{location},Ag,{ag},,replicate_member")
                    lines.append(f"{bullet},bullet,6003,{location},As,{asv},,replicate_member")
        path = tmp_path / "raw.csv"
        path.write_text("\n".join(lines) + "\n")
        payload, _ = run_json(
            capsys,
            "hetero", "--manova", "--input", str(path), "--responses", "Ag,As",
        )
        assert payload["n_observations"] == 18
        assert set(payload["effects"]) == {"bullet", "location", "interaction"}
        for effect in payload["effects"].values():
            assert 0.0 < effect["wilks_lambda"] <= 1.0
            assert 0.0 <= effect["wilks_p"] <= 1.0


class TestDistfitCommand:
    def test_ranking_shape(self, capsys, tmp_path):
        rng = np.random.default_rng(11)
        values = np.exp(rng.normal(0.0, 1.0, 200))
        path = tmp_path / "vals.csv"
        path.write_text("\n".join(repr(float(v)) for v in values) + "\n")
        payload, _ = run_json(capsys, "distfit", "--input", str(path), "--families", "all")
        assert len(payload["ranking"]) == 8
        top_two = [e["family"] for e in payload["ranking"][:2]]
        assert "lognormal" in top_two

    def test_unknown_family_exits_2(self, capsys, tmp_path):
        path = tmp_path / "vals.csv"
        path.write_text("\n".join(str(float(i + 1)) for i in range(10)) + "\n")
        code, _, err = run(capsys, "distfit", "--input", str(path), "--families", "cauchy")
        assert code == 2


class TestNaaCommand:
    def test_decay_factor(self, capsys):
        payload, _ = run_json(
            capsys,
            "naa", "decay", "--half-life", "24s", "--ti", "60", "--td", "30", "--tc", "180",
        )
        assert payload["decay_factor_s"] == pytest.approx(11.918185218927765, abs=1e-9)

    def test_duration_units(self, capsys):
        payload, _ = run_json(
            capsys,
            "naa", "decay", "--half-life", "0.4m", "--ti", "1m", "--td", "30s", "--tc", "3m",
        )
        assert payload["decay_factor_s"] == pytest.approx(11.918185218927765, abs=1e-9)

    def test_comparator_concentration(self, capsys):
        payload, _ = run_json(
            capsys,
            "naa", "conc", "--sample-counts", "5000", "--sample-mass-mg", "20",
            "--std-counts", "5000", "--std-mass-ug", "2",
            "--half-life", "24s", "--ti", "60", "--td", "30", "--tc", "180",
        )
        assert payload["concentration_ppm"] == pytest.approx(100.0, rel=1e-12)

    def test_selfabs_three_energies(self, capsys):
        payload, _ = run_json(
            capsys,
            "naa", "selfabs", "--dimension-mm", "0.4", "--energies", "559,564,657",
        )
        assert set(payload["losses"]) == {"559", "564", "657"}
        assert 0.0247 <= payload["average_loss"] <= 0.0334

    def test_selfabs_unknown_energy_exits_2(self, capsys):
        code, _, _ = run(
            capsys, "naa", "selfabs", "--dimension-mm", "0.4", "--energies", "700"
        )
        assert code == 2

    def test_selfabs_custom_table(self, capsys, tmp_path):
        table = tmp_path / "mu.csv"
        table.write_text("energy_kev,mu_linear_per_cm\n600,1.4165\n")
        payload, _ = run_json(
            capsys,
            "naa", "selfabs", "--dimension-mm", "0.4", "--table", str(table),
        )
        assert list(payload["losses"]) == ["600"]


class TestReportCommand:
    def test_full_pipeline(self, capsys):
        payload, _ = run_json(capsys, "report", "--fixture", "table1", "--criterion", "guinn4")
        assert payload["grouping"]["groups"] == [
            ["CE 399", "CE 842"],
            ["CE 567", "CE 840", "CE 843"],
        ]
        assert len(payload["specimens"]) == 5
        assert payload["within_lot"]["pairs_total"] == 0  # table1 has no lots
        assert "boundary_note" in payload["decisions"]

    def test_table3_notes_semantics(self, capsys):
        payload, _ = run_json(capsys, "report", "--fixture", "table3", "--criterion", "guinn4")
        assert "table3_semantics" in payload["decisions"]
        assert payload["within_lot"]["pairs_total"] == 16 * 15 // 2


class TestExitCodes:
    def test_internal_failure_exits_1(self, capsys, monkeypatch):
        import cabl.cli as cli

        def boom(*_args, **_kwargs):
            raise RuntimeError("synthetic crash")

        monkeypatch.setattr(cli, "group", boom)
        code, _, err = run(capsys, "group", "--fixture", "table1")
        assert code == 1
        assert "internal error" in err

    def test_success_exits_0(self, capsys):
        code, _, _ = run(capsys, "group", "--fixture", "table1")
        assert code == 0


class TestConfigAndDeterminism:
    def test_config_supplies_criterion(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(
            json.dumps(
                {
                    "criterion": {
                        "k": 2,
                        "elements": ["Sb", "Ag"],
                        "boundary": "closed",
                        "bias": {"Sb": [0.02, 0.054], "Ag": 0.055},
                    }
                }
            )
        )
        payload, _ = run_json(
            capsys, "match", "--fixture", "table1", "--config", str(config)
        )
        assert payload["criterion"]["k"] == 2.0
        assert payload["criterion"]["bias"] == {"Sb": [0.02, 0.054], "Ag": [0.055, 0.055]}

    def test_flags_override_config(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"criterion": {"k": 2}}))
        payload, _ = run_json(
            capsys, "match", "--fixture", "table1", "--config", str(config), "--k", "4"
        )
        assert payload["criterion"]["k"] == 4.0

    @pytest.mark.parametrize(
        "argv",
        [
            ("group", "--fixture", "table1", "--criterion", "guinn4"),
            ("match", "--fixture", "table1", "--criterion", "nrc2"),
            ("evidence", "--box", "6,4", "--draws-t", "2", "--draws-not-t", "3",
             "--groups-observed", "2"),
            ("report", "--fixture", "table3", "--criterion", "guinn4"),
            ("naa", "decay", "--half-life", "24s", "--ti", "60", "--td", "30", "--tc", "180"),
        ],
    )
    def test_json_round_trips_byte_identical(self, capsys, argv):
        _, out = run_json(capsys, *argv)
        assert render_json(json.loads(out)) == out

    def test_repeated_runs_identical(self, capsys):
        _, first = run_json(capsys, "group", "--fixture", "table1", "--criterion", "guinn4")
        _, second = run_json(capsys, "group", "--fixture", "table1", "--criterion", "guinn4")
        assert first == second
