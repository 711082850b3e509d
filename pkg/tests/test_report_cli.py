import io
import subprocess
import sys
from pathlib import Path

import pytest

from resgame import (
    AnalysisOptions,
    Coalition,
    PartialSwitch,
    Stay,
    extract_scenario,
    fixture_text,
    load_fixture,
    parse_scenario,
    render_report,
    run_analysis,
)
from resgame.cli import main

GOLDEN = Path(__file__).parent / "golden"
PARAMETRIC = "name plain\ngame { n = 3, a = 10, c = 2 }\n"


def write(tmp_path, text, name="s.scn"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_zoogle_analysis():
    report = run_analysis(load_fixture("zoogle_plus"))
    assert report.loyalty.core_nonempty is False
    assert report.loyalty.recommendation == PartialSwitch(Coalition.of(0, 1))
    assert report.loyalty.violations[0].surplus == pytest.approx(1 / 6, abs=1e-12)
    assert report.equilibrium is None and report.remediation is None


def test_zoogle_loyal_analysis():
    report = run_analysis(load_fixture("zoogle_plus_loyal"))
    assert report.loyalty.core_nonempty is True
    assert report.loyalty.recommendation == Stay()


def test_parametric_analysis_without_offers():
    report = run_analysis(parse_scenario(PARAMETRIC))
    assert report.equilibrium.quantities == pytest.approx([2.0] * 3)
    assert report.equilibrium.profits == pytest.approx([4.0] * 3)
    assert report.grand_worth == 16.0
    assert report.baseline == pytest.approx(16 / 3)
    assert report.loyalty.recommendation == Stay()
    assert report.remediation is None


def test_differentiated_analysis():
    report = run_analysis(parse_scenario("game { n = 2, a = 10, c = 2, gamma = 0.5 }\noffer { set {0}, worth 11 }"))
    assert report.equilibrium.quantities == pytest.approx([3.2, 3.2])
    assert report.grand_worth == pytest.approx(64 / 3)
    assert report.loyalty.recommendation == PartialSwitch(Coalition.of(0))
    assert report.remediation is None and report.thresholds is None


def test_machine_rendering_is_deterministic():
    scenario = load_fixture("three_services_offer")
    first = render_report(run_analysis(scenario), "machine")
    second = render_report(run_analysis(load_fixture("three_services_offer")), "machine")
    assert first == second
    keys = [line.split(" = ", 1)[0] for line in first.splitlines()]
    for key in ("core_nonempty", "baseline_per_member", "violations[0].coalition", "recommendation",
                "remediation.delta_c", "remediation.delta_a", "remediation.n_max",
                "equilibrium.q[0]", "equilibrium.pi[2]"):
        assert key in keys
    assert len(keys) == len(set(keys))
    assert "remediation.delta_a = 0.485281374239" in first.splitlines()


def test_table_rendering_zoogle():
    text = render_report(run_analysis(load_fixture("zoogle_plus")), "table")
    assert any("baseline per member" in line and "0.833333333333" in line for line in text.splitlines())
    for pair in ("{0,1}", "{0,2}", "{1,2}"):
        assert any(line.split() and line.split()[0] == pair for line in text.splitlines())


def test_no_remediation_without_offers():
    report = run_analysis(parse_scenario(PARAMETRIC))
    assert "remediation" not in render_report(report, "machine")
    assert "Remediation" not in render_report(report, "table")


def test_number_formatting():
    text = render_report(run_analysis(load_fixture("zoogle_plus")), "machine")
    assert "baseline_per_member = 0.833333333333\n" in text
    assert "violations[0].per_member_worth = 1\n" in text


@pytest.mark.parametrize("name", ["zoogle_plus", "zoogle_plus_loyal", "three_services_offer"])
def test_machine_round_trip(name):
    text = render_report(run_analysis(load_fixture(name)), "machine")
    again = render_report(run_analysis(extract_scenario(text)), "machine")
    assert again == text


def test_options_select_sections():
    scenario = load_fixture("three_services_offer")
    eq_only = run_analysis(scenario, AnalysisOptions.for_command("equilibrium"))
    assert eq_only.equilibrium is not None and eq_only.loyalty is None and eq_only.remediation is None
    advise = run_analysis(scenario, AnalysisOptions.for_command("advise"))
    assert advise.remediation is not None and advise.loyalty is None
    with pytest.raises(ValueError):
        AnalysisOptions.for_command("nope")


def test_cli_success_is_quiet_on_stderr(tmp_path, capsys):
    path = write(tmp_path, fixture_text("zoogle_plus"))
    for command in ("analyze", "core-check"):
        for fmt in ("table", "machine"):
            assert main([command, "--scenario", path, "--format", fmt]) == 0
            out, err = capsys.readouterr()
            assert out and err == ""


def test_cli_exit_codes(tmp_path, capsys):
    bad_syntax = write(tmp_path, "game { n = 3 a }", "bad.scn")
    assert main(["analyze", "--scenario", bad_syntax]) == 1
    assert "line 1" in capsys.readouterr().err

    invalid = write(tmp_path, "game { n = 3, a = 10, c = 2 }\noffer { set {0,3}, worth 1 }", "inv.scn")
    assert main(["analyze", "--scenario", invalid]) == 1
    assert main(["analyze", "--scenario", str(tmp_path / "missing.scn")]) == 1

    table = write(tmp_path, fixture_text("zoogle_plus"), "z.scn")
    assert main(["equilibrium", "--scenario", table]) == 1
    assert main(["advise", "--scenario", table]) == 1
    capsys.readouterr()

    infeasible = write(tmp_path, "game { n = 3, a = 10, c = 1 }\noffer { set {0}, worth 100 }", "inf.scn")
    assert main(["advise", "--scenario", infeasible, "--format", "machine"]) == 0
    assert "remediation.delta_c = infeasible" in capsys.readouterr().out
    assert main(["advise", "--scenario", infeasible, "--strict", "--format", "machine"]) == 2
    out, err = capsys.readouterr()
    assert "remediation.n_max = infeasible" in out and err


def test_cli_reads_stdin(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO(PARAMETRIC))
    assert main(["equilibrium", "--scenario", "-", "--format", "machine"]) == 0
    assert "equilibrium.q[0] = 2\n" in capsys.readouterr().out


def test_cli_advise_feasible(tmp_path, capsys):
    path = write(tmp_path, fixture_text("three_services_offer"))
    assert main(["advise", "--scenario", path, "--strict"]) == 0
    out = capsys.readouterr().out
    assert "cost reduction" in out and "0.485281374239" in out


def test_golden_zoogle_machine_output():
    fixture = Path(__file__).parents[1] / "src" / "resgame" / "data" / "zoogle_plus.scn"
    runs = [
        subprocess.run(
            [sys.executable, "-m", "resgame", "analyze", "--scenario", str(fixture), "--format", "machine"],
            capture_output=True, check=True,
        )
        for _ in range(2)
    ]
    assert runs[0].stdout == runs[1].stdout
    assert runs[0].stderr == b""
    assert runs[0].stdout == (GOLDEN / "zoogle_plus.machine.txt").read_bytes()
