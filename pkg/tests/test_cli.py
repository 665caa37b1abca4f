#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Tests for config resolution, exit codes and the command bodies
# - End-to-end solve on a tiny mesh checking the written artifacts
# - Short Barry-Mercer run asserts the oscillation and peak checks pass
#

"""
Tests for the CLI and the workflow commands.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import sys
import tempfile
from pathlib import Path
from typing import Any
from unittest.mock import patch

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poro_feti.cli.parser import exit_code_for, main_cli
from poro_feti.cli.parser_modules.run_config import CONFIG_KEYS, RunConfig, emit_config, parse_config
from poro_feti.core.constants import EXIT_ACCEPTANCE_FAILURE, EXIT_CONFIG_ERROR, EXIT_SOLVER_FAILURE, EXIT_SUCCESS
from poro_feti.core.exceptions import AcceptanceError, ConfigError, SimulationStepError, SolverError
from poro_feti.core.types import MuConvention, RetentionPolicy, ScenarioName, SolverKind
from poro_feti.utils.logger import get_logger
from poro_feti.verify.convergence import ErrorRow, StudySettings
from poro_feti.workflow import flows
from poro_feti.workflow.commands import build_params, execute_barry_mercer, execute_converge, execute_solve, study_settings


def rate_runner(rate_u: float, rate_p: float) -> Any:
    def run(nu: float, n: int, settings: StudySettings) -> ErrorRow:
        h = 1.0 / n
        return ErrorRow(nu=nu, h=h, err_u=h**rate_u, err_p=h**rate_p)

    return run


class TestRunConfig:
    """Defaults, config files and flag precedence."""

    def test_defaults(self) -> None:
        config = parse_config()
        assert config == RunConfig()
        assert config.mesh == 8
        assert config.fe_order == 2
        assert config.solver is SolverKind.FETI_GENERALIZED
        assert config.out == Path("output")
        assert config.nus == (0.2, 0.49, 0.499, 0.4999)

    def test_file_then_flags(self, tmp_path: Path) -> None:
        path = tmp_path / "run.cfg"
        path.write_text("# study\nmesh = 16\nsolver = feti-schur\nnus = 0.2, 0.4999  # two ratios\n", encoding="utf-8")
        config = parse_config(path, {"mesh": 4, "tol": None})
        assert config.mesh == 4
        assert config.solver is SolverKind.FETI_SCHUR
        assert config.nus == (0.2, 0.4999)
        assert config.tol == RunConfig().tol

    @pytest.mark.parametrize(
        "overrides",
        [
            {"fe_order": 3},
            {"mesh": 0},
            {"nu": 0.5},
            {"tol": -1.0},
            {"dt": 0.5, "T": 0.1},
            {"nus": "0.2, 0.6"},
            {"solver": "gmres"},
            {"concurrent": "maybe"},
        ],
    )
    def test_invalid_values(self, overrides: dict[str, Any]) -> None:
        with pytest.raises(ConfigError):
            parse_config(overrides=overrides)

    def test_unknown_key(self, tmp_path: Path) -> None:
        path = tmp_path / "run.cfg"
        path.write_text("meshes = 4\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="unknown config key 'meshes'"):
            parse_config(path)

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(ConfigError):
            parse_config(tmp_path / "absent.cfg")

    def test_every_field_is_a_key(self) -> None:
        assert set(CONFIG_KEYS) == {f.name for f in dataclasses.fields(RunConfig)}

    @given(
        mesh=st.integers(min_value=1, max_value=64),
        fe_order=st.sampled_from([1, 2]),
        nu=st.one_of(st.none(), st.floats(min_value=0.0, max_value=0.4999)),
        tol=st.floats(min_value=1e-14, max_value=1e-2),
        solver=st.sampled_from(list(SolverKind)),
        nus=st.lists(st.floats(min_value=0.0, max_value=0.4999), min_size=1, max_size=4).map(tuple),
        concurrent=st.booleans(),
    )
    @settings(max_examples=50, deadline=None)
    def test_emit_then_parse(
        self,
        mesh: int,
        fe_order: int,
        nu: float | None,
        tol: float,
        solver: SolverKind,
        nus: tuple[float, ...],
        concurrent: bool,
    ) -> None:
        config = RunConfig(
            mesh=mesh,
            fe_order=fe_order,
            nu=nu,
            tol=tol,
            solver=solver,
            nus=nus,
            concurrent=concurrent,
            mu_convention=MuConvention.STANDARD,
            retain=RetentionPolicy.LAST_TWO,
        )
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "run.cfg"
            emit_config(config, path)
            assert parse_config(path) == config


class TestExitCodes:
    """Error to exit code mapping and the CLI entry point."""

    def test_mapping(self) -> None:
        assert exit_code_for(ConfigError("x")) == EXIT_CONFIG_ERROR
        assert exit_code_for(AcceptanceError("x")) == EXIT_ACCEPTANCE_FAILURE
        assert exit_code_for(SolverError("x")) == EXIT_SOLVER_FAILURE
        assert exit_code_for(SimulationStepError("x", 3, "E")) == EXIT_SOLVER_FAILURE

    def run_cli(self, argv: list[str]) -> int:
        with pytest.raises(SystemExit) as excinfo:
            main_cli(argv)
        return int(excinfo.value.code or 0)

    def test_help(self, capsys: pytest.CaptureFixture[str]) -> None:
        with patch.object(sys, "argv", ["poro-feti", "--help"]):
            with pytest.raises(SystemExit) as exc_info:
                main_cli()
            assert exc_info.value.code == 0
        assert "FETI iteration" in capsys.readouterr().out

    def test_flow_exit_code_is_passed_through(self, monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
        monkeypatch.chdir(tmp_path)
        with patch.object(sys, "argv", ["poro-feti", "converge", "--quiet"]):
            with patch("poro_feti.workflow.flows.converge_flow", return_value=EXIT_SOLVER_FAILURE) as mock_flow:
                with pytest.raises(SystemExit) as exc_info:
                    main_cli()
        assert exc_info.value.code == EXIT_SOLVER_FAILURE
        mock_flow.assert_called_once()

    def test_success(self, monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
        monkeypatch.chdir(tmp_path)
        seen: list[RunConfig] = []
        monkeypatch.setattr(flows, "solve_flow", lambda config: seen.append(config) or EXIT_SUCCESS)
        assert self.run_cli(["solve", "--mesh", "4", "--solver", "feti-schur", "--quiet"]) == EXIT_SUCCESS
        assert seen[0].mesh == 4
        assert seen[0].solver is SolverKind.FETI_SCHUR

    def test_working_directory_config(self, monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
        monkeypatch.chdir(tmp_path)
        (tmp_path / "poro_feti.cfg").write_text("mesh = 12\nstride = 5\n", encoding="utf-8")
        seen: list[RunConfig] = []
        monkeypatch.setattr(flows, "solve_flow", lambda config: seen.append(config) or EXIT_SUCCESS)
        self.run_cli(["solve", "--stride", "2", "--quiet"])
        assert (seen[0].mesh, seen[0].stride) == (12, 2)

    def test_config_error(self, monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
        monkeypatch.chdir(tmp_path)
        assert self.run_cli(["solve", "--mesh", "0", "--quiet"]) == EXIT_CONFIG_ERROR

    def test_unsupported_order_is_rejected_by_the_parser(self, monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
        monkeypatch.chdir(tmp_path)
        assert self.run_cli(["solve", "--fe-order", "3"]) == EXIT_CONFIG_ERROR

    def test_acceptance_failure(self, monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
        monkeypatch.chdir(tmp_path)

        def fail(config: RunConfig) -> int:
            raise AcceptanceError("pressure oscillation")

        monkeypatch.setattr(flows, "barry_mercer_flow", fail)
        assert self.run_cli(["barry-mercer", "--quiet"]) == EXIT_ACCEPTANCE_FAILURE

    def test_step_failure_names_the_step(self, monkeypatch: pytest.MonkeyPatch, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        monkeypatch.chdir(tmp_path)

        def fail(config: RunConfig) -> int:
            raise SimulationStepError("factorization failed", 7, "E")

        monkeypatch.setattr(flows, "solve_flow", fail)
        assert self.run_cli(["solve", "--quiet"]) == EXIT_SOLVER_FAILURE
        err = capsys.readouterr().err
        assert "step 7" in err
        assert "subdomain E" in err


class TestCommands:
    """Command bodies without Prefect."""

    def test_params_from_config(self) -> None:
        params = build_params(RunConfig(E=2e4, nu=0.3, mu_convention=MuConvention.STANDARD))
        assert params.E_P == params.E_E == 2e4
        assert params.nu_P == params.nu_E == 0.3
        assert params.mu_P == pytest.approx(2e4 / 2.6)

    def test_study_uses_the_sweep_not_nu(self) -> None:
        settings = study_settings(RunConfig(nu=0.3, fe_order=1, dt=1e-3, T=4e-3))
        assert settings.params.nu_P == 0.2
        assert settings.orders.displacement == 1
        assert settings.time_step == 1e-3

    @pytest.mark.integration
    def test_solve_writes_snapshots_and_log(self, tiny_config: RunConfig) -> None:
        code = execute_solve(tiny_config, get_logger(quiet_mode=True))
        assert code == EXIT_SUCCESS
        out = tiny_config.out
        assert sorted(p.name for p in out.glob("*.vtk")) == ["step_000001.vtk", "step_000002.vtk"]
        with (out / "solver_log.csv").open(encoding="utf-8") as f:
            rows = list(csv.reader(f))
        assert rows[0] == ["step", "variant", "iterations", "residual", "time_P", "time_E"]
        assert [r[0] for r in rows[1:]] == ["1", "2"]
        assert all(r[1] == "feti-generalized" for r in rows[1:])

    @pytest.mark.integration
    def test_solve_with_block_dump(self, tiny_config: RunConfig) -> None:
        config = dataclasses.replace(tiny_config, dump_blocks=True, stride=2, solver=SolverKind.MONOLITHIC)
        assert execute_solve(config, get_logger(quiet_mode=True)) == EXIT_SUCCESS
        assert len(list((config.out / "blocks").glob("*.mtx"))) == 9
        assert [p.name for p in config.out.glob("*.vtk")] == ["step_000002.vtk"]

    def test_converge_writes_the_table(self, tmp_path: Path) -> None:
        config = RunConfig(mesh_sizes=(8, 16), nus=(0.2, 0.49), out=tmp_path, quiet=True)
        assert execute_converge(config, get_logger(quiet_mode=True), rate_runner(3.0, 2.0)) == EXIT_SUCCESS
        lines = (tmp_path / "convergence.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == "nu,h,err_u,order_u,err_p,order_p"
        assert len(lines) == 5

    def test_converge_rejects_low_orders(self, tmp_path: Path) -> None:
        config = RunConfig(mesh_sizes=(8, 16), nus=(0.2,), out=tmp_path, quiet=True)
        with pytest.raises(AcceptanceError):
            execute_converge(config, get_logger(quiet_mode=True), rate_runner(1.0, 1.0))
        assert (tmp_path / "convergence.csv").is_file()

    @pytest.mark.integration
    def test_barry_mercer_writes_the_report(self, tmp_path: Path) -> None:
        config = RunConfig(scenario=ScenarioName.BARRY_MERCER, mesh=16, dt=1e-2, T=3e-2, out=tmp_path, quiet=True)
        assert execute_barry_mercer(config, get_logger(quiet_mode=True)) == EXIT_SUCCESS
        data = json.loads((tmp_path / "oscillation.json").read_text(encoding="utf-8"))
        assert data["steps"] == 3
        assert data["passed"] is True
        assert data["peak_on_loaded_segment"] is True
        assert data["worst_violation"] is None
        assert data["min_value"] >= -0.05 * data["ceiling"]
        assert (tmp_path / "step_000003.vtk").is_file()

    @pytest.mark.slow
    def test_barry_mercer_acceptance(self, tmp_path: Path) -> None:
        config = RunConfig(scenario=ScenarioName.BARRY_MERCER, mesh=16, stride=100, out=tmp_path, quiet=True)
        assert execute_barry_mercer(config, get_logger(quiet_mode=True)) == EXIT_SUCCESS
        data = json.loads((tmp_path / "oscillation.json").read_text(encoding="utf-8"))
        assert data["steps"] == 100
        assert data["passed"] and data["peak_on_loaded_segment"]
