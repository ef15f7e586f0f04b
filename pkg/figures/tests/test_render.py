"""Render tests, driven end-to-end from CSVs produced by the simulation CLI."""

import shutil
import subprocess
import sys

import numpy as np
import pytest

from ramsey_figures import FigureJob, RenderError, read_artifact, render
from ramsey_figures.render import main


def run_simulator(*args) -> None:
    """Invoke the simulation CLI through its public command-line interface."""
    exe = shutil.which("brillouin-ramsey")
    cmd = [exe, *args] if exe else [sys.executable, "-m", "brillouin_ramsey.cli", *args]
    subprocess.run(cmd, check=True, capture_output=True, text=True)


@pytest.fixture(scope="session")
def artifacts(tmp_path_factory):
    root = tmp_path_factory.mktemp("csv")
    paths = {
        "fig3": root / "fig3_rwa_tau1.csv",
        "fig4": root / "fig4_arwa.csv",
        "fig4c": root / "fig4c_visibility.csv",
        "fig5": root / "fig5_rwa.csv",
        "fig5_arwa": root / "fig5_arwa.csv",
    }
    run_simulator("sweep2d", "--preset", "fig3_rwa_tau1", "--out", str(paths["fig3"]))
    run_simulator("sweep2d", "--preset", "fig4_arwa", "--out", str(paths["fig4"]))
    run_simulator("fringe", "--preset", "fig4c_visibility", "--out", str(paths["fig4c"]))
    run_simulator("sweep2d", "--preset", "fig5_rwa", "--out", str(paths["fig5"]))
    run_simulator("sweep2d", "--preset", "fig5_arwa", "--out", str(paths["fig5_arwa"]))
    return paths


class TestReadArtifact:
    def test_meta_and_columns(self, artifacts):
        meta, header, data = read_artifact(artifacts["fig4"])
        assert meta["config"]["kappa_a_mhz"] == 40.0
        assert header == ["omega_x_mhz", "kappa_mhz", "signal"]
        assert data.shape[0] == 3

    def test_empty_csv_rejected(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text('# meta: {"config":{}}\nomega_x_mhz,signal\n')
        with pytest.raises(RenderError, match="no data rows"):
            read_artifact(path)

    def test_missing_meta_rejected(self, tmp_path):
        path = tmp_path / "plain.csv"
        path.write_text("omega_x_mhz,signal\n0.0,1.0\n")
        with pytest.raises(RenderError, match="meta"):
            read_artifact(path)


class TestRender:
    @pytest.mark.parametrize("kind,key", [
        ("fig3", "fig3"), ("fig4", "fig4"), ("fig4c", "fig4c"), ("fig5", "fig5"),
    ])
    def test_kinds_render(self, artifacts, tmp_path, kind, key):
        out = tmp_path / f"{kind}.png"
        render(FigureJob(kind=kind, csv_paths=(str(artifacts[key]),), out_path=str(out)))
        assert out.exists() and out.stat().st_size > 0

    def test_multi_panel(self, artifacts, tmp_path):
        out = tmp_path / "fig5_both.png"
        render(FigureJob(kind="fig5",
                         csv_paths=(str(artifacts["fig5"]), str(artifacts["fig5_arwa"])),
                         out_path=str(out)))
        assert out.exists() and out.stat().st_size > 0

    def test_axis_mismatch_rejected(self, artifacts, tmp_path):
        job = FigureJob(kind="fig5", csv_paths=(str(artifacts["fig4"]),),
                        out_path=str(tmp_path / "x.png"))
        with pytest.raises(RenderError, match="coupling_mhz"):
            render(job)

    def test_flat_zero_coupling_row_renders(self, artifacts, tmp_path):
        # fig5 grids include the decoupled row; rendering must not choke on it
        _, _, data = read_artifact(artifacts["fig5"])
        flat = data[2][data[1] == 0.0]
        assert np.ptp(flat) < 1e-9 * np.max(data[2])
        out = tmp_path / "fig5.png"
        render(FigureJob(kind="fig5", csv_paths=(str(artifacts["fig5"]),),
                         out_path=str(out)))
        assert out.exists()

    def test_rerun_overwrites(self, artifacts, tmp_path):
        out = tmp_path / "fig4.png"
        job = FigureJob(kind="fig4", csv_paths=(str(artifacts["fig4"]),), out_path=str(out))
        render(job)
        first = out.stat().st_size
        render(job)
        assert out.stat().st_size == first

    def test_unknown_kind_rejected(self, artifacts, tmp_path):
        with pytest.raises(RenderError, match="kind"):
            FigureJob(kind="fig6", csv_paths=(str(artifacts["fig4"]),),
                      out_path=str(tmp_path / "x.png"))


class TestCommandLine:
    def test_success_and_exit_code(self, artifacts, tmp_path, capsys):
        out = tmp_path / "fig4c.png"
        assert main(["fig4c", str(artifacts["fig4c"]), "-o", str(out)]) == 0
        assert out.exists()
        assert "wrote" in capsys.readouterr().out

    def test_error_exit_without_output(self, artifacts, tmp_path, capsys):
        out = tmp_path / "never.png"
        code = main(["fig5", str(artifacts["fig4"]), "-o", str(out)])
        assert code == 2
        assert not out.exists()
        err = capsys.readouterr().err
        assert err.startswith("error:")

    def test_empty_csv_error_no_file(self, tmp_path, capsys):
        csv = tmp_path / "empty.csv"
        csv.write_text('# meta: {"config":{}}\nomega_x_mhz,kappa_mhz,signal\n')
        out = tmp_path / "never.png"
        assert main(["fig4", str(csv), "-o", str(out)]) == 2
        assert not out.exists()


def test_criterion_13_figures_from_preset_csvs(artifacts, tmp_path):
    """Acceptance: all four figure kinds render from preset CSVs, and the
    anti_rwa visibility curve lies above the rwa curve at kappa = 2pi x 40 MHz."""
    outs = {}
    for kind, key in (("fig3", "fig3"), ("fig4", "fig4"), ("fig4c", "fig4c"), ("fig5", "fig5")):
        outs[kind] = tmp_path / f"{kind}.png"
        render(FigureJob(kind=kind, csv_paths=(str(artifacts[key]),), out_path=str(outs[kind])))

    _, _, data = read_artifact(artifacts["fig4c"])
    kappa, v_rwa, v_arwa = data
    at40 = np.isclose(kappa, 40.0)
    assert at40.any()
    above_at_40 = bool(np.all(v_arwa[at40] > v_rwa[at40]))

    rendered = all(p.exists() and p.stat().st_size > 0 for p in outs.values())
    passed = rendered and above_at_40
    print(f"\nACCEPTANCE 13 {'PASS' if passed else 'FAIL'}: rendered "
          f"{sorted(outs)} without error; anti_rwa visibility above rwa at "
          f"kappa = 2pi x 40 MHz: {v_arwa[at40][0]:.3f} > {v_rwa[at40][0]:.3f}")
    assert rendered
    assert above_at_40
