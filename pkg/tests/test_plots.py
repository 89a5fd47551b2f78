"""Every command renders a figure next to its table."""

import pytest

from ediffract.cli import main

CONFIGS = {
    "diffract": """
beam.lambda_nm = 50
slits.separation_nm = 330
slits.width_nm = 20
slits.height_nm = 200
screen.D_um = 240
screen.x2_min_um = -10
screen.x2_max_um = 10
screen.count = 5
""",
    "fraunhofer": """
beam.lambda_nm = 50
aperture.shape = disk
aperture.radius_nm = 100
far.range_um = 40
far.chi_min_deg = 0
far.chi_max_deg = 20
far.count = 9
""",
    "airy": """
beam.lambda_nm = 50
aperture.radius_nm = 100
far.range_um = 40
far.chi_min_deg = 0
far.chi_max_deg = 20
far.count = 9
""",
    "fringes": """
beam.lambda_pm = 50
slits.separation_nm = 330
screen.D_mm = 240
fringes.n_min = -2
fringes.n_max = 2
""",
    "ab-shift": """
beam.lambda_pm = 50
slits.separation_nm = 330
screen.D_mm = 240
ab.delta_theta = 1.5707963267948966
""",
    "born-probe": """
beam.k = 1.0
probe.x1_cm = 0
probe.x2_cm = 0
probe.x3_cm = 30
probe.y1_cm = 0
probe.y2_cm = 0
probe.y3_cm = -30
tube.cells_across = 16
tube.born_order = 1
""",
    "spectrum": """
beam.lambda_pm = 50
spectra.n_min = 1
spectra.n_max = 4
""",
    "zeeman": """
beam.lambda_pm = 50
spectra.B3 = 10000
zeeman.n = 2
zeeman.n_prime = 1
""",
    "correspondence": """
beam.lambda_pm = 50
corr.n_min = 10
corr.n_max = 1000
""",
    "shells": """
beam.lambda_pm = 50
shells.n_max = 5
""",
    "pauli": """
beam.lambda_pm = 50
spectra.B3 = 10000
pauli.n = 2
""",
}


@pytest.mark.parametrize("command", sorted(CONFIGS))
def test_command_renders_a_figure(command, tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(CONFIGS[command], encoding="utf-8")
    out = tmp_path / "table.csv"
    code = main([command, "--config", str(cfg), "--out", str(out), "--plot"])
    assert code == 0
    png = tmp_path / "table.png"
    assert png.exists() and png.stat().st_size > 1000
    assert "plot written to" in capsys.readouterr().err
    assert out.read_text(encoding="utf-8").count("\n") >= 2
