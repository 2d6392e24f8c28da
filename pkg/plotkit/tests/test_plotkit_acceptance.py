"""End-to-end check: CLI render of the committed toy scan reproduces
the golden image hash, and the image encodes exactly the periods
present in the data (one flat color per period, plus background)."""

from PIL import Image

from plotkit import average_hash, read_csv
from plotkit.cli import main
from plotkit.render import hash_distance

GOLDEN_SCAN_HASH = "7f7f67672727a3a3"


def test_toy_scan_cli_render_matches_golden(scan_csv, tmp_path):
    out = str(tmp_path / "fig.png")
    assert main([scan_csv, "--out", out]) == 0
    assert hash_distance(average_hash(out), GOLDEN_SCAN_HASH) <= 2

    _, _, rows = read_csv(scan_csv)
    periods = {r["period"] for r in rows if r["period"] is not None}
    assert periods == {5.0, 7.0}
    colors = {c for _, c in Image.open(out).getcolors(maxcolors=4096)}
    assert len(colors) - 1 == len(periods)
