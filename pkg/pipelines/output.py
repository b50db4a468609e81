from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

from loguru import logger

from models import RunConfig


def config_header(cfg: RunConfig) -> List[str]:
    """The resolved run config as '#'-prefixed JSON lines."""
    return ["# " + line for line in cfg.model_dump_json(indent=2).splitlines()]


def format_float(x: float) -> str:
    # repr keeps full precision and always uses '.'
    return repr(float(x))


def render_csv(
    columns: Sequence[str],
    rows: Iterable[Sequence[object]],
    header: Sequence[str] = (),
    notes: Sequence[str] = (),
) -> str:
    buf = io.StringIO()
    for line in header:
        buf.write(line + "\n")
    for note in notes:
        buf.write("# " + note + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_float(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def write_text(text: str, out: Optional[Path]) -> None:
    """Write to `out`, or to stdout when no path is given."""
    if out is None:
        print(text, end="")
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    logger.info("Wrote {}", path)


PLOT_TEMPLATE = '''"""Plot a squeezing spectrum CSV. Requires matplotlib."""
import csv

import matplotlib.pyplot as plt

CSV_PATH = {csv_path!r}
THETA = {theta!r}

omega, s_plus, s_approx = [], [], []
with open(CSV_PATH, encoding="utf-8") as fh:
    rows = csv.DictReader(line for line in fh if not line.startswith("#"))
    for row in rows:
        omega.append(float(row["omega"]))
        s_plus.append(float(row["S_plus"]))
        if row.get("S_approx"):
            s_approx.append(float(row["S_approx"]))

plt.plot(omega, s_plus, label="exact")
if s_approx:
    plt.plot(omega, s_approx, "--", label="large-detuning approximation")
plt.axhline(1.0, color="grey", lw=0.5)
plt.xlabel("omega / g")
plt.ylabel("S(omega), theta = %.4g" % THETA)
plt.legend()
plt.savefig(CSV_PATH.rsplit(".", 1)[0] + ".png", dpi=150)
'''


def write_plot_script(path: Path, csv_path: Path, theta: float) -> None:
    write_text(PLOT_TEMPLATE.format(csv_path=str(csv_path), theta=theta), path)
