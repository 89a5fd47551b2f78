"""Figure rendering for the CLI report path.

Each command gets a simple matplotlib rendering of its table, written as
a PNG next to the delimited output.  The Agg backend is selected lazily
so importing the library never touches a display.
"""

from __future__ import annotations

import numpy as np

__all__ = ["render_plot"]


def _columns(table):
    return {name: np.asarray(table.column(name), dtype=float)
            for name in table.columns}


def render_plot(command: str, table, path: str) -> str:
    """Render the table for the given command and write a PNG to path."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7.0, 4.5), dpi=130)
    cols = _columns(table)

    if command == "diffract":
        ax.plot(cols["x2_cm"], cols["intensity"], lw=1.2)
        ax.set_xlabel("x2 (cm)")
        ax.set_ylabel("intensity")
        ax.set_title("screen intensity")
    elif command in ("fraunhofer", "airy"):
        ax.plot(cols["chi_deg"], cols["intensity"], lw=1.2)
        ax.set_xlabel("chi (deg)")
        ax.set_ylabel("intensity")
        ax.set_yscale("log")
        ax.set_title("far-field intensity")
    elif command == "fringes":
        ax.plot(cols["n"], cols["x2_exact_cm"], "o", label="exact")
        ax.plot(cols["n"], cols["x2_smallangle_cm"], "+", ms=10,
                label="small angle")
        ax.set_xlabel("order n")
        ax.set_ylabel("x2 (cm)")
        ax.legend()
        ax.set_title("fringe maxima")
    elif command == "ab-shift":
        row = table.rows[0]
        ax.axis("off")
        text = "\n".join(f"{name} = {value:.6g}"
                         for name, value in zip(table.columns, row))
        ax.text(0.5, 0.5, text, ha="center", va="center",
                family="monospace", fontsize=14)
        ax.set_title("fringe shift")
    elif command == "born-probe":
        ax.semilogy(cols["n"], np.maximum(cols["abs_R"], 1e-300), "o-")
        ax.set_xlabel("order n")
        ax.set_ylabel("|term|")
        ax.set_title("Green function series terms")
    elif command == "spectrum":
        ax.plot(cols["n"], cols["E_erg"], "o")
        ax.set_xlabel("n")
        ax.set_ylabel("E (erg)")
        ax.set_title("bound levels")
    elif command == "zeeman":
        omegas = cols["omega_per_s"]
        ax.vlines(omegas, 0.0, 1.0, lw=1.5)
        ax.set_xlabel("omega (1/s)")
        ax.set_yticks([])
        ax.set_title("line positions")
    elif command == "correspondence":
        ax.semilogx(cols["n"], cols["ratio"], "o-")
        ax.axhline(1.0, color="gray", lw=0.8)
        ax.set_xlabel("n")
        ax.set_ylabel("quantum / classical")
        ax.set_title("correspondence ratio")
    elif command == "shells":
        ax.bar(cols["n"], cols["capacity"], width=0.6)
        ax.set_xlabel("n")
        ax.set_ylabel("capacity")
        ax.set_title("shell capacities")
    elif command == "pauli":
        ax.plot(cols["m_plus_s"], cols["E_erg"], "o", alpha=0.6)
        ax.set_xlabel("m + s")
        ax.set_ylabel("E (erg)")
        ax.set_title("level splitting")
    else:
        # fallback: every numeric column against the row index
        for name in table.columns:
            ax.plot(cols[name], label=name)
        ax.legend()

    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
