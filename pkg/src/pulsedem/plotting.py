"""Figure rendering for report data series.

Every series written to CSV gets a companion PNG with the same stem.
Rendering is optional at the call site (--no-figures skips it entirely)
and purely derived: figures repeat what the CSV already says, so they
never feed back into checks or the report.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_DPI = 120


def _columns(series) -> dict[str, np.ndarray]:
    cols = {name: [] for name in series.header}
    for row in series.rows:
        for name, cell in zip(series.header, row):
            cols[name].append(cell)
    out = {}
    for name, cells in cols.items():
        try:
            out[name] = np.asarray(cells, dtype=float)
        except (TypeError, ValueError):
            out[name] = np.asarray(cells, dtype=object)
    return out


def _plot_pulse_profile(ax, cols) -> None:
    ax.plot(cols["r"], cols["f0"], label="f0")
    ax.plot(cols["r"], cols["df0"], label="df0/dr", ls="--")
    ax.set_xlabel("phase r")
    ax.set_ylabel("pulse value")
    ax.legend()


def _plot_correspondence(ax, cols) -> None:
    ax.semilogy(cols["r"], np.maximum(cols["rel_err"], 1e-17), "o-", ms=3)
    ax.set_xlabel("radius")
    ax.set_ylabel("|averaged phi / coulomb - 1|")


def _plot_particle_fields(ax, cols) -> None:
    for r in np.unique(cols["r"]):
        sel = cols["r"] == r
        ax.plot(cols["t"][sel], cols["E_r"][sel], label=f"E_r at r={r:g}")
        ax.plot(cols["t"][sel], cols["q"][sel], ls="--", label=f"q at r={r:g}")
    ax.set_xlabel("t")
    ax.set_ylabel("field value")
    ax.legend(fontsize=7)


def _plot_orders(ax, cols) -> None:
    idx = np.arange(len(cols["order"]))
    ax.plot(idx, cols["order"], "o", ms=4)
    ax.axhline(2.0, color="k", lw=0.8)
    ax.axhline(1.8, color="k", lw=0.5, ls=":")
    ax.axhline(2.2, color="k", lw=0.5, ls=":")
    ax.set_xlabel("event index")
    ax.set_ylabel("convergence order")


def _plot_poynting(ax, cols) -> None:
    ax.loglog(cols["r"], cols["averaged_radial_poynting"], "o", label="averaged")
    ax.loglog(cols["r"], cols["expected"], "-", label="quantum / (area period)")
    ax.set_xlabel("radius")
    ax.set_ylabel("radial energy flux density")
    ax.legend()


def _plot_solenoid_wave(ax, cols) -> None:
    ax.plot(cols["t"], cols["A_phi"], label="A_phi")
    ax.plot(cols["t"], cols["E_w_mag"], label="|E|", ls="--")
    ax.plot(cols["t"], cols["B_w_z"], label="B_z", ls=":")
    ax.set_xlabel("t")
    ax.set_ylabel("exterior wave amplitude")
    ax.legend()


def _plot_loops(ax, cols) -> None:
    ax.plot(cols["R"], cols["circulation_avg"], "o-")
    ax.set_xlabel("loop radius")
    ax.set_ylabel("averaged circulation")


_RENDERERS = {
    "pulse_profile": _plot_pulse_profile,
    "correspondence": _plot_correspondence,
    "particle_fields": _plot_particle_fields,
    "maxwell_residuals": _plot_orders,
    "conservation_orders": _plot_orders,
    "poynting_flux": _plot_poynting,
    "solenoid_wave": _plot_solenoid_wave,
    "loop_circulations": _plot_loops,
}


def render_figures(report, out_dir: str) -> list[str]:
    """Write one PNG per known series; return the paths written."""
    written = []
    for series in report.series:
        renderer = _RENDERERS.get(series.name)
        if renderer is None or not series.rows:
            continue
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        renderer(ax, _columns(series))
        ax.set_title(series.name.replace("_", " "))
        fig.tight_layout()
        path = os.path.join(out_dir, f"{series.name}.png")
        fig.savefig(path, dpi=_DPI)
        plt.close(fig)
        written.append(path)
    return written
