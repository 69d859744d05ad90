"""Figures for scan reports, written next to the report file."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .harness import ParityReport  # noqa: E402


def _stem(out: str | Path) -> Path:
    p = Path(out)
    return p.with_suffix("")


def plot_first_parity(reports: list[ParityReport], path: str | Path) -> Path:
    rs = [r for r in reports if r.first_odd_m is not None and r.first_even_m is not None]
    fig, ax = plt.subplots(figsize=(7, 4))
    D = [r.D for r in rs]
    ax.semilogy(D, [r.first_odd_m for r in rs], "o", label="first odd m")
    ax.semilogy(D, [r.first_even_m for r in rs], "s", label="first even m")
    ax.semilogy(D, [r.odd_bound for r in rs], "-", lw=0.8, label="12h+2")
    ax.semilogy(D, [r.even_bound for r in rs], "--", lw=0.8, label="(12h+2)prod(l+1)")
    bad = [r for r in rs if r.admissible and not r.bounds_ok]
    if bad:
        ax.semilogy([r.D for r in bad], [r.first_even_m for r in bad], "rx", ms=10, label="bound exceeded")
    ax.set_xlabel("D")
    ax.set_ylabel("m")
    ax.legend(fontsize=8)
    ax.set_title("First m prime to 6 of each parity of p((Dm^2+1)/24)")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def plot_frobenius_orders(reports: list[ParityReport], path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    for adm, marker, label in ((True, "o", "admissible"), (False, "x", "not admissible")):
        rs = [r for r in reports if r.admissible == adm and r.h]
        ax.scatter([r.h for r in rs], [r.frob_order for r in rs], marker=marker, label=label)
    even = [r for r in reports if r.admissible and r.frob_order % 2 == 0]
    for r in even:
        ax.annotate(str(r.D), (r.h, r.frob_order), fontsize=8, color="red")
    top = max((r.h for r in reports), default=1)
    ax.plot([0, top], [0, top], lw=0.5, color="grey")
    ax.set_xlabel("h(-D)")
    ax.set_ylabel("ord of the class above 2")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def write_figures(reports: list[ParityReport], out: str | Path) -> list[Path]:
    stem = _stem(out)
    return [
        plot_first_parity(reports, f"{stem}_parity.png"),
        plot_frobenius_orders(reports, f"{stem}_orders.png"),
    ]
