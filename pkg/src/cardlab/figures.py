"""Matplotlib rendering of report documents to image files.

Figures are presentation only; the delimited and JSON documents remain the
canonical outputs.  Rendering is pinned (fixed sizes, no software metadata)
so repeated runs with the same report produce identical files.
"""

from __future__ import annotations

from pathlib import Path

from .embedding import EmbeddingReport

_POSITIVE = "#b7e1cd"
_NEGATIVE = "#f4c7c3"


def render_report_figures(report: EmbeddingReport, outdir: str | Path) -> list[Path]:
    """Write the verdict-matrix and atom-count figures; returns the paths."""
    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt
    from matplotlib.colors import ListedColormap

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    u = report.universe
    carrier = u.order.carrier
    n = len(carrier)
    written = []

    fig, axes = plt.subplots(1, 2, figsize=(2.2 * n + 4, 1.6 * n + 2.2))
    panels = [
        ("injective comparability", report.le_cells),
        ("surjective comparability", report.lestar_cells),
    ]
    for ax, (title, cells) in zip(axes, panels):
        grid = [[0] * n for _ in range(n)]
        marks = [[""] * n for _ in range(n)]
        for cell in cells:
            i = carrier.index(cell.source)
            j = carrier.index(cell.target)
            grid[i][j] = 1 if cell.positive else 0
            if cell.positive:
                marks[i][j] = "+" + (" id" if cell.source == cell.target else "")
            else:
                marks[i][j] = f"- ({len(cell.certificates)})"
        ax.imshow(grid, cmap=ListedColormap([_NEGATIVE, _POSITIVE]), vmin=0, vmax=1)
        for i in range(n):
            for j in range(n):
                ax.text(j, i, marks[i][j], ha="center", va="center", fontsize=9)
        ax.set_xticks(range(n), carrier)
        ax.set_yticks(range(n), carrier)
        ax.set_xlabel("target sector")
        ax.set_ylabel("source sector")
        ax.set_title(title)
    fig.suptitle(
        f"sector comparability over T({u.depth}, {u.index_budget}); "
        f"negative cells show certificate counts"
    )
    fig.tight_layout()
    path = outdir / "report_verdicts.png"
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    written.append(path)

    fig, (left, right) = plt.subplots(1, 2, figsize=(9, 3.6))
    levels = list(range(u.depth + 1))
    sizes = [u.stratum_size(m) for m in levels]
    left.bar([str(m) for m in levels], sizes, color="#7aa6c2")
    left.set_xlabel("level")
    left.set_ylabel("atoms up to level")
    left.set_title("stratum growth")
    sector_sizes = [sum(1 for a in u.atoms if a.element == p) for p in carrier]
    right.bar(carrier, sector_sizes, color="#c2a27a")
    right.set_xlabel("sector")
    right.set_ylabel("atoms")
    right.set_title("sector sizes")
    fig.tight_layout()
    path = outdir / "report_atoms.png"
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    written.append(path)
    return written
