"""
Presentation helpers: LaTeX and plain-text emitters for polynomials, SEM
expansions and e-matrices, plus matplotlib figures for lattice path
representations in the style of the grid drawings used throughout the
package documentation.
"""
from __future__ import annotations

import io
from typing import Optional, Sequence

from .errors import BudgetError
from .lattice import LatticeRep, PathSystem, enumerate_path_systems
from .poly import Polynomial, SemExpansion


def poly_latex(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    chunks = []
    for (xe, qe), c in p.sorted_terms():
        factors = []
        for i, e in enumerate(xe):
            if e:
                factors.append(f"x_{{{i + 1}}}" + (f"^{{{e}}}" if e > 1 else ""))
        for i, e in enumerate(qe):
            if e:
                factors.append(f"q_{{{i + 1}}}" + (f"^{{{e}}}" if e > 1 else ""))
        body = "".join(factors) if factors else str(abs(c))
        if factors and abs(c) != 1:
            body = f"{abs(c)}{body}"
        chunks.append(("-" if c < 0 else "+") + body)
    text = "".join(chunks)
    return text[1:] if text.startswith("+") else text


def _sem_subscript(idx: Sequence[int]) -> str:
    if all(j <= 9 for j in idx):
        return "".join(str(j) for j in idx)
    return ",".join(str(j) for j in idx)


def sem_text(exp: SemExpansion) -> str:
    if not exp.coeffs:
        return "0"
    chunks = []
    for idx, c in exp.coeffs:
        body = f"e_{_sem_subscript(idx)}" if idx else "1"
        if abs(c) != 1:
            body = f"{abs(c)}*{body}"
        chunks.append(("- " if c < 0 else "+ ") + body)
    text = " ".join(chunks)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def sem_latex(exp: SemExpansion) -> str:
    if not exp.coeffs:
        return "0"
    chunks = []
    for idx, c in exp.coeffs:
        body = f"e_{{{_sem_subscript(idx)}}}" if idx else "1"
        if abs(c) != 1:
            body = f"{abs(c)}{body}"
        chunks.append(("-" if c < 0 else "+") + body)
    text = "".join(chunks)
    return text[1:] if text.startswith("+") else text


def entry_indices(rep: LatticeRep) -> list[list[Optional[tuple[int, int]]]]:
    """Symbolic (j, k) per matrix cell, so entry = e_j^(k); None when zero."""
    out = []
    for a in rep.starts:
        row = []
        for b, c in rep.ends:
            j = c + b - a
            row.append((j, c) if 0 <= j <= c else None)
        out.append(row)
    return out


def matrix_text(rep: LatticeRep) -> str:
    cells = [
        ["0" if jk is None else f"e_{jk[0]}^({jk[1]})" for jk in row]
        for row in entry_indices(rep)
    ]
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)


def matrix_latex(rep: LatticeRep) -> str:
    rows = []
    for row in entry_indices(rep):
        rows.append(
            "&".join("0" if jk is None else f"e_{{{jk[0]}}}^{{({jk[1]})}}" for jk in row)
        )
    body = r"\\".join(rows)
    return r"\left|\begin{matrix}" + body + r"\end{matrix}\right|"


# --- figures -----------------------------------------------------------------

def draw_rep(rep: LatticeRep, systems: Optional[Sequence[PathSystem]] = None):
    """Grid figure with dashed edges, start/end markers, and (when path
    systems are supplied) the used edges drawn solid."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xmax = max([*rep.starts, *(b for b, _ in rep.ends), 1])
    ymax = max([*(c for _, c in rep.ends), 1])
    fig, ax = plt.subplots(figsize=(1 + 0.8 * xmax, 1 + 0.8 * ymax))
    for x in range(xmax + 1):
        for y in range(ymax):
            ax.plot([x, x], [y, y + 1], linestyle="--", linewidth=0.6, color="0.7", zorder=1)
            if x >= 1:
                ax.plot([x, x - 1], [y, y + 1], linestyle="--", linewidth=0.6, color="0.7", zorder=1)
    if systems:
        used = set()
        for system in systems:
            for path in system.paths:
                for v0, v1 in zip(path, path[1:]):
                    used.add((v0, v1))
        for (x0, y0), (x1, y1) in sorted(used):
            ax.plot([x0, x1], [y0, y1], linewidth=1.8, color="black", zorder=2)
    ax.scatter(rep.starts, [0] * rep.k, s=60, color="tab:red", zorder=3)
    ax.scatter([b for b, _ in rep.ends], [c for _, c in rep.ends], s=60, color="tab:blue", zorder=3)
    if rep.label:
        ax.set_title(rep.label)
    ax.set_aspect("equal")
    ax.set_xlim(-0.5, xmax + 0.5)
    ax.set_ylim(-0.5, ymax + 0.5)
    ax.axis("off")
    fig.tight_layout()
    return fig


def rep_svg(rep: LatticeRep, with_paths: bool = True) -> str:
    """Render the representation to an SVG document string."""
    systems = None
    if with_paths:
        try:
            systems = enumerate_path_systems(rep)
        except BudgetError:
            systems = None
    fig = draw_rep(rep, systems)
    buf = io.StringIO()
    fig.savefig(buf, format="svg")
    import matplotlib.pyplot as plt

    plt.close(fig)
    return buf.getvalue()
