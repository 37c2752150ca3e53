"""Layered diagram layout and export (DOT, TikZ, PNG).

Elements are placed on horizontal levels by height; the left-to-right
order within a level follows the stored diagram order, recovered by a
leftmost depth-first walk from the bottom element.
"""

from .lattice import Lattice


def layout(L: Lattice) -> dict[int, tuple[float, float]]:
    """Coordinates for each element: x centered per level, y = height."""
    discovery = []
    seen = set()
    stack = [L.bottom]
    while stack:
        e = stack.pop()
        if e in seen:
            continue
        seen.add(e)
        discovery.append(e)
        stack.extend(reversed(L.up_covers[e]))
    rank = {e: k for k, e in enumerate(discovery)}
    levels: dict[int, list[int]] = {}
    for e in range(L.n):
        levels.setdefault(L.height(e), []).append(e)
    pos = {}
    for h, elems in levels.items():
        elems.sort(key=rank.__getitem__)
        for k, e in enumerate(elems):
            pos[e] = (k - (len(elems) - 1) / 2.0, float(h))
    return pos


def to_dot(L: Lattice, highlight=(), labels=None) -> str:
    """Graphviz source for the diagram; highlighted nodes filled black."""
    highlight = set(highlight)
    labels = labels or {e: str(e) for e in range(L.n)}
    lines = ["graph lattice {", "  rankdir=BT;",
             "  node [shape=circle, width=0.3, fixedsize=true];"]
    levels: dict[int, list[int]] = {}
    for e in range(L.n):
        levels.setdefault(L.height(e), []).append(e)
    for e in range(L.n):
        style = (" [style=filled, fillcolor=black, fontcolor=white]"
                 if e in highlight else "")
        lines.append(f'  n{e} [label="{labels[e]}"]{ style};')
    for h in sorted(levels):
        row = " ".join(f"n{e};" for e in levels[h])
        lines.append(f"  {{ rank=same; {row} }}")
    for a, b in L.cover_pairs():
        lines.append(f"  n{a} -- n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_tikz(L: Lattice, highlight=(), labels=None) -> str:
    """Standalone TikZ picture of the diagram."""
    highlight = set(highlight)
    labels = labels or {e: str(e) for e in range(L.n)}
    pos = layout(L)
    lines = ["\\begin{tikzpicture}[every node/.style={circle, draw,"
             " inner sep=1.5pt}]"]
    for e in range(L.n):
        x, y = pos[e]
        fill = ", fill=black, text=white" if e in highlight else ""
        lines.append(f"  \\node[{fill.lstrip(', ')}] (n{e}) at"
                     f" ({x * 1.2:.2f}, {y * 1.2:.2f})"
                     f" {{{labels[e]}}};")
    for a, b in L.cover_pairs():
        lines.append(f"  \\draw (n{a}) -- (n{b});")
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"


def render_png(L: Lattice, path, highlight=(), title=None):
    """Draw the diagram to an image file with matplotlib."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    highlight = set(highlight)
    pos = layout(L)
    fig, ax = plt.subplots(figsize=(6, 6))
    for a, b in L.cover_pairs():
        (x1, y1), (x2, y2) = pos[a], pos[b]
        ax.plot([x1, x2], [y1, y2], color="0.4", zorder=1, linewidth=1)
    for e in range(L.n):
        x, y = pos[e]
        face = "black" if e in highlight else "white"
        text = "white" if e in highlight else "black"
        ax.scatter([x], [y], s=320, facecolor=face, edgecolor="black",
                   zorder=2)
        ax.annotate(str(e), (x, y), ha="center", va="center",
                    color=text, fontsize=8, zorder=3)
    if title:
        ax.set_title(title)
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
