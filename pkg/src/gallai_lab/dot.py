from __future__ import annotations

from typing import Sequence

from .errors import InvalidPath
from .graph import Graph

# Colour-blind friendly; cycles if more paths are highlighted.
PALETTE = ("#d55e00", "#0072b2", "#009e73", "#cc79a7", "#e69f00", "#56b4e9", "#f0e442")


def to_dot(g: Graph, highlighted_paths: Sequence[Sequence[int]] = (), name: str = "G") -> str:
    """Graphviz source for ``g`` with each highlighted path in its own colour.

    An edge on several highlighted paths is drawn once per path (parallel
    coloured edges) so no highlight hides another.
    """
    from .paths import is_path

    for i, p in enumerate(highlighted_paths):
        if not is_path(g, p):
            raise InvalidPath(f"highlighted path {i} is not a path in the graph: {list(p)}")

    on_path: dict[tuple[int, int], list[int]] = {}
    for i, p in enumerate(highlighted_paths):
        for a, b in zip(p, p[1:]):
            on_path.setdefault((min(a, b), max(a, b)), []).append(i)

    lines = [f"graph {name} {{", "  node [shape=circle];"]
    lines.extend(f"  {v};" for v in range(g.order))
    for u, v in g.edges:
        owners = on_path.get((u, v))
        if not owners:
            lines.append(f"  {u} -- {v};")
            continue
        for i in owners:
            color = PALETTE[i % len(PALETTE)]
            lines.append(f'  {u} -- {v} [color="{color}", penwidth=3, label="P{i + 1}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
