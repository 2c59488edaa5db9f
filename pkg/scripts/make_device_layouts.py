"""Regenerate the checked-in device layouts under src/hexmatch/layouts/.

Falcon-27 and Hummingbird-65 heavy-hex geometries in brick-wall grid
coordinates (y grows downward). Indices are assigned row-major; for the
65-qubit device this coincides with the vendor numbering.
"""

from pathlib import Path

from hexmatch.lattice import _layout_from_grid, save_layout

OUT = Path(__file__).resolve().parents[1] / "src" / "hexmatch" / "layouts"


def row(r, c_lo, c_hi):
    vs = [(r, c) for c in range(c_lo, c_hi + 1)]
    es = [((r, c), (r, c + 1)) for c in range(c_lo, c_hi)]
    return vs, es


def bridges(r, cols):
    return [((r, c), (r + 1, c)) for c in cols]


def falcon27():
    v1, e1 = row(1, 1, 5)
    v2, e2 = row(2, 1, 5)
    edges = e1 + e2 + bridges(1, (1, 3, 5))
    pendants = [
        ((1, 1), (-1, 0)),
        ((2, 5), (1, 0)),
        ((1, 2), (0, -1)),
        ((1, 4), (0, -1)),
        ((2, 2), (0, 1)),
        ((2, 4), (0, 1)),
    ]
    return _layout_from_grid("falcon-27", set(v1 + v2), set(edges), pendants)


def hummingbird65():
    spans = [(0, 4), (0, 5), (0, 5), (0, 5), (1, 5)]
    vertices, edges = [], []
    for r, (lo, hi) in enumerate(spans):
        v, e = row(r, lo, hi)
        vertices += v
        edges += e
    for r in range(4):
        edges += bridges(r, (0, 2, 4) if r % 2 == 0 else (1, 3, 5))
    pendants = [((0, 4), (1, 0)), ((4, 1), (-1, 0))]
    return _layout_from_grid("hummingbird-65", set(vertices), set(edges), pendants)


if __name__ == "__main__":
    for layout in (falcon27(), hummingbird65()):
        save_layout(layout, OUT / f"{layout.name}.json")
        print(layout.name, layout.num_qubits, len(layout.couplings))
