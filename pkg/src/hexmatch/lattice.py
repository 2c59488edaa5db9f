"""Heavy-hexagon layouts and the hexagonal matching code defined on them.

Layouts use a brick-wall embedding of the hexagonal lattice on an integer grid:

* vertex qubits sit at even ``(x, y)``; vertex row ``r = y // 2``, column ``c = x // 2``;
* an edge qubit sits at the midpoint of the two vertices it couples, so
  horizontal edge qubits have odd ``x`` / even ``y`` and vertical ones even
  ``x`` / odd ``y``;
* vertical edges joining rows ``r`` and ``r + 1`` occur only at columns with
  ``c % 2 == r % 2``, which makes every hexagonal face a 3x2 "brick".

Vertical edges are z-links. Horizontal edges alternate between x and y along
a row: the edge starting at ``(r, c)`` is x when ``r + c`` is even.
"""

from __future__ import annotations

import json
import logging
import re
from collections import deque
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Iterable, Literal, Optional, Sequence, Union

from .pauli import PauliString, product

logger = logging.getLogger(__name__)

BUILTIN_LAYOUTS = ("falcon-27", "hummingbird-65")

# W = X0 Y1 Z2 X3 Y4 Z5 around the face
PLAQUETTE_PAULIS = ("X", "Y", "Z", "X", "Y", "Z")
# link type of boundary edge (k, k+1)
BOUNDARY_TYPES = ("Z", "X", "Y", "Z", "X", "Y")
# boundary edge positions forming each group, per the V_a / V_b split
GROUP_A_EDGES = (0, 2, 4)  # z(0,1), y(2,3), x(4,5)
GROUP_B_EDGES = (3, 5, 1)  # z(3,4), y(5,0), x(1,2)


class LayoutError(ValueError):
    """The qubit layout is malformed or cannot host the code."""


@dataclass(frozen=True)
class Qubit:
    index: int
    role: Literal["vertex", "edge"]
    x: int
    y: int


@dataclass(frozen=True)
class LayoutSpec:
    name: str
    qubits: tuple[Qubit, ...]
    couplings: tuple[tuple[int, int], ...]

    def __post_init__(self):
        qubits = tuple(sorted(self.qubits, key=lambda q: q.index))
        couplings = tuple(sorted({tuple(sorted(map(int, c))) for c in self.couplings}))
        object.__setattr__(self, "qubits", qubits)
        object.__setattr__(self, "couplings", couplings)
        self._validate()

    def _validate(self):
        n = len(self.qubits)
        if [q.index for q in self.qubits] != list(range(n)):
            raise LayoutError("qubit indices must be unique and contiguous from 0")
        for q in self.qubits:
            if q.role not in ("vertex", "edge"):
                raise LayoutError(f"qubit {q.index} has unknown role {q.role!r}")
        if len({(q.x, q.y) for q in self.qubits}) != n:
            raise LayoutError("two qubits share a position")
        for a, b in self.couplings:
            if a == b or not (0 <= a < n and 0 <= b < n):
                raise LayoutError(f"invalid coupling ({a}, {b})")
        nbrs = self.neighbors()
        for q in self.qubits:
            if q.role != "edge":
                continue
            roles = [self.qubits[m].role for m in nbrs[q.index]]
            if "edge" in roles:
                raise LayoutError(f"edge qubit {q.index} is coupled to another edge qubit")
            if not 1 <= len(roles) <= 2:
                raise LayoutError(
                    f"edge qubit {q.index} has {len(roles)} vertex neighbours, expected 1 or 2"
                )
        if n and not self._connected(nbrs):
            raise LayoutError("coupling graph is not connected")

    def _connected(self, nbrs) -> bool:
        seen = {0}
        todo = deque([0])
        while todo:
            for m in nbrs[todo.popleft()]:
                if m not in seen:
                    seen.add(m)
                    todo.append(m)
        return len(seen) == len(self.qubits)

    @property
    def num_qubits(self) -> int:
        return len(self.qubits)

    def neighbors(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {q.index: [] for q in self.qubits}
        for a, b in self.couplings:
            out[a].append(b)
            out[b].append(a)
        return {k: sorted(v) for k, v in out.items()}

    def vertex_qubits(self) -> list[int]:
        return [q.index for q in self.qubits if q.role == "vertex"]

    def edge_qubits(self) -> list[int]:
        return [q.index for q in self.qubits if q.role == "edge"]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "qubits": [
                {"index": q.index, "role": q.role, "x": q.x, "y": q.y} for q in self.qubits
            ],
            "couplings": [list(c) for c in self.couplings],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LayoutSpec":
        try:
            qubits = tuple(
                Qubit(int(q["index"]), q["role"], int(q["x"]), int(q["y"]))
                for q in data["qubits"]
            )
            couplings = tuple((int(a), int(b)) for a, b in data["couplings"])
            name = str(data["name"])
        except (KeyError, TypeError, ValueError) as exc:
            raise LayoutError(f"malformed layout data: {exc}") from exc
        return cls(name, qubits, couplings)


@dataclass(frozen=True)
class Link:
    id: int
    link_type: Literal["X", "Y", "Z"]
    data_qubits: tuple[int, ...]
    aux_qubit: Optional[int]
    truncated: bool

    def __post_init__(self):
        if self.truncated != (len(self.data_qubits) == 1):
            raise LayoutError(f"link {self.id}: truncated iff it has a single data qubit")
        if self.truncated and self.link_type != "Z":
            raise LayoutError(f"link {self.id}: only z-links may be truncated")

    def pauli(self) -> PauliString:
        return PauliString.link(self.link_type, self.data_qubits)


@dataclass(frozen=True)
class Plaquette:
    id: int
    qubits: tuple[int, ...]
    boundary_links: tuple[int, ...]
    group_a: tuple[int, ...]
    group_b: tuple[int, ...]
    incident_z_links: frozenset[int]
    shift: int = 0
    face: tuple[int, int] = (0, 0)

    def operator(self) -> PauliString:
        """The six-body plaquette operator on this face."""
        return PauliString(dict(zip(self.qubits, PLAQUETTE_PAULIS)))


@dataclass(frozen=True)
class CodeSpec:
    layout: LayoutSpec
    links: tuple[Link, ...]
    plaquettes: tuple[Plaquette, ...]
    z_stabilizers: tuple[int, ...]
    num_shifts: int
    diagnostics: tuple[str, ...] = field(default=(), compare=False)

    def link(self, link_id: int) -> Link:
        return self.links[link_id]

    def group_operator(self, plaquette: Plaquette, group: Literal["a", "b"]) -> PauliString:
        ids = plaquette.group_a if group == "a" else plaquette.group_b
        return product(self.links[i].pauli() for i in ids)

    def shifts(self) -> list[list[Plaquette]]:
        out: list[list[Plaquette]] = [[] for _ in range(self.num_shifts)]
        for p in self.plaquettes:
            out[p.shift].append(p)
        return out

    def validate(self) -> None:
        """Raise ``LayoutError`` if any structural invariant of the code fails."""
        zs = tuple(l.id for l in self.links if l.link_type == "Z")
        if tuple(sorted(self.z_stabilizers)) != zs:
            raise LayoutError("z_stabilizers must be exactly the z-type links")
        touched: dict[int, int] = {}
        for i in self.z_stabilizers:
            for q in self.links[i].data_qubits:
                if q in touched:
                    raise LayoutError(f"vertex {q} touched by z-links {touched[q]} and {i}")
                touched[q] = i
        for p in self.plaquettes:
            if not 0 <= p.shift < max(self.num_shifts, 1):
                raise LayoutError(f"plaquette {p.id} has shift {p.shift} out of range")
        for p in self.plaquettes:
            for q in self.plaquettes:
                if p.id < q.id and p.shift == q.shift and p.incident_z_links & q.incident_z_links:
                    raise LayoutError(
                        f"plaquettes {p.id} and {q.id} share shift {p.shift} and z-links"
                    )


# ---------------------------------------------------------------------------
# layouts


def _grid(q: Qubit) -> tuple[str, int, int]:
    """Return (kind, row, col) of a qubit in the brick-wall grid.

    kind is "v" for vertices, "h"/"z" for horizontal/vertical edges; for edges
    (row, col) is the upper/left vertex the edge starts from.
    """
    ex, ey = q.x % 2, q.y % 2
    if q.role == "vertex":
        if ex or ey:
            raise LayoutError(f"vertex qubit {q.index} must sit at even coordinates")
        return "v", q.y // 2, q.x // 2
    if ex == 1 and ey == 0:
        return "h", q.y // 2, (q.x - 1) // 2
    if ex == 0 and ey == 1:
        return "z", (q.y - 1) // 2, q.x // 2
    raise LayoutError(f"edge qubit {q.index} is not at an edge midpoint ({q.x}, {q.y})")


def heavy_hex_grid(rows: int, cols: int) -> LayoutSpec:
    """Heavy-hex layout tiled by ``rows x cols`` full hexagons, no spare qubits."""
    if rows < 1 or cols < 1:
        raise LayoutError(f"rows and cols must be >= 1, got {rows}x{cols}")
    vertices: set[tuple[int, int]] = set()
    edges: set[tuple[tuple[int, int], tuple[int, int]]] = set()
    for i in range(rows):
        for j in range(cols):
            r, c0 = i, 2 * j + (i % 2)
            corners = [(r, c0 + k) for k in range(3)] + [(r + 1, c0 + k) for k in range(3)]
            vertices.update(corners)
            for rr in (r, r + 1):
                edges.add(((rr, c0), (rr, c0 + 1)))
                edges.add(((rr, c0 + 1), (rr, c0 + 2)))
            edges.add(((r, c0), (r + 1, c0)))
            edges.add(((r, c0 + 2), (r + 1, c0 + 2)))
    return _layout_from_grid(f"hex-{rows}x{cols}", vertices, edges)


def _layout_from_grid(name, vertices, edges, pendants=()) -> LayoutSpec:
    """Assemble a layout; ``pendants`` are (vertex, (dx, dy)) half-edges off the grid."""
    pos = {}
    for r, c in vertices:
        pos[(2 * c, 2 * r)] = ("vertex", [])
    for a, b in edges:
        (r1, c1), (r2, c2) = a, b
        pos[(c1 + c2, r1 + r2)] = ("edge", [(2 * c1, 2 * r1), (2 * c2, 2 * r2)])
    for (r, c), (dx, dy) in pendants:
        pos[(2 * c + dx, 2 * r + dy)] = ("edge", [(2 * c, 2 * r)])
    # row-major indices
    order = sorted(pos, key=lambda xy: (xy[1], xy[0]))
    index = {xy: i for i, xy in enumerate(order)}
    qubits = tuple(Qubit(index[xy], pos[xy][0], xy[0], xy[1]) for xy in order)
    couplings = tuple(
        (index[xy], index[v]) for xy in order for v in pos[xy][1]
    )
    return LayoutSpec(name, qubits, couplings)


def load_layout(path: Union[str, Path]) -> LayoutSpec:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise LayoutError(f"{path}: not valid JSON ({exc})") from exc
    return LayoutSpec.from_dict(data)


def save_layout(layout: LayoutSpec, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(layout.to_dict(), indent=1) + "\n")


_GRID_NAME = re.compile(r"^hex-(\d+)x(\d+)$")


def build_heavy_hex_layout(
    descriptor: Optional[str] = None, *, rows: Optional[int] = None, cols: Optional[int] = None
) -> LayoutSpec:
    """Return a built-in device layout or a generated ``rows x cols`` lattice.

    ``descriptor`` may be ``"falcon-27"``, ``"hummingbird-65"`` or ``"hex-RxC"``.
    """
    if descriptor is None:
        if rows is None or cols is None:
            raise LayoutError("give a layout name or both rows and cols")
        return heavy_hex_grid(rows, cols)
    if descriptor in BUILTIN_LAYOUTS:
        text = resources.files("hexmatch.layouts").joinpath(f"{descriptor}.json").read_text()
        return LayoutSpec.from_dict(json.loads(text))
    m = _GRID_NAME.match(descriptor)
    if m:
        return heavy_hex_grid(int(m.group(1)), int(m.group(2)))
    raise LayoutError(f"unknown layout {descriptor!r}")


def resolve_layout(source: Union[str, Path, LayoutSpec]) -> LayoutSpec:
    """Accept a layout object, a built-in/generator name or a path to a JSON file."""
    if isinstance(source, LayoutSpec):
        return source
    s = str(source)
    if s in BUILTIN_LAYOUTS or _GRID_NAME.match(s):
        return build_heavy_hex_layout(s)
    if Path(s).is_file():
        return load_layout(s)
    raise LayoutError(f"{s!r} is neither a known layout name nor a readable file")


# ---------------------------------------------------------------------------
# links


def _classify(layout: LayoutSpec) -> tuple[list[Link], list[str]]:
    nbrs = layout.neighbors()
    links: list[Link] = []
    notes: list[str] = []
    for e in layout.edge_qubits():
        q = layout.qubits[e]
        vs = [m for m in nbrs[e] if layout.qubits[m].role == "vertex"]
        if not vs:
            raise LayoutError(f"edge qubit {e} has no vertex neighbours")
        kind, r, c = _grid(q)
        for v in vs:
            vq = layout.qubits[v]
            if abs(vq.x - q.x) + abs(vq.y - q.y) != 1:
                raise LayoutError(f"edge qubit {e} is not adjacent to its neighbour {v}")
        if kind == "z":
            if (c - r) % 2:
                raise LayoutError(
                    f"vertical edge qubit {e} at column {c} breaks the brick-wall parity"
                )
            link_type = "Z"
        else:
            link_type = "X" if (r + c) % 2 == 0 else "Y"
        data = tuple(sorted(vs))
        if len(data) == 1 and link_type != "Z":
            notes.append(f"edge qubit {e}: dangling {link_type.lower()}-link excluded")
            continue
        links.append(Link(len(links), link_type, data, e, len(data) == 1))
    return links, notes


def classify_links(layout: LayoutSpec) -> list[Link]:
    """Turn every edge qubit into a typed link.

    Dangling vertical edges become truncated z-links; dangling horizontal ones
    are dropped and logged.
    """
    links, notes = _classify(layout)
    for note in notes:
        logger.info(note)
    return links


# ---------------------------------------------------------------------------
# plaquettes


def _faces(layout: LayoutSpec, links: Sequence[Link]):
    """Yield (face, ordered qubits, ordered boundary links) for every complete face,
    plus diagnostics for faces whose six vertices exist but some link is missing."""
    at = {}
    for q in layout.qubits:
        if q.role == "vertex":
            _, r, c = _grid(q)
            at[(r, c)] = q.index
    by_pair = {frozenset(l.data_qubits): l for l in links if not l.truncated}

    candidates = set()
    for r, c in at:
        for top in (r - 1, r):
            for c0 in (c - 2, c - 1, c):
                if (c0 - top) % 2 == 0:
                    candidates.add((top, c0))

    found, notes = [], []
    for r, c0 in sorted(candidates):
        # clockwise on screen (y grows downward), starting bottom-left
        cycle = [(r + 1, c0), (r, c0), (r, c0 + 1), (r, c0 + 2), (r + 1, c0 + 2), (r + 1, c0 + 1)]
        if not all(p in at for p in cycle):
            continue
        qs = [at[p] for p in cycle]
        edges = [by_pair.get(frozenset((qs[k], qs[(k + 1) % 6]))) for k in range(6)]
        if any(l is None for l in edges):
            missing = [
                f"({qs[k]},{qs[(k + 1) % 6]})" for k in range(6) if edges[k] is None
            ]
            notes.append(f"face at row {r} col {c0} excluded: missing links {' '.join(missing)}")
            continue
        qs, edges = _orient(qs, edges)
        found.append(((r, c0), qs, edges))
    return found, notes


def _orient(qs: list[int], edges: list[Link]):
    """Rotate/reflect the boundary so link types read z, x, y, z, x, y."""
    best = None
    for direction in (1, -1):
        q_cycle = qs if direction == 1 else [qs[0]] + qs[:0:-1]
        e_cycle = edges if direction == 1 else [edges[(-k - 1) % 6] for k in range(6)]
        for s in range(6):
            qq = q_cycle[s:] + q_cycle[:s]
            ee = e_cycle[s:] + e_cycle[:s]
            if tuple(l.link_type for l in ee) == BOUNDARY_TYPES:
                if best is None or qq[0] < best[0][0]:
                    best = (qq, ee)
    if best is None:
        raise LayoutError(f"face on qubits {qs} does not have the z,x,y link pattern")
    return best


def substitute_truncated_z_links(layout: LayoutSpec, links: Sequence[Link]) -> list[Link]:
    """Add single-qubit z-links for plaquette vertices whose z partner is off-device."""
    links = list(links)
    faces, _ = _faces(layout, links)
    covered = {q for l in links if l.link_type == "Z" for q in l.data_qubits}
    needed = sorted({q for _, qs, _ in faces for q in qs} - covered)
    for q in needed:
        links.append(Link(len(links), "Z", (q,), None, True))
    return links


def incident_z_links(plaquette: Plaquette, code: CodeSpec) -> frozenset[int]:
    """Every z-stabilizer touching one of the plaquette's six vertices."""
    return _incident(plaquette.qubits, code.links)


def _incident(qubits: Iterable[int], links: Sequence[Link]) -> frozenset[int]:
    qs = set(qubits)
    return frozenset(l.id for l in links if l.link_type == "Z" and qs & set(l.data_qubits))


def build_plaquettes(layout: LayoutSpec, links: Sequence[Link]) -> list[Plaquette]:
    faces, notes = _faces(layout, links)
    for note in notes:
        logger.info(note)
    out = []
    for face, qs, edges in faces:
        ids = tuple(l.id for l in edges)
        out.append(
            Plaquette(
                id=len(out),
                qubits=tuple(qs),
                boundary_links=ids,
                group_a=tuple(ids[k] for k in GROUP_A_EDGES),
                group_b=tuple(ids[k] for k in GROUP_B_EDGES),
                incident_z_links=_incident(qs, links),
                face=face,
            )
        )
    return out


def schedule_shifts(code: CodeSpec) -> CodeSpec:
    """Greedy colouring: each plaquette, by id, takes the lowest shift whose
    members share no incident z-link with it."""
    members: list[set[int]] = []
    plaqs = []
    for p in sorted(code.plaquettes, key=lambda p: p.id):
        for s, used in enumerate(members):
            if not used & p.incident_z_links:
                break
        else:
            s = len(members)
            members.append(set())
        members[s] |= p.incident_z_links
        plaqs.append(replace(p, shift=s))
    return replace(code, plaquettes=tuple(plaqs), num_shifts=len(members))


def build_code(source: Union[str, Path, LayoutSpec]) -> CodeSpec:
    """Layout -> links -> plaquettes -> shift schedule, with invariants checked."""
    layout = resolve_layout(source)
    links, notes = _classify(layout)
    links = substitute_truncated_z_links(layout, links)
    _, face_notes = _faces(layout, links)
    plaquettes = build_plaquettes(layout, links)
    if not plaquettes:
        raise LayoutError(f"layout {layout.name!r} contains no complete hexagonal face")
    code = CodeSpec(
        layout=layout,
        links=tuple(links),
        plaquettes=tuple(plaquettes),
        z_stabilizers=tuple(l.id for l in links if l.link_type == "Z"),
        num_shifts=1,
        diagnostics=tuple(notes + face_notes),
    )
    code = schedule_shifts(code)
    code.validate()
    return code
