"""Planar diagram (PD) codes and the combinatorics of an oriented link diagram.

PD convention: each crossing ``X[a,b,c,d]`` lists edge labels starting with
the incoming under-edge and proceeding counterclockwise, so ``c`` is the
outgoing under-edge and ``b``/``d`` are the over-strand.  Slots are indexed
0..3 in that order.  Corner ``s`` of a crossing is the sector between slot
``s`` and slot ``s + 1`` (counterclockwise).

A crossing is positive when the over-strand runs from slot 1 to slot 3,
i.e. the under-strand rotated counterclockwise by 90 degrees points along
the over-strand.
"""

from __future__ import annotations

import json
import re
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import DiagramError, PDError, PDSyntaxError

UNDER_IN, OVER_B, UNDER_OUT, OVER_D = 0, 1, 2, 3


@dataclass(frozen=True)
class PdCode:
    crossings: tuple[tuple[int, int, int, int], ...]
    signs: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(int(v) for v in c) for c in self.crossings))
        if self.signs is not None:
            object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        validate_pd(self)

    def __len__(self):
        return len(self.crossings)

    def labels(self) -> list[int]:
        return sorted({v for c in self.crossings for v in c})

    def to_text(self) -> str:
        return " ".join("X[" + ",".join(str(v) for v in c) + "]" for c in self.crossings)

    def to_json(self) -> dict:
        out = {"crossings": [list(c) for c in self.crossings]}
        if self.signs is not None:
            out["signs"] = list(self.signs)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "PdCode":
        return cls(tuple(tuple(c) for c in data["crossings"]), data.get("signs"))

    def __str__(self):
        return self.to_text()


def validate_pd(pd: PdCode) -> None:
    for c in pd.crossings:
        if len(c) != 4:
            raise PDSyntaxError(f"crossing {c} is not a quadruple")
        if any(v < 1 for v in c):
            raise PDError(f"edge labels must be positive integers, got {c}")
    counts = Counter(v for c in pd.crossings for v in c)
    bad = sorted(v for v, k in counts.items() if k != 2)
    if bad:
        raise PDError(f"every edge label must appear exactly twice; offending labels: {bad}")
    if pd.signs is not None:
        if len(pd.signs) != len(pd.crossings):
            raise PDError("sign list length differs from the number of crossings")
        if any(s not in (1, -1) for s in pd.signs):
            raise PDError("signs must be +1 or -1")


_TERM = re.compile(r"X\s*\[([^\]]*)\]")
_SEP = re.compile(r"[\s,;]*")


def parse_pd(text: str) -> PdCode:
    """Parse ``X[a,b,c,d]`` terms, or the JSON form ``{"crossings": [...]}``."""
    if not text or not text.strip():
        raise PDSyntaxError("empty PD input")
    stripped = text.strip()
    if stripped[0] in "{[":
        return _parse_pd_json(stripped)

    body = stripped
    if body.startswith("PD[") and body.endswith("]"):
        body = body[3:-1]
    crossings = []
    pos = 0
    while True:
        m = _SEP.match(body, pos)
        pos = m.end()
        if pos >= len(body):
            break
        m = _TERM.match(body, pos)
        if m is None:
            raise PDSyntaxError(f"expected 'X[' near {body[pos:pos + 12]!r}", pos)
        items = [s.strip() for s in m.group(1).split(",")]
        if len(items) != 4:
            raise PDSyntaxError(f"quadruple expected, got {len(items)} labels", m.start())
        try:
            crossings.append(tuple(int(s) for s in items))
        except ValueError:
            raise PDSyntaxError(f"non-integer label in {m.group(0)!r}", m.start()) from None
        pos = m.end()
    if not crossings:
        raise PDSyntaxError("no crossings found")
    return PdCode(tuple(crossings))


def _parse_pd_json(text: str) -> PdCode:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PDSyntaxError(f"invalid JSON: {exc.msg}", exc.pos) from None
    if isinstance(data, list):
        data = {"crossings": data}
    if not isinstance(data, dict) or "crossings" not in data:
        raise PDSyntaxError("JSON PD must be an object with a 'crossings' list")
    try:
        crossings = tuple(tuple(c) for c in data["crossings"])
    except TypeError:
        raise PDSyntaxError("'crossings' must be a list of quadruples") from None
    for c in crossings:
        if len(c) != 4:
            raise PDSyntaxError(f"quadruple expected, got {list(c)}")
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in c):
            raise PDSyntaxError(f"non-integer label in {list(c)}")
    return PdCode(crossings, data.get("signs"))


@dataclass
class Crossing:
    index: int
    pd: tuple[int, int, int, int]
    sign: int
    under_in: int
    under_out: int
    over_in: int
    over_out: int
    over_arc: int = -1
    under_in_arc: int = -1
    under_out_arc: int = -1

    @property
    def over_in_slot(self) -> int:
        return OVER_B if self.sign > 0 else OVER_D


@dataclass
class Edge:
    label: int
    tail: tuple[int, int]
    head: tuple[int, int]
    successor: int = -1
    component: int = -1
    arc: int = -1


@dataclass
class LinkDiagram:
    pd: PdCode
    crossings: list[Crossing]
    edges: dict[int, Edge]
    arcs: list[list[int]]
    components: list[list[int]]

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    def arc_of_edge(self, label: int) -> int:
        return self.edges[label].arc

    def is_connected(self) -> bool:
        if not self.crossings:
            return len(self.components) <= 1
        adj = {i: set() for i in range(len(self.crossings))}
        for e in self.edges.values():
            adj[e.tail[0]].add(e.head[0])
            adj[e.head[0]].add(e.tail[0])
        seen = {0}
        todo = [0]
        while todo:
            for j in adj[todo.pop()]:
                if j not in seen:
                    seen.add(j)
                    todo.append(j)
        return len(seen) == len(self.crossings)


def build_diagram(pd: PdCode) -> LinkDiagram:
    """Orient the edges, find components, crossing signs and over-arcs."""
    n = len(pd.crossings)
    occ: dict[int, list[tuple[int, int]]] = {}
    for i, c in enumerate(pd.crossings):
        for j, v in enumerate(c):
            occ.setdefault(v, []).append((i, j))

    # is_head[(i, j)]: True if the edge at slot j points into crossing i
    is_head: dict[tuple[int, int], bool] = {}

    def assign(slot, value, queue):
        old = is_head.get(slot)
        if old is None:
            is_head[slot] = value
            queue.append(slot)
        elif old != value:
            raise DiagramError(
                f"inconsistent orientation at crossing {slot[0]} slot {slot[1]} "
                f"(label {pd.crossings[slot[0]][slot[1]]})")

    def other_end(slot):
        a, b = occ[pd.crossings[slot[0]][slot[1]]]
        return b if a == slot else a

    queue: deque = deque()
    for i in range(n):
        assign((i, UNDER_IN), True, queue)
        assign((i, UNDER_OUT), False, queue)
    if pd.signs is not None:
        for i, s in enumerate(pd.signs):
            assign((i, OVER_B), s > 0, queue)

    def propagate():
        while queue:
            slot = queue.popleft()
            val = is_head[slot]
            assign(other_end(slot), not val, queue)
            i, j = slot
            if j in (OVER_B, OVER_D):
                assign((i, OVER_B if j == OVER_D else OVER_D), not val, queue)

    propagate()
    # over-only strands: orientation is free, pick the one with increasing labels
    for i, c in enumerate(pd.crossings):
        if (i, OVER_B) not in is_head:
            assign((i, OVER_D), c[OVER_B] == c[OVER_D] + 1, queue)
            propagate()

    for v, slots in occ.items():
        heads = [is_head[s] for s in slots]
        if heads.count(True) != 1:
            raise DiagramError(f"label {v} is used twice as an incoming edge")

    edges: dict[int, Edge] = {}
    for v, slots in occ.items():
        head = next(s for s in slots if is_head[s])
        tail = next(s for s in slots if not is_head[s])
        edges[v] = Edge(v, tail=tail, head=head)

    crossings = []
    for i, c in enumerate(pd.crossings):
        sign = 1 if is_head[(i, OVER_B)] else -1
        if pd.signs is not None and pd.signs[i] != sign:
            raise DiagramError(f"explicit sign of crossing {i} contradicts the orientation")
        over_in = c[OVER_B] if sign > 0 else c[OVER_D]
        over_out = c[OVER_D] if sign > 0 else c[OVER_B]
        crossings.append(Crossing(i, c, sign, c[UNDER_IN], c[UNDER_OUT], over_in, over_out))

    for x in crossings:
        edges[x.under_in].successor = x.under_out
        edges[x.over_in].successor = x.over_out

    components = []
    seen = set()
    for v in sorted(edges):
        if v in seen:
            continue
        comp = []
        e = v
        while e not in seen:
            seen.add(e)
            comp.append(e)
            e = edges[e].successor
        if e != v:
            raise DiagramError("edge tracing does not close into cycles")
        for e in comp:
            edges[e].component = len(components)
        components.append(comp)

    # over-arcs: an arc is broken only where it passes under
    parent = {v: v for v in edges}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for x in crossings:
        parent[find(x.over_in)] = find(x.over_out)

    arcs: list[list[int]] = []
    arc_index: dict[int, int] = {}
    for comp in components:
        # start each arc walk right after an under-pass when there is one
        starts = [e for e in comp if any(x.under_out == e for x in crossings)]
        order = comp
        if starts:
            k = comp.index(starts[0])
            order = comp[k:] + comp[:k]
        for e in order:
            root = find(e)
            if root not in arc_index:
                arc_index[root] = len(arcs)
                arcs.append([])
            arcs[arc_index[root]].append(e)
            edges[e].arc = arc_index[root]

    if not edges:
        components = [[]]
        arcs = [[]]

    for x in crossings:
        x.over_arc = edges[x.over_in].arc
        x.under_in_arc = edges[x.under_in].arc
        x.under_out_arc = edges[x.under_out].arc

    return LinkDiagram(pd, crossings, edges, arcs, components)


@dataclass
class RegionStructure:
    """Faces of the diagram's 4-valent planar graph.

    ``faces[k]`` is the cyclic list of traversals ``(label, forward)`` with the
    face on the left; ``left[label]`` / ``right[label]`` give the regions on
    either side of a directed edge; ``corner[(crossing, s)]`` the region in
    corner ``s`` of a crossing.
    """

    faces: list[list[tuple[int, bool]]]
    left: dict[int, int]
    right: dict[int, int]
    corner: dict[tuple[int, int], int]
    outer: int = 0
    adjacency: dict[int, list[tuple[int, int, int]]] = field(default_factory=dict)

    @property
    def n_regions(self) -> int:
        return len(self.faces)


def build_regions(d: LinkDiagram) -> RegionStructure:
    """Trace faces from the counterclockwise rotation system of the PD code."""
    n = d.n_crossings
    if n == 0:
        raise DiagramError("region structure needs at least one crossing")
    if not d.is_connected():
        raise DiagramError("diagram is not connected; give split links as connected diagrams")
    pd = d.pd.crossings

    # a traversal leaves crossing i through slot j along the edge at that slot
    def far_end(i, j):
        e = d.edges[pd[i][j]]
        return e.head if e.tail == (i, j) else e.tail

    visited = set()
    faces, left, right, corner = [], {}, {}, {}
    for i in range(n):
        for j in range(4):
            if (i, j) in visited:
                continue
            face = []
            k = len(faces)
            cur = (i, j)
            while cur not in visited:
                visited.add(cur)
                label = pd[cur[0]][cur[1]]
                e = d.edges[label]
                forward = e.tail == cur
                face.append((label, forward))
                if forward:
                    left[label] = k
                else:
                    right[label] = k
                nxt = far_end(*cur)
                s = (nxt[1] - 1) % 4
                corner[(nxt[0], s)] = k
                cur = (nxt[0], s)
            faces.append(face)

    if n - 2 * n + len(faces) != 2:
        raise DiagramError(
            f"Euler characteristic check failed: {n} crossings, {len(faces)} regions "
            "(non-planar or corrupt PD code)")
    outer = max(range(len(faces)), key=lambda k: (len(faces[k]), -k))
    adjacency: dict[int, list[tuple[int, int, int]]] = {k: [] for k in range(len(faces))}
    for label in d.edges:
        lf, rt = left[label], right[label]
        adjacency[lf].append((rt, label, +1))
        adjacency[rt].append((lf, label, -1))
    return RegionStructure(faces, left, right, corner, outer, adjacency)


def source_corner(x: Crossing) -> int:
    """Corner to the left of both strands (where the crossing's cube is based)."""
    return 3 if x.sign > 0 else 2


# --- diagram constructions used for fixtures and invariance checks ---


def pd_from_braid(word: Sequence[int], n_strands: int | None = None) -> PdCode:
    """PD code of a braid closure.

    ``word`` entries are ``+i`` / ``-i`` for sigma_i^(+-1) (1-based strands,
    strands run downward, ``+i`` puts the left strand over).
    """
    if not word:
        raise PDError("empty braid word")
    n_strands = n_strands or max(abs(g) for g in word) + 1
    cur = list(range(1, n_strands + 1))
    top = list(cur)
    nxt = n_strands + 1
    crossings = []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < n_strands - 1:
            raise PDError(f"generator {g} out of range")
        tl, tr = cur[i], cur[i + 1]
        bl, br = nxt, nxt + 1
        nxt += 2
        if g > 0:
            crossings.append([tr, tl, bl, br])
        else:
            crossings.append([tl, bl, br, tr])
        cur[i], cur[i + 1] = bl, br
    rename = {b: t for b, t in zip(cur, top)}
    crossings = [[rename.get(v, v) for v in c] for c in crossings]
    used = sorted({v for c in crossings for v in c})
    relabel = {v: k + 1 for k, v in enumerate(used)}
    return PdCode(tuple(tuple(relabel[v] for v in c) for c in crossings))


def add_kink(pd: PdCode, label: int, positive: bool = True) -> PdCode:
    """Insert a Reidemeister-I curl on edge ``label``."""
    d = build_diagram(pd)
    if label not in d.edges:
        raise PDError(f"no edge {label}")
    head = d.edges[label].head
    m = max(pd.labels())
    loop, out = m + 1, m + 2
    crossings = [list(c) for c in pd.crossings]
    crossings[head[0]][head[1]] = out
    if positive:
        crossings.append([label, loop, loop, out])
    else:
        crossings.append([label, out, loop, loop])
    return PdCode(tuple(tuple(c) for c in crossings))


def reverse_components(pd: PdCode, d: LinkDiagram, components: Sequence[int]) -> PdCode:
    """PD code of the same diagram with the given components reversed."""
    rev_edges = {e for k in components for e in d.components[k]}
    out = []
    signs = [] if pd.signs is not None else None
    for x in d.crossings:
        c = list(x.pd)
        if x.under_in in rev_edges:
            c = c[2:] + c[:2]
        out.append(tuple(c))
        if signs is not None:
            flip = (x.under_in in rev_edges) != (x.over_in in rev_edges)
            signs.append(-x.sign if flip else x.sign)
    return PdCode(tuple(out), None if signs is None else tuple(signs))
