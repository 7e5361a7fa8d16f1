"""
Oriented planar diagram codes for pretzel links.

A crossing has four slots numbered clockwise ``NW=0, NE=1, SE=2, SW=3``.
A strand entering at one slot leaves at the opposite one (``pos ^ 2``),
so the two strands through a crossing are the diagonals ``{NW, SE}``
(diagonal 0) and ``{NE, SW}`` (diagonal 1).  Edges run from the slot a
strand leaves to the slot it enters next, which fixes the orientation.

Chirality is pinned by a single calibration: ``build_diagram((1, 1, 1))``
yields three positive crossings.  Every other convention below follows
from that choice together with the fixed band layout.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .pretzel import as_vector

NW, NE, SE, SW = 0, 1, 2, 3

Slot = Tuple[int, int]

# Unit direction of a strand leaving through each slot, y pointing up.
_OUT_DIRECTION = {NW: (-1, 1), NE: (1, 1), SE: (1, -1), SW: (-1, -1)}

# Diagonal that is over in a band with a positive twist count.
_POSITIVE_TWIST_OVER = 0


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    id: int
    over: int  # 0: NW-SE strand on top, 1: NE-SW strand on top
    band: int = -1
    level: int = -1


@dataclass(frozen=True)
class Edge:
    id: int
    tail: Slot
    head: Slot


@dataclass(frozen=True)
class Diagram:
    crossings: Tuple[Crossing, ...]
    edges: Tuple[Edge, ...]
    loops: int = 0  # closed components that meet no crossing

    @cached_property
    def _by_id(self) -> Dict[int, Crossing]:
        return {c.id: c for c in self.crossings}

    @cached_property
    def _slot_edges(self) -> Dict[Slot, Edge]:
        table = {}
        for e in self.edges:
            table[e.tail] = e
            table[e.head] = e
        return table

    def crossing(self, cid: int) -> Crossing:
        try:
            return self._by_id[cid]
        except KeyError:
            raise DiagramError(f"no crossing with id {cid}") from None

    @property
    def crossing_ids(self) -> List[int]:
        return [c.id for c in self.crossings]

    def edge_at(self) -> Dict[Slot, Edge]:
        return self._slot_edges

    def band_crossings(self, band: int) -> List[Crossing]:
        return sorted((c for c in self.crossings if c.band == band),
                      key=lambda c: c.level)


# ---------------------------------------------------------------------------
# construction


def build_diagram(v: Sequence[int]) -> Diagram:
    """Standard pretzel diagram with ``|pi|`` stacked crossings in band i.

    Band ``i`` is a vertical two-strand twist.  Its top-right end joins
    the top-left end of band ``i+1`` (the last band wraps around over the
    top of the picture), and likewise along the bottom.  A band with no
    twists is a pair of vertical strands.
    """
    v = as_vector(v)
    n = len(v)
    links: Dict[object, List[object]] = {}

    def join(a, b):
        links.setdefault(a, []).append(b)
        links.setdefault(b, []).append(a)

    crossings = []
    cid = 0
    for i, p in enumerate(v):
        over = _POSITIVE_TWIST_OVER if p > 0 else 1 - _POSITIVE_TWIST_OVER
        ids = []
        for level in range(abs(p)):
            crossings.append(Crossing(cid, over, i, level))
            ids.append(cid)
            cid += 1
        tl, tr, bl, br = ("tl", i), ("tr", i), ("bl", i), ("br", i)
        if not ids:
            join(tl, bl)
            join(tr, br)
            continue
        join(tl, (ids[0], NW))
        join(tr, (ids[0], NE))
        for upper, lower in zip(ids, ids[1:]):
            join((upper, SW), (lower, NW))
            join((upper, SE), (lower, NE))
        join(bl, (ids[-1], SW))
        join(br, (ids[-1], SE))
    for i in range(n):
        j = (i + 1) % n
        join(("tr", i), ("tl", j))
        join(("br", i), ("bl", j))

    return _orient(tuple(crossings), _trace_undirected(crossings, links))


def _is_slot(node) -> bool:
    return isinstance(node[0], int)


def _trace_undirected(crossings, links):
    """Collapse chains of virtual nodes into slot-to-slot segments."""
    segments = []
    visited = set()
    walked = set()
    for c in crossings:
        for pos in (NW, NE, SE, SW):
            start = (c.id, pos)
            if start in visited:
                continue
            prev, node = start, links[start][0]
            while not _is_slot(node):
                walked.add(node)
                a, b = links[node]
                prev, node = node, (b if a == prev else a)
            visited.update((start, node))
            segments.append((start, node))
    loops = 0
    pending = {n for n in links if not _is_slot(n)} - walked
    while pending:
        loops += 1
        start = pending.pop()
        prev, node = start, links[start][0]
        while node != start:
            pending.discard(node)
            a, b = links[node]
            prev, node = node, (b if a == prev else a)
    return segments, loops


def _orient(crossings: Tuple[Crossing, ...], traced) -> Diagram:
    """Orient every component starting from its lowest segment."""
    segments, loops = traced
    partner: Dict[Slot, Slot] = {}
    order: Dict[Slot, int] = {}
    for k, (a, b) in enumerate(segments):
        partner[a] = b
        partner[b] = a
        order[a] = order[b] = k
    directed: Dict[int, Tuple[Slot, Slot]] = {}
    for k, (a, b) in enumerate(segments):
        if k in directed:
            continue
        tail = a
        while order[tail] not in directed:
            head = partner[tail]
            directed[order[tail]] = (tail, head)
            tail = (head[0], head[1] ^ 2)
    edges = tuple(Edge(k, *directed[k]) for k in range(len(segments)))
    return Diagram(crossings, edges, loops)


# ---------------------------------------------------------------------------
# local invariants


def crossing_sign(d: Diagram, cid: int) -> int:
    c = d.crossing(cid)
    at = d.edge_at()
    direction = {}
    for diag in (0, 1):
        # the strand on this diagonal leaves through whichever slot is a tail
        for pos in (diag, diag + 2):
            if at[(cid, pos)].tail == (cid, pos):
                direction[diag] = _OUT_DIRECTION[pos]
    if len(direction) != 2:
        raise DiagramError(f"crossing {cid} is not consistently oriented")
    o, u = direction[c.over], direction[1 - c.over]
    cross = o[0] * u[1] - o[1] * u[0]
    return 1 if cross > 0 else -1


def signs(d: Diagram) -> Dict[int, int]:
    return {c.id: crossing_sign(d, c.id) for c in d.crossings}


def writhe(d: Diagram) -> int:
    return sum(signs(d).values())


def _next_edge(d: Diagram) -> Dict[int, Edge]:
    by_tail = {e.tail: e for e in d.edges}
    return {e.id: by_tail[(e.head[0], e.head[1] ^ 2)] for e in d.edges}


def components(d: Diagram) -> List[List[int]]:
    """Edge ids of each closed component, in traversal order.

    Crossingless loops are not listed; see ``Diagram.loops``.
    """
    nxt = _next_edge(d)
    seen = set()
    comps = []
    for e in sorted(d.edges, key=lambda e: e.id):
        if e.id in seen:
            continue
        comp = []
        cur = e
        while cur.id not in seen:
            seen.add(cur.id)
            comp.append(cur.id)
            cur = nxt[cur.id]
        comps.append(comp)
    return comps


def component_count(d: Diagram) -> int:
    return len(components(d)) + d.loops


def _strand_components(d: Diagram) -> Dict[Tuple[int, int], int]:
    """Component index of the strand on each (crossing, diagonal)."""
    owner = {}
    for k, comp in enumerate(components(d)):
        for eid in comp:
            owner[eid] = k
    result = {}
    for e in d.edges:
        cid, pos = e.head
        result[(cid, pos % 2)] = owner[e.id]
    return result


def linking_number(d: Diagram) -> int:
    if component_count(d) != 2:
        raise DiagramError(
            f"linking number needs 2 components, diagram has {component_count(d)}")
    if d.loops:
        return 0
    owner = _strand_components(d)
    total = 0
    for c in d.crossings:
        if owner[(c.id, 0)] != owner[(c.id, 1)]:
            total += crossing_sign(d, c.id)
    if total % 2:
        raise DiagramError("odd inter-component sign sum")
    return total // 2


# ---------------------------------------------------------------------------
# local moves


def switch_crossing(d: Diagram, cid: int) -> Diagram:
    c = d.crossing(cid)
    flipped = replace(c, over=1 - c.over)
    return replace(d, crossings=tuple(flipped if x.id == cid else x
                                      for x in d.crossings))


def _reroute(d: Diagram, routes: Dict[int, Dict[int, int]]) -> Diagram:
    """Dissolve crossings into pass-throughs and re-trace the edges.

    ``routes[cid]`` maps each incoming slot position of a dissolved
    crossing to the outgoing position the strand continues from.
    """
    by_tail = {e.tail: e for e in d.edges}
    kept = tuple(c for c in d.crossings if c.id not in routes)

    def walk(edge: Edge):
        chain = [edge]
        while edge.head[0] in routes:
            cid, pos = edge.head
            edge = by_tail[(cid, routes[cid][pos])]
            chain.append(edge)
        return chain

    merged = []
    used = set()
    for e in sorted(d.edges, key=lambda e: e.id):
        if e.tail[0] in routes:
            continue
        chain = walk(e)
        used.update(x.id for x in chain)
        merged.append((e.id, e.tail, chain[-1].head))
    loops = d.loops
    for e in sorted(d.edges, key=lambda e: e.id):
        if e.id in used:
            continue
        loops += 1
        cur = e
        while cur.id not in used:
            used.add(cur.id)
            cid, pos = cur.head
            cur = by_tail[(cid, routes[cid][pos])]
    edges = tuple(Edge(k, tail, head)
                  for k, (_, tail, head) in enumerate(sorted(merged)))
    return Diagram(kept, edges, loops)


def smooth_crossing(d: Diagram, cid: int) -> Diagram:
    """Oriented smoothing: each incoming strand turns onto the other
    strand's outgoing end, so no crossing remains."""
    d.crossing(cid)
    incoming = [e.head[1] for e in d.edges if e.head[0] == cid]
    if len(incoming) != 2 or incoming[0] % 2 == incoming[1] % 2:
        raise DiagramError(f"crossing {cid} is not consistently oriented")
    a, b = incoming
    return _reroute(d, {cid: {a: b ^ 2, b: a ^ 2}})


def _cancelling_pair(d: Diagram) -> Optional[Tuple[int, int]]:
    at = d.edge_at()
    for band in sorted({c.band for c in d.crossings if c.band >= 0}):
        column = d.band_crossings(band)
        for upper, lower in zip(column, column[1:]):
            if upper.over == lower.over:
                continue
            left = at[(upper.id, SW)]
            right = at[(upper.id, SE)]
            if {left.tail, left.head} == {(upper.id, SW), (lower.id, NW)} and \
               {right.tail, right.head} == {(upper.id, SE), (lower.id, NE)}:
                return upper.id, lower.id
    return None


def reduce_band(d: Diagram) -> Diagram:
    """Remove adjacent opposite half-twists inside a band until none remain."""
    while True:
        pair = _cancelling_pair(d)
        if pair is None:
            break
        straight = {pos: pos ^ 2 for pos in (NW, NE, SE, SW)}
        d = _reroute(d, {pair[0]: straight, pair[1]: straight})
    return _relevel(d)


def _relevel(d: Diagram) -> Diagram:
    out = []
    for band in sorted({c.band for c in d.crossings}):
        column = [c for c in d.crossings if c.band == band]
        if band < 0:
            out.extend(column)
            continue
        for k, c in enumerate(sorted(column, key=lambda c: c.level)):
            out.append(replace(c, level=k))
    order = {c.id: k for k, c in enumerate(d.crossings)}
    return replace(d, crossings=tuple(sorted(out, key=lambda c: order[c.id])))


# ---------------------------------------------------------------------------
# comparison and serialization


def shape_key(d: Diagram):
    """Orientation-free description of a pretzel-built diagram.

    Crossings are renamed by (band, level), so two diagrams with equal
    keys are the same planar code up to relabelling.
    """
    rename = {c.id: (c.band, c.level) for c in d.crossings}
    crossing_part = tuple(sorted((rename[c.id], c.over) for c in d.crossings))
    edge_part = frozenset(
        frozenset({(rename[e.tail[0]], e.tail[1]), (rename[e.head[0]], e.head[1])})
        for e in d.edges)
    sign_part = tuple(sorted((rename[cid], s) for cid, s in signs(d).items()))
    return crossing_part, edge_part, d.loops, sign_part


# Counterclockwise successor of a slot.
def _ccw(pos: int, k: int) -> int:
    return (pos - k) % 4


def to_pd(d: Diagram) -> str:
    """One ``X(a,b,c,d,s)`` line per crossing, labels 1-based.

    ``a`` is the incoming under-strand edge, the rest follow
    counterclockwise; ``s`` is the crossing sign.  Crossingless loops
    are written as ``O()`` lines.
    """
    at = d.edge_at()
    lines = []
    for c in sorted(d.crossings, key=lambda c: c.id):
        under = 1 - c.over
        start = next(pos for pos in (under, under + 2)
                     if at[(c.id, pos)].head == (c.id, pos))
        labels = [at[(c.id, _ccw(start, k))].id + 1 for k in range(4)]
        sign = "+" if crossing_sign(d, c.id) > 0 else "-"
        lines.append("X({},{},{},{},{})".format(*labels, sign))
    lines.extend("O()" for _ in range(d.loops))
    return "\n".join(lines) + "\n"


def from_pd(text: str) -> Diagram:
    """Inverse of :func:`to_pd` up to geometry; band data is not kept."""
    crossings = []
    ends: Dict[int, Dict[str, Slot]] = {}
    loops = 0
    for cid, line in enumerate(l.strip() for l in text.splitlines() if l.strip()):
        if line == "O()":
            loops += 1
            continue
        if not (line.startswith("X(") and line.endswith(")")):
            raise DiagramError(f"bad PD line {line!r}")
        *labels, sign = line[2:-1].split(",")
        a, b, c, dd = (int(x) for x in labels)
        # place the incoming under-strand at SW; counterclockwise: SE, NE, NW
        placed = {SW: a, SE: b, NE: c, NW: dd}
        crossings.append(Crossing(len(crossings), over=0))
        k = len(crossings) - 1
        heads = {SW}
        heads.add(NW if sign.strip() == "+" else SE)
        for pos, label in placed.items():
            role = "head" if pos in heads else "tail"
            ends.setdefault(label, {})[role] = (k, pos)
    edges = []
    for label in sorted(ends):
        if set(ends[label]) != {"head", "tail"}:
            raise DiagramError(f"edge {label} is not used once in each direction")
        edges.append(Edge(label - 1, ends[label]["tail"], ends[label]["head"]))
    return Diagram(tuple(crossings), tuple(edges), loops)


def crossing_count(d: Diagram) -> int:
    return len(d.crossings)


def sign_counter(d: Diagram) -> Counter:
    return Counter(signs(d).values())


def band_sign(d: Diagram, band: int) -> Optional[int]:
    column = d.band_crossings(band)
    if not column:
        return None
    return crossing_sign(d, column[0].id)


def iter_crossings(d: Diagram, band: Optional[int] = None) -> Iterable[Crossing]:
    if band is None:
        return iter(d.crossings)
    return iter(d.band_crossings(band))
