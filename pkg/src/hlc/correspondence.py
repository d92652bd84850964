"""Correspondence (DP) covers and their residual semantics.

A cover assigns each host vertex a block of "slots" (its cover colors)
and a set of k-element cover edges, one color per vertex of some host
edge. A total assignment is proper when its image contains no cover edge.
For k >= 3 a single cover color may correspond to two different colors of
the same remote block through two different host edges; everything here
must representing that without aliasing slots.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

from .errors import CapExceededError, InvalidInputError
from .hypergraph import PartiteHypergraph, ValidationReport, Vertex, \
    parse_vertex_key, vertex_key
from .lists import ListAssignment


class CoverColor(NamedTuple):
    part: int
    index: int
    slot: int

    @property
    def owner(self) -> Vertex:
        return Vertex(self.part, self.index)


CoverEdge = frozenset  # frozenset[CoverColor] of size k


class CorrespondenceCover:
    """Cover blocks (sizes only; slots are 0..size-1) plus cover edges.

    Cover edges keep their construction order: solvers use it to pick
    blocking witnesses deterministically.
    """

    def __init__(self, list_sizes: Mapping[Vertex, int],
                 cover_edges: Iterable[Iterable[tuple[int, int, int]]] = ()):
        self.list_sizes: dict[Vertex, int] = {
            Vertex(*v): int(s) for v, s in list_sizes.items()}
        self.cover_edges: list[CoverEdge] = []
        seen = set()
        for e in cover_edges:
            edge = frozenset(CoverColor(int(p), int(i), int(s)) for p, i, s in e)
            if edge not in seen:
                seen.add(edge)
                self.cover_edges.append(edge)
        self._incidence: dict[CoverColor, list[int]] = {}
        for rank, edge in enumerate(self.cover_edges):
            for c in edge:
                self._incidence.setdefault(c, []).append(rank)

    def slots(self, v: Vertex) -> list[CoverColor]:
        v = Vertex(*v)
        return [CoverColor(v.part, v.index, s) for s in range(self.list_sizes.get(v, 0))]

    def colors(self) -> list[CoverColor]:
        return [c for v in sorted(self.list_sizes) for c in self.slots(v)]

    def edges_containing(self, c: CoverColor) -> list[int]:
        return self._incidence.get(c, [])

    def cover_degree(self, c: CoverColor) -> int:
        """deg over the cover: number of cover edges containing c."""
        return len(self.edges_containing(c))

    def max_cover_degrees(self, h: PartiteHypergraph) -> list[int]:
        """Per-part maximum cover degree (the D_i of the cover)."""
        out = [0] * h.k
        for c in self.colors():
            d = self.cover_degree(c)
            if d > out[c.part]:
                out[c.part] = d
        return out

    def to_json_dict(self) -> dict:
        return {
            "list_sizes": {vertex_key(v): s for v, s in sorted(self.list_sizes.items())},
            "cover_edges": [sorted([c.part, c.index, c.slot] for c in e)
                            for e in self.cover_edges],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "CorrespondenceCover":
        try:
            sizes = {parse_vertex_key(key): s for key, s in data["list_sizes"].items()}
            edges = data["cover_edges"]
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"cover JSON missing key: {exc}") from exc
        return cls(sizes, edges)


def validate_cover(h: PartiteHypergraph, cover: CorrespondenceCover) -> ValidationReport:
    """Check the three cover axioms; the report cites the first violated one.

    (a) no cover edge holds two colors of one block, (b) the cover edges
    over any single host edge are pairwise disjoint (hypermatching), and
    (c) every cover edge's owners form an edge of the host.
    """
    for v in cover.list_sizes:
        if not h.has_vertex(v):
            return ValidationReport(False, (f"block for unknown vertex {tuple(v)}",))
    for v in h.vertices():
        if v not in cover.list_sizes:
            return ValidationReport(False, (f"vertex {tuple(v)} has no block size",))
    host_edges = {e: rank for rank, e in enumerate(h.edges)}
    by_host: dict[tuple, list[CoverEdge]] = {}
    for rank, edge in enumerate(cover.cover_edges):
        for c in edge:
            if not h.has_vertex(c.owner):
                return ValidationReport(
                    False, (f"cover edge #{rank} color {tuple(c)} has unknown owner",))
            if not 0 <= c.slot < cover.list_sizes[c.owner]:
                return ValidationReport(
                    False, (f"cover edge #{rank} color {tuple(c)} slot out of range",))
        owners = sorted(c.owner for c in edge)
        if len(set(owners)) != len(edge):
            return ValidationReport(
                False, (f"cover edge #{rank} holds two colors of one block "
                        "(violates the per-block degree-zero axiom)",))
        owner_edge = tuple(owners)
        if len(edge) != h.k or owner_edge not in host_edges:
            return ValidationReport(
                False, (f"cover edge #{rank} spans {owner_edge}, not an edge of the "
                        "host (cover must be empty over host non-edges)",))
        by_host.setdefault(owner_edge, []).append(edge)
    for owner_edge, edges in by_host.items():
        used: set[CoverColor] = set()
        for edge in edges:
            dup = next((c for c in edge if c in used), None)
            if dup is not None:
                return ValidationReport(
                    False, (f"color {tuple(dup)} lies in two cover edges over host "
                            f"edge {owner_edge}: not a hypermatching",))
            used.update(edge)
    return ValidationReport(True)


def lift_list_assignment(h: PartiteHypergraph, L: ListAssignment) -> CorrespondenceCover:
    """Embed a list assignment as a cover: slots correspond iff their colors are equal.

    Slot s of a vertex stands for the s-th smallest color in its list.
    Cover edges are emitted per host edge, in host edge order, with the
    shared colors ascending.
    """
    slot_of = {v: {c: s for s, c in enumerate(sorted(L[v]))} for v in h.vertices()}
    sizes = {v: len(L[v]) for v in h.vertices()}
    edges = []
    for e in h.edges:
        common = frozenset.intersection(*(L[v] for v in e))
        for c in sorted(common):
            edges.append([(v.part, v.index, slot_of[v][c]) for v in e])
    return CorrespondenceCover(sizes, edges)


def lifted_slot_color(L: ListAssignment, c: CoverColor) -> int:
    """The list color that slot c stands for under lift_list_assignment."""
    return sorted(L[c.owner])[c.slot]


def check_dp_coloring(cover: CorrespondenceCover, phi: Mapping[Vertex, CoverColor]) -> None:
    for v, c in phi.items():
        c = CoverColor(*c)
        if c.owner != Vertex(*v) or not 0 <= c.slot < cover.list_sizes.get(c.owner, 0):
            raise InvalidInputError(f"vertex {tuple(v)} assigned foreign color {tuple(c)}")


def dp_residual(h: PartiteHypergraph, cover: CorrespondenceCover,
                phi: Mapping[Vertex, CoverColor]) -> dict[Vertex, frozenset]:
    """Surviving cover colors per vertex under the partial assignment phi.

    A slot c dies at an uncolored v when some cover edge contains c and
    every one of its other colors is the assigned color of its owner.
    """
    check_dp_coloring(cover, phi)
    image = {CoverColor(*c) for c in phi.values()}
    out: dict[Vertex, frozenset] = {}
    for v in h.vertices():
        if v in phi:
            out[v] = frozenset((CoverColor(*phi[v]),))
            continue
        alive = []
        for c in cover.slots(v):
            blocked = any(
                all(c2 in image for c2 in cover.cover_edges[rank] if c2 != c)
                for rank in cover.edges_containing(c))
            if not blocked:
                alive.append(c)
        out[v] = frozenset(alive)
    return out


def is_proper_dp_coloring(h: PartiteHypergraph, cover: CorrespondenceCover,
                          phi: Mapping[Vertex, CoverColor]) -> bool:
    """True iff no cover edge lies fully inside the image of the total map phi."""
    missing = next((v for v in h.vertices() if v not in phi), None)
    if missing is not None:
        raise InvalidInputError(f"assignment is partial: vertex {tuple(missing)} unassigned")
    check_dp_coloring(cover, phi)
    image = {CoverColor(*c) for c in phi.values()}
    return not any(edge <= image for edge in cover.cover_edges)


@dataclass(frozen=True)
class AuxHypergraph:
    """Blocker hypergraph on the cover colors outside part j.

    Each edge S is a color set that, if fully realized by the random
    partial assignment, kills every slot of some part-j vertex; witnesses
    maps S to those vertices.
    """
    j: int
    colors: frozenset
    edges: tuple
    witnesses: dict

    def aux_degree(self, c: CoverColor) -> int:
        return sum(1 for S in self.edges if c in S)


def build_aux_hypergraph(h: PartiteHypergraph, cover: CorrespondenceCover, j: int,
                         cap: int = 10**6) -> AuxHypergraph:
    """Enumerate every blocker edge S explicitly (testing aid, not solver path).

    For each v in part j and each system of pairwise disjoint cover edges
    covering all of v's slots, S is the union of the system minus v's
    block; systems whose S repeats an owner are discarded. Candidate
    system counts above cap abort with "aux explosion".
    """
    if not 0 <= j < h.k:
        raise InvalidInputError(f"part j={j} out of range for k={h.k}")
    colors = frozenset(c for c in cover.colors() if c.part != j)
    edges: dict[frozenset, set[Vertex]] = {}
    for v in h.part(j):
        slots = cover.slots(v)
        if not slots:
            continue  # empty block: nothing can saturate it
        candidate_lists = [[cover.cover_edges[r] for r in cover.edges_containing(c)]
                           for c in slots]
        n_systems = 1
        for cands in candidate_lists:
            n_systems *= len(cands)
            if n_systems > cap:
                raise CapExceededError(
                    f"aux explosion at vertex {tuple(v)}: > {cap} candidate matchings")
        if n_systems == 0:
            continue
        for system in itertools.product(*candidate_lists):
            union: set[CoverColor] = set()
            size = 0
            ok = True
            for edge in system:
                union.update(edge)
                size += len(edge)
                if len(union) != size:  # two system edges intersect
                    ok = False
                    break
            if not ok:
                continue
            S = frozenset(c for c in union if c.owner != v)
            owners = {c.owner for c in S}
            if len(owners) != len(S):  # repeated owner inside S
                continue
            edges.setdefault(S, set()).add(v)
    ordered = tuple(sorted(edges, key=sorted))
    return AuxHypergraph(j, colors, ordered,
                         {S: frozenset(ws) for S, ws in edges.items()})
