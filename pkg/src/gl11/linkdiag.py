"""Combinatorial oriented framed link diagrams.

A diagram is an abstract crossing list: arcs are the strands between
consecutive under-passes, and each crossing records its sign, the arc
passing over, and the arcs entering/leaving underneath.  No planar
embedding is stored; linking numbers and the Wirtinger presentation only
need incidences and signs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from .algebra import IntMatrix
from .algebra.palette import GroupElement
from .errors import (IndexOutOfRange, OddCrossingParity, ParseError,
                     UnsupportedWeight, ValidationError)

_LINK_KEYS = {"components", "framings", "arcs", "crossings", "succ"}
_CROSSING_KEYS = {"sign", "over", "under_in", "under_out"}


@dataclass(frozen=True)
class Crossing:
    sign: int
    over: int
    under_in: int
    under_out: int


@dataclass(frozen=True)
class Color:
    """Multiplicity and weight carried by one link component."""
    mult: GroupElement
    weight: int = 0

    def __post_init__(self):
        if self.weight not in (0, 1):
            raise UnsupportedWeight(f"weight must be 0 or 1, got {self.weight}")


@dataclass(frozen=True)
class LinkDiagram:
    ncomponents: int
    framings: tuple
    arc_components: tuple  # arc id -> component index
    crossings: tuple       # of Crossing

    def __post_init__(self):
        object.__setattr__(self, "framings", tuple(int(f) for f in self.framings))
        object.__setattr__(self, "arc_components",
                           tuple(int(c) for c in self.arc_components))
        object.__setattr__(self, "crossings", tuple(self.crossings))
        self._validate()

    def _validate(self):
        r = self.ncomponents
        if r < 1:
            raise ValidationError("a link needs at least one component")
        if len(self.framings) != r:
            raise ValidationError("framings length must match component count")
        narcs = len(self.arc_components)
        if narcs == 0:
            raise ValidationError("a link needs at least one arc")
        for c in self.arc_components:
            if not 0 <= c < r:
                raise ValidationError(f"arc component index {c} out of range")
        present = set(self.arc_components)
        for comp in range(r):
            if comp not in present:
                raise ValidationError(f"component {comp} has no arcs")
        under_in_count = [0] * narcs
        for x in self.crossings:
            if x.sign not in (1, -1):
                raise ValidationError(f"crossing sign must be +-1, got {x.sign}")
            for a in (x.over, x.under_in, x.under_out):
                if not 0 <= a < narcs:
                    raise ValidationError(f"arc id {a} out of range")
            if self.arc_components[x.under_in] != self.arc_components[x.under_out]:
                raise ValidationError(
                    "under_in and under_out must belong to the same component")
            under_in_count[x.under_in] += 1
        arcs_per_comp = [0] * r
        for c in self.arc_components:
            arcs_per_comp[c] += 1
        for a in range(narcs):
            if under_in_count[a] > 1:
                raise ValidationError(f"arc {a} ends under more than one crossing")
            if under_in_count[a] == 0 and arcs_per_comp[self.arc_components[a]] != 1:
                raise ValidationError(
                    f"arc {a} has no successor crossing and is not a free loop")
        # each component's arcs must form a single succ-cycle
        succ = self._derive_succ()
        for comp in range(r):
            arcs = [a for a in range(narcs) if self.arc_components[a] == comp]
            seen = {arcs[0]}
            cur = succ[arcs[0]]
            while cur not in seen:
                seen.add(cur)
                cur = succ[cur]
            if len(seen) != len(arcs):
                raise ValidationError(
                    f"arcs of component {comp} do not form a single cycle")

    def _derive_succ(self):
        succ = {a: a for a in range(len(self.arc_components))}
        for x in self.crossings:
            succ[x.under_in] = x.under_out
        return succ

    @cached_property
    def succ(self):
        """Successor arc map: arc -> next arc along its component."""
        return self._derive_succ()

    @property
    def narcs(self) -> int:
        return len(self.arc_components)

    def arcs_of_component(self, i: int):
        return [a for a in range(self.narcs) if self.arc_components[a] == i]

    @cached_property
    def free_loops(self):
        """Arcs that never pass under a crossing (one-arc unknotted components)."""
        under = {x.under_in for x in self.crossings}
        return tuple(a for a in range(self.narcs) if a not in under)

    def with_framings(self, framings) -> "LinkDiagram":
        return LinkDiagram(self.ncomponents, tuple(framings),
                           self.arc_components, self.crossings)

    # serialization ---------------------------------------------------

    def to_dict(self):
        return {
            "components": self.ncomponents,
            "framings": list(self.framings),
            "arcs": list(self.arc_components),
            "crossings": [{"sign": x.sign, "over": x.over,
                           "under_in": x.under_in, "under_out": x.under_out}
                          for x in self.crossings],
            "succ": {str(a): s for a, s in sorted(self.succ.items())},
        }

    def to_text(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def parse_link(text: str) -> LinkDiagram:
    """Parse the JSON link format, validating all structural invariants."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("link file must be a JSON object")
    unknown = set(data) - _LINK_KEYS
    if unknown:
        raise ParseError(f"unknown fields: {sorted(unknown)}")
    missing = _LINK_KEYS - set(data)
    if missing:
        raise ParseError(f"missing fields: {sorted(missing)}")
    crossings = []
    for raw in data["crossings"]:
        if not isinstance(raw, dict):
            raise ParseError("crossings must be objects")
        if set(raw) != _CROSSING_KEYS:
            raise ParseError(f"bad crossing fields: {sorted(set(raw))}")
        crossings.append(Crossing(raw["sign"], raw["over"],
                                  raw["under_in"], raw["under_out"]))
    try:
        diagram = LinkDiagram(int(data["components"]),
                              tuple(data["framings"]),
                              tuple(data["arcs"]),
                              tuple(crossings))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ParseError(f"malformed link data: {exc}") from exc
    given_succ = {int(k): int(v) for k, v in data["succ"].items()}
    if given_succ != diagram.succ:
        raise ValidationError("succ map inconsistent with crossing list")
    return diagram


def linking_matrix(d: LinkDiagram) -> IntMatrix:
    """Symmetric linking matrix; framings on the diagonal."""
    r = d.ncomponents
    raw = [[0] * r for _ in range(r)]
    for x in d.crossings:
        a = d.arc_components[x.over]
        b = d.arc_components[x.under_in]
        if a != b:
            raw[a][b] += x.sign
            raw[b][a] += x.sign
    out = [[0] * r for _ in range(r)]
    for i in range(r):
        out[i][i] = d.framings[i]
        for j in range(i):
            if raw[i][j] % 2:
                raise OddCrossingParity(
                    f"odd signed crossing count between components {i} and {j}")
            out[i][j] = out[j][i] = raw[i][j] // 2
    return IntMatrix(out)


def unknot_diagram(framing: int = 0) -> LinkDiagram:
    return LinkDiagram(1, (framing,), (0,), ())


def hopf_diagram(framings=(0, 0), positive: bool = True) -> LinkDiagram:
    """The Hopf link: one arc per component, each passing under once."""
    s = 1 if positive else -1
    return LinkDiagram(2, tuple(framings), (0, 1),
                       (Crossing(s, 0, 1, 1), Crossing(s, 1, 0, 0)))


def connected_sum(d1: LinkDiagram, i: int, d2: LinkDiagram, j: int) -> LinkDiagram:
    """Splice component i of d1 with component j of d2 at their lowest arcs.

    The merged component takes index i; the remaining components of d2
    follow d1's.  Framings of the glued components add.
    """
    if not 0 <= i < d1.ncomponents:
        raise IndexOutOfRange(f"component {i} out of range")
    if not 0 <= j < d2.ncomponents:
        raise IndexOutOfRange(f"component {j} out of range")
    off = d1.narcs
    x = min(d1.arcs_of_component(i))
    y = off + min(d2.arcs_of_component(j))

    def comp_map2(c):
        if c == j:
            return i
        return d1.ncomponents + (c if c < j else c - 1)

    arc_comp = list(d1.arc_components) + [comp_map2(c) for c in d2.arc_components]
    crossings = [Crossing(c.sign, c.over, c.under_in, c.under_out)
                 for c in d1.crossings]
    crossings += [Crossing(c.sign, c.over + off, c.under_in + off,
                           c.under_out + off) for c in d2.crossings]

    x_free = all(c.under_in != x for c in crossings)
    y_free = all(c.under_in != y for c in crossings)
    drop = None
    if x_free and not y_free:
        # x has no under-pass: it dissolves into y
        crossings = [Crossing(c.sign, y if c.over == x else c.over,
                              c.under_in, c.under_out) for c in crossings]
        drop = x
    elif y_free:
        # y dissolves into x (both free loops also lands here)
        crossings = [Crossing(c.sign, x if c.over == y else c.over,
                              c.under_in, c.under_out) for c in crossings]
        drop = y
    else:
        def fix(c: Crossing) -> Crossing:
            under_in = c.under_in
            if under_in == x:
                under_in = y
            elif under_in == y:
                under_in = x
            over = x if c.over == y else c.over
            return Crossing(c.sign, over, under_in, c.under_out)
        crossings = [fix(c) for c in crossings]

    if drop is not None:
        remap = {}
        for a in range(len(arc_comp)):
            if a != drop:
                remap[a] = len(remap)
        arc_comp = [c for a, c in enumerate(arc_comp) if a != drop]
        crossings = [Crossing(c.sign, remap[c.over], remap[c.under_in],
                              remap[c.under_out]) for c in crossings]

    framings = list(d1.framings)
    framings[i] += d2.framings[j]
    framings += [f for k, f in enumerate(d2.framings) if k != j]
    return LinkDiagram(d1.ncomponents + d2.ncomponents - 1, tuple(framings),
                       tuple(arc_comp), tuple(crossings))


def chain_diagram(framings) -> LinkDiagram:
    """The n-component chain of positive Hopf clasps with the given framings."""
    framings = list(framings)
    if len(framings) < 1:
        raise ValidationError("a chain needs at least one framing")
    if len(framings) == 1:
        return unknot_diagram(framings[0])
    d = hopf_diagram()
    for _ in range(len(framings) - 2):
        d = connected_sum(d, d.ncomponents - 1, hopf_diagram(), 0)
    return d.with_framings(framings)


def reverse_component(d: LinkDiagram, i: int) -> LinkDiagram:
    """Reverse the orientation of component i."""
    if not 0 <= i < d.ncomponents:
        raise IndexOutOfRange(f"component {i} out of range")
    out = []
    for c in d.crossings:
        over_on = d.arc_components[c.over] == i
        under_on = d.arc_components[c.under_in] == i
        sign = -c.sign if over_on != under_on else c.sign
        if under_on:
            out.append(Crossing(sign, c.over, c.under_out, c.under_in))
        else:
            out.append(Crossing(sign, c.over, c.under_in, c.under_out))
    return LinkDiagram(d.ncomponents, d.framings, d.arc_components, tuple(out))


def delete_component(d: LinkDiagram, i: int) -> LinkDiagram:
    """Remove component i, merging the under-arcs cut only by its over-passes."""
    if not 0 <= i < d.ncomponents:
        raise IndexOutOfRange(f"component {i} out of range")
    if d.ncomponents == 1:
        raise ValidationError("cannot delete the last component")
    parent = list(range(d.narcs))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    kept_crossings = []
    for c in d.crossings:
        over_on = d.arc_components[c.over] == i
        under_on = d.arc_components[c.under_in] == i
        if under_on:
            continue
        if over_on:
            union(c.under_in, c.under_out)
            continue
        kept_crossings.append(c)

    kept_arcs = sorted({find(a) for a in range(d.narcs)
                        if d.arc_components[a] != i})
    remap = {a: n for n, a in enumerate(kept_arcs)}
    arc_comp = []
    for a in kept_arcs:
        c = d.arc_components[a]
        arc_comp.append(c if c < i else c - 1)
    crossings = tuple(Crossing(c.sign, remap[find(c.over)],
                               remap[find(c.under_in)], remap[find(c.under_out)])
                      for c in kept_crossings)
    framings = tuple(f for k, f in enumerate(d.framings) if k != i)
    return LinkDiagram(d.ncomponents - 1, framings, tuple(arc_comp), crossings)
