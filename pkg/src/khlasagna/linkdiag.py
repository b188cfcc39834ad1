"""Framed oriented link diagrams: PD codes, braid closures, cabling, statistics.

A diagram is a list of PD crossings ``X(a, b, c, d)``: the four arc labels
around the crossing, counterclockwise, starting from the incoming
under-strand ``a`` (the under-strand runs ``a -> c``).  A crossing is
positive when its over-strand runs ``d -> b``, negative when it runs
``b -> d``.  Crossingless components, which PD codes cannot express, are kept
as explicit loop records.  Every component carries an integer framing;
constructions that need blackboard framing to agree with the declared
framing (cabling) insert kinks at the end of the component traversal.

Text formats::

    PD[X(1,4,2,5), X(3,8,4,9), ...; framings=(0,); loops=0]
    BR[3; 1 -2 1 -2]

Arcs are numbered from 1.  ``framings`` and ``loops`` are optional: framings
default to 0 per component, ``loops=k`` appends k crossingless components
after the PD-coded ones.  Orientations are determined by the under-strands
and propagate to over-strands; a component that is never an under-strand is
oriented by the rule that its first-listed arc runs forward.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class ParseError(ValueError):
    """Malformed PD/braid input."""


class OrientationError(ParseError):
    """The arcs of a PD code admit no coherent orientation."""


@dataclass(frozen=True)
class Component:
    arcs: tuple  # arc ids in traversal order; empty for a crossingless loop
    framing: int = 0

    @property
    def is_loop(self):
        return not self.arcs


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple          # PD 4-tuples, slot 0 = incoming under
    signs: tuple              # +1/-1 per crossing
    succ: tuple               # sorted (arc, next arc) pairs along the orientation
    components: tuple         # Component records
    source: str = ""

    @property
    def n_crossings(self):
        return len(self.crossings)

    @property
    def n_components(self):
        return len(self.components)

    @property
    def framings(self):
        return tuple(c.framing for c in self.components)

    def succ_map(self):
        return dict(self.succ)

    def arc_component(self):
        out = {}
        for i, comp in enumerate(self.components):
            for a in comp.arcs:
                out[a] = i
        return out

    def crossing_components(self):
        """Per crossing: (under component, over component)."""
        amap = self.arc_component()
        return [(amap[x[0]], amap[x[1]]) for x in self.crossings]

    def with_framings(self, framings):
        if len(framings) != self.n_components:
            raise ValueError("framing vector length != component count")
        comps = tuple(Component(c.arcs, int(f))
                      for c, f in zip(self.components, framings))
        return LinkDiagram(self.crossings, self.signs, self.succ, comps, self.source)

    def blackboard_framed(self):
        """Declare each framing equal to the blackboard self-writhe."""
        return self.with_framings(self.stats().writhe_vector)

    def writhe(self):
        return sum(self.signs)

    def framed_writhe(self):
        """Self-linking of the framed link: sum f_i + 2 sum_{i<j} lk_ij."""
        lk = self.stats().linking_matrix
        m = self.n_components
        return sum(self.framings) + 2 * sum(lk[i][j] for i in range(m)
                                            for j in range(i + 1, m))

    def stats(self):
        return diagram_stats(self)

    def pd_text(self):
        xs = ", ".join("X(%d,%d,%d,%d)" % x for x in self.crossings)
        fr = ",".join(str(f) for f in self.framings)
        loops = sum(1 for c in self.components if c.is_loop)
        return "PD[%s; framings=(%s); loops=%d]" % (xs, fr, loops)

    def __repr__(self):
        return "LinkDiagram(%d crossings, %d components, w=%d)" % (
            self.n_crossings, self.n_components, self.writhe())


@dataclass(frozen=True)
class CableSpec:
    """Per-component strand counts (parallel, reversed) and target framings."""
    parallel: tuple
    reversed_: tuple
    framings: tuple

    def __post_init__(self):
        if not (len(self.parallel) == len(self.reversed_) == len(self.framings)):
            raise ValueError("cable spec vectors must have equal length")
        if any(r < 0 for r in self.parallel) or any(s < 0 for s in self.reversed_):
            raise ValueError("strand counts must be nonnegative")

    @staticmethod
    def uniform(m, parallel, reversed_, framing):
        return CableSpec((parallel,) * m, (reversed_,) * m, (framing,) * m)


@dataclass(frozen=True)
class DiagramStats:
    writhe_vector: tuple    # signed self-crossing sum per component
    crossing_matrix: tuple  # N_ii = #self-crossings, N_ij = half inter-count
    linking_matrix: tuple   # lk_ij = half signed inter-crossing sum
    seifert_circles: int    # circles of the oriented resolution, loops included
    sign_census: dict       # (i, j), i<=j -> (n_plus, n_minus)

    @property
    def total_writhe(self):
        m = len(self.writhe_vector)
        return sum(self.writhe_vector) + 2 * sum(
            self.linking_matrix[i][j] for i in range(m) for j in range(i + 1, m))


# ---------------------------------------------------------------------------
# orientation and construction
# ---------------------------------------------------------------------------

def _head_slots(crossings, signs):
    """arc -> (crossing, slot) where the arc enters a crossing."""
    head = {}
    for ci, (x, s) in enumerate(zip(crossings, signs)):
        head[x[0]] = (ci, 0)
        head[x[3] if s == 1 else x[1]] = (ci, 3 if s == 1 else 1)
    return head


def _orient(crossings):
    """Determine over-strand directions: crossing -> +1 (d incoming) or -1."""
    appearances = {}
    for ci, x in enumerate(crossings):
        if len(x) != 4:
            raise ParseError("crossing %r does not have 4 arc labels" % (x,))
        for slot, a in enumerate(x):
            appearances.setdefault(a, []).append((ci, slot))
    for a, apps in appearances.items():
        if len(apps) != 2:
            raise ParseError("arc %r appears %d times (expected 2)" % (a, len(apps)))

    head, tail = {}, {}
    over_state = {}

    def set_dir(a, where, is_head):
        store, other = (head, tail) if is_head else (tail, head)
        if a in store and store[a] != where:
            raise OrientationError("arc %r oriented inconsistently" % (a,))
        fresh = a not in store
        store[a] = where
        return fresh

    def fix_over(ci, d_incoming):
        if ci in over_state:
            if over_state[ci] != d_incoming:
                raise OrientationError(
                    "over-strand of crossing %d forced both ways" % ci)
            return []
        over_state[ci] = d_incoming
        x = crossings[ci]
        inc, out = (x[3], x[1]) if d_incoming == 1 else (x[1], x[3])
        inc_slot = 3 if d_incoming == 1 else 1
        out_slot = 1 if d_incoming == 1 else 3
        changed = []
        if set_dir(inc, (ci, inc_slot), True):
            changed.append(inc)
        if set_dir(out, (ci, out_slot), False):
            changed.append(out)
        return changed

    work = []
    for ci, x in enumerate(crossings):
        if set_dir(x[0], (ci, 0), True):
            work.append(x[0])
        if set_dir(x[2], (ci, 2), False):
            work.append(x[2])

    def propagate(queue):
        while queue:
            a = queue.pop()
            for (ci, slot) in appearances[a]:
                if slot in (1, 3) and ci not in over_state:
                    # a known head elsewhere makes this slot the tail, and
                    # vice versa; an arc has one head and one tail in total
                    if a in head and head[a] != (ci, slot):
                        queue += fix_over(ci, -1 if slot == 3 else 1)
                    elif a in tail and tail[a] != (ci, slot):
                        queue += fix_over(ci, 1 if slot == 3 else -1)

    propagate(work)
    # components never appearing as an under-strand: first arc runs forward
    for ci in range(len(crossings)):
        if ci not in over_state:
            x = crossings[ci]
            arc = min(x[1], x[3])
            slot = 1 if x[1] == arc else 3
            # treat this earliest-labeled slot as the tail of the arc
            propagate(fix_over(ci, 1 if slot == 1 else -1))

    for a in appearances:
        if a not in head or a not in tail:
            raise OrientationError("arc %r could not be oriented" % (a,))
    return over_state


def _assemble(crossings, signs, loop_framings, framings, source):
    succ = {}
    for x, s in zip(crossings, signs):
        a, b, c, d = x
        succ[a] = c
        if s == 1:
            succ[d] = b
        else:
            succ[b] = d
    seen = set()
    comps = []
    for a in sorted(succ):
        if a in seen:
            continue
        cyc = [a]
        seen.add(a)
        nxt = succ[a]
        while nxt != a:
            cyc.append(nxt)
            seen.add(nxt)
            nxt = succ[nxt]
        comps.append(tuple(cyc))
    comps.sort(key=lambda cyc: cyc[0])
    all_comps = comps + [()] * len(loop_framings)
    if framings is None:
        framings = [0] * len(comps) + list(loop_framings)
    if len(framings) != len(all_comps):
        raise ParseError("framings length %d != component count %d"
                         % (len(framings), len(all_comps)))
    components = tuple(Component(c, int(f)) for c, f in zip(all_comps, framings))
    return LinkDiagram(tuple(tuple(x) for x in crossings), tuple(signs),
                       tuple(sorted(succ.items())), components, source)


def _build(crossings, loop_count=0, framings=None, source=""):
    crossings = [tuple(x) for x in crossings]
    over_state = _orient(crossings)
    signs = tuple(over_state[ci] for ci in range(len(crossings)))
    return _assemble(crossings, signs, [0] * loop_count, framings, source)


def build_unoriented(crossings, loop_count=0, framings=None, source=""):
    """Build from unoriented crossing data: 4 arcs in counterclockwise order
    with slots 0, 2 the under-strand diagonal (either direction).

    Components are traced and oriented (lowest arc of each runs out of its
    first listed slot), then tuples are rotated so slot 0 is the incoming
    under-strand.
    """
    crossings = [tuple(x) for x in crossings]
    app = {}
    for ci, x in enumerate(crossings):
        if len(x) != 4:
            raise ParseError("crossing %r does not have 4 arc labels" % (x,))
        for slot, arc in enumerate(x):
            app.setdefault(arc, []).append((ci, slot))
    for arc, sl in app.items():
        if len(sl) != 2:
            raise ParseError("arc %r appears %d times (expected 2)" % (arc, len(sl)))

    partner = {0: 2, 2: 0, 1: 3, 3: 1}
    # a "dart" is (arc, end index 0/1): direction = travelling toward
    # appearance `end`.  Crossing continuation: entering at (ci, slot)
    # leaves from (ci, partner[slot]).
    direction = {}  # arc -> end index the orientation points to

    for arc0 in sorted(app):
        if arc0 in direction:
            continue
        direction[arc0] = 1  # first listed slot is the tail
        frontier = [arc0]
        while frontier:
            arc = frontier.pop()
            ci, slot = app[arc][direction[arc]]
            out_slot = partner[slot]
            nxt = crossings[ci][out_slot]
            ends = app[nxt]
            end = 1 if ends[0] == (ci, out_slot) else 0
            if nxt in direction:
                if direction[nxt] != end:
                    raise OrientationError("arc %r traced both ways" % (nxt,))
            else:
                direction[nxt] = end
                frontier.append(nxt)
            # also walk backwards from the tail for robustness
            ci2, slot2 = app[arc][1 - direction[arc]]
            in_slot = partner[slot2]
            prv = crossings[ci2][in_slot]
            pends = app[prv]
            pend = 0 if pends[0] == (ci2, in_slot) else 1
            if prv in direction:
                if direction[prv] != pend:
                    raise OrientationError("arc %r traced both ways" % (prv,))
            else:
                direction[prv] = pend
                frontier.append(prv)

    normalized = []
    signs = []
    for ci, x in enumerate(crossings):
        # incoming under-arc: points toward this crossing
        if direction[x[0]] is not None and app[x[0]][direction[x[0]]] == (ci, 0):
            a_slot = 0
        else:
            a_slot = 2
        rot = x[a_slot:] + x[:a_slot]
        normalized.append(rot)
        d_in = app[rot[3]][direction[rot[3]]] == (ci, (a_slot + 3) % 4)
        signs.append(1 if d_in else -1)
    return _assemble(normalized, signs, [0] * loop_count, framings, source)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_PD_RE = re.compile(r"^\s*PD\[(.*)\]\s*$", re.S)
_X_RE = re.compile(r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")
_BR_RE = re.compile(r"^\s*BR\[\s*(\d+)\s*;([^;\]]*)((?:;[^;\]]*)*)\]\s*$", re.S)


def _parse_options(parts):
    framings = None
    loops = 0
    for part in parts:
        part = part.strip()
        if not part:
            continue
        if part.startswith("framings"):
            framings = [int(v) for v in re.findall(r"-?\d+", part.split("=", 1)[1])]
        elif part.startswith("loops"):
            loops = int(part.split("=", 1)[1])
        else:
            raise ParseError("unknown option %r" % part)
    return framings, loops


def parse_pd(text):
    """Parse a ``PD[...]`` string into a LinkDiagram."""
    m = _PD_RE.match(text)
    if not m:
        raise ParseError("not a PD[...] expression")
    parts = m.group(1).split(";")
    xpart = parts[0]
    leftover = _X_RE.sub("", xpart).replace(",", "").strip()
    if leftover:
        raise ParseError("unparsed content in PD body: %r" % leftover)
    crossings = [tuple(int(g) for g in mm.groups()) for mm in _X_RE.finditer(xpart)]
    framings, loops = _parse_options(parts[1:])
    return _build(crossings, loops, framings, source=text.strip())


def parse_braid(word, strands, framings=None):
    """Closure of a braid word; letter j > 0 contributes a positive crossing.

    Strands run upward; sigma_j takes the strand in position j over position
    j+1.  Strands untouched by the word close into loop components.
    """
    if strands < 1:
        raise ParseError("strands must be >= 1")
    word = list(word)
    for j in word:
        if j == 0 or abs(j) > strands - 1:
            raise ParseError("braid letter %d out of range for %d strands"
                             % (j, strands))
    touched = sorted({p for j in word for p in (abs(j), abs(j) + 1)})
    arc, first = {}, {}
    next_id = 1
    for p in touched:
        arc[p] = first[p] = next_id
        next_id += 1
    crossings = []
    for j in word:
        p = abs(j)
        x, y = arc[p], arc[p + 1]
        u, v = next_id, next_id + 1
        next_id += 2
        if j > 0:
            crossings.append((y, v, u, x))
        else:
            crossings.append((x, y, v, u))
        arc[p], arc[p + 1] = u, v
    ident = {arc[p]: first[p] for p in touched if arc[p] != first[p]}

    def res(a):
        while a in ident:
            a = ident[a]
        return a

    crossings = [tuple(res(a) for a in x) for x in crossings]
    loops = strands - len(touched)
    return _build(crossings, loops, framings,
                  source="BR[%d; %s]" % (strands, " ".join(map(str, word))))


def parse_br_text(text):
    m = _BR_RE.match(text)
    if not m:
        raise ParseError("not a BR[...] expression")
    strands = int(m.group(1))
    word = [int(v) for v in re.findall(r"-?\d+", m.group(2))]
    framings = None
    if m.group(3):
        framings, loops = _parse_options(m.group(3).split(";"))
        if loops:
            raise ParseError("loops not supported in BR format")
    return parse_braid(word, strands, framings)


def parse_any(text):
    text = text.strip()
    if text.startswith("BR["):
        return parse_br_text(text)
    return parse_pd(text)


def empty_diagram():
    return _assemble([], [], [], None, "PD[]")


def unknot(framing=0):
    return _assemble([], [], [framing], None,
                     "PD[; framings=(%d); loops=1]" % framing)


def unlink(n, framings=None):
    if framings is None:
        framings = [0] * n
    return _assemble([], [], list(framings), None, "PD[; loops=%d]" % n)


# ---------------------------------------------------------------------------
# transformations (data surgery; orientations are carried along, not re-derived)
# ---------------------------------------------------------------------------

def mirror(d):
    """Mirror image: every crossing switched, every sign and framing negated."""
    new = []
    for x, s in zip(d.crossings, d.signs):
        a, b, c, dd = x
        new.append((dd, a, b, c) if s == 1 else (b, c, dd, a))
    return LinkDiagram(tuple(new), tuple(-s for s in d.signs), d.succ,
                       tuple(Component(c.arcs, -c.framing) for c in d.components),
                       "mirror(%s)" % d.source)


def reverse_components(d, subset):
    """Reverse the orientation of the given components (framings persist)."""
    subset = set(subset)
    for i in subset:
        if not (0 <= i < d.n_components):
            raise ValueError("unknown component index %d" % i)
    amap = d.arc_component()
    rev_arcs = {a for a, i in amap.items() if i in subset}
    succ = d.succ_map()
    new_succ = {}
    for a, b in succ.items():
        if a in rev_arcs:
            new_succ[b] = a
        else:
            new_succ[a] = b
    new_x, new_s = [], []
    for x, s in zip(d.crossings, d.signs):
        a, b, c, dd = x
        under_rev = a in rev_arcs
        over_rev = b in rev_arcs
        if under_rev:
            x = (c, dd, a, b)
        new_x.append(x)
        new_s.append(-s if under_rev != over_rev else s)
    comps = []
    for i, comp in enumerate(d.components):
        if i in subset and comp.arcs:
            cyc = tuple(reversed(comp.arcs))
            k = cyc.index(min(cyc))
            comp = Component(cyc[k:] + cyc[:k], comp.framing)
        comps.append(comp)
    return LinkDiagram(tuple(new_x), tuple(new_s),
                       tuple(sorted(new_succ.items())), tuple(comps),
                       "reverse(%s)" % d.source)


def diagram_stats(d):
    m = d.n_components
    w = [0] * m
    N = [[0] * m for _ in range(m)]
    lk2 = [[0] * m for _ in range(m)]
    census = {}
    for (ci, cj), s in zip(d.crossing_components(), d.signs):
        i, j = min(ci, cj), max(ci, cj)
        np_, nm = census.get((i, j), (0, 0))
        census[(i, j)] = (np_ + (s > 0), nm + (s < 0))
        if ci == cj:
            w[ci] += s
            N[ci][ci] += 1
        else:
            N[ci][cj] += 1
            N[cj][ci] += 1
            lk2[ci][cj] += s
            lk2[cj][ci] += s
    Nmat = tuple(tuple(N[i][j] if i == j else N[i][j] // 2 for j in range(m))
                 for i in range(m))
    lk = tuple(tuple(v // 2 for v in row) for row in lk2)
    return DiagramStats(tuple(w), Nmat, lk, len(seifert_circles(d)), census)


def seifert_circles(d):
    """Circles of the oriented resolution as arc tuples; loops appear as ()."""
    nxt = {}
    for x, s in zip(d.crossings, d.signs):
        a, b, c, dd = x
        if s == 1:
            nxt[a] = b
            nxt[dd] = c
        else:
            nxt[a] = dd
            nxt[b] = c
    seen = set()
    out = []
    for a in sorted(nxt):
        if a in seen:
            continue
        cyc = [a]
        seen.add(a)
        cur = nxt[a]
        while cur != a:
            cyc.append(cur)
            seen.add(cur)
            cur = nxt[cur]
        out.append(tuple(cyc))
    out += [() for c in d.components if c.is_loop]
    return out


def positive_diagram_s(d):
    """s of a link with an all-positive diagram: w(D) - r(D) + 1; None otherwise."""
    if any(s != 1 for s in d.signs):
        return None
    return d.writhe() - d.stats().seifert_circles + 1


# ---------------------------------------------------------------------------
# kinks and cables
# ---------------------------------------------------------------------------

def add_kinks(d, counts):
    """Insert |counts[i]| kinks of sign(counts[i]) at the end of component i."""
    if len(counts) != d.n_components:
        raise ValueError("counts length mismatch")
    crossings = [list(x) for x in d.crossings]
    signs = list(d.signs)
    next_id = max([a for x in d.crossings for a in x], default=0) + 1
    head = _head_slots(crossings, signs)
    untouched_loop_framings = []
    kinked_loop_first_arc = {}  # first fresh arc -> framing of the kinked loop

    for idx, comp in enumerate(d.components):
        k = counts[idx]
        if k == 0:
            if comp.is_loop:
                untouched_loop_framings.append(comp.framing)
            continue
        sgn = 1 if k > 0 else -1
        remaining = abs(k)
        if comp.is_loop:
            z, mloop = next_id, next_id + 1
            next_id += 2
            if sgn > 0:
                crossings.append([z, z, mloop, mloop])
            else:
                crossings.append([z, mloop, mloop, z])
            signs.append(sgn)
            ci = len(crossings) - 1
            head[z] = (ci, 0)
            kinked_loop_first_arc[z] = comp.framing
            tail_arc = z
            remaining -= 1
        else:
            tail_arc = comp.arcs[-1]
        for _ in range(remaining):
            mnew, nnew = next_id, next_id + 1
            next_id += 2
            old_ci, old_slot = head[tail_arc]
            crossings[old_ci][old_slot] = nnew
            head[nnew] = (old_ci, old_slot)
            if sgn > 0:
                crossings.append([tail_arc, nnew, mnew, mnew])
            else:
                crossings.append([tail_arc, mnew, mnew, nnew])
            signs.append(sgn)
            head[tail_arc] = (len(crossings) - 1, 0)
            tail_arc = nnew

    out = _assemble([tuple(x) for x in crossings], signs,
                    [0] * len(untouched_loop_framings), None,
                    "kinked(%s)" % d.source)
    old_amap = d.arc_component()
    fr = []
    loop_iter = iter(untouched_loop_framings)
    for comp in out.components:
        if comp.is_loop:
            fr.append(next(loop_iter))
            continue
        owner = next((old_amap[a] for a in comp.arcs if a in old_amap), None)
        if owner is not None:
            fr.append(d.components[owner].framing)
        else:
            fr.append(next(kinked_loop_first_arc[a]
                           for a in comp.arcs if a in kinked_loop_first_arc)
                      if any(a in kinked_loop_first_arc for a in comp.arcs)
                      else 0)
    return out.with_framings(fr)


def normalize_framing(d):
    """Insert kinks so each blackboard self-writhe equals the declared framing."""
    st = d.stats()
    counts = [c.framing - w for c, w in zip(d.components, st.writhe_vector)]
    if all(v == 0 for v in counts):
        return d
    return add_kinks(d, counts)


def cable(d, spec):
    """Framed cable: component i becomes r_i parallel + s_i reversed copies,
    every strand framed by spec.framings[i].

    The base is kink-normalized to the target framings first, so blackboard
    cabling realizes both strand framings and pairwise linking.  Strand copy
    t (0-based, counted from the left of the orientation) is reversed when
    t >= r_i.  Empty cables delete components.
    """
    if len(spec.parallel) != d.n_components:
        raise ValueError("cable spec does not match component count")
    base = normalize_framing(d.with_framings(spec.framings))
    mult = [r + s for r, s in zip(spec.parallel, spec.reversed_)]

    loop_out = []
    for i, comp in enumerate(base.components):
        if comp.is_loop:
            loop_out += [(spec.framings[i], t >= spec.parallel[i])
                         for t in range(mult[i])]

    amap = base.arc_component()
    all_arcs = sorted({a for x in base.crossings for a in x})
    next_id = 1
    arc_copies = {}
    for a in all_arcs:
        k = mult[amap[a]]
        arc_copies[a] = list(range(next_id, next_id + k))
        next_id += k

    crossings = []
    splice = {}

    def fresh():
        nonlocal next_id
        next_id += 1
        return next_id - 1

    for x, s in zip(base.crossings, base.signs):
        a, b, c, dd = x
        over_in, over_out = (dd, b) if s == 1 else (b, dd)
        ku = mult[amap[a]]
        ko = mult[amap[over_in]]
        if ku == 0 or ko == 0:
            if ku > 0:
                for ain, aout in zip(arc_copies[a], arc_copies[c]):
                    splice[aout] = ain
            if ko > 0:
                for ain, aout in zip(arc_copies[over_in], arc_copies[over_out]):
                    splice[aout] = ain
            continue
        U = [[None] * (ko + 1) for _ in range(ku)]
        O = [[None] * (ku + 1) for _ in range(ko)]
        for u in range(ku):
            U[u][0] = arc_copies[a][u]
            U[u][ko] = arc_copies[c][u]
            for t in range(1, ko):
                U[u][t] = fresh()
        for v in range(ko):
            O[v][0] = arc_copies[over_in][v]
            O[v][ku] = arc_copies[over_out][v]
            for t in range(1, ku):
                O[v][t] = fresh()
        # copy indices count from the left of each strand's direction; the
        # resulting grid wiring depends on the parent sign
        for u in range(ku):
            for t in range(1, ko + 1):
                if s == 1:
                    v = ko - t
                    crossings.append((U[u][t - 1], O[v][u + 1], U[u][t], O[v][u]))
                else:
                    v = t - 1
                    crossings.append((U[u][t - 1], O[v][ku - u - 1],
                                      U[u][t], O[v][ku - u]))

    def res(arc):
        seen = set()
        while arc in splice:
            if arc in seen:
                return None  # closed splice cycle: the strand lost all crossings
            seen.add(arc)
            arc = splice[arc]
        return arc

    # strands whose splice chain closes up became crossingless loops
    spliced_loops = []
    remaining = {a for a in splice if res(a) is None}
    while remaining:
        a = min(remaining)
        cyc = {a}
        cur = splice[a]
        while cur != a:
            cyc.add(cur)
            cur = splice[cur]
        remaining -= cyc
        spliced_loops.append(min(cyc))

    crossings = [tuple(res(a) for a in x) for x in crossings]
    out = _build(crossings, 0, None, source="cable(%s)" % d.source)

    copy_raw = {}
    for a, copies in arc_copies.items():
        for t, arc_id in enumerate(copies):
            copy_raw[arc_id] = (amap[a], t)
    copy_of = {res(a): v for a, v in copy_raw.items() if res(a) is not None}
    framings, to_reverse = [], []
    for comp_idx, comp in enumerate(out.components):
        bi, t = min(copy_of[a] for a in comp.arcs if a in copy_of)
        framings.append(spec.framings[bi])
        if t >= spec.parallel[bi]:
            to_reverse.append(comp_idx)
    out = out.with_framings(framings)
    if to_reverse:
        out = reverse_components(out, to_reverse)

    # cabled loops and loops created by component deletion (reversal is
    # immaterial for a crossingless circle)
    for rep in spliced_loops:
        bi, _t = copy_raw[rep]
        loop_out.append((spec.framings[bi], False))
    if loop_out:
        out = disjoint_union(out, unlink(len(loop_out),
                                         [f for f, _rev in loop_out]))
    return out


def disjoint_union(d1, d2):
    """Place two diagrams side by side (arc ids of d2 shifted)."""
    shift = max([a for x in d1.crossings for a in x], default=0)
    xs2 = [tuple(a + shift for a in x) for x in d2.crossings]
    succ = dict(d1.succ)
    for a, b in d2.succ:
        succ[a + shift] = b + shift
    comps = [c for c in d1.components if not c.is_loop]
    comps += [Component(tuple(a + shift for a in c.arcs), c.framing)
              for c in d2.components if not c.is_loop]
    comps.sort(key=lambda c: c.arcs[0])
    comps += [c for c in d1.components if c.is_loop]
    comps += [c for c in d2.components if c.is_loop]
    return LinkDiagram(tuple(d1.crossings) + tuple(xs2),
                       d1.signs + d2.signs, tuple(sorted(succ.items())),
                       tuple(comps), "union(%s | %s)" % (d1.source, d2.source))
