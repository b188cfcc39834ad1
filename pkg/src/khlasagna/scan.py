"""Scanning builder: crossing-by-crossing complex assembly with delooping
and immediate cancellation.

The partially built complex lives over crossingless tangles: an object is a
perfect matching of the open arc-ends (tokens) on the frontier, carrying
quantum/homological shifts.  Differential entries are linear combinations of
dotted cobordisms in normal form: one disk per cycle of the source/target
matching pair, at most one dot per disk after reduction by X^2 = t.  Gluing
the next crossing extends every object by the two smoothings, closes and
deloops circles, and appends saddle entries; unit identity entries of
quantum jump zero are cancelled immediately, which keeps the complex near
homology size throughout.  Everything is deterministic: crossings are
processed in a frontier-minimizing greedy order with index tie-breaks, and
all worklists run in sorted order.

The result is an explicit ChainComplex (empty boundary), with one V-factor
tensored in per crossingless loop component.
"""

from __future__ import annotations

from fractions import Fraction

from .complexes import ChainComplex


def _tok(ci, slot):
    return 4 * ci + slot


class _DSU:
    __slots__ = ("p",)

    def __init__(self):
        self.p = {}

    def find(self, x):
        p = self.p
        r = x
        while p.setdefault(r, r) != r:
            r = p[r]
        while p[x] != r:
            p[x], x = r, p[x]
        return r

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.p[ry] = rx


def _cycles(m1, m2):
    """Connected components of the union of two perfect matchings on the same
    point set: sorted tuple of frozensets (even cycles; 2-cycles included)."""
    dsu = _DSU()
    for a, b in m1:
        dsu.union(a, b)
    for a, b in m2:
        dsu.union(a, b)
    groups = {}
    for a, b in m1:
        groups.setdefault(dsu.find(a), set()).update((a, b))
    out = sorted((frozenset(g) for g in groups.values()), key=min)
    return tuple(out)


def _sew(matching, pairs, consumed):
    """Glue extra pairs onto a matching and drop the consumed points.

    Every consumed point carries exactly one matching edge and one gluing
    edge; surviving points carry one matching edge.  Components are paths
    between surviving points (the new matching) and closed circles through
    consumed points only.  Returns (new matching, circles as frozensets)."""
    edges = [(a, b) for a, b in matching] + [(a, b) for a, b in pairs]
    at = {}
    for ei, (a, b) in enumerate(edges):
        at.setdefault(a, []).append(ei)
        at.setdefault(b, []).append(ei)
    used = [False] * len(edges)
    new = []
    circles = []
    for start in sorted(at):
        if start in consumed:
            continue
        ei = at[start][0]
        if used[ei]:
            continue
        cur = start
        while True:
            used[ei] = True
            a, b = edges[ei]
            cur = b if cur == a else a
            if cur not in consumed:
                break
            ei = next(e for e in at[cur] if not used[e])
        new.append((min(start, cur), max(start, cur)))
    for ei0 in range(len(edges)):
        if used[ei0]:
            continue
        circ = set()
        ei = ei0
        cur = edges[ei0][0]
        while not used[ei]:
            used[ei] = True
            a, b = edges[ei]
            circ.update((a, b))
            cur = b if cur == a else a
            nxt = [e for e in at[cur] if not used[e]]
            if not nxt:
                break
            ei = nxt[0]
        circles.append(frozenset(circ))
    circles.sort(key=min)
    return tuple(sorted(new)), tuple(circles)


def _expand(t, genus, dots, nboundary):
    """Normal form of one connected component: genus-g, `dots`-dotted surface
    with nboundary boundary circles, as {dot tuple: coeff}；for nboundary = 0
    this is the closed evaluation {(): scalar}."""
    e = genus + dots
    scalar = 2 ** genus
    if e >= 2:
        if t == 0:
            return {}
        e = e % 2
    if nboundary == 0:
        return {(): scalar} if e == 1 else {}
    states = {(e,): scalar}
    while len(next(iter(states))) < nboundary:
        new = {}
        for key, c in states.items():
            last = key[-1]
            if last == 0:
                for ext in ((key[:-1] + (0, 1)), (key[:-1] + (1, 0))):
                    new[ext] = new.get(ext, 0) + c
            else:
                k1 = key[:-1] + (1, 1)
                new[k1] = new.get(k1, 0) + c
                if t:
                    k0 = key[:-1] + (0, 0)
                    new[k0] = new.get(k0, 0) + c
        states = new
    return states


class ScanComplex:
    """Driver for the scanning construction of the cube complex.

    Optional phantoms track canonical Lee cycles: a phantom is an extra
    source object shadowing the oriented partial resolution, whose single
    outgoing entry carries the cycle's circle labels as idempotent dot
    polynomials (a, b = (1 +- dot)/2).  Phantoms ride the ordinary entry
    transport and cancellation corrections; at the end their rows are the
    tracked chains in the finished complex.
    """

    def __init__(self, diagram, t, ring, phantoms=None):
        if ring == "Z" and t != 0:
            raise ValueError("the deformation requires Q coefficients")
        self.d = diagram
        self.t = t
        self.ring = ring
        self.obj = {}      # oid -> (matching, qshift, hdeg, ones)
        self.out = {}      # oid -> {oid2: {dotvec: coeff}}
        self.inc = {}      # oid2 -> set of oid
        self._next = 0
        self.frontier = set()
        self._token_partner = {}
        app = {}
        for ci, x in enumerate(diagram.crossings):
            for slot, a in enumerate(x):
                app.setdefault(a, []).append(_tok(ci, slot))
        for a, toks in app.items():
            t0, t1 = toks
            self._token_partner[t0] = t1
            self._token_partner[t1] = t0
        root = self._new_obj((), 0, 0, 0)
        # pid -> (token color map, per-crossing oriented smoothing,
        #         per-loop color list)
        self.phantom = {}
        for colors, s_or, loop_colors in (phantoms or []):
            pid = self._new_obj((), 0, -1, 0)
            self.phantom[pid] = (colors, s_or, loop_colors)
            self._add_terms(pid, root, {(): Fraction(1)})

    # -- bookkeeping -------------------------------------------------------

    def _new_obj(self, matching, qshift, hdeg, ones):
        oid = self._next
        self._next += 1
        self.obj[oid] = (matching, qshift, hdeg, ones)
        self.out[oid] = {}
        self.inc[oid] = set()
        return oid

    def _add_terms(self, src, tgt, terms):
        if not terms:
            return
        ent = self.out[src].setdefault(tgt, {})
        for dv, c in terms.items():
            nv = ent.get(dv, 0) + c
            if nv:
                ent[dv] = nv
            else:
                ent.pop(dv, None)
        if ent:
            self.inc[tgt].add(src)
        else:
            del self.out[src][tgt]
            self.inc[tgt].discard(src)

    def _drop(self, oid):
        for tgt in self.out.pop(oid):
            self.inc[tgt].discard(oid)
        for src in self.inc.pop(oid):
            self.out[src].pop(oid, None)
        del self.obj[oid]

    # -- the gluing kernel ---------------------------------------------------

    def _push(self, m1, m2, terms, sheets, src_pairs, tgt_pairs, consumed):
        """Transport an entry across a gluing step.

        m1, m2: current matchings (frontier after arc pull-in).  terms:
        {dotvec over _cycles(m1, m2): coeff}.  sheets: list of token tuples,
        each a chi = 1 sheet glued along one vertical line per token.
        src_pairs/tgt_pairs: smoothing pairs sewn into source/target.
        Returns (new m1, src circles, new m2, tgt circles, transported terms
        as {(src caps, tgt caps, dotvec): coeff}) where caps vectors later
        pick the delooped summand: cupping circle i with a plain (0) or
        dotted (1) disk on the source, capping with a dotted (0 -> q+1
        summand) or plain (1) disk on the target.
        """
        pieces = _cycles(m1, m2)
        piece_of = {}
        for i, cyc in enumerate(pieces):
            for p in cyc:
                piece_of[p] = ("p", i)
        dsu = _DSU()
        for si, toks in enumerate(sheets):
            key = ("s", si)
            for tk in toks:
                dsu.union(key, piece_of[tk])
        nm1, circ1 = _sew(m1, src_pairs, consumed)
        nm2, circ2 = _sew(m2, tgt_pairs, consumed)
        out_cycles = _cycles(nm1, nm2)

        comp_of = {}   # root -> component index
        comps = []     # per component: [n_pieces+sheets, n_token_gluings]
        roots = []
        for i in range(len(pieces)):
            r = dsu.find(("p", i))
            if r not in comp_of:
                comp_of[r] = len(comps)
                comps.append([0, 0, [], [], []])  # pieces+sheets, gluings, bnd, circ1, circ2
                roots.append(r)
            comps[comp_of[r]][0] += 1
        for si, toks in enumerate(sheets):
            r = dsu.find(("s", si))
            comps[comp_of[r]][0] += 1
            comps[comp_of[r]][1] += len(toks)
        for bi, cyc in enumerate(out_cycles):
            r = dsu.find(piece_of[min(cyc)])
            comps[comp_of[r]][2].append(bi)
        for ci_, cyc in enumerate(circ1):
            r = dsu.find(piece_of[min(cyc)])
            comps[comp_of[r]][3].append(ci_)
        for ci_, cyc in enumerate(circ2):
            r = dsu.find(piece_of[min(cyc)])
            comps[comp_of[r]][4].append(ci_)

        piece_comp = [comp_of[dsu.find(("p", i))] for i in range(len(pieces))]
        n1, n2 = len(circ1), len(circ2)
        result = {}
        for dv, coeff in terms.items():
            dots_base = [0] * len(comps)
            for i, dotted in enumerate(dv):
                dots_base[piece_comp[i]] += dotted
            for scaps in range(2 ** n1):
                for tcaps in range(2 ** n2):
                    dots = list(dots_base)
                    for i in range(n1):
                        if (scaps >> i) & 1:
                            dots[comp_of[dsu.find(piece_of[min(circ1[i])])]] += 1
                    for i in range(n2):
                        # cap to the q+1 summand carries a dot
                        if not (tcaps >> i) & 1:
                            dots[comp_of[dsu.find(piece_of[min(circ2[i])])]] += 1
                    total = coeff
                    per_comp = []
                    dead = False
                    for k, (npieces, ngluings, bnd, c1s, c2s) in enumerate(comps):
                        chi = npieces - ngluings + len(c1s) + len(c2s)
                        b = len(bnd)
                        genus = (2 - chi - b) // 2
                        if genus < 0 or (2 - chi - b) % 2:
                            raise AssertionError("inconsistent surface data")
                        exp = _expand(self.t, genus, dots[k], b)
                        if not exp:
                            dead = True
                            break
                        per_comp.append((bnd, exp))
                    if dead:
                        continue
                    # distribute the per-component expansions over out_cycles
                    partial = {(): total}
                    assign = {}
                    for bnd, exp in per_comp:
                        newpart = {}
                        for key, c in partial.items():
                            for dots_tuple, c2 in exp.items():
                                kk = key + tuple(zip(bnd, dots_tuple))
                                newpart[kk] = newpart.get(kk, 0) + c * c2
                        partial = newpart
                    for key, c in partial.items():
                        dvec = [0] * len(out_cycles)
                        for bi, dot in key:
                            dvec[bi] = dot
                        rkey = (scaps, tcaps, tuple(dvec))
                        nv = result.get(rkey, 0) + c
                        if nv:
                            result[rkey] = nv
                        else:
                            result.pop(rkey, None)
        return nm1, circ1, nm2, circ2, result

    # -- processing one crossing --------------------------------------------

    def _pulled(self, ci):
        """Pairs of tokens for arcs entering the scan at this crossing."""
        toks = [_tok(ci, slot) for slot in range(4)]
        pairs = []
        seen = set()
        for tk in toks:
            if tk in seen:
                continue
            other = self._token_partner[tk]
            if other == tk:
                raise AssertionError("degenerate arc")
            if other not in self.frontier and tk not in self.frontier:
                pairs.append((min(tk, other), max(tk, other)))
                seen.update((tk, other))
        return pairs

    def process(self, ci):
        sign = self.d.signs[ci]
        toks = [_tok(ci, slot) for slot in range(4)]
        smooth = {0: ((toks[0], toks[1]), (toks[2], toks[3])),
                  1: ((toks[0], toks[3]), (toks[1], toks[2]))}
        if sign == 1:
            dq = {0: 1, 1: 2}
            dh = {0: 0, 1: 1}
        else:
            dq = {0: -2, 1: -1}
            dh = {0: -1, 1: 0}
        pulled = self._pulled(ci)
        consumed = set(toks)

        old_objs = sorted(o for o in self.obj if o not in self.phantom)
        old_phantoms = sorted(self.phantom)
        new_ids = {}     # (oid, s, caps) -> new oid
        circles_of = {}  # (oid, s) -> circles
        for oid in old_objs:
            matching, qshift, hdeg, ones = self.obj[oid]
            ext = tuple(sorted(matching + tuple(pulled)))
            for s in (0, 1):
                nm, circles = _sew(ext, smooth[s], consumed)
                circles_of[(oid, s)] = circles
                for caps in range(2 ** len(circles)):
                    # cap bit 0: the {q+1} summand, 1: the {q-1} summand
                    qc = sum(1 if not (caps >> i) & 1 else -1
                             for i in range(len(circles)))
                    new_ids[(oid, s, caps)] = self._new_obj(
                        nm, qshift + dq[s] + qc, hdeg + dh[s], ones + s)
        new_phantom = {}
        phantom_sor = {}
        for pid in old_phantoms:
            colors, s_or_map, loop_colors = self.phantom[pid]
            s_or = s_or_map[ci]
            phantom_sor[pid] = s_or
            matching, qshift, hdeg, ones = self.obj[pid]
            ext = tuple(sorted(matching + tuple(pulled)))
            nm, circles = _sew(ext, smooth[s_or], consumed)
            new_phantom[pid] = self._new_obj(
                nm, qshift + dq[s_or] + len(circles), hdeg + dh[s_or], ones + s_or)

        # transported old entries and new saddles
        new_out = {}
        for src in old_objs:
            m1 = tuple(sorted(self.obj[src][0] + tuple(pulled)))
            # saddle: identity terms on (m1, m1), Koszul sign from processed 1s
            ones = self.obj[src][3]
            ident = {(0,) * len(_cycles(m1, m1)): (1 if ones % 2 == 0 else -1)}
            nm1, c1, nm2, c2, res = self._push(
                m1, m1, ident, [tuple(toks)], smooth[0], smooth[1], consumed)
            for (scaps, tcaps, dvec), coeff in res.items():
                a = new_ids[(src, 0, scaps)]
                b = new_ids[(src, 1, tcaps)]
                new_out.setdefault(a, {}).setdefault(b, {})
                dv = new_out[a][b]
                dv[dvec] = dv.get(dvec, 0) + coeff
            for tgt, terms in self.out[src].items():
                m2 = tuple(sorted(self.obj[tgt][0] + tuple(pulled)))
                # re-index dot vectors: pulled arcs interleave new 2-cycles
                # into the sorted component order
                old_cycles = _cycles(self.obj[src][0], self.obj[tgt][0])
                ext_cycles = _cycles(m1, m2)
                if len(ext_cycles) != len(old_cycles):
                    pos = {cyc: i for i, cyc in enumerate(ext_cycles)}
                    remap = [pos[cyc] for cyc in old_cycles]
                    nterms = {}
                    for dv, coeff in terms.items():
                        ndv = [0] * len(ext_cycles)
                        for i, dotted in enumerate(dv):
                            ndv[remap[i]] = dotted
                        nterms[tuple(ndv)] = coeff
                    terms = nterms
                for s in (0, 1):
                    sheets = [p for p in smooth[s]]
                    nm1, c1, nm2, c2, res = self._push(
                        m1, m2, terms, sheets, smooth[s], smooth[s], consumed)
                    for (scaps, tcaps, dvec), coeff in res.items():
                        a = new_ids[(src, s, scaps)]
                        b = new_ids[(tgt, s, tcaps)]
                        new_out.setdefault(a, {}).setdefault(b, {})
                        dv = new_out[a][b]
                        dv[dvec] = dv.get(dvec, 0) + coeff

        # transported phantom rows (the oriented branch only; phantom-side
        # circles are closed with plain disks, labels ride as dots)
        for pid in old_phantoms:
            colors, s_or_map, loop_colors = self.phantom[pid]
            s_or = phantom_sor[pid]
            m1 = tuple(sorted(self.obj[pid][0] + tuple(pulled)))
            for tgt, terms in sorted(self.out[pid].items()):
                m2 = tuple(sorted(self.obj[tgt][0] + tuple(pulled)))
                old_cycles = _cycles(self.obj[pid][0], self.obj[tgt][0])
                ext_cycles = _cycles(m1, m2)
                pos = {cyc: i for i, cyc in enumerate(ext_cycles)}
                remap = [pos[cyc] for cyc in old_cycles]
                nterms = {}
                for dv, coeff in terms.items():
                    ndv = [0] * len(ext_cycles)
                    for i, dotted in enumerate(dv):
                        ndv[remap[i]] = dotted
                    nterms[tuple(ndv)] = Fraction(coeff)
                for (x, y) in pulled:
                    k = pos[frozenset((x, y))]
                    sigma = 1 if colors[x] == 0 else -1
                    half = Fraction(1, 2)
                    nxt = {}
                    for dv, coeff in nterms.items():
                        nxt[dv] = nxt.get(dv, 0) + coeff * half
                        dv1 = dv[:k] + (dv[k] + 1,) + dv[k + 1:]
                        # a dot landing on an already dotted disk reduces
                        if dv1[k] >= 2:
                            if self.t:
                                dv1 = dv1[:k] + (0,) + dv1[k + 1:]
                            else:
                                continue
                        nxt[dv1] = nxt.get(dv1, 0) + sigma * coeff * half
                    nterms = {dv: c for dv, c in nxt.items() if c}
                sheets = [p for p in smooth[s_or]]
                nm1, c1, nm2, c2, res = self._push(
                    m1, m2, nterms, sheets, smooth[s_or], smooth[s_or], consumed)
                for (scaps, tcaps, dvec), coeff in res.items():
                    if scaps != 0:
                        continue
                    a = new_phantom[pid]
                    b = new_ids[(tgt, s_or, tcaps)]
                    new_out.setdefault(a, {}).setdefault(b, {})
                    dv = new_out[a][b]
                    dv[dvec] = dv.get(dvec, 0) + coeff

        for oid in old_objs + old_phantoms:
            self._drop(oid)
        self.phantom = {new_phantom[pid]: self.phantom[pid]
                        for pid in old_phantoms}
        for a, row in new_out.items():
            for b, terms in row.items():
                terms = {dv: c for dv, c in terms.items() if c}
                self._add_terms(a, b, terms)

        self.frontier |= {p for pair in pulled for p in pair}
        self.frontier -= consumed
        self.cancel_round()

    # -- cancellation ---------------------------------------------------------

    def _is_unit(self, src, tgt):
        if src in self.phantom:
            return False
        ent = self.out[src].get(tgt)
        if not ent or len(ent) != 1:
            return False
        (dv, c), = ent.items()
        if any(dv):
            return False
        om, oq = self.obj[src][0], self.obj[src][1]
        tm, tq = self.obj[tgt][0], self.obj[tgt][1]
        if om != tm or oq != tq:
            return False
        if self.ring == "Z":
            return c in (1, -1)
        return bool(c)

    def cancel_round(self):
        stack = sorted((a, b) for a in self.out for b in self.out[a]
                       if self._is_unit(a, b))
        stack.reverse()
        while stack:
            a, b = stack.pop()
            if a not in self.obj or b not in self.out.get(a, {}):
                continue
            if not self._is_unit(a, b):
                continue
            changed = self._cancel(a, b)
            for x, y in changed:
                if x in self.obj and y in self.out.get(x, {}) and self._is_unit(x, y):
                    stack.append((x, y))

    def _cancel(self, a, b):
        (dv, phi), = self.out[a][b].items()
        gamma = [(y, terms) for y, terms in self.out[a].items() if y != b]
        srcs = [(x, dict(self.out[x][b])) for x in sorted(self.inc[b]) if x != a]
        changed = []
        for x, exb in srcs:
            for y, eay in gamma:
                m_x = self.obj[x][0]
                m_a = self.obj[a][0]
                m_y = self.obj[y][0]
                corr = self._compose(m_x, m_a, m_y, exb, eay)
                if self.ring == "Z":
                    corr = {k: -v * phi for k, v in corr.items()}
                else:
                    corr = {k: Fraction(-v, 1) / phi for k, v in corr.items()}
                self._add_terms(x, y, corr)
                changed.append((x, y))
        self._drop(a)
        self._drop(b)
        return changed

    def _compose(self, m1, m2, m3, e12, e23):
        """Composite of entries across the middle matching m2 (point sets equal)."""
        p12 = _cycles(m1, m2)
        p23 = _cycles(m2, m3)
        of12 = {}
        for i, cyc in enumerate(p12):
            for p in cyc:
                of12[p] = i
        of23 = {}
        for i, cyc in enumerate(p23):
            for p in cyc:
                of23[p] = i
        dsu = _DSU()
        for (x, y) in m2:
            dsu.union(("a", of12[x]), ("b", of23[x]))
        out_cycles = _cycles(m1, m3)
        comp_of = {}
        comps = []
        for i in range(len(p12)):
            r = dsu.find(("a", i))
            if r not in comp_of:
                comp_of[r] = len(comps)
                comps.append([0, 0, []])
            comps[comp_of[r]][0] += 1
        for i in range(len(p23)):
            r = dsu.find(("b", i))
            if r not in comp_of:
                comp_of[r] = len(comps)
                comps.append([0, 0, []])
            comps[comp_of[r]][0] += 1
        for (x, y) in m2:
            comps[comp_of[dsu.find(("a", of12[x]))]][1] += 1
        for bi, cyc in enumerate(out_cycles):
            r = dsu.find(("a", of12[min(cyc)]))
            comps[comp_of[r]][2].append(bi)

        result = {}
        for dv1, c1 in e12.items():
            for dv2, c2 in e23.items():
                dots = [0] * len(comps)
                for i, dotted in enumerate(dv1):
                    dots[comp_of[dsu.find(("a", i))]] += dotted
                for i, dotted in enumerate(dv2):
                    dots[comp_of[dsu.find(("b", i))]] += dotted
                total = c1 * c2
                partial = {(): total}
                dead = False
                for k, (npieces, ngluings, bnd) in enumerate(comps):
                    chi = npieces - ngluings
                    b = len(bnd)
                    genus = (2 - chi - b) // 2
                    if genus < 0 or (2 - chi - b) % 2:
                        raise AssertionError("inconsistent composite surface")
                    exp = _expand(self.t, genus, dots[k], b)
                    if not exp:
                        dead = True
                        break
                    newpart = {}
                    for key, c in partial.items():
                        for dots_tuple, c3 in exp.items():
                            kk = key + tuple(zip(bnd, dots_tuple))
                            newpart[kk] = newpart.get(kk, 0) + c * c3
                    partial = newpart
                if dead:
                    continue
                for key, c in partial.items():
                    dvec = [0] * len(out_cycles)
                    for bi, dot in key:
                        dvec[bi] = dot
                    dvec = tuple(dvec)
                    nv = result.get(dvec, 0) + c
                    if nv:
                        result[dvec] = nv
                    else:
                        result.pop(dvec, None)
        return result

    # -- driving ---------------------------------------------------------------

    def run(self):
        remaining = set(range(self.d.n_crossings))
        while remaining:
            best = None
            for ci in sorted(remaining):
                contact = sum(1 for slot in range(4)
                              if _tok(ci, slot) in self.frontier
                              or self._token_partner[_tok(ci, slot)] in self.frontier)
                key = (-contact, ci)
                if best is None or key < best:
                    best = key
            ci = best[1]
            remaining.discard(ci)
            self.process(ci)
        return self

    def to_chain_complex(self):
        """Explicit complex, one V factor per crossingless loop tensored in.

        Returns (complex, tracked) where tracked lists, per phantom, the
        carried chain as (h, {gid: coeff}).
        """
        if self.frontier:
            raise AssertionError("scan incomplete: frontier not empty")
        loops = sum(1 for c in self.d.components if c.is_loop)
        cx = ChainComplex(ring=self.ring, graded=(self.t == 0))
        gid = {}
        for oid in sorted(self.obj):
            if oid in self.phantom:
                continue
            matching, qshift, hdeg, _ones = self.obj[oid]
            if matching:
                raise AssertionError("leftover open matching")
            for lab in range(2 ** loops):
                ql = sum(1 if not (lab >> i) & 1 else -1 for i in range(loops))
                gid[(oid, lab)] = cx.add_gen(hdeg, qshift + ql)
        for src in sorted(self.out):
            if src in self.phantom:
                continue
            for tgt, terms in sorted(self.out[src].items()):
                coeff = terms.get((), 0)
                if not coeff:
                    continue
                for lab in range(2 ** loops):
                    cx.add_entry(gid[(src, lab)], gid[(tgt, lab)], coeff)
        tracked = []
        half = Fraction(1, 2)
        for pid in sorted(self.phantom):
            _colors, _s_or, loop_colors = self.phantom[pid]
            vec = {}
            hdeg = None
            for tgt, terms in self.out[pid].items():
                coeff = terms.get((), 0)
                if not coeff:
                    continue
                hdeg = self.obj[tgt][2]
                for lab in range(2 ** loops):
                    c = Fraction(coeff)
                    for i in range(loops):
                        if not (lab >> i) & 1:
                            c *= half
                        else:
                            c *= half if loop_colors[i] == 0 else -half
                    if c:
                        vec[gid[(tgt, lab)]] = vec.get(gid[(tgt, lab)], 0) + c
            tracked.append((hdeg, {g: c for g, c in vec.items() if c}))
        return cx, tracked


def scan_complex(diagram, t, ring):
    """Build the (already reduced) cube complex by scanning."""
    cx, _tracked = ScanComplex(diagram, t, ring).run().to_chain_complex()
    return cx
