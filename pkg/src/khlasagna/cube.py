"""Brute-force cube of resolutions: the oracle engine.

Enumerates all 2^c vertices of a diagram's cube, builds the explicit cochain
complex for a chosen Frobenius algebra with the standard shifts (homological
-n_-, quantum n_+ - 2n_-), and constructs canonical Lee cycles.  Exponential
by design; the scanning engine covers everything beyond the cap.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import LABEL_A, LABEL_B
from .complexes import ChainComplex
from . import linkdiag


class CubeCapExceeded(RuntimeError):
    """2^c exceeds the configured cap; use the scanning builder."""


def _smoothing_pairs(s):
    return (((0, 1), (2, 3)) if s == 0 else ((0, 3), (1, 2)))


def _token_edges(d):
    """Edges joining the two appearances of every arc."""
    app = {}
    for ci, x in enumerate(d.crossings):
        for slot, a in enumerate(x):
            app.setdefault(a, []).append((ci, slot))
    return [tuple(v) for v in app.values()]


class _DSU:
    def __init__(self):
        self.p = {}

    def find(self, x):
        p = self.p
        while p.setdefault(x, x) != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self.p[ry] = rx


def circles_at(d, v, arc_edges=None):
    """Circles of the resolution v: sorted tuple of frozensets of tokens,
    followed by one sentinel per crossingless loop component."""
    if arc_edges is None:
        arc_edges = _token_edges(d)
    dsu = _DSU()
    for e in arc_edges:
        if len(e) == 2:
            dsu.union(e[0], e[1])
    for ci in range(d.n_crossings):
        s = (v >> ci) & 1
        for (p, q) in _smoothing_pairs(s):
            dsu.union((ci, p), (ci, q))
    groups = {}
    for ci in range(d.n_crossings):
        for slot in range(4):
            t = (ci, slot)
            groups.setdefault(dsu.find(t), set()).add(t)
    circles = sorted((frozenset(g) for g in groups.values()), key=min)
    loops = [frozenset({("loop", i)}) for i, c in enumerate(d.components) if c.is_loop]
    return tuple(circles) + tuple(loops)


def build_cube_complex(d, spec, cap=4096):
    """Explicit cube complex of the oriented diagram for the given algebra.

    Raises CubeCapExceeded when 2^c exceeds cap (callers fall back to the
    scanning builder).
    """
    c = d.n_crossings
    if 2 ** c > cap:
        raise CubeCapExceeded(
            "2^%d cube vertices exceed cap %d; use the scanning builder" % (c, cap))
    n_plus = sum(1 for s in d.signs if s > 0)
    n_minus = c - n_plus
    arc_edges = _token_edges(d)

    cx = ChainComplex(ring=spec.ring, graded=spec.graded)
    gen_ids = {}   # (v, labels) -> gid
    circ = {}      # v -> circles

    for v in range(2 ** c):
        circles = circles_at(d, v, arc_edges)
        circ[v] = circles
        k = len(circles)
        hv = bin(v).count("1") - n_minus
        base_q = bin(v).count("1") + n_plus - 2 * n_minus
        for lab in range(2 ** k):
            labels = tuple((lab >> i) & 1 for i in range(k))
            q = base_q + sum(1 if x == 0 else -1 for x in labels)
            gen_ids[(v, labels)] = cx.add_gen(hv, q)

    for v in range(2 ** c):
        circles = circ[v]
        index_of = {cset: i for i, cset in enumerate(circles)}
        ones_below = 0
        for ci in range(c):
            if (v >> ci) & 1:
                continue
            sign = 1 if bin(v & ((1 << ci) - 1)).count("1") % 2 == 0 else -1
            v2 = v | (1 << ci)
            circles2 = circ[v2]
            index_of2 = {cset: i for i, cset in enumerate(circles2)}
            touched = [i for i, cset in enumerate(circles)
                       if any(t[0] == ci for t in cset if t[0] != "loop")]
            touched2 = [i for i, cset in enumerate(circles2)
                        if any(t[0] == ci for t in cset if t[0] != "loop")]
            # stable circles map across by identical token sets
            carry = {i: index_of2[cset] for i, cset in enumerate(circles)
                     if i not in touched}
            k, k2 = len(circles), len(circles2)
            for lab in range(2 ** k):
                labels = tuple((lab >> i) & 1 for i in range(k))
                src = gen_ids[(v, labels)]
                if len(touched) == 2:        # merge
                    x, y = labels[touched[0]], labels[touched[1]]
                    prods = spec.multiply(x, y)
                    t2 = touched2[0]
                    for z, coeff in prods.items():
                        out = [0] * k2
                        for i, j in carry.items():
                            out[j] = labels[i]
                        out[t2] = z
                        cx.add_entry(src, gen_ids[(v2, tuple(out))], sign * coeff)
                else:                        # split
                    x = labels[touched[0]]
                    ta, tb = touched2
                    for (za, zb), coeff in spec.comultiply(x).items():
                        out = [0] * k2
                        for i, j in carry.items():
                            out[j] = labels[i]
                        out[ta], out[tb] = za, zb
                        cx.add_entry(src, gen_ids[(v2, tuple(out))], sign * coeff)
    return cx, gen_ids


def kauffman_euler(d):
    """Graded Euler characteristic of the cube directly from the state sum:
    q -> sum_v (-1)^{|v|-n_-} q^{|v|+n_+-2n_-} (q+1/q)^{#circles}.

    Independent of the differential and homology code; equals the Jones
    polynomial of the oriented link in its unnormalized form.
    """
    c = d.n_crossings
    n_plus = sum(1 for s in d.signs if s > 0)
    n_minus = c - n_plus
    arc_edges = _token_edges(d)
    out = {}
    for v in range(2 ** c):
        k = len(circles_at(d, v, arc_edges))
        ones = bin(v).count("1")
        sgn = -1 if (ones - n_minus) % 2 else 1
        base = ones + n_plus - 2 * n_minus
        # (q + q^-1)^k
        from math import comb
        for i in range(k + 1):
            q = base + k - 2 * i
            out[q] = out.get(q, 0) + sgn * comb(k, i)
    return {q: v for q, v in sorted(out.items()) if v}


# ---------------------------------------------------------------------------
# canonical Lee cycles
# ---------------------------------------------------------------------------

def oriented_vertex(d, flips=()):
    """Cube vertex of the oriented resolution after reversing `flips`."""
    rd = linkdiag.reverse_components(d, flips) if flips else d
    v = 0
    for ci, s in enumerate(rd.signs):
        if s == -1:
            v |= 1 << ci
    return v, rd


def seifert_coloring(rd):
    """2-color the Seifert graph of the oriented diagram: circle index -> 0/1.

    Circles joined by a crossing get opposite colors (the cocycle condition
    for canonical Lee labels); each connected component's lowest circle gets
    color 0.  Raises if the graph is not bipartite, which cannot happen for
    genuine planar diagrams.
    """
    v, _ = oriented_vertex(rd)
    circles = circles_at(rd, v)
    index = {}
    for i, cset in enumerate(circles):
        for t in cset:
            index[t] = i
    adj = {i: set() for i in range(len(circles))}
    for ci in range(rd.n_crossings):
        ends = {index[(ci, slot)] for slot in range(4)}
        if len(ends) == 2:
            a, b = sorted(ends)
            adj[a].add(b)
            adj[b].add(a)
        elif len(ends) != 1:
            raise AssertionError("crossing meets %d circles" % len(ends))
        else:
            raise AssertionError(
                "oriented resolution has a self-adjacent circle (non-bipartite)")
    color = {}
    for start in range(len(circles)):
        if start in color:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            idx = queue.pop()
            for nb in sorted(adj[idx]):
                if nb in color:
                    if color[nb] == color[idx]:
                        raise AssertionError("Seifert graph is not bipartite")
                else:
                    color[nb] = 1 - color[idx]
                    queue.append(nb)
    return circles, color


def canonical_cycle_chain(d, flips, gen_ids, conjugate=False):
    """Chain of the canonical Lee cycle x_o (o = reverse `flips`) in the cube
    complex of d; `conjugate` swaps the two labels.

    Returns (hdeg, {gid: Fraction}).  Labels a/b expand through the basis
    {1, X}; the scalar normalization is projective by design.
    """
    v, rd = oriented_vertex(d, flips)
    circles, color = seifert_coloring(rd)
    n_minus = sum(1 for s in d.signs if s < 0)
    hdeg = bin(v).count("1") - n_minus
    k = len(circles)
    vec = {}
    for lab in range(2 ** k):
        labels = tuple((lab >> i) & 1 for i in range(k))
        coeff = Fraction(1)
        for i, x in enumerate(labels):
            col = color[i] ^ (1 if conjugate else 0)
            base = LABEL_A if col == 0 else LABEL_B
            coeff *= base[x]
        if coeff:
            vec[gen_ids[(v, labels)]] = coeff
    return hdeg, vec
