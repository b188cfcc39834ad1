"""Sparse cochain complexes, Gaussian reduction, homology, and filtration barcodes.

A complex stores generators with (homological degree, quantum degree) and a
sparse differential raising homological degree by one.  In graded mode every
entry connects equal quantum degrees; in filtered mode (the X^2 = 1
deformation over Q) entries never lower quantum degree and jumps are
multiples of 4.

Reduction is Gaussian cancellation of invertible entries.  Cancelling the
entry d(a) = phi*b + ... removes a, b and corrects only the differential
between their two degrees; in filtered mode pivots are taken globally
minimal in jump, which keeps the homotopy equivalences filtered in both
directions, so surviving generator levels are the filtration degrees of
homology (the barcode).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .snf import smith_invariants, rational_rank


@dataclass
class ChainComplex:
    ring: str                    # "Z" or "Q"
    graded: bool                 # True: entries preserve q
    hdeg: dict = field(default_factory=dict)   # gid -> h
    qdeg: dict = field(default_factory=dict)   # gid -> q
    out: dict = field(default_factory=dict)    # gid -> {gid2: coeff}, h -> h+1
    inc: dict = field(default_factory=dict)    # gid2 -> {gid: coeff}
    _next: int = 0

    def add_gen(self, h, q):
        g = self._next
        self._next += 1
        self.hdeg[g] = h
        self.qdeg[g] = q
        self.out[g] = {}
        self.inc[g] = {}
        return g

    def add_entry(self, src, tgt, coeff):
        if not coeff:
            return
        if self.hdeg[tgt] != self.hdeg[src] + 1:
            raise ValueError("differential must raise h by 1")
        jump = self.qdeg[tgt] - self.qdeg[src]
        if self.graded and jump != 0:
            raise ValueError("graded complex with nonzero q-jump")
        if not self.graded and (jump < 0 or jump % 4):
            raise ValueError("filtered entry with illegal jump %d" % jump)
        new = self.out[src].get(tgt, 0) + coeff
        if new:
            self.out[src][tgt] = new
            self.inc[tgt][src] = new
        else:
            self.out[src].pop(tgt, None)
            self.inc[tgt].pop(src, None)

    @property
    def n_gens(self):
        return len(self.hdeg)

    def gens_by_degree(self):
        by = {}
        for g, h in self.hdeg.items():
            by.setdefault(h, []).append(g)
        return by

    def check_d_squared(self):
        for g in self.hdeg:
            acc = {}
            for mid, c1 in self.out[g].items():
                for tgt, c2 in self.out[mid].items():
                    acc[tgt] = acc.get(tgt, 0) + c1 * c2
            if any(acc.values()):
                raise AssertionError("d^2 != 0 at generator %d" % g)
        return True

    # ------------------------------------------------------------------
    # Gaussian cancellation
    # ------------------------------------------------------------------

    def _invertible(self, coeff):
        if self.ring == "Z":
            return coeff in (1, -1)
        return bool(coeff)

    def cancel(self, a, b):
        """Cancel the invertible entry a -> b; corrects the block between the
        two degrees, deletes both generators, returns the changed pairs."""
        phi = self.out[a][b]
        gamma = [(y, c) for y, c in self.out[a].items() if y != b]
        srcs = [(x, c) for x, c in self.inc[b].items() if x != a]
        changed = []
        if self.ring == "Z":
            for x, cxb in srcs:
                f = cxb * phi  # phi is +-1, so this is cxb / phi
                for y, cay in gamma:
                    self.add_entry(x, y, -f * cay)
                    changed.append((x, y))
        else:
            for x, cxb in srcs:
                f = Fraction(cxb, 1) / phi
                for y, cay in gamma:
                    self.add_entry(x, y, -f * cay)
                    changed.append((x, y))
        self._drop(a)
        self._drop(b)
        return changed

    def _drop(self, g):
        for t in list(self.out[g]):
            del self.inc[t][g]
        for s in list(self.inc[g]):
            del self.out[s][g]
        del self.out[g]
        del self.inc[g]
        del self.hdeg[g]
        del self.qdeg[g]

    def _cancel_tracked(self, a, b, tracked):
        phi = self.out[a][b]
        ha = self.hdeg[a]
        gamma = [(y, c) for y, c in self.out[a].items() if y != b]
        for idx, (h, vec) in enumerate(tracked):
            if h == ha and a in vec:
                vec = dict(vec)
                vec.pop(a)
                tracked[idx] = (h, vec)
            elif h == ha + 1 and b in vec:
                vec = dict(vec)
                f = Fraction(vec.pop(b), 1) / phi
                for y, cay in gamma:
                    nv = vec.get(y, 0) - f * cay
                    if nv:
                        vec[y] = nv
                    else:
                        vec.pop(y, None)
                tracked[idx] = (h, vec)
        return self.cancel(a, b)

    def reduce(self, tracked=None, max_jump=None):
        """Cancel invertible entries, globally minimal jump first.

        tracked: optional list of (h, {gid: coeff}) chains carried through
        the homotopy equivalences (coefficients become Fractions over Q).
        max_jump: stop once only entries of larger jump remain (a graded
        reduction of a filtered complex uses max_jump=0).

        Jump-0 pivots are processed through a worklist; positive-jump pivots
        (filtered mode) by global minimum, which is what makes surviving
        levels the homology filtration degrees.
        """
        tracked = tracked if tracked is not None else []
        stack = [(a, b) for a in self.out for b in self.out[a]
                 if self.qdeg[b] == self.qdeg[a] and self._invertible(self.out[a][b])]
        stack.sort(reverse=True)
        while stack:
            a, b = stack.pop()
            if a not in self.out or b not in self.out.get(a, {}):
                continue
            if not self._invertible(self.out[a][b]) or self.qdeg[b] != self.qdeg[a]:
                continue
            for x, y in self._cancel_tracked(a, b, tracked):
                if (x in self.out and y in self.out[x]
                        and self.qdeg[y] == self.qdeg[x]
                        and self._invertible(self.out[x][y])):
                    stack.append((x, y))
        if self.graded or (max_jump is not None and max_jump <= 0):
            return tracked
        while True:
            best = None
            for a in self.out:
                qa = self.qdeg[a]
                for b, c in self.out[a].items():
                    if not self._invertible(c):
                        continue
                    jump = self.qdeg[b] - qa
                    if max_jump is not None and jump > max_jump:
                        continue
                    fill = (len(self.out[a]) - 1) * (len(self.inc[b]) - 1)
                    key = (jump, fill, a, b)
                    if best is None or key < best:
                        best = key
            if best is None:
                return tracked
            # over Q every correction has jump >= the (globally minimal)
            # pivot jump, so no smaller-jump entries can reappear
            self._cancel_tracked(best[2], best[3], tracked)

    # ------------------------------------------------------------------
    # homology
    # ------------------------------------------------------------------

    def homology(self):
        """Bigraded homology; Smith normal form over Z, ranks over Q."""
        gens = {}
        for g in self.hdeg:
            gens.setdefault((self.hdeg[g], self.qdeg[g]), []).append(g)
        for key in gens:
            gens[key].sort()
        ranks = {}      # (h, q) -> rank of d restricted to that block
        torsion = {}    # (h, q) -> invariant factors > 1 of the block map
        for (h, q), src in sorted(gens.items()):
            tgt = gens.get((h + 1, q), [])
            if not tgt:
                ranks[(h, q)] = 0
                continue
            tidx = {g: i for i, g in enumerate(tgt)}
            rows = [[0] * len(src) for _ in tgt]
            for j, g in enumerate(src):
                for t, c in self.out[g].items():
                    if self.qdeg[t] == q:
                        rows[tidx[t]][j] = c
            if self.ring == "Z":
                invs = smith_invariants(rows)
                ranks[(h, q)] = len(invs)
                tors = tuple(sorted(v for v in invs if v > 1))
                if tors:
                    torsion[(h + 1, q)] = tors
            else:
                ranks[(h, q)] = rational_rank(
                    [[Fraction(v) for v in row] for row in rows])
        groups = {}
        for (h, q), gs in gens.items():
            free = len(gs) - ranks.get((h, q), 0) - ranks.get((h - 1, q), 0)
            tors = torsion.get((h, q), ())
            if free or tors:
                groups[(h, q)] = (free, tors)
        for (h, q), tors in torsion.items():
            if (h, q) not in groups:
                groups[(h, q)] = (0, tors)
        return BigradedHomology(self.ring, groups)

    def barcode(self):
        """Fully reduce a filtered complex over Q: h -> sorted q levels."""
        if self.ring != "Q":
            raise ValueError("barcode requires Q coefficients")
        self.reduce()
        out = {}
        for g, h in self.hdeg.items():
            out.setdefault(h, []).append(self.qdeg[g])
        return {h: sorted(v) for h, v in out.items()}


@dataclass(frozen=True)
class BigradedHomology:
    ring: str
    groups: dict  # (h, q) -> (free rank, torsion orders tuple)

    def rank(self, h, q):
        return self.groups.get((h, q), (0, ()))[0]

    def torsion(self, h, q):
        return self.groups.get((h, q), (0, ()))[1]

    def support(self):
        return sorted(self.groups)

    def total_rank(self):
        return sum(r for r, _t in self.groups.values())

    def free_part(self):
        return {k: r for k, (r, _t) in sorted(self.groups.items()) if r}

    def poincare(self):
        """Sparse coefficient list [(h, q, rank), ...]."""
        return [(h, q, r) for (h, q), (r, _t) in sorted(self.groups.items()) if r]

    def euler_q(self):
        """Graded Euler characteristic: q -> sum_h (-1)^h rank."""
        out = {}
        for (h, q), (r, _t) in self.groups.items():
            if r:
                out[q] = out.get(q, 0) + (r if h % 2 == 0 else -r)
        return {q: c for q, c in sorted(out.items()) if c}

    def qh_range(self):
        """(min, max) of q - h over the free support (Ng bound data)."""
        vals = [q - h for (h, q), (r, _t) in self.groups.items() if r]
        if not vals:
            return None
        return (min(vals), max(vals))

    def to_json_dict(self, **extra):
        data = {
            "ring": self.ring,
            "groups": [
                {"h": h, "q": q, "rank": r, "torsion": list(t)}
                for (h, q), (r, t) in sorted(self.groups.items())
            ],
            "poincare": self.poincare(),
        }
        data.update(extra)
        return data

    def mirror_table(self):
        """Free part of the mirror: rank at (h, q) moves to (-h, -q);
        torsion at (h, q) moves to (1 - h, -q)."""
        groups = {}
        for (h, q), (r, t) in self.groups.items():
            if r:
                fr, ft = groups.get((-h, -q), (0, ()))
                groups[(-h, -q)] = (fr + r, ft)
            if t:
                fr, ft = groups.get((1 - h, -q), (0, ()))
                groups[(1 - h, -q)] = (fr, tuple(sorted(ft + t)))
        return BigradedHomology(self.ring, groups)
