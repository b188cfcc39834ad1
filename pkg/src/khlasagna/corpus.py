"""Bundled diagrams: the small links every formula and test consumes.

The positive twist-knot diagram used for the exotic pair is the mirror of
the standard 5-crossing table code of the knot 5_2 (verified against its
Jones polynomial in the test suite); `NEG52_POS7` is the same diagram with
an extra pair of positive kinks (writhe 7, matching the framing-form
example M = -1 - 7 + 7).  The slice pretzel P(3,-3,-8) is generated by the
pretzel builder below.
"""

from __future__ import annotations

from . import linkdiag
from .linkdiag import (CableSpec, add_kinks, disjoint_union, mirror,
                       parse_braid, parse_pd, unknot, unlink)

# knot table code for 5_2 (all-negative, writhe -5)
PD_52 = "PD[X(1,4,2,5), X(3,8,4,9), X(5,10,6,1), X(9,6,10,7), X(7,2,8,3)]"


def pretzel(*twists):
    """Standard pretzel diagram P(p_1, ..., p_k): vertical bands of |p_i|
    crossings (left strand over for p_i > 0), tops and bottoms chained."""
    k = len(twists)
    if k == 0 or all(p == 0 for p in twists):
        raise ValueError("degenerate pretzel")
    next_id = [1]

    def fresh():
        next_id[0] += 1
        return next_id[0] - 1

    a = {}
    b = {}
    for i, p in enumerate(twists):
        n = abs(p)
        for j in range(n + 1):
            a[(i, j)] = fresh()
            b[(i, j)] = fresh()
    # chain the tops and bottoms: right side of band i = left side of band i+1
    ident = {}
    for i in range(k):
        ni = abs(twists[i])
        nj = abs(twists[(i + 1) % k])
        ident[b[(i, 0)]] = a[((i + 1) % k, 0)]
        ident[b[(i, ni)]] = a[((i + 1) % k, nj)]

    def res(x):
        seen = set()
        while x in ident:
            if x in seen:
                return min(seen)
            seen.add(x)
            x = ident[x]
        return x

    crossings = []
    for i, p in enumerate(twists):
        for j in range(abs(p)):
            lt, rt = a[(i, j)], b[(i, j)]
            lb, rb = a[(i, j + 1)], b[(i, j + 1)]
            if p > 0:
                crossings.append((rt, lt, lb, rb))
            else:
                crossings.append((lt, lb, rb, rt))
    crossings = [tuple(res(x) for x in xx) for xx in crossings]
    # relabel arcs contiguously from 1
    arcs = sorted({x for xx in crossings for x in xx})
    rel = {x: i + 1 for i, x in enumerate(arcs)}
    crossings = [tuple(rel[x] for x in xx) for xx in crossings]
    return linkdiag.build_unoriented(crossings, 0, None,
                                     source="pretzel%s" % (tuple(twists),))


def torus_braid(p, q):
    """T(p, q) as the closure of (sigma_1 ... sigma_{p-1})^q; q < 0 mirrors."""
    if p < 1:
        raise ValueError("p >= 1 required")
    word = list(range(1, p)) * abs(q)
    if q < 0:
        word = [-j for j in word]
    return parse_braid(word, max(p, 2) if p > 1 else 2, None) if p > 1 else unknot(0)


def d_braid(n, m, i):
    """Closure of (sigma_1 ... sigma_{n-1})^m sigma_1 ... sigma_i."""
    if not (0 <= i <= n - 1):
        raise ValueError("need 0 <= i <= n-1")
    word = list(range(1, n)) * m + list(range(1, i + 1))
    return parse_braid(word, n)


def _diagrams():
    tr = parse_braid([1, 1, 1], 2)
    out = {
        "empty": linkdiag.empty_diagram(),
        "unknot": unknot(0),
        "unlink2": unlink(2),
        "unlink3": unlink(3),
        "hopf+": parse_braid([1, 1], 2),
        "hopf-": parse_braid([-1, -1], 2),
        "trefoid_rh": tr,
        "trefoil": tr,
        "trefoil_lh": mirror(tr),
        "fig8": parse_braid([1, -2, 1, -2], 3),
        "5_2": parse_pd(PD_52),
        "-5_2": mirror(parse_pd(PD_52)),
        "-5_2_w7": add_kinks(mirror(parse_pd(PD_52)), [2]),
        "P(3,-3,-8)": pretzel(3, -3, -8),
        "-P(3,-3,-8)": mirror(pretzel(3, -3, -8)),
        "T(2,5)": parse_braid([1] * 5, 2),
        "T(2,7)": parse_braid([1] * 7, 2),
        "-T(2,3)": mirror(tr),
        "-T(2,5)": parse_braid([-1] * 5, 2),
        "T(3,4)": parse_braid([1, 2] * 4, 3),
        "trefoil+unknot": disjoint_union(tr, unknot(0)),
        "D(3,2,1)": d_braid(3, 2, 1),
        "D(4,2,2)": d_braid(4, 2, 2),
        "D(4,3,1)": d_braid(4, 3, 1),
    }
    return out


_CACHE = None


def diagrams():
    global _CACHE
    if _CACHE is None:
        _CACHE = _diagrams()
    return _CACHE


def get(name):
    try:
        return diagrams()[name]
    except KeyError:
        raise KeyError("unknown bundled diagram %r" % name) from None


def small_corpus(max_crossings=8):
    """Bundled diagrams small enough for brute-force oracles."""
    return {k: v for k, v in diagrams().items()
            if v.n_crossings <= max_crossings and k != "trefoid_rh"}


# paper-cited knot facts shipped with the package (see facts module for the
# record grammar): maximal Thurston-Bennequin certificates, concordances,
# sliceness
BUNDLED_FACTS = """\
# kind | subject | value | source
tb-lower-bound | mirror(unknot) | -1 | maximal tb of the unknot is -1
tb-lower-bound | mirror(trefoil_lh) | 1 | right-handed trefoil has TB = 1
tb-lower-bound | mirror(T(2,3)) | -6 | TB(-T(p,q)) = -pq
tb-lower-bound | mirror(T(2,5)) | -10 | TB(-T(p,q)) = -pq
tb-lower-bound | mirror(T(2,7)) | -14 | TB(-T(p,q)) = -pq
slice | P(3,-3,-8) | 0 | P(3,-3,-8) is a ribbon knot
concordance | P(3,-3,-8) ~ unknot | 1 | slice knots are concordant to the unknot
genus-upper-bound | X_-1(P(3,-3,-8));1 | 0 | slice disk capped with the handle core
"""
