"""Smith normal form and ranks for small dense integer matrices.

Python integers are arbitrary precision, so pivot growth is a speed concern
only; pivoting on minimal absolute value keeps entries tame at the sizes the
homology pipeline produces after reduction.
"""

from __future__ import annotations

from fractions import Fraction


def smith_invariants(rows):
    """Invariant factors d1 | d2 | ... (positive, 1s included) of an integer matrix.

    `rows` is a list of lists; the input is not modified.
    """
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    invs = []
    top = 0
    while top < min(m, n):
        # find the nonzero entry of least absolute value in the working block
        piv = None
        best = None
        for i in range(top, m):
            for j in range(top, n):
                v = a[i][j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    piv = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if piv is None:
            break
        pi, pj = piv
        a[top], a[pi] = a[pi], a[top]
        for r in a:
            r[top], r[pj] = r[pj], r[top]
        while True:
            p = a[top][top]
            done = True
            for i in range(top + 1, m):
                if a[i][top] % p:
                    q = a[i][top] // p
                    for j in range(top, n):
                        a[i][j] -= q * a[top][j]
                    a[top], a[i] = a[i], a[top]
                    done = False
                    break
            if not done:
                continue
            for j in range(top + 1, n):
                if a[top][j] % p:
                    q = a[top][j] // p
                    for i in range(top, m):
                        a[i][j] -= q * a[i][top]
                    for r in a:
                        r[top], r[j] = r[j], r[top]
                    done = False
                    break
            if done:
                break
        p = a[top][top]
        for i in range(top + 1, m):
            if a[i][top]:
                q = a[i][top] // p
                for j in range(top, n):
                    a[i][j] -= q * a[top][j]
        for j in range(top + 1, n):
            if a[top][j]:
                q = a[top][j] // p
                for i in range(top, m):
                    a[i][j] -= q * a[i][top]
        invs.append(abs(p))
        top += 1
    # enforce divisibility d1 | d2 | ...
    from math import gcd
    changed = True
    while changed:
        changed = False
        for i in range(len(invs) - 1):
            if invs[i + 1] % invs[i]:
                g = gcd(invs[i], invs[i + 1])
                invs[i], invs[i + 1] = g, invs[i] * invs[i + 1] // g
                changed = True
    return invs


def integer_rank(rows):
    return len(smith_invariants(rows))


def rational_rank(rows):
    """Rank over Q by fraction-free Gaussian elimination."""
    a = [[Fraction(v) for v in r] for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    rank = 0
    col = 0
    while rank < m and col < n:
        piv = next((i for i in range(rank, m) if a[i][col]), None)
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pv = a[rank][col]
        for i in range(rank + 1, m):
            if a[i][col]:
                f = a[i][col] / pv
                for j in range(col, n):
                    a[i][j] -= f * a[rank][j]
        rank += 1
        col += 1
    return rank
