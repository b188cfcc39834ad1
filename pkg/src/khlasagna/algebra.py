"""The rank-2 Frobenius algebras driving the cube TQFT.

Both theories live on the free module with basis {1, X}: the graded one has
X^2 = 0, the filtered deformation has X^2 = 1 (coefficients in Q).  Quantum
degrees are deg(1) = +1, deg(X) = -1 per circle, in the classical
normalization used throughout the homology engines.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class FrobeniusSpec:
    """Structure constants for Z[X]/(X^2 - t) with t in {0, 1}.

    ring: "Z" or "Q".  graded: True for the t = 0 theory (the differential
    preserves quantum degree), False for the filtered deformation (entries
    raise it by multiples of 4).
    """
    ring: str
    t: int

    def __post_init__(self):
        if self.ring not in ("Z", "Q"):
            raise ValueError("ring must be 'Z' or 'Q'")
        if self.t not in (0, 1):
            raise ValueError("t must be 0 (graded) or 1 (filtered deformation)")
        if self.t == 1 and self.ring != "Q":
            raise ValueError("the filtered deformation is implemented over Q")

    @property
    def graded(self):
        return self.t == 0

    # basis index 0 = "1", index 1 = "X"; degrees +1 / -1
    DEGREES = (1, -1)

    def multiply(self, x, y):
        """m(x (x) y) as {basis index: coeff}."""
        if x == 0 and y == 0:
            return {0: 1}
        if x == 1 and y == 1:
            return {0: self.t} if self.t else {}
        return {1: 1}

    def comultiply(self, x):
        """Delta(x) as {(i, j): coeff}."""
        if x == 0:
            return {(0, 1): 1, (1, 0): 1}
        out = {(1, 1): 1}
        if self.t:
            out[(0, 0)] = 1
        return out

    def counit(self, x):
        return 1 if x == 1 else 0

    def check_axioms(self):
        """Exhaustively verify associativity and Frobenius compatibility."""
        m, D = self.multiply, self.comultiply

        def mul_elt(e1, e2):
            out = {}
            for x, c1 in e1.items():
                for y, c2 in e2.items():
                    for z, c3 in m(x, y).items():
                        out[z] = out.get(z, 0) + c1 * c2 * c3
            return {k: v for k, v in out.items() if v}

        for a in (0, 1):
            for b in (0, 1):
                for c in (0, 1):
                    lhs = mul_elt(mul_elt({a: 1}, {b: 1}), {c: 1})
                    rhs = mul_elt({a: 1}, mul_elt({b: 1}, {c: 1}))
                    if lhs != rhs:
                        raise AssertionError("multiplication not associative")
        # Frobenius: Delta(xy) = (x (x) 1) Delta(y) = Delta(x) (1 (x) y)
        for a in (0, 1):
            for b in (0, 1):
                lhs = {}
                for z, c in self.multiply(a, b).items():
                    for (i, j), c2 in D(z).items():
                        lhs[(i, j)] = lhs.get((i, j), 0) + c * c2
                rhs = {}
                for (i, j), c in D(b).items():
                    for z, c2 in m(a, i).items():
                        rhs[(z, j)] = rhs.get((z, j), 0) + c * c2
                lhs = {k: v for k, v in lhs.items() if v}
                rhs = {k: v for k, v in rhs.items() if v}
                if lhs != rhs:
                    raise AssertionError("Frobenius compatibility fails")
        # counit picks out the X coefficient of every product with 1
        if self.counit(0) != 0 or self.counit(1) != 1:
            raise AssertionError("counit must satisfy eps(1)=0, eps(X)=1")
        return True


KHOVANOV = FrobeniusSpec("Z", 0)
KHOVANOV_Q = FrobeniusSpec("Q", 0)
LEE = FrobeniusSpec("Q", 1)

# canonical idempotents a = (1+X)/2, b = (1-X)/2 in the Lee algebra,
# written in the {1, X} basis
LABEL_A = (Fraction(1, 2), Fraction(1, 2))
LABEL_B = (Fraction(1, 2), Fraction(-1, 2))
