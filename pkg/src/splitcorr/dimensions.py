"""Dimensions of eigen-abelian subvarieties as affine forms in (g_X - 1), (g_Y - 1).

Two independent routes:

* :func:`dim_table` solves the hand-assembled linear system for each 3 <= n <= 10;
* :func:`rederive_odd` builds the trace equations for any odd n from the
  a-coefficient recursion and the diagonal intersection numbers.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .correspondence import Check, a_table, theorem1_product, theorem2_products
from .exactalg import AffineExpr, RatMatrix, integer_roots, solve_linear

GX = AffineExpr(1, 0, 0)  # g_X - 1
GY = AffineExpr(0, 1, 0)  # g_Y - 1
ONE = AffineExpr(0, 0, 1)

WHOLE, P, B = "whole", "P", "B"
_PREFIX = {WHOLE: "d", P: "d", B: "e"}


def genus(n, which) -> AffineExpr:
    """Genus of a component of the lifting curve (``Ctilde_i``) or of its quotient (``C_i``)."""
    if which == "Ctilde_i":
        if n < 3:
            raise ValueError(f"need n >= 3, got {n}")
        scale = 2 ** (n - 3)
    elif which == "C_i":
        if n < 4 or n % 2:
            raise ValueError(f"C_i needs even n >= 4, got {n}")
        scale = 2 ** (n - 4)
    else:
        raise ValueError(f"unknown curve {which!r}; expected 'Ctilde_i' or 'C_i'")
    return (GX - GY * (n - 4)) * scale + ONE


def ramification_degree(n) -> AffineExpr:
    """deg R = 2g_X - 2 - n(2g_Y - 2)."""
    return GX * 2 - GY * (2 * n)


# -- trace ledger (odd n) -----------------------------------------------------


@dataclass(frozen=True)
class TraceLedger:
    """Diagonal intersections with D^l and analytic traces of D^l for l = 0..L."""

    n: int
    diagonal: dict  # l -> Delta . D^l
    traces: dict  # l -> tr_a(D^l)

    @property
    def top(self):
        return max(self.traces)


def _flips(n, ell):
    return ell if ell % 2 == 0 else n - ell


def _diagonal_flip(n, ell) -> AffineExpr:
    """Delta . E_l, where E_l flips _flips(n, l) coordinates of a fiber point."""
    f = _flips(n, ell)
    if f == 0:
        return ONE * 2 - genus(n, "Ctilde_i") * 2
    if f == 2:
        return ramification_degree(n) * 2 ** (n - 3)
    return AffineExpr()


def trace_ledger(n, L) -> TraceLedger:
    """Expand Delta . D^l through D^l = sum_j a^l_j D^j + l! E_l, for 0 <= l <= L <= (n+1)/2."""
    if n % 2 == 0 or n < 3:
        raise ValueError(f"expected odd n >= 3, got {n}")
    table = a_table(n)
    if not 0 <= L <= table.top:
        raise ValueError(f"power {L} out of range 0..{table.top} for n={n}")
    diagonal = {}
    for ell in range(L + 1):
        acc = _diagonal_flip(n, ell) * _factorial(ell)
        for j in range(ell):
            a = table[ell, j]
            if a:
                acc = acc + diagonal[j] * a
        diagonal[ell] = acc
    traces = {ell: ONE * n**ell - diagonal[ell] / 2 for ell in diagonal}
    return TraceLedger(n, diagonal, traces)


def _factorial(m):
    out = 1
    for i in range(2, m + 1):
        out *= i
    return out


# -- tables -------------------------------------------------------------------


@dataclass
class DimTable:
    """Dimension per (component, eigenvalue); ``extra`` holds unknowns outside the spectrum."""

    n: int
    entries: dict
    extra: dict = field(default_factory=dict)

    def get(self, component, lam):
        return self.entries[(component, lam)]

    def components(self):
        return sorted({c for c, _ in self.entries})

    def eigenvalues(self, component):
        return sorted(lam for c, lam in self.entries if c == component)

    def component_sum(self, component) -> AffineExpr:
        return sum((v for (c, _), v in self.entries.items() if c == component), AffineExpr())

    def weighted_sum(self, components, power=1) -> AffineExpr:
        return sum((v * lam**power for (c, lam), v in self.entries.items() if c in components), AffineExpr())

    @staticmethod
    def label(component, lam):
        return f"{_PREFIX[component]}_{lam}"

    def to_json(self):
        out = {}
        for (c, lam) in sorted(self.entries, key=lambda key: (key[0] == B, key[1])):
            out[self.label(c, lam)] = self.entries[(c, lam)].to_json()
        return out


def _known(n):
    """Dimensions fixed by the pullback of JY and the image of the Prym of X~ -> X."""
    if n % 2:
        return {(WHOLE, n): GY + ONE, (WHOLE, -n + 2): GX}
    return {(B, comb(n, 2)): GY + ONE, (P, -(n - 1) * (n - 4) // 2): GX}


# Each system: list of unknown keys, then rows (coefficients over the unknowns
# and the knowns, right-hand side).  Knowns are moved to the right.

def _systems(n):
    g_big = genus(n, "Ctilde_i")
    if n == 3:
        return [], []
    if n == 5:
        return [(WHOLE, 1)], [({(WHOLE, -3): 1, (WHOLE, 1): 1, (WHOLE, 5): 1}, g_big)]
    if n == 7:
        unknowns = [(WHOLE, -1), (WHOLE, 3)]
        keys = [(WHOLE, lam) for lam in (-5, -1, 3, 7)]
        return unknowns, [
            ({k: 1 for k in keys}, g_big),
            ({k: k[1] for k in keys}, ONE * 7),
        ]
    if n == 9:
        unknowns = [(WHOLE, -3), (WHOLE, 1), (WHOLE, 5)]
        keys = [(WHOLE, lam) for lam in (-7, -3, 1, 5, 9)]
        return unknowns, [
            ({k: 1 for k in keys}, g_big),
            ({k: k[1] for k in keys}, ONE * 9),
            ({k: k[1] ** 2 for k in keys}, GX * (7 * 64) - GY * (27 * 64) + ONE * 81),
        ]
    g_small = genus(n, "C_i")
    if n == 4:
        return [(B, -2)], [({(B, -2): 1, (B, 6): 1}, g_small)]
    if n == 6:
        return [(P, 3), (B, -1)], [
            ({(P, -5): 1, (P, 3): 1}, g_small - ONE),
            ({(B, -1): 1, (B, 15): 1}, g_small),
        ]
    if n == 8:
        spur = (P, -16)
        unknowns = [spur, (P, 2), (B, -4), (B, 4)]
        p_keys = [spur, (P, -14), (P, 2)]
        b_keys = [(B, -4), (B, 4), (B, 28)]
        return unknowns, [
            ({k: 1 for k in p_keys + b_keys}, g_big),
            ({k: 1 for k in b_keys}, g_small),
            ({k: k[1] for k in p_keys + b_keys}, ONE * 28),
            # trace of the quotient correspondence; the system is singular without it
            ({k: k[1] for k in b_keys}, _quotient_trace(8)),
        ]
    if n == 10:
        unknowns = [(P, -3), (P, 5), (B, -3), (B, 13)]
        p_keys = [(P, -27), (P, -3), (P, 5)]
        b_keys = [(B, -3), (B, 13), (B, 45)]
        return unknowns, [
            ({k: 1 for k in p_keys + b_keys}, g_big),
            ({k: 1 for k in b_keys}, g_small),
            ({k: k[1] for k in p_keys + b_keys}, ONE * 45),
            ({k: k[1] for k in b_keys}, _quotient_trace(10)),
        ]
    raise ValueError(f"dimension tables cover 3 <= n <= 10, got {n}")


def _quotient_trace(n) -> AffineExpr:
    """tr_a of the correspondence on C_i for even n >= 6: C(n,2) - 2^(n-4)((g_X-1) - n(g_Y-1))."""
    return ONE * comb(n, 2) - (GX - GY * n) * 2 ** (n - 4)


def _solve(unknowns, rows, known):
    if not unknowns:
        return {}
    matrix, rhs = [], []
    for coeffs, value in rows:
        for key, c in coeffs.items():
            if key in known:
                value = value - known[key] * c
        matrix.append([Fraction(coeffs.get(u, 0)) for u in unknowns])
        rhs.append(value)
    sol = solve_linear(RatMatrix.from_rows(matrix), rhs)
    return dict(zip(unknowns, sol))


def dim_table(n) -> DimTable:
    """Solve the per-n linear system with the two known dimensions substituted."""
    if not 3 <= n <= 10:
        raise ValueError(f"dimension tables cover 3 <= n <= 10, got {n}")
    known = _known(n)
    unknowns, rows = _systems(n)
    solved = _solve(unknowns, rows, known)
    entries = dict(known)
    extra = {}
    for key, val in solved.items():
        if n == 8 and key == (P, -16):
            extra[key] = val
        else:
            entries[key] = val
    return DimTable(n, entries, extra)


def rederive_odd(n) -> DimTable:
    """Odd-n table from the product roots, the trace ledger and the two known dimensions."""
    if n % 2 == 0 or n < 3:
        raise ValueError(f"expected odd n >= 3, got {n}")
    k = (n - 1) // 2
    lams = integer_roots(theorem1_product(n))
    known = _known(n)
    unknowns = [(WHOLE, lam) for lam in lams if (WHOLE, lam) not in known]
    ledger = trace_ledger(n, max(k - 2, 0))
    keys = [(WHOLE, lam) for lam in lams]
    rows = [({key: key[1] ** ell for key in keys}, ledger.traces[ell]) for ell in range(len(unknowns))]
    solved = _solve(unknowns, rows, known)
    return DimTable(n, {**known, **solved})


def spectrum_keys(n):
    """(component, eigenvalue) pairs predicted by the factorized equations."""
    if n % 2:
        return sorted((WHOLE, lam) for lam in integer_roots(theorem1_product(n)))
    b_prod, p_prod = theorem2_products(n)
    return sorted([(B, lam) for lam in integer_roots(b_prod)] + [(P, lam) for lam in integer_roots(p_prod)])


def dim_consistency(n, table: DimTable):
    """Sum and trace identities the table must satisfy; returns a list of checks."""
    checks = []

    def eq(name, got, want):
        checks.append(Check(name, got == want, f"{got} vs {want}"))

    if n % 2:
        eq("dims.sum_is_genus", table.component_sum(WHOLE), genus(n, "Ctilde_i"))
        ledger = trace_ledger(n, 1)
        eq("dims.first_trace", table.weighted_sum({WHOLE}), ledger.traces[1])
    else:
        g_small = genus(n, "C_i")
        eq("dims.P_sum", table.component_sum(P), g_small - ONE)
        eq("dims.B_sum", table.component_sum(B), g_small)
        if n >= 6:
            eq("dims.full_trace", table.weighted_sum({P, B}), ONE * comb(n, 2))
            eq("dims.quotient_trace", table.weighted_sum({B}), _quotient_trace(n))
    for key, val in _known(n).items():
        present = key in table.entries
        checks.append(Check(f"dims.known_{table.label(*key)}", present and table.entries[key] == val,
                            str(table.entries.get(key))))
    for key, val in table.extra.items():
        checks.append(Check(f"dims.extra_{table.label(*key)}_vanishes", val.is_zero(), str(val)))
    return checks
