"""Exact linear algebra over the integers, the rationals, and GF(2).

Everything in this module is deliberately dependency-free: admissibility of
a diagram is a question about signs of integer vectors, so all arithmetic
must be exact.  Matrices are plain lists of lists of ints, GF(2) rows are
Python ints used as bitmasks.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import CapExceeded


# ---------------------------------------------------------------------------
# Integer matrices: column echelon form with unimodular transform
# ---------------------------------------------------------------------------

def _column_echelon(mat):
    """Bring an integer matrix to column echelon form.

    Returns (H, U, pivots) with mat . U = H (H, U column-operated copies,
    U unimodular) and pivots a list of (row, col) positions.  Columns of H
    beyond len(pivots) are zero.
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    H = [list(row) for row in mat]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    col = 0
    pivots = []

    def colop(j1, j2, a, b, c, d):
        # (col j1, col j2) <- (a*j1 + b*j2, c*j1 + d*j2), ad - bc = +-1
        for M in (H, U):
            for row in M:
                v1, v2 = row[j1], row[j2]
                row[j1] = a * v1 + b * v2
                row[j2] = c * v1 + d * v2

    for row in range(m):
        pivot = None
        for j in range(col, n):
            if H[row][j] != 0:
                pivot = j
                break
        if pivot is None:
            continue
        if pivot != col:
            for M in (H, U):
                for r in M:
                    r[col], r[pivot] = r[pivot], r[col]
        for j in range(col + 1, n):
            if H[row][j] == 0:
                continue
            a, b = H[row][col], H[row][j]
            g, x, y = _xgcd(a, b)
            # (col, j) <- (x*col + y*j, -(b/g)*col + (a/g)*j): pivot g, 0
            colop(col, j, x, y, -(b // g), a // g)
        if H[row][col] < 0:
            for M in (H, U):
                for r in M:
                    r[col] = -r[col]
        pivots.append((row, col))
        col += 1
        if col == n:
            break
    return H, U, pivots


def _xgcd(a, b):
    """Extended gcd: returns (g, x, y) with a*x + b*y = g > 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class PreparedSystem:
    """Column echelon form of an integer matrix, reusable across many
    right-hand sides (solving A x = b for each generator pair reuses the
    same A)."""

    def __init__(self, mat, ncols=None):
        self.m = len(mat)
        self.n = len(mat[0]) if self.m else (ncols or 0)
        if self.m:
            self.H, self.U, self.pivots = _column_echelon(mat)
            self.Hcols = [[self.H[i][j] for i in range(self.m)]
                          for j in range(self.n)]
        else:
            self.H = self.U = None
            self.pivots = []

    def solve(self, rhs):
        """One integer solution of mat . x = rhs, or None."""
        if self.m == 0:
            return [0] * self.n
        y = [0] * self.n
        residual = list(rhs)
        for row, col in self.pivots:
            val = residual[row]
            p = self.H[row][col]
            if val % p != 0:
                return None
            y[col] = val // p
            if val:
                hc = self.Hcols[col]
                q = y[col]
                for i in range(self.m):
                    if hc[i]:
                        residual[i] -= q * hc[i]
        if any(residual):
            return None
        n = self.n
        U = self.U
        used = [j for j in range(n) if y[j]]
        return [sum(U[i][j] * y[j] for j in used) for i in range(n)]

    def kernel(self):
        n = self.n
        if self.m == 0:
            return [[1 if i == j else 0 for j in range(n)]
                    for i in range(n)]
        rank = len(self.pivots)
        return [[self.U[i][j] for i in range(n)]
                for j in range(rank, n)]


def integer_kernel(mat, ncols=None):
    """Basis (list of int vectors) of {x : mat . x = 0} over the integers."""
    return PreparedSystem(mat, ncols=ncols).kernel()


def integer_solve(mat, rhs):
    """One integer solution x of mat . x = rhs, or None if there is none."""
    return PreparedSystem(mat).solve(rhs)


def lattice_hnf(rows):
    """Row Hermite normal form of the lattice spanned by integer rows.

    Canonical presentation: pivots positive, entries above a pivot reduced
    to [0, pivot).  Zero rows are dropped.
    """
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    n = len(rows[0])
    out = []
    work = rows
    col = 0
    while col < n and work:
        picked = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        if not picked:
            col += 1
            continue
        while len(picked) > 1:
            picked.sort(key=lambda r: abs(r[col]))
            base = picked[0]
            new = [base]
            for r in picked[1:]:
                q = r[col] // base[col]
                red = [r[i] - q * base[i] for i in range(n)]
                if red[col] != 0:
                    new.append(red)
                elif any(red):
                    rest.append(red)
            if len(new) == 1:
                break
            picked = new
        pivot_row = picked[0]
        if pivot_row[col] < 0:
            pivot_row = [-v for v in pivot_row]
        for prev in out:
            if prev[col] != 0:
                q = prev[col] // pivot_row[col]
                for i in range(n):
                    prev[i] -= q * pivot_row[i]
        out.append(pivot_row)
        work = rest
        col += 1
    return out


# ---------------------------------------------------------------------------
# Rational polyhedra: Fourier-Motzkin elimination with witness recovery
# ---------------------------------------------------------------------------

def _normalize_ineq(coeffs, const):
    g = 0
    for c in coeffs:
        g = gcd(g, c.numerator if isinstance(c, Fraction) else c)
    g = gcd(g, const.numerator if isinstance(const, Fraction) else const)
    coeffs = tuple(Fraction(c) for c in coeffs)
    const = Fraction(const)
    if g > 1:
        coeffs = tuple(c / g for c in coeffs)
        const = const / g
    return coeffs, const


def fm_witness(ineqs, nvars):
    """Feasibility of {x : a.x + c >= 0 for (a, c) in ineqs} over the
    rationals.  Returns a witness vector of Fractions, or None.
    """
    system = []
    seen = set()
    for coeffs, const in ineqs:
        coeffs, const = _normalize_ineq(coeffs, const)
        key = (coeffs, const)
        if key not in seen:
            seen.add(key)
            system.append((list(coeffs), Fraction(const)))
    steps = []
    for var in range(nvars - 1, -1, -1):
        pos, neg, zero = [], [], []
        for coeffs, const in system:
            c = coeffs[var]
            if c > 0:
                pos.append((coeffs, const))
            elif c < 0:
                neg.append((coeffs, const))
            else:
                zero.append((coeffs, const))
        steps.append((var, pos, neg))
        new_system = list(zero)
        seen = set()
        for pc, pk in pos:
            for nc, nk in neg:
                a = pc[var]
                b = -nc[var]
                coeffs = [b * pc[i] + a * nc[i] for i in range(nvars)]
                const = b * pk + a * nk
                coeffs, const = _normalize_ineq(coeffs, const)
                key = (coeffs, const)
                if key not in seen:
                    seen.add(key)
                    new_system.append((list(coeffs), const))
        system = new_system
    for coeffs, const in system:
        if const < 0:
            return None
    witness = [Fraction(0)] * nvars
    for var, pos, neg in reversed(steps):
        lo, hi = None, None
        for coeffs, const in pos:
            bound = -(const + sum(coeffs[i] * witness[i]
                                  for i in range(nvars) if i != var))
            bound /= coeffs[var]
            if lo is None or bound > lo:
                lo = bound
        for coeffs, const in neg:
            bound = -(const + sum(coeffs[i] * witness[i]
                                  for i in range(nvars) if i != var))
            bound /= coeffs[var]
            if hi is None or bound < hi:
                hi = bound
        if lo is None and hi is None:
            witness[var] = Fraction(0)
        elif lo is None:
            witness[var] = hi
        elif hi is None:
            witness[var] = lo
        else:
            witness[var] = (lo + hi) / 2
    return witness


def variable_bounds(ineqs, nvars, var):
    """Exact (lo, hi) of x_var over the polyhedron, None for unbounded,
    (None, None) also when the polyhedron is empty (caller checks first).
    """
    system = [(list(Fraction(c) for c in coeffs), Fraction(const))
              for coeffs, const in ineqs]
    for other in range(nvars):
        if other == var:
            continue
        pos, neg, zero = [], [], []
        for coeffs, const in system:
            c = coeffs[other]
            if c > 0:
                pos.append((coeffs, const))
            elif c < 0:
                neg.append((coeffs, const))
            else:
                zero.append((coeffs, const))
        new_system = list(zero)
        seen = set()
        for pc, pk in pos:
            for nc, nk in neg:
                a = pc[other]
                b = -nc[other]
                coeffs = [b * pc[i] + a * nc[i] for i in range(nvars)]
                const = b * pk + a * nk
                coeffs, const = _normalize_ineq(coeffs, const)
                if (coeffs, const) not in seen:
                    seen.add((coeffs, const))
                    new_system.append((list(coeffs), const))
        system = new_system
    lo, hi = None, None
    for coeffs, const in system:
        c = coeffs[var]
        if c > 0:
            bound = -const / c
            if lo is None or bound > lo:
                lo = bound
        elif c < 0:
            bound = -const / c
            if hi is None or bound < hi:
                hi = bound
    return lo, hi


def enumerate_lattice_points(ineqs, nvars, max_points=200000):
    """All integer points of the polyhedron {x : a.x + c >= 0}.

    Raises CapExceeded when a coordinate is unbounded or the count blows
    past max_points (enumeration is used on small search cones only).
    """
    points = []

    def recurse(fixed):
        var = len(fixed)
        if var == nvars:
            for coeffs, const in ineqs:
                if sum(coeffs[i] * fixed[i] for i in range(nvars)) + const < 0:
                    return
            points.append(list(fixed))
            if len(points) > max_points:
                raise CapExceeded("lattice point enumeration exceeded %d points"
                                  % max_points)
            return
        reduced = []
        feas = []
        for coeffs, const in ineqs:
            rest = const + sum(coeffs[i] * fixed[i] for i in range(var))
            reduced.append((list(coeffs[var:]), Fraction(rest)))
        if fm_witness(reduced, nvars - var) is None:
            return
        lo, hi = variable_bounds(reduced, nvars - var, 0)
        if lo is None or hi is None:
            raise CapExceeded("polyhedron unbounded in variable %d" % var)
        lo_i = -((-lo.numerator) // lo.denominator)  # ceil
        hi_i = hi.numerator // hi.denominator        # floor
        for v in range(lo_i, hi_i + 1):
            recurse(fixed + [v])

    recurse([])
    return points


# ---------------------------------------------------------------------------
# GF(2) linear algebra on bitmask rows
# ---------------------------------------------------------------------------

def gf2_echelon(rows):
    """Row echelon form of GF(2) rows (ints as bitmasks).

    Returns (reduced_rows, pivot_bits); zero rows dropped.
    """
    basis = []   # (pivot_bit, row)
    for row in rows:
        r = row
        for bit, b in basis:
            if r >> bit & 1:
                r ^= b
        if r:
            basis.append((r.bit_length() - 1, r))
            basis.sort(key=lambda t: -t[0])
    return [b for _, b in basis], [bit for bit, _ in basis]


def gf2_rank(rows):
    return len(gf2_echelon(rows)[0])


def gf2_reduce(vec, echelon_rows, pivot_bits):
    """Reduce vec against an echelon basis; result 0 iff vec in row space."""
    r = vec
    for bit, b in zip(pivot_bits, echelon_rows):
        if r >> bit & 1:
            r ^= b
    return r


def gf2_in_span(rows, vec):
    ech, piv = gf2_echelon(rows)
    return gf2_reduce(vec, ech, piv) == 0


def gf2_solve(rows, ncols, target):
    """Solve sum_i x_i rows[i] = target over GF(2); returns the set of used
    row indices or None.  (Row-combination form of a linear solve.)
    """
    basis = []  # (pivot_bit, row, combo_mask over row indices)
    for idx, row in enumerate(rows):
        r, combo = row, 1 << idx
        for bit, b, c in basis:
            if r >> bit & 1:
                r ^= b
                combo ^= c
        if r:
            basis.append((r.bit_length() - 1, r, combo))
            basis.sort(key=lambda t: -t[0])
    r, combo = target, 0
    for bit, b, c in basis:
        if r >> bit & 1:
            r ^= b
            combo ^= c
    if r:
        return None
    return [i for i in range(len(rows)) if combo >> i & 1]
