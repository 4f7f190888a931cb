"""Independent oracles used by the test suite.

Everything here is deliberately separate from the production code paths:
slope arithmetic on the once-punctured torus, brute-force GF(2) rank, and
brute-force searches over small lattices.
"""

from fractions import Fraction


# ---------------------------------------------------------------------------
# Slope oracle for the once-punctured torus
# ---------------------------------------------------------------------------
#
# Closed curves (and the standard arcs) on the once-punctured torus are
# classified by primitive homology classes (p, q).  A right twist about a
# curve with class c acts by v -> v + <c, v> c where <,> is the standard
# symplectic form, and minimal intersection numbers are |det|:
#   curve vs curve: |det(u, v)|
#   arc   vs curve: |det(u, v)|
#   arc   vs arc:   max(|det(u, v)| - 1, 0)

def form(u, v):
    return u[0] * v[1] - u[1] * v[0]


def twist(c, e, v):
    """Right-handed twist about class c, sign e, applied to class v."""
    k = e * form(c, v)
    return (v[0] + k * c[0], v[1] + k * c[1])


def twist_word(letters, v):
    """letters: list of (class, exponent sign), applied first-to-last."""
    for c, e in letters:
        v = twist(c, e, v)
    return v


def curve_curve(u, v):
    return abs(form(u, v))


def arc_curve(u, v):
    return abs(form(u, v))


def arc_arc(u, v):
    d = abs(form(u, v))
    return max(d - 1, 0)


# ---------------------------------------------------------------------------
# Brute-force GF(2) rank (independent of the bitmask implementation)
# ---------------------------------------------------------------------------

def brute_gf2_rank(matrix):
    """Gaussian elimination on a dense 0/1 list-of-lists copy."""
    rows = [list(r) for r in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col] % 2 == 1:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % 2 == 1:
                rows[r] = [(a + b) % 2 for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def brute_gf2_in_span(matrix, vec):
    base = brute_gf2_rank(matrix)
    return brute_gf2_rank(matrix + [list(vec)]) == base


# ---------------------------------------------------------------------------
# Brute-force nonnegative search over small lattices
# ---------------------------------------------------------------------------

def brute_nonneg_lattice_element(basis, bound=3):
    """Search all integer combinations with |coefficient| <= bound for a
    nonzero, componentwise >= 0 element of the lattice spanned by basis
    rows.  Returns one or None."""
    import itertools
    if not basis:
        return None
    n = len(basis)
    for combo in itertools.product(range(-bound, bound + 1), repeat=n):
        if all(c == 0 for c in combo):
            continue
        vec = [sum(c * row[i] for c, row in zip(combo, basis))
               for i in range(len(basis[0]))]
        if any(vec) and all(v >= 0 for v in vec):
            return vec
    return None
