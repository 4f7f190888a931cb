"""Domains of a diagram: the region lattice, boundary and basepoint
queries, periodic domains, weak admissibility, and generator bookkeeping.

A domain is an integer vector indexed by regions.  Its boundary is
encoded through jumps: for an edge e traversed by a curve, the jump of a
domain across e is (left coefficient - right coefficient).  A domain has
boundary equal to a combination of complete curves exactly when the jump
is constant along every curve; corner conditions at generator points
prescribe how the jump changes at a crossing.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import CapExceeded, NotACycle
from . import intlinalg


# ---------------------------------------------------------------------------
# Jump systems
# ---------------------------------------------------------------------------

def _edge_lr(diag, eid, direction):
    e = diag.edges[eid]
    if direction > 0:
        return e["left"], e["right"]
    return e["right"], e["left"]


def _traversal_vertices(diag, fam_idx):
    """Vertices between consecutive edges of a curve traversal (cyclic)."""
    trav = diag.curve_edges[fam_idx]
    out = []
    n = len(trav)
    for k in range(n):
        eid, d = trav[k]
        e = diag.edges[eid]
        head = e["v"][1] if d > 0 else e["v"][0]
        eid2, d2 = trav[(k + 1) % n]
        e2 = diag.edges[eid2]
        tail2 = e2["v"][0] if d2 > 0 else e2["v"][1]
        assert head == tail2, (fam_idx, k, head, tail2)
        out.append(head)
    return out


def jump_rows(diag, fam_idx):
    """One coefficient row per consecutive edge pair of the curve: the
    jump difference jump(e_next) - jump(e_prev), with the junction
    vertex."""
    R = len(diag.regions)
    trav = diag.curve_edges[fam_idx]
    verts = _traversal_vertices(diag, fam_idx)
    rows = []
    n = len(trav)
    for k in range(n):
        eid, d = trav[k]
        eid2, d2 = trav[(k + 1) % n]
        row = [0] * R
        l2, r2 = _edge_lr(diag, eid2, d2)
        l1, r1 = _edge_lr(diag, eid, d)
        row[l2] += 1
        row[r2] -= 1
        row[l1] -= 1
        row[r1] += 1
        rows.append(row)
    return rows, verts


def prepared_system(diag, with_nz):
    """Cached column-echelon form of the jump system (plus the basepoint
    row when with_nz), with row metadata for building right-hand sides.

    Returns (prep, row_info) where row_info entries are
    ("corner", family, vertex) or ("nz",).
    """
    cache = getattr(diag, "_domain_cache", None)
    if cache is None:
        cache = {}
        setattr(diag, "_domain_cache", cache)
    key = ("prep", with_nz)
    if key not in cache:
        R = len(diag.regions)
        rows, info = [], []
        for fam_idx in sorted(diag.curve_edges):
            r, verts = jump_rows(diag, fam_idx)
            rows += r
            info += [("corner", fam_idx[0], v) for v in verts]
        if with_nz:
            row = [0] * R
            row[diag.z_region] = 1
            rows.append(row)
            info.append(("nz",))
        cache[key] = (intlinalg.PreparedSystem(rows, ncols=R), info)
    return cache[key]


def _build_rhs(info, corner_terms, nz):
    rhs = []
    for entry in info:
        if entry[0] == "nz":
            rhs.append(nz)
        else:
            _, fam, v = entry
            term = corner_terms.get(fam)
            rhs.append(term(v) if term else 0)
    return rhs


def domain_kernel(diag, with_nz=True):
    """Cached HNF basis of the homogeneous domain lattice."""
    cache = getattr(diag, "_domain_cache", None) or {}
    key = ("kernel", with_nz)
    if key not in cache:
        prep, _info = prepared_system(diag, with_nz)
        cache = getattr(diag, "_domain_cache")
        cache[key] = intlinalg.lattice_hnf(prep.kernel())
    return getattr(diag, "_domain_cache")[key]


def solve_domain(diag, corner_terms, nz=None):
    prep, info = prepared_system(diag, nz is not None)
    return prep.solve(_build_rhs(info, corner_terms, nz))


# ---------------------------------------------------------------------------
# Periodic domains and admissibility
# ---------------------------------------------------------------------------

def periodic_basis(diag):
    """HNF-reduced basis of the lattice of (triply-)periodic domains:
    n_z = 0, boundary a combination of complete curves."""
    return domain_kernel(diag, with_nz=True)


def is_weakly_admissible(diag):
    """True iff every nonzero periodic domain has both positive and
    negative coefficients.  When false, also returns a nonnegative
    nonzero witness domain (integer vector).

    Decided by rational cone feasibility: a nonzero nonnegative element
    exists iff one exists with coefficient sum 1.
    """
    basis = periodic_basis(diag)
    if not basis:
        return True, None
    R = len(diag.regions)
    r = len(basis)
    ineqs = []
    for j in range(R):
        ineqs.append(([basis[i][j] for i in range(r)], Fraction(0)))
    total = [sum(basis[i][j] for j in range(R)) for i in range(r)]
    ineqs.append((list(total), Fraction(-1)))
    ineqs.append(([-t for t in total], Fraction(1)))
    witness = intlinalg.fm_witness(ineqs, r)
    if witness is None:
        return True, None
    den = 1
    for c in witness:
        den = den * c.denominator // __import__("math").gcd(
            den, c.denominator)
    combo = [int(c * den) for c in witness]
    vec = [sum(combo[i] * basis[i][j] for i in range(r)) for j in range(R)]
    g = 0
    for v in vec:
        g = __import__("math").gcd(g, v)
    if g > 1:
        vec = [v // g for v in vec]
    assert all(v >= 0 for v in vec) and any(vec)
    return False, vec


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def crossing_table(diag, fam_pair):
    """points[i][j]: sorted crossing vertices of curve i of the first
    family with curve j of the second."""
    m = diag.page.arc_count
    table = {(i, j): [] for i in range(m) for j in range(m)}
    fa, fb = fam_pair
    for vid in sorted(diag.crossings, key=repr):
        info = diag.crossings[vid]
        (f1, i1), (f2, i2) = info["families"]
        if (f1, f2) == (fa, fb):
            table[(i1, i2)].append(vid)
        elif (f2, f1) == (fa, fb):
            table[(i2, i1)].append(vid)
    return table


def enumerate_generators(diag, fam_pair=("alpha", "beta")):
    """All generator tuples: one crossing on each curve of each family,
    inducing a bijection between the families.  Deterministic order."""
    m = diag.page.arc_count
    table = crossing_table(diag, fam_pair)
    out = []

    def rec(i, used, chosen):
        if i == m:
            out.append(tuple(chosen))
            return
        for j in range(m):
            if j in used:
                continue
            for vid in table[(i, j)]:
                used.add(j)
                chosen.append(vid)
                rec(i + 1, used, chosen)
                chosen.pop()
                used.remove(j)

    rec(0, set(), [])
    out.sort(key=repr)
    return out


def _corner_terms_pair(fam_pair, x, y):
    """Corner terms for a connecting domain from x to y in a two-family
    diagram: the jump increases by +1 at points of x and -1 at points of
    y along the first family, and oppositely along the second."""
    xset, yset = set(x), set(y)
    fa, fb = fam_pair

    def term_a(v):
        return (1 if v in xset else 0) - (1 if v in yset else 0)

    def term_b(v):
        return (1 if v in yset else 0) - (1 if v in xset else 0)

    return {fa: term_a, fb: term_b}


def connecting_domains(diag, x, y, fam_pair=("alpha", "beta"), nz=0,
                       positive=True, cap=8):
    """All integer domains from x to y with the given constraints,
    complete below the cap.

    cap=None requires the solution polytope to be bounded (true for
    positive n_z=0 domains in weakly admissible diagrams); otherwise
    CapExceeded is raised.
    """
    R = len(diag.regions)
    particular = solve_domain(diag, _corner_terms_pair(fam_pair, x, y),
                              nz=nz)
    if particular is None:
        return []
    kernel = domain_kernel(diag, with_nz=True)
    r = len(kernel)
    ineqs = []
    for j in range(R):
        coeffs = [kernel[i][j] for i in range(r)]
        if positive:
            ineqs.append((coeffs, Fraction(particular[j])))
        if cap is not None:
            ineqs.append(([-c for c in coeffs],
                          Fraction(cap - particular[j])))
    if not positive and cap is None:
        raise CapExceeded("unconstrained connecting-domain enumeration")
    if r == 0:
        candidates = [[]]
    else:
        candidates = intlinalg.enumerate_lattice_points(ineqs, r)
    out = []
    for c in sorted(candidates):
        vec = [particular[j] + sum(c[i] * kernel[i][j] for i in range(r))
               for j in range(R)]
        if positive and any(v < 0 for v in vec):
            continue
        if cap is not None and any(v > cap for v in vec):
            continue
        out.append(vec)
    return out


def has_connecting_domain(diag, x, y, fam_pair=("alpha", "beta")):
    """Integer domain from x to y with arbitrary n_z (spin-c test)."""
    return solve_domain(diag, _corner_terms_pair(fam_pair, x, y),
                        nz=None) is not None


def spin_c_classes(diag, fam_pair=("alpha", "beta"), generators=None):
    """Partition of the generators by existence of a connecting domain
    with unconstrained n_z."""
    if generators is None:
        generators = enumerate_generators(diag, fam_pair)
    classes = []
    for g in generators:
        placed = False
        for cls in classes:
            if has_connecting_domain(diag, cls[0], g, fam_pair):
                cls.append(g)
                placed = True
                break
        if not placed:
            classes.append([g])
    return classes


# ---------------------------------------------------------------------------
# Point measures and the Maslov index
# ---------------------------------------------------------------------------

def point_measure4(diag, domain, vertex):
    """4 * (average of the domain coefficients on the four quadrants at a
    crossing vertex)."""
    recs = diag.corner_records[vertex]
    assert len(recs) == 4
    return sum(domain[diag.face_region[r["face"]]] for r in recs)


def euler_measure4(diag, domain):
    return sum(p * r.euler4 for p, r in zip(domain, diag.regions))


def maslov_index(diag, domain, x, y):
    """Lipshitz formula: mu = e(D) + n_x(D) + n_y(D)."""
    total4 = euler_measure4(diag, domain)
    for v in x:
        total4 += point_measure4(diag, domain, v)
    for v in y:
        total4 += point_measure4(diag, domain, v)
    return Fraction(total4, 4)


def domain_multiplicity_bounds(domain):
    return min(domain), max(domain)
