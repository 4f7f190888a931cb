"""Triangle counting in triple-diagrams: the comultiplication check.

A triangle class connecting generators a (alpha-beta), b (beta-gamma) and
x (alpha-gamma) is a 2-chain whose oriented boundary runs along alpha
from a to x, along beta from b to a, and along gamma from x to b.  For
the triple-diagram of an open book pair, the only nonnegative such chain
with n_z = 0 and corner the distinguished alpha-gamma generator is the
sum of the small triangles of the top-copy clusters, one per cut arc;
verifying this certifies that the comultiplication takes the contact
generator of hg to the tensor product of those of g and h.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CapExceeded, OpenBookError
from . import domains, floer
from .diagram import build_triple, contact_generator, TOP
from .page import compose


# ---------------------------------------------------------------------------
# Cluster identification
# ---------------------------------------------------------------------------

def _diagonal_partner(diag, vertex, region):
    """The region occupying the quadrant diagonally opposite the given
    region's corner at a crossing (germ-disjoint corner records)."""
    recs = diag.corner_records[vertex]
    mine = [r for r in recs if diag.face_region[r["face"]] == region]
    assert mine, (vertex, region)
    rec = mine[0]
    for other in recs:
        if other["germ_edges"].isdisjoint(rec["germ_edges"]):
            return diag.face_region[other["face"]]
    raise AssertionError("no diagonal corner at %s" % (vertex,))


@dataclass
class Cluster:
    index: int
    x_g: tuple
    x_h: tuple
    x_hg: tuple
    regions: dict     # labels "D1".."D6" -> region index


def identify_clusters(triple):
    """Locate, for each cut arc, the six regions of the local top-copy
    picture around the three distinguished crossings.

    D3 is the small triangle with corners at all three crossings; D6 is
    the basepoint region, diagonal to D3 at the alpha-gamma crossing; the
    remaining labels follow from diagonal positions at the other two
    crossings.
    """
    xg = contact_generator(triple, ("alpha", "beta"))
    xh = contact_generator(triple, ("beta", "gamma"))
    xhg = contact_generator(triple, ("alpha", "gamma"))
    z = triple.z_region
    clusters = []
    for i in range(triple.page.arc_count):
        vg, vh, vhg = xg[i], xh[i], xhg[i]
        d6 = z
        d3 = _diagonal_partner(triple, vhg, d6)
        d5 = _diagonal_partner(triple, vg, d3)
        d4 = _diagonal_partner(triple, vg, d6)
        d1 = _diagonal_partner(triple, vh, d3)
        d2 = _diagonal_partner(triple, vh, d6)
        regions = dict(D1=d1, D2=d2, D3=d3, D4=d4, D5=d5, D6=d6)
        # the triangle is adjacent to all three crossings
        for v in (vg, vh, vhg):
            rs = {triple.face_region[r["face"]]
                  for r in triple.corner_records[v]}
            assert d3 in rs and d6 in rs, \
                "six-region cluster structure violated at arc %d" % i
        clusters.append(Cluster(index=i, x_g=vg, x_h=vh, x_hg=vhg,
                                regions=regions))
    return clusters


def local_constraint_system(triple, clusters=None):
    """The corner and pass-through equations of the clusters, as
    structured rows: (description, [(coeff, region), ...], constant)
    meaning sum coeff*p_region = constant for a triangle domain with
    corner x_hg and n_z = 0."""
    if clusters is None:
        clusters = identify_clusters(triple)
    rows = []
    for cl in clusters:
        D = cl.regions
        rows.append(("corner x_hg^%d: p6+p3 = p2+p4+1" % (cl.index + 1),
                     [(1, D["D6"]), (1, D["D3"]), (-1, D["D2"]),
                      (-1, D["D4"])], 1))
        rows.append(("pass x_h^%d: p3+p1 = p2+p6" % (cl.index + 1),
                     [(1, D["D3"]), (1, D["D1"]), (-1, D["D2"]),
                      (-1, D["D6"])], 0))
        rows.append(("basepoint: p6 = 0",
                     [(1, D["D6"])], 0))
    return rows


def check_local_relations(triple, domain, clusters=None):
    """The cluster relations of a triply-periodic domain.

    Unconditionally: the alpha-wall relations p2 = p3 - p4 = -p5, the
    basepoint constraint p6 = 0, and the beta-wall relation
    p1 + p3 = p2 + p6.  When additionally p2 = p5 = 0 and p3 = p4 (that
    is, the alpha relations are satisfied with one sign), the beta
    relation collapses to p1 = -p3 = 0.
    """
    if clusters is None:
        clusters = identify_clusters(triple)
    for cl in clusters:
        D = {k: domain[v] for k, v in cl.regions.items()}
        if not (D["D2"] == D["D3"] - D["D4"] == -D["D5"]
                and D["D6"] == 0
                and D["D1"] + D["D3"] == D["D2"] + D["D6"]):
            return False, cl.index
        if D["D2"] == D["D5"] == 0 and D["D3"] == D["D4"]:
            if D["D1"] != -D["D3"]:
                return False, cl.index
    return True, None


# ---------------------------------------------------------------------------
# Triangle enumeration
# ---------------------------------------------------------------------------

def _triangle_corner_terms(abar, bbar, xbar):
    aset, bset, xset = set(abar), set(bbar), set(xbar)

    def term_alpha(v):
        return (1 if v in aset else 0) - (1 if v in xset else 0)

    def term_beta(v):
        return (1 if v in bset else 0) - (1 if v in aset else 0)

    def term_gamma(v):
        return (1 if v in xset else 0) - (1 if v in bset else 0)

    return dict(alpha=term_alpha, beta=term_beta, gamma=term_gamma)


def triangle_domains(triple, abar, bbar, xbar, cap=4):
    """All nonnegative triangle domains with n_z = 0 connecting the three
    generators, complete below the cap."""
    from . import intlinalg
    R = len(triple.regions)
    particular = domains.solve_domain(
        triple, _triangle_corner_terms(abar, bbar, xbar), nz=0)
    if particular is None:
        return []
    kernel = domains.domain_kernel(triple, with_nz=True)
    r = len(kernel)
    from fractions import Fraction
    ineqs = []
    for j in range(R):
        coeffs = [kernel[i][j] for i in range(r)]
        ineqs.append((coeffs, Fraction(particular[j])))
        if cap is not None:
            ineqs.append(([-c for c in coeffs],
                          Fraction(cap - particular[j])))
    candidates = [[]] if r == 0 else \
        intlinalg.enumerate_lattice_points(ineqs, r)
    out = []
    for c in sorted(candidates):
        vec = [particular[j] + sum(c[i] * kernel[i][j] for i in range(r))
               for j in range(R)]
        if any(v < 0 for v in vec):
            continue
        if cap is not None and any(v > cap for v in vec):
            continue
        out.append(vec)
    return out


def enumerate_positive_triangles(triple, cap=4):
    """All nonnegative n_z = 0 triangle domains with corner the
    distinguished alpha-gamma generator, over all generator pairs.

    Returns a list of (abar, bbar, domain)."""
    xbar = contact_generator(triple, ("alpha", "gamma"))
    gens_ab = domains.enumerate_generators(triple, ("alpha", "beta"))
    gens_bg = domains.enumerate_generators(triple, ("beta", "gamma"))
    out = []
    for abar in gens_ab:
        for bbar in gens_bg:
            for dom in triangle_domains(triple, abar, bbar, xbar, cap=cap):
                out.append((abar, bbar, dom))
    return out


# ---------------------------------------------------------------------------
# The naturality certificate
# ---------------------------------------------------------------------------

class NaturalityCheckFailed(OpenBookError):
    """The unique-triangle certificate could not be established; the
    diagnostic would indicate an implementation fault."""


@dataclass
class NaturalityCertificate:
    ok: bool
    page: tuple
    admissible: bool
    sub_admissible: dict
    triangle_count: int
    corners_match: bool
    indicator_match: bool
    triangle_regions: tuple
    checks: list = field(default_factory=list)
    anomalies: list = field(default_factory=list)

    def lines(self):
        out = ["naturality: %s" % ("OK" if self.ok else "FAILED")]
        out += ["  %s" % c for c in self.checks]
        out += ["  anomaly: %s" % a for a in self.anomalies]
        return out


def verify_naturality(page, g, h, cap=4):
    """Machine check that the comultiplication takes the contact
    generator of hg to the pair (x_g, x_h): builds the triple-diagram,
    decides admissibility, and certifies that the unique nonnegative
    n_z = 0 triangle with corner x_hg is the sum of the small cluster
    triangles with corners x_g and x_h."""
    triple = build_triple(page, g, h)
    checks = []
    anomalies = []

    adm, witness = domains.is_weakly_admissible(triple)
    checks.append("triple weakly admissible: %s" % adm)
    if not adm:
        anomalies.append("nonnegative triply-periodic domain %s" % witness)

    sub_admissible = {}
    from .diagram import restrict
    for fams in (("alpha", "beta"), ("beta", "gamma"), ("alpha", "gamma")):
        sub = restrict(triple, fams)
        sub_admissible["-".join(fams)] = domains.is_weakly_admissible(sub)[0]
    checks.append("sub-diagram admissibility: %s" % sub_admissible)

    xg = contact_generator(triple, ("alpha", "beta"))
    xh = contact_generator(triple, ("beta", "gamma"))
    clusters = identify_clusters(triple)
    checks.append("cluster structure identified at all %d arcs"
                  % len(clusters))

    solutions = enumerate_positive_triangles(triple, cap=cap)
    count = len(solutions)
    checks.append("positive n_z=0 triangles with corner x_hg: %d" % count)

    corners_match = False
    indicator_match = False
    tri_regions = tuple(cl.regions["D3"] for cl in clusters)
    if count == 1:
        abar, bbar, dom = solutions[0]
        corners_match = (abar == xg and bbar == xh)
        checks.append("corners are (x_g, x_h): %s" % corners_match)
        indicator = [0] * len(triple.regions)
        for rid in tri_regions:
            indicator[rid] += 1
        indicator_match = (dom == indicator)
        checks.append("domain is the small-triangle indicator: %s"
                      % indicator_match)
        for rid in tri_regions:
            r = triple.regions[rid]
            if not (r.chi == 1 and r.corner_count == 3):
                anomalies.append("region %d is not an embedded triangle"
                                 % rid)
    else:
        for abar, bbar, dom in solutions:
            ok_lr = check_local_relations(
                triple, dom, clusters)[0] if count > 1 else True
            anomalies.append("extra triangle to (%s, %s): %s"
                             % (abar, bbar, dom))

    ok = (adm and count == 1 and corners_match and indicator_match
          and not anomalies)
    return NaturalityCertificate(
        ok=ok, page=(page.genus, page.boundary_components),
        admissible=adm, sub_admissible=sub_admissible,
        triangle_count=count, corners_match=corners_match,
        indicator_match=indicator_match,
        triangle_regions=tri_regions, checks=checks, anomalies=anomalies)


# ---------------------------------------------------------------------------
# The monoid report
# ---------------------------------------------------------------------------

@dataclass
class MonoidRow:
    g_name: str
    h_name: str
    c_g: str
    c_h: str
    c_hg: str
    status: str      # "ok" | "vacuous" | "violation" | "skipped: ..."


def monoid_check(page, named_words, winding_budget=8, nice_budget=24):
    """For every ordered pair (g, h) of the given words: if both contact
    classes are nonzero, the class of hg must be nonzero.  Pipeline
    failures skip the pair and are reported."""
    verdicts = {}

    def verdict(name, word):
        if name not in verdicts:
            try:
                v = floer.contact_class_is_nonzero(
                    page, word, winding_budget, nice_budget)
                verdicts[name] = "nonzero" if v.nonzero else "zero"
            except OpenBookError as e:
                verdicts[name] = "error: %s" % type(e).__name__
        return verdicts[name]

    rows = []
    violations = 0
    for g_name, g in named_words:
        for h_name, h in named_words:
            cg = verdict(g_name, g)
            ch = verdict(h_name, h)
            hg = compose(page, g, h)
            hg_name = "%s*%s" % (h_name, g_name)
            try:
                v = floer.contact_class_is_nonzero(
                    page, hg, winding_budget, nice_budget)
                chg = "nonzero" if v.nonzero else "zero"
            except OpenBookError as e:
                chg = "error: %s" % type(e).__name__
            if "error" in (cg, ch, chg) or cg.startswith("error") or \
                    ch.startswith("error") or chg.startswith("error"):
                status = "skipped: pipeline error"
            elif cg == "nonzero" and ch == "nonzero":
                if chg == "nonzero":
                    status = "ok"
                else:
                    status = "violation"
                    violations += 1
            else:
                status = "vacuous"
            rows.append(MonoidRow(g_name, h_name, cg, ch, chg, status))
    return rows, violations
