"""The hat-flavor chain complex over GF(2) and the contact class.

For a nice diagram (every region without the basepoint a bigon or a
square) the differential is the mod-2 count of index-one positive domains
missing the basepoint, which are exactly the empty embedded bigons and
rectangles.  The contact class lives in the homology of the dual complex;
all verdicts are statements over GF(2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (NotNice, NotAdmissible, NotACycle,
                     NiceificationBudgetExceeded)
from . import domains, intlinalg
from .diagram import (DiagramCurve, assemble_diagram, build_heegaard,
                      contact_generator, wind_for_admissibility, TOP)


def is_nice(diag):
    """True iff every region without the basepoint is a disk bigon or a
    disk square."""
    for r in diag.regions:
        if r.contains_z:
            continue
        if r.chi != 1 or r.corner_count not in (2, 4):
            return False
    return True


def bad_regions(diag):
    return [r for r in diag.regions
            if not r.contains_z and (r.chi != 1 or
                                     r.corner_count not in (2, 4))]


# ---------------------------------------------------------------------------
# Niceification by finger moves
# ---------------------------------------------------------------------------

def _badness(diag):
    total = 0
    for r in diag.regions:
        if r.contains_z:
            continue
        if r.chi != 1:
            total += 100
        total += max(0, r.corner_count - 4)
        if r.corner_count < 2:
            total += 10
    return total


def _finger_moves(diag):
    """Candidate finger moves: insert a cancelling crossing pair (a
    zigzag through an alpha arc bounding a bad region) into the bottom
    half of a non-alpha curve, at any word position, in either poke
    direction."""
    bad_alpha = []
    seen = set()
    for r in bad_regions(diag):
        for fid in r.faces:
            for eid, _d in diag.faces[fid]["walk"]:
                e = diag.edges[eid]
                if (e["kind"] == "curve" and e["family"] == "alpha"
                        and e["copy"] == 1 and eid not in seen):
                    lo, hi = e["interval"]
                    if lo != hi:
                        seen.add(eid)
                        bad_alpha.append((e["index"], lo, hi))
    bad_alpha.sort()
    moves = []
    for c in diag.curves:
        if c.family == "alpha":
            continue
        for pos in range(len(c.bottom.word) + 1):
            for arc, lo, hi in bad_alpha:
                for order in (+1, -1):
                    moves.append(dict(curve=(c.family, c.index), pos=pos,
                                      arc=arc, lo=lo, hi=hi, order=order))
    return moves


def _apply_finger(diag, move):
    from dataclasses import replace
    page = diag.page
    fam, idx = move["curve"]
    arc = move["arc"]
    lo, hi = move["lo"], move["hi"]
    p1 = lo + (hi - lo) / 3
    p2 = lo + (hi - lo) * 2 / 3
    t1 = page.side_position(arc, 1)
    t0 = page.side_position(arc, 0)
    letters = (t1, t0) if move["order"] > 0 else (t0, t1)
    curves = []
    for c in diag.curves:
        if (c.family, c.index) != (fam, idx):
            curves.append(c)
            continue
        pos = move["pos"]
        w = list(c.bottom.word)
        p = list(c.bottom.params)
        w[pos:pos] = list(letters)
        p[pos:pos] = [p1, p2]
        candidate = replace(c.bottom, word=tuple(w), params=tuple(p))
        curves.append(DiagramCurve(c.family, c.index, c.top, candidate))
    return curves


def make_nice(diag, budget=24):
    """Finger-move niceification; the identity on already-nice diagrams.

    Moves are confined to the bottom copy, so the top-copy contact
    cluster is untouched.  Greedy: each accepted move strictly decreases
    a badness score; budget failures raise rather than guess.
    """
    from .errors import NonEmbeddedCurve

    if is_nice(diag):
        return diag
    current = diag
    for _step in range(budget):
        if is_nice(current):
            return current
        base = _badness(current)
        best = None
        for move in _finger_moves(current):
            try:
                cand = assemble_diagram(current.page,
                                        _apply_finger(current, move),
                                        current.words)
            except (NonEmbeddedCurve, AssertionError):
                continue
            if not domains.is_weakly_admissible(cand)[0]:
                continue
            score = _badness(cand)
            if score < base and (best is None or score < best[0]):
                best = (score, cand)
                if score == 0:
                    break
        if best is None:
            raise NiceificationBudgetExceeded(
                "no improving finger move found (badness %d)" % base)
        current = best[1]
    if is_nice(current):
        return current
    raise NiceificationBudgetExceeded(
        "diagram not nice after %d finger moves" % budget)


# ---------------------------------------------------------------------------
# The chain complex
# ---------------------------------------------------------------------------

@dataclass
class FloerComplex:
    diagram: object
    generators: list            # tuples of crossing vertex ids
    boundary: list              # GF(2) rows as bitmask ints: row x -> sum over y
    classes: list               # spin-c partition: list of lists of indices
    distinguished: int | None   # index of the contact generator

    @property
    def rank(self):
        return len(self.generators)

    def class_of(self, index):
        for k, cls in enumerate(self.classes):
            if index in cls:
                return k
        raise ValueError("generator index out of range")


def _differs(x, y):
    return sum(1 for a, b in zip(sorted(x, key=repr), sorted(y, key=repr))
               if a != b)


def differential(diag, fam_pair=("alpha", "beta"), distinguished=None):
    """The GF(2) boundary matrix counting index-one positive domains with
    n_z = 0 (empty embedded bigons and rectangles in a nice diagram)."""
    adm, _w = domains.is_weakly_admissible(diag)
    if not adm:
        raise NotAdmissible("differential requires weak admissibility")
    if not is_nice(diag):
        raise NotNice("differential requires a nice diagram")
    gens = domains.enumerate_generators(diag, fam_pair)
    index = {g: i for i, g in enumerate(gens)}
    rows = [0] * len(gens)
    for xi, x in enumerate(gens):
        xs = set(x)
        for yi, y in enumerate(gens):
            if yi == xi:
                continue
            if len(xs.difference(y)) > 2:
                continue
            count = 0
            for dom in domains.connecting_domains(diag, x, y, fam_pair,
                                                  nz=0, positive=True,
                                                  cap=None):
                if not any(dom):
                    continue
                if domains.maslov_index(diag, dom, x, y) == 1:
                    assert max(dom) <= 1, \
                        "index-one domain with multiplicity >= 2 in a " \
                        "nice diagram"
                    count += 1
            if count % 2 == 1:
                rows[xi] ^= 1 << yi
    classes_gen = domains.spin_c_classes(diag, fam_pair, generators=gens)
    classes = [sorted(index[g] for g in cls) for cls in classes_gen]
    classes.sort()
    # block structure sanity: no differential across classes
    cls_of = {}
    for k, cls in enumerate(classes):
        for i in cls:
            cls_of[i] = k
    for xi in range(len(gens)):
        for yi in range(len(gens)):
            if rows[xi] >> yi & 1:
                assert cls_of[xi] == cls_of[yi], \
                    "differential crosses spin-c classes"
    dist = index.get(distinguished) if distinguished is not None else None
    cx = FloerComplex(diagram=diag, generators=gens, boundary=rows,
                      classes=classes, distinguished=dist)
    _check_d_squared(cx)
    return cx


def _check_d_squared(cx):
    n = len(cx.generators)
    for xi in range(n):
        acc = 0
        row = cx.boundary[xi]
        for yi in range(n):
            if row >> yi & 1:
                acc ^= cx.boundary[yi]
        assert acc == 0, "d^2 != 0"


def dualize(cx):
    """Transpose of the boundary matrix: the complex of the reversed
    manifold."""
    n = len(cx.generators)
    rows = [0] * n
    for xi in range(n):
        for yi in range(n):
            if cx.boundary[xi] >> yi & 1:
                rows[yi] |= 1 << xi
    return FloerComplex(diagram=cx.diagram, generators=cx.generators,
                        boundary=rows, classes=cx.classes,
                        distinguished=cx.distinguished)


def homology_ranks(cx):
    """Rank of homology per spin-c class (GF(2) coefficients)."""
    out = []
    for cls in cx.classes:
        mask = 0
        for i in cls:
            mask |= 1 << i
        block = [cx.boundary[i] & mask for i in cls]
        r = intlinalg.gf2_rank(block)
        out.append(len(cls) - 2 * r)
    return out


def total_homology_rank(cx):
    return sum(homology_ranks(cx))


def is_cycle(cx, chain):
    """chain: bitmask over generators."""
    acc = 0
    for i in range(len(cx.generators)):
        if chain >> i & 1:
            acc ^= cx.boundary[i]
    return acc == 0


def is_boundary(cx, chain):
    if not is_cycle(cx, chain):
        raise NotACycle("membership query on a non-cycle")
    return intlinalg.gf2_solve(cx.boundary, len(cx.generators),
                               chain) is not None


def class_is_nonzero(cx, chain):
    return is_cycle(cx, chain) and not is_boundary(cx, chain)


# ---------------------------------------------------------------------------
# The contact class pipeline
# ---------------------------------------------------------------------------

@dataclass
class ContactVerdict:
    nonzero: bool
    rank: int
    classes: int
    generators: int
    diagram_stats: dict

    @property
    def text(self):
        return ("nonzero over GF(2)" if self.nonzero
                else "zero over GF(2)")


def contact_pipeline(page, g, winding_budget=8, nice_budget=24):
    """build -> wind -> niceify; returns (diagram, dual complex, contact
    index)."""
    diag = build_heegaard(page, g)
    diag = wind_for_admissibility(diag, winding_budget)
    diag = make_nice(diag, nice_budget)
    xg = contact_generator(diag, ("alpha", "beta"))
    cx = differential(diag, ("alpha", "beta"), distinguished=xg)
    dual = dualize(cx)
    return diag, dual, cx.generators.index(xg)


def contact_class_is_nonzero(page, g, winding_budget=8, nice_budget=24):
    """Verdict on the contact class of the open book (page, g), over
    GF(2): nonzero here implies nonzero over the integers."""
    diag, dual, xi = contact_pipeline(page, g, winding_budget, nice_budget)
    chain = 1 << xi
    assert is_cycle(dual, chain), \
        "contact generator is not a cycle in the dual complex"
    nonzero = not is_boundary(dual, chain)
    return ContactVerdict(
        nonzero=nonzero,
        rank=total_homology_rank(dual),
        classes=len(dual.classes),
        generators=len(dual.generators),
        diagram_stats=dual.diagram.stats())
