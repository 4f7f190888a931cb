"""Pages (compact oriented surfaces with boundary) and curves on them.

Encoding
--------
A page of genus k with n boundary components carries the standard cut
system of m = 2k+n-1 disjoint properly embedded arcs; cutting along all of
them leaves a single polygon P.  The boundary of P is the cyclic
alternation

    gap_0, side_0, gap_1, side_1, ..., gap_{2m-1}, side_{2m-1}

read counterclockwise, where each side is one of the two copies of a cut
arc and each gap is an interval of the page boundary.  Each cut arc has
two side copies; copy 0 is traversed by the counterclockwise boundary in
the direction of increasing arc parameter, copy 1 in the decreasing
direction, which makes the regluing orientable.

An embedded arc or closed curve transverse to the cut system meets P in
disjoint chords, so it is determined by its *crossing word* -- the
sequence of sides it runs into, each crossing continuing from the matching
point on the partner side -- together with exact rational positions:
the parameter of each crossing along its cut arc, and for arcs the
positions of the two endpoints on their gaps.  A word is freely
(cyclically) reduced exactly when the path is in minimal position with
respect to the cut system, so reduced words are the canonical isotopy
data and the positions only pin down a concrete transverse realization.

Realizations place every boundary point of the system at an integer point
of a parabola (convex position) and join consecutive crossings by straight
chords; two chords cross iff their endpoints interleave, so every
intersection count and crossing order is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import DegeneratePage, NonEmbeddedCurve

# Global handedness: a right (positive) Dehn twist about c replaces each
# crossing with d by a full loop of c, traversed forward exactly when
# CHIRALITY * exponent * det(d', c') is positive.  CHIRALITY = -1 makes
# this the classical right-handed twist for the package's orientation
# conventions (counterclockwise cut polygon, positive boundary direction);
# it is pinned by the annulus untwisting test and the punctured-torus
# slope oracle.
CHIRALITY = -1


@dataclass(frozen=True)
class Side:
    """One of the two polygon-boundary copies of a cut arc."""
    arc: int
    copy: int
    fwd: bool


@dataclass(frozen=True)
class Page:
    """A page with its standard cut system, in cut-polygon form."""
    genus: int
    boundary_components: int
    sides: tuple[Side, ...]

    @property
    def arc_count(self):
        return len(self.sides) // 2

    def side_position(self, arc, copy):
        for t, s in enumerate(self.sides):
            if s.arc == arc and s.copy == copy:
                return t
        raise ValueError("no such side")

    def partner(self, t):
        s = self.sides[t]
        return self.side_position(s.arc, 1 - s.copy)

    def next_gap(self, t):
        """Boundary component structure: the page boundary leaves the end
        of gap t (an endpoint of arc(side t)) and continues on the gap
        following the partner side."""
        return (self.partner(t) + 1) % len(self.sides)

    def gap_orbits(self):
        """Gaps grouped by boundary component, each orbit in traversal
        order starting from its smallest gap index."""
        seen = set()
        orbits = []
        for t in range(len(self.sides)):
            if t in seen:
                continue
            orbit = []
            u = t
            while u not in seen:
                seen.add(u)
                orbit.append(u)
                u = self.next_gap(u)
            orbits.append(orbit)
        return orbits

    def corner_param(self, t):
        """Arc parameter (0 or 1) of the corner at the start of side t."""
        return 0 if self.sides[t].fwd else 1


def make_standard_page(k, n):
    """Standard page of genus k with n boundary components.

    The cut system is one cocore per band of a disk-with-bands model:
    k interleaved band pairs (the handles) followed by n-1 unlinked bands
    (the extra boundary components).
    """
    if k < 0 or n < 1:
        raise ValueError("genus must be >= 0 and boundary count >= 1")
    if (k, n) == (0, 1):
        raise DegeneratePage("the disk has no arc system")
    sides = []
    for j in range(k):
        p, q = 2 * j, 2 * j + 1
        sides += [Side(p, 0, True), Side(q, 0, True),
                  Side(p, 1, False), Side(q, 1, False)]
    for l in range(n - 1):
        a = 2 * k + l
        sides += [Side(a, 0, True), Side(a, 1, False)]
    page = Page(genus=k, boundary_components=n, sides=tuple(sides))
    assert page.arc_count == 2 * k + n - 1
    assert len(page.gap_orbits()) == n
    return page


# ---------------------------------------------------------------------------
# Embedded paths
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EmbeddedPath:
    """An arc or closed curve in crossing-word coordinates.

    word[i] is the side the path runs into at its i-th crossing; it
    continues from the same arc parameter on the partner side.  params[i]
    is that parameter.  Arcs also carry (gap, position) endpoints; closed
    curves read their word cyclically.
    """
    kind: str                      # "arc" | "closed"
    word: tuple[int, ...]
    params: tuple[Fraction, ...]
    start: tuple[int, Fraction] | None = None
    end: tuple[int, Fraction] | None = None
    label: str = ""
    pushoff_of: tuple[int, int] | None = None   # (arc, level) provenance

    def __post_init__(self):
        assert len(self.word) == len(self.params)
        if self.kind == "arc":
            assert self.start is not None and self.end is not None
        else:
            assert self.kind == "closed"
            assert self.start is None and self.end is None

    def reversed(self, page):
        word = tuple(page.partner(t) for t in reversed(self.word))
        params = tuple(reversed(self.params))
        if self.kind == "arc":
            return replace(self, word=word, params=params,
                           start=self.end, end=self.start)
        return replace(self, word=word, params=params)

    def isotopy_key(self, page):
        """Canonical key of the oriented isotopy class (positions
        forgotten; for arcs, rel endpoints)."""
        word = reduced_word(page, self.kind, self.word)[0]
        if self.kind == "arc":
            return ("arc", word, self.start, self.end)
        return ("closed", _min_rotation(word))

    def unoriented_key(self, page):
        a = self.isotopy_key(page)
        b = self.reversed(page).isotopy_key(page)
        return min(a, b)


def _min_rotation(word):
    if not word:
        return ()
    rots = [word[i:] + word[:i] for i in range(len(word))]
    return min(rots)


def reduced_word(page, kind, word, params=None):
    """Freely (cyclically, for closed paths) reduce a crossing word.

    Returns (word, params) with cancelling adjacent pairs
    (t, partner(t)) removed; params follow their letters.
    """
    w = list(word)
    p = list(params) if params is not None else [None] * len(w)
    changed = True
    while changed:
        changed = False
        i = 0
        while i + 1 < len(w):
            if w[i + 1] == page.partner(w[i]):
                del w[i:i + 2]
                del p[i:i + 2]
                changed = True
                i = max(i - 1, 0)
            else:
                i += 1
        if kind == "closed" and len(w) >= 2 and w[0] == page.partner(w[-1]):
            del p[0], p[-1]
            del w[0], w[-1]
            changed = True
    return tuple(w), tuple(p)


def _empty_pair_reduce_family(page, paths):
    """Freely reduce the words of a family of jointly embedded paths by
    cancelling only *empty* bigons.

    A cancellable adjacent pair (t, partner(t)) bounds a bigon with its
    cut arc; removing it is an isotopy only when no strand of the family
    crosses the arc inside the bigon.  While any word is unreduced an
    innermost bigon is empty, so this terminates in fully reduced words.
    """
    paths = list(paths)

    def arc_params(arc):
        out = []
        for p in paths:
            for li, t in enumerate(p.word):
                if page.sides[t].arc == arc:
                    out.append(p.params[li])
        return out

    changed = True
    while changed:
        changed = False
        for idx, path in enumerate(paths):
            w, prm = list(path.word), list(path.params)
            L = len(w)
            if L < 2:
                continue
            pairs = [(i, i + 1) for i in range(L - 1)]
            if path.kind == "closed" and w[0] == page.partner(w[-1]):
                pairs.append((L - 1, 0))
            for i, j in pairs:
                if w[j] != page.partner(w[i]):
                    continue
                arc = page.sides[w[i]].arc
                lo, hi = sorted((prm[i], prm[j]))
                inside = [q for q in arc_params(arc) if lo < q < hi]
                if inside:
                    continue
                for k in sorted((i, j), reverse=True):
                    del w[k], prm[k]
                paths[idx] = replace(path, word=tuple(w), params=tuple(prm))
                changed = True
                break
            if changed:
                break
    for p in paths:
        assert reduced_word(page, p.kind, p.word)[0] == p.word, \
            "no empty bigon found for an unreduced word"
    return paths


def homology_vector(page, path):
    """Class of a closed curve in H_1 of the page, in the basis dual to
    the cut arcs (signed crossing counts)."""
    vec = [0] * page.arc_count
    for t in path.word:
        s = page.sides[t]
        vec[s.arc] += 1 if s.copy == 1 else -1
    return vec


# ---------------------------------------------------------------------------
# Standard curves and arcs
# ---------------------------------------------------------------------------

def cut_arc_path(page, arc):
    """A transversal copy of cut arc `arc` (zero crossings), for feeding
    cut arcs through the twist machinery."""
    t = page.side_position(arc, 0)
    gap_before = t                      # gap t precedes side t
    gap_after = (t + 1) % len(page.sides)
    return EmbeddedPath(
        kind="arc", word=(), params=(),
        start=(gap_before, Fraction(9, 10)),
        end=(gap_after, Fraction(1, 10)),
        label="a%d" % (arc + 1), pushoff_of=(arc, 0))


def standard_pushoff(page, arc, level):
    """The level-th positive push-off of cut arc `arc` (level 1 is the
    paper's b arc, level 2 the c arc).

    Both endpoints slide positively along the page boundary, so the arc
    crosses its cut arc once near the parameter-1 end and crosses every
    lower-level push-off once, forming one crossing cluster per arc whose
    quadrant pattern matches the basepoint region correctly.
    """
    assert level >= 1
    t0 = page.side_position(arc, 0)
    t1 = page.side_position(arc, 1)
    e0_gap = (t1 + 1) % len(page.sides)   # gap past the corner at arc param 0
    e1_gap = (t0 + 1) % len(page.sides)   # gap past the corner at arc param 1
    pos = Fraction(level, level + 1)
    touch = 1 - Fraction(1, 2 ** (level + 1))
    name = {1: "b", 2: "c"}.get(level, "push%d" % level)
    return EmbeddedPath(
        kind="arc", word=(t1,), params=(touch,),
        start=(e0_gap, pos), end=(e1_gap, pos),
        label="%s%d" % (name, arc + 1), pushoff_of=(arc, level))


def push_off(page, src):
    """Positive push-off of a cut arc or an iterated push-off."""
    if src.pushoff_of is None:
        raise ValueError("push_off is defined for cut arcs and their "
                         "iterated push-offs")
    arc, level = src.pushoff_of
    return standard_pushoff(page, arc, level + 1)


def core_curve(page, arc, param=Fraction(1, 4)):
    """Core of band `arc`: a closed curve crossing only that cut arc,
    once."""
    t1 = page.side_position(arc, 1)
    return EmbeddedPath(kind="closed", word=(t1,), params=(param,),
                        label="core%d" % (arc + 1))


def boundary_parallel_curve(page, component):
    """Closed curve parallel to the given boundary component (0-based,
    components ordered by smallest gap index)."""
    orbits = page.gap_orbits()
    orbit = orbits[component]
    word = []
    params = []
    for t in orbit:
        word.append(t)
        if page.corner_param(t) == 0:
            params.append(Fraction(1, 7))
        else:
            params.append(Fraction(6, 7))
    return EmbeddedPath(kind="closed", word=tuple(word), params=tuple(params),
                        label="bdry%d" % (component + 1))


# ---------------------------------------------------------------------------
# Realization: exact straight-chord pictures in the cut polygon
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryPoint:
    kind: str            # "corner" | "touch" | "endpoint"
    item: tuple          # corner: (side, "start"/"end")
                         # touch: (path, letter, "arr"/"dep")
                         # endpoint: (path, "start"/"end")
    rank: int
    coord: tuple


@dataclass
class Realization:
    """A joint straight-chord picture of several paths in the polygon."""
    page: Page
    paths: list
    mirror: bool
    points: list = field(default_factory=list)
    point_index: dict = field(default_factory=dict)   # identity -> rank
    chords: list = field(default_factory=list)        # per path: [(rank_from, rank_to)]
    _cross_cache: dict = field(default_factory=dict)

    def point(self, rank):
        return self.points[rank]

    def chord_count(self, i):
        return len(self.chords[i])

    def crossings(self, i, j):
        """Transverse crossings between paths i and j (i == j allowed).

        Each crossing is a dict with chord indices, exact parameters in
        (0,1) along each chord, and the sign det(dir_i, dir_j).
        """
        key = (i, j) if i <= j else (j, i)
        if key not in self._cross_cache:
            self._cross_cache[key] = self._compute_crossings(*key)
        out = self._cross_cache[key]
        if i <= j:
            return out
        return [dict(ci=c["cj"], ti=c["tj"], cj=c["ci"], tj=c["ti"],
                     sign=-c["sign"]) for c in out]

    def _compute_crossings(self, i, j):
        out = []
        chords_i = self.chords[i]
        chords_j = self.chords[j]
        for ci, (a1, a2) in enumerate(chords_i):
            start_j = ci + 1 if i == j else 0
            for cj in range(start_j, len(chords_j)):
                b1, b2 = chords_j[cj]
                if len({a1, a2, b1, b2}) < 4:
                    continue
                lo, hi = min(a1, a2), max(a1, a2)
                if (lo < b1 < hi) == (lo < b2 < hi):
                    continue
                ti, tj, sign = _segment_cross(
                    self.points[a1].coord, self.points[a2].coord,
                    self.points[b1].coord, self.points[b2].coord)
                out.append(dict(ci=ci, ti=ti, cj=cj, tj=tj, sign=sign))
        return out

    def self_crossing_count(self, i):
        return len(self.crossings(i, i))


def _segment_cross(p1, p2, q1, q2):
    """Exact intersection of two crossing segments.

    Returns (t, s, sign): parameters along p and q and the sign of
    det(p2-p1, q2-q1).
    """
    dx1, dy1 = p2[0] - p1[0], p2[1] - p1[1]
    dx2, dy2 = q2[0] - q1[0], q2[1] - q1[1]
    den = dx1 * dy2 - dy1 * dx2
    assert den != 0
    ex, ey = q1[0] - p1[0], q1[1] - p1[1]
    t = Fraction(ex * dy2 - ey * dx2, den)
    s = Fraction(ex * dy1 - ey * dx1, den)
    assert 0 < t < 1 and 0 < s < 1
    return t, s, (1 if den > 0 else -1)


def realize(page, paths, mirror=False):
    """Joint realization of a list of paths.

    Boundary points are ordered counterclockwise around the cut polygon
    (clockwise when mirror is set, which reverses the orientation for the
    bottom copy of a Heegaard surface) and placed at integer points of a
    parabola, so that chord crossings are exactly the endpoint
    interleavings.
    """
    nsides = len(page.sides)
    entries = []   # (identity tuple) in ccw order

    # touches indexed by the side they appear on
    by_side = {t: [] for t in range(nsides)}
    for pi, path in enumerate(paths):
        for li, t in enumerate(path.word):
            by_side[t].append((path.params[li], pi, li, "arr"))
            by_side[page.partner(t)].append((path.params[li], pi, li, "dep"))
    by_gap = {t: [] for t in range(nsides)}
    for pi, path in enumerate(paths):
        if path.kind == "arc":
            by_gap[path.start[0]].append((path.start[1], pi, "start"))
            by_gap[path.end[0]].append((path.end[1], pi, "end"))

    # spacer points between consecutive marked points of one item keep
    # every chord an honest interior chord (a chord between two adjacent
    # hull points would coincide with the boundary segment between them)
    spacer_id = [0]

    def with_spacers(marked, item_kind, item):
        out = []
        for k, (param, entry) in enumerate(marked):
            if k > 0:
                mid = (marked[k - 1][0] + param) / 2
                out.append(("spacer",
                            (spacer_id[0], item_kind, item, mid)))
                spacer_id[0] += 1
            out.append(entry)
        return out

    for t in range(nsides):
        marked = [(param, ("endpoint", (pi, which)))
                  for param, pi, which in sorted(by_gap[t])]
        entries.extend(with_spacers(marked, "gap", t))
        entries.append(("corner", (t, "start")))
        touches = sorted(by_side[t])
        if not page.sides[t].fwd:
            touches.reverse()
        marked = [(param, ("touch", (pi, li, role)))
                  for param, pi, li, role in touches]
        entries.extend(with_spacers(marked, "side", t))
        entries.append(("corner", (t, "end")))

    points = []
    index = {}
    for rank, (kind, item) in enumerate(entries):
        y = rank * rank
        coord = (rank, -y if mirror else y)
        bp = BoundaryPoint(kind=kind, item=item, rank=rank, coord=coord)
        points.append(bp)
        index[(kind, item)] = rank

    chords = []
    for pi, path in enumerate(paths):
        cl = []
        L = len(path.word)
        if path.kind == "arc":
            stops = [index[("endpoint", (pi, "start"))]]
            for li in range(L):
                stops.append(index[("touch", (pi, li, "arr"))])
                stops.append(index[("touch", (pi, li, "dep"))])
            stops.append(index[("endpoint", (pi, "end"))])
            for a in range(0, len(stops) - 1, 2):
                cl.append((stops[a], stops[a + 1]))
        else:
            for li in range(L):
                nxt = (li + 1) % L
                cl.append((index[("touch", (pi, li, "dep"))],
                           index[("touch", (pi, nxt, "arr"))]))
        chords.append(cl)

    return Realization(page=page, paths=list(paths), mirror=mirror,
                       points=points, point_index=index, chords=chords)


def is_embedded(page, path):
    if len(path.word) == 0 and path.kind == "closed":
        return True
    return realize(page, [path]).self_crossing_count(0) == 0


def check_twist_curve(page, curve):
    word, _ = reduced_word(page, "closed", curve.word, curve.params)
    if curve.kind != "closed":
        raise NonEmbeddedCurve("twist curves must be closed")
    if not word:
        raise NonEmbeddedCurve("twist about a null-homotopic curve")
    if not is_embedded(page, curve):
        raise NonEmbeddedCurve("twist curve is not embedded")


# ---------------------------------------------------------------------------
# Geometric intersection numbers
# ---------------------------------------------------------------------------

def _crossing_pos(path, cross, which):
    return (cross["c" + which], cross["t" + which])


def _forward_span_letters_closed(L, c1, c2):
    """Letters crossed walking forward from chord c1 to chord c2 on a
    closed path (chord j runs from letter j to letter j+1)."""
    out = []
    j = c1
    while j != c2:
        out.append((j + 1) % L)
        j = (j + 1) % L
    return out


def _bigon_pairs(page, x, y, crossings):
    """Indices (into crossings) of one removable bigon pair, or None."""
    n = len(crossings)
    if n < 2:
        return None

    def along(path, which):
        order = sorted(range(n),
                       key=lambda k: _crossing_pos(path, crossings[k], which))
        return order

    order_x = along(x, "i")
    order_y = along(y, "j")
    pos_x = {k: r for r, k in enumerate(order_x)}
    pos_y = {k: r for r, k in enumerate(order_y)}
    Lx, Ly = len(x.word), len(y.word)

    def x_span(k1, k2):
        """Side-letters of x between crossings k1 -> k2 walking forward,
        or None if other crossings lie between."""
        r1, r2 = pos_x[k1], pos_x[k2]
        c1 = crossings[k1]["ci"]
        c2 = crossings[k2]["ci"]
        if x.kind == "arc":
            if r2 - r1 != 1:
                return None
            return [x.word[li] for li in range(c1, c2)]
        if (r1 + 1) % len(order_x) != r2 % len(order_x):
            return None
        if c1 == c2:
            if crossings[k1]["ti"] < crossings[k2]["ti"]:
                return []
            # wrap once around the whole closed path
            return [x.word[(c1 + 1 + k) % Lx] for k in range(Lx)]
        return [x.word[li]
                for li in _forward_span_letters_closed(Lx, c1, c2)]

    def y_span(k1, k2, backward):
        r1, r2 = pos_y[k1], pos_y[k2]
        c1, c2 = crossings[k1]["cj"], crossings[k2]["cj"]
        if not backward:
            if y.kind == "arc":
                if r2 - r1 != 1:
                    return None
                return [y.word[li] for li in range(c1, c2)]
            if (r1 + 1) % len(order_y) != r2 % len(order_y):
                return None
            if c1 == c2:
                if crossings[k1]["tj"] < crossings[k2]["tj"]:
                    return []
                return [y.word[(c1 + 1 + k) % Ly] for k in range(Ly)]
            return [y.word[li]
                    for li in _forward_span_letters_closed(Ly, c1, c2)]
        # walk backward along y from k1 to k2
        if y.kind == "arc":
            if r1 - r2 != 1:
                return None
            return [page.partner(y.word[li])
                    for li in range(c1 - 1, c2 - 1, -1)]
        if (r2 + 1) % len(order_y) != r1 % len(order_y):
            return None
        if c1 == c2:
            if crossings[k1]["tj"] > crossings[k2]["tj"]:
                return []
            return [page.partner(y.word[(c1 - k) % Ly]) for k in range(Ly)]
        fwd = _forward_span_letters_closed(Ly, c2, c1)
        return [page.partner(y.word[li]) for li in reversed(fwd)]

    for k1 in range(n):
        for k2 in range(n):
            if k1 == k2:
                continue
            sx = x_span(k1, k2)
            if sx is None:
                continue
            for backward in (False, True):
                sy = y_span(k1, k2, backward)
                if sy is None:
                    continue
                if list(sx) == list(sy):
                    return (k1, k2)
    return None


def raw_crossings(page, x, y):
    real = realize(page, [x, y])
    return real.crossings(0, 1)


def geometric_intersection(page, x, y):
    """Minimal transverse intersection number of two embedded paths
    (rel endpoints, for arcs)."""
    if x is y:
        return 0
    crossings = list(raw_crossings(page, x, y))
    while True:
        pair = _bigon_pairs(page, x, y, crossings)
        if pair is None:
            break
        k1, k2 = pair
        crossings = [c for idx, c in enumerate(crossings)
                     if idx not in (k1, k2)]
    return len(crossings)


# ---------------------------------------------------------------------------
# Dehn twists
# ---------------------------------------------------------------------------

def _minimal_crossing_set(page, real, curve_idx, path_idx):
    """Crossings of the twist curve with a path after bigon reduction, so
    splicing happens on a minimal-position representative."""
    crossings = list(real.crossings(path_idx, curve_idx))
    curve = real.paths[curve_idx]
    path = real.paths[path_idx]
    while True:
        pair = _bigon_pairs(page, path, curve, crossings)
        if pair is None:
            break
        k1, k2 = pair
        crossings = [c for idx, c in enumerate(crossings)
                     if idx not in (k1, k2)]
    return crossings


def _left_direction_sign(page, side_t):
    """Does the left side of a path arriving at side_t point toward
    increasing arc parameter?

    A chord arriving at the convex polygon boundary always has its left
    normal pointing counterclockwise along the boundary, so this is +1
    exactly when the counterclockwise traversal of side_t follows the arc
    parameter.
    """
    return 1 if page.sides[side_t].fwd else -1


def _separate_params(page, paths):
    """Resolve exact coincidences of touch parameters across a family.

    The realization breaks parameter ties by (path, letter) order; this
    rewrites tied parameters as honestly distinct values in the same
    order, which is an isotopy of the configuration.  Needed before
    twisting so that annulus band widths are meaningful.
    """
    by_arc = {}
    for pi, path in enumerate(paths):
        for li, t in enumerate(path.word):
            by_arc.setdefault(page.sides[t].arc, []).append(
                (path.params[li], pi, li))
    new_params = {pi: list(p.params) for pi, p in enumerate(paths)}
    for arc, items in by_arc.items():
        items.sort()
        values = sorted({v for v, _, _ in items})
        groups = {}
        for v, pi, li in items:
            groups.setdefault(v, []).append((pi, li))
        for v, members in groups.items():
            if len(members) == 1:
                continue
            above = [w for w in values if w > v]
            delta = (above[0] - v) if above else (1 - v)
            members.sort()
            for k, (pi, li) in enumerate(members[1:], start=1):
                new_params[pi][li] = v + Fraction(k, len(members) + 1) * delta
    return [replace(p, params=tuple(new_params[pi]))
            for pi, p in enumerate(paths)]


def _loop_letters(page, curve, entry_chord, forward):
    """Touch indices of one full loop of the twist curve starting just
    after (forward) or just before (backward) a crossing on entry_chord.
    Returns [(letter, word_side)] in traversal order."""
    L = len(curve.word)
    out = []
    if forward:
        for step in range(1, L + 1):
            s = (entry_chord + step) % L
            out.append((s, curve.word[s]))
    else:
        for step in range(0, L):
            s = (entry_chord - step) % L
            out.append((s, page.partner(curve.word[s])))
    return out


def apply_twist_to_paths(page, curve, exponent, paths):
    """Apply a single Dehn twist t_curve^{exponent} (exponent +-1) to a
    family of paths simultaneously.

    The twisted family is computed by the annulus surgery: each crossing
    of a path with the twist curve is replaced by a full loop parallel to
    the curve, inserted at an exact transverse offset.  Joint application
    keeps disjoint families disjoint.
    """
    assert exponent in (+1, -1)
    check_twist_curve(page, curve)
    rw, rp = reduced_word(page, "closed", curve.word, curve.params)
    rcurve = replace(curve, word=rw, params=rp)
    system = _separate_params(page, [rcurve] + list(paths))
    rcurve = system[0]
    real = realize(page, system)
    L = len(rcurve.word)

    # bands: half-width around each curve touch, from gaps to every other
    # touch parameter on the same arc in the joint system
    eps = []
    for li in range(L):
        t = rcurve.word[li]
        arc = page.sides[t].arc
        p0 = rcurve.params[li]
        near = [Fraction(0), Fraction(1)]
        for pi, pth in enumerate(system):
            for lj, tj in enumerate(pth.word):
                if page.sides[tj].arc == arc and (pi, lj) != (0, li):
                    near.append(pth.params[lj])
        dist = min(abs(p0 - q) for q in near if q != p0)
        eps.append(dist / 2)

    dirs = [_left_direction_sign(page, rcurve.word[li]) for li in range(L)]

    # all crossings with the curve, jointly ranked along each curve chord
    per_chord = {l: [] for l in range(L)}
    path_cross = {}
    for pi in range(1, len(system)):
        crs = _minimal_crossing_set(page, real, 0, pi)
        path_cross[pi] = crs
        for c in crs:
            per_chord[c["cj"]].append((c["tj"], pi, c["ci"], c))
    theta = {}
    for l in range(L):
        lst = sorted(per_chord[l], key=lambda e: (e[0], e[1], e[2]))
        cnt = len(lst)
        for rank, (_, pi, ci, c) in enumerate(lst):
            sigma = Fraction(2 * rank + 1, 2 * cnt + 1)
            theta[id(c)] = l + sigma

    out = []
    for pi in range(1, len(system)):
        path = system[pi]
        crs = path_cross[pi]
        by_chord = {}
        for c in crs:
            by_chord.setdefault(c["ci"], []).append(c)
        for lst in by_chord.values():
            lst.sort(key=lambda c: c["ti"])

        new_word = []
        new_params = []

        def insert_loops(chord_idx):
            for c in by_chord.get(chord_idx, []):
                th = theta[id(c)]
                ins = CHIRALITY * exponent * c["sign"]
                for s, side in _loop_letters(page, rcurve, c["cj"], ins > 0):
                    # the spiral's transverse offset winds with the twist:
                    # a right twist advances with the angle, a left twist
                    # against it
                    frac = (exponent * (Fraction(s) - th)) % L
                    u = 2 * frac / L - 1
                    assert u != 0
                    new_word.append(side)
                    new_params.append(rcurve.params[s] + u * eps[s] * dirs[s])

        Lp = len(path.word)
        if path.kind == "arc":
            insert_loops(0)
            for li in range(Lp):
                new_word.append(path.word[li])
                new_params.append(path.params[li])
                insert_loops(li + 1)
        else:
            for li in range(Lp):
                new_word.append(path.word[li])
                new_params.append(path.params[li])
                insert_loops(li)

        out.append(replace(path, word=tuple(new_word),
                           params=tuple(new_params)))
    return _empty_pair_reduce_family(page, out)


# ---------------------------------------------------------------------------
# Mapping class words
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MappingClassWord:
    """A word in Dehn twists; letters[0] acts first.

    Stored freely reduced: adjacent twists about the same curve with
    opposite signs cancel.
    """
    letters: tuple  # of (EmbeddedPath closed, +1 | -1)

    @staticmethod
    def identity():
        return MappingClassWord(())

    def __mul__(self, other):
        raise TypeError("use compose(g, h) to form hg")

    def inverse(self):
        return MappingClassWord(tuple((c, -e) for c, e in
                                      reversed(self.letters)))

    def __len__(self):
        return len(self.letters)


def make_word(page, letters):
    """Build a freely reduced MappingClassWord from (curve, exponent)
    pairs with arbitrary integer exponents."""
    flat = []
    for curve, exp in letters:
        check_twist_curve(page, curve)
        step = 1 if exp > 0 else -1
        for _ in range(abs(exp)):
            flat.append((curve, step))
    reduced = []
    for letter in flat:
        if reduced:
            c0, e0 = reduced[-1]
            c1, e1 = letter
            if e0 == -e1 and c0.unoriented_key(page) == c1.unoriented_key(page):
                reduced.pop()
                continue
        reduced.append(letter)
    return MappingClassWord(tuple(reduced))


def compose(page, g, h):
    """The word for h o g (apply g first): concatenate g then h."""
    return make_word(page, list(g.letters) + list(h.letters))


def apply_mapping_class_to_paths(page, word, paths):
    current = list(paths)
    for curve, exp in word.letters:
        current = apply_twist_to_paths(page, curve, exp, current)
    return current


def apply_mapping_class(page, word, path):
    return apply_mapping_class_to_paths(page, word, [path])[0]
