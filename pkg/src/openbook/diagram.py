"""Heegaard diagrams and triple-diagrams of an open book.

The Heegaard surface of an open book (page S, monodromy g) is the double
S_{1/2} union -S_0, a closed surface of genus 2k+n-1.  Each attaching
curve is a pair of page arcs, one in each copy, glued at their common
boundary endpoints:

    alpha_i = cut arc  (top)  +  cut arc  (bottom)
    beta_i  = b_i      (top)  +  g(b_i)   (bottom)
    gamma_i = c_i      (top)  +  h(g(c_i)) (bottom)

with b_i, c_i the iterated positive push-offs of the cut arcs.

The diagram is assembled as a combinatorial map: each copy of the page is
realized as an exact straight-chord arrangement in its cut polygon (the
bottom copy mirrored, since it carries the reversed orientation), faces
are traced planarly, and the two polygons are glued along matching side
copies (producing the alpha curves) and along matching boundary intervals
(the seam, which is not a diagram curve: regions merge across it).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import NonEmbeddedCurve, WindingBudgetExceeded
from .page import (EmbeddedPath, realize, standard_pushoff,
                   apply_mapping_class_to_paths, compose)

TOP, BOTTOM = 0, 1


# ---------------------------------------------------------------------------
# Planar arrangement of one polygon copy
# ---------------------------------------------------------------------------

def _angle_less(u, v):
    """u strictly before v, counterclockwise from the positive x axis."""
    def half(w):
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1
    hu, hv = half(u), half(v)
    if hu != hv:
        return hu < hv
    return u[0] * v[1] - u[1] * v[0] > 0


def _sort_ccw(vectors):
    order = []
    for i in range(len(vectors)):
        placed = False
        for k in range(len(order)):
            if _angle_less(vectors[i], vectors[order[k]]):
                order.insert(k, i)
                placed = True
                break
        if not placed:
            order.append(i)
    return order


@dataclass
class PlanarArrangement:
    """Exact arrangement of one polygon copy: nodes, segments, and faces
    traced with their interior on the left."""
    copy: int
    real: object
    nodes: dict = field(default_factory=dict)       # node -> coord
    segments: dict = field(default_factory=dict)    # seg -> (node, node, meta)
    cross_meta: dict = field(default_factory=dict)  # node -> crossing info
    faces: list = field(default_factory=list)       # walks [(seg, dir)]
    dart_face: dict = field(default_factory=dict)   # (seg, dir) -> face idx
    boundary_item: dict = field(default_factory=dict)


def _boundary_items(page, real):
    """Item (('side', t) or ('gap', t)) of the boundary segment starting
    at each rank."""
    items = []
    for rank, bp in enumerate(real.points):
        if bp.kind == "corner":
            t, which = bp.item
            items.append(("side", t) if which == "start"
                         else ("gap", (t + 1) % len(page.sides)))
        elif bp.kind == "endpoint":
            pi, se = bp.item
            path = real.paths[pi]
            gap = (path.start if se == "start" else path.end)[0]
            items.append(("gap", gap))
        elif bp.kind == "spacer":
            _sid, item_kind, t, _mid = bp.item
            items.append((item_kind, t))
        else:
            pi, li, role = bp.item
            t = real.paths[pi].word[li]
            items.append(("side", t if role == "arr" else page.partner(t)))
    return items


def build_arrangement(page, real, copy):
    arr = PlanarArrangement(copy=copy, real=real)
    for bp in real.points:
        arr.nodes[("b", bp.rank)] = (Fraction(bp.coord[0]),
                                     Fraction(bp.coord[1]))

    chord_cuts = {}
    xid = 0
    for i in range(len(real.paths)):
        for j in range(i, len(real.paths)):
            for c in real.crossings(i, j):
                a1, a2 = real.chords[i][c["ci"]]
                p1, p2 = arr.nodes[("b", a1)], arr.nodes[("b", a2)]
                t = c["ti"]
                nid = ("x", xid)
                xid += 1
                arr.nodes[nid] = (p1[0] + t * (p2[0] - p1[0]),
                                  p1[1] + t * (p2[1] - p1[1]))
                arr.cross_meta[nid] = dict(paths=(i, j),
                                           chords=(c["ci"], c["cj"]),
                                           sign=c["sign"])
                chord_cuts.setdefault((i, c["ci"]), []).append((t, nid))
                chord_cuts.setdefault((j, c["cj"]), []).append((c["tj"], nid))

    for pi in range(len(real.paths)):
        for ci, (a, b) in enumerate(real.chords[pi]):
            cuts = sorted(chord_cuts.get((pi, ci), []))
            for k in range(1, len(cuts)):
                assert cuts[k - 1][0] != cuts[k][0], \
                    "degenerate triple point in arrangement"
            stops = [("b", a)] + [nid for _, nid in cuts] + [("b", b)]
            for k in range(len(stops) - 1):
                arr.segments[("C", pi, ci, k)] = (
                    stops[k], stops[k + 1],
                    dict(kind="chord", path=pi, chord=ci, seg=k))

    items = _boundary_items(page, real)
    npoints = len(real.points)
    for rank in range(npoints):
        sid = ("B", rank)
        arr.segments[sid] = (("b", rank), ("b", (rank + 1) % npoints),
                             dict(kind="boundary", item=items[rank]))
        arr.boundary_item[sid] = items[rank]

    _trace_faces(arr)
    return arr


def _trace_faces(arr):
    incident = {}
    for sid, (a, b, meta) in arr.segments.items():
        incident.setdefault(a, []).append((sid, +1))
        incident.setdefault(b, []).append((sid, -1))

    def direction(dart):
        sid, d = dart
        a, b, _ = arr.segments[sid]
        pa, pb = arr.nodes[a], arr.nodes[b]
        v = (pb[0] - pa[0], pb[1] - pa[1])
        return v if d > 0 else (-v[0], -v[1])

    # next germ CLOCKWISE from each germ: traversing rot[(v, rev(d))]
    # continues the face that lies on the left of d
    rot = {}
    for node, germs in incident.items():
        vecs = [direction(g) for g in germs]
        order = _sort_ccw(vecs)
        for k, oi in enumerate(order):
            rot[(node, germs[oi])] = germs[order[(k - 1) % len(order)]]

    def head(dart):
        sid, d = dart
        a, b, _ = arr.segments[sid]
        return b if d > 0 else a

    seen = set()
    walks = []
    for sid in sorted(arr.segments):
        for d in (+1, -1):
            if (sid, d) in seen:
                continue
            walk = []
            cur = (sid, d)
            while cur not in seen:
                seen.add(cur)
                walk.append(cur)
                cur = rot[(head(cur), (cur[0], -cur[1]))]
            walks.append(walk)

    kept = []
    outer = 0
    for walk in walks:
        area = Fraction(0)
        for sid, d in walk:
            a, b, _ = arr.segments[sid]
            pa, pb = (arr.nodes[a], arr.nodes[b]) if d > 0 else \
                     (arr.nodes[b], arr.nodes[a])
            area += pa[0] * pb[1] - pb[0] * pa[1]
        if area > 0:
            kept.append(walk)
        else:
            outer += 1
    assert outer == 1, "expected exactly one outer face, got %d" % outer
    arr.faces = kept
    for fi, walk in enumerate(kept):
        for dart in walk:
            arr.dart_face[dart] = fi


# ---------------------------------------------------------------------------
# The glued diagram
# ---------------------------------------------------------------------------

@dataclass
class DiagramCurve:
    family: str
    index: int
    top: EmbeddedPath | None
    bottom: EmbeddedPath | None


@dataclass
class RegionInfo:
    index: int
    faces: tuple
    chi: int
    corner_count: int
    euler4: int                   # 4 * Euler measure
    contains_z: bool


@dataclass
class Diagram:
    """A pointed Heegaard diagram or triple-diagram as a combinatorial
    map of the closed surface."""
    page: object
    families: tuple
    curves: list
    words: dict
    vertices: dict = field(default_factory=dict)
    edges: dict = field(default_factory=dict)
    faces: dict = field(default_factory=dict)
    regions: list = field(default_factory=list)
    face_region: dict = field(default_factory=dict)
    z_region: int = -1
    crossings: dict = field(default_factory=dict)
    curve_edges: dict = field(default_factory=dict)
    corner_records: dict = field(default_factory=dict)
    genus: int = 0

    @property
    def closed_genus(self):
        return self.genus

    def crossing_vertices(self, fam_a, fam_b):
        out = []
        for vid in sorted(self.crossings, key=repr):
            info = self.crossings[vid]
            pair = {info["families"][0][0], info["families"][1][0]}
            if pair == {fam_a, fam_b}:
                out.append(vid)
        return out

    def region_count(self):
        return len(self.regions)

    def stats(self):
        per_pair = {}
        per_pair_top = {}
        for vid, info in self.crossings.items():
            key = "-".join(sorted((info["families"][0][0],
                                   info["families"][1][0])))
            per_pair[key] = per_pair.get(key, 0) + 1
            if info["copy"] == TOP:
                per_pair_top[key] = per_pair_top.get(key, 0) + 1
        return dict(genus=self.genus,
                    crossings=len(self.crossings),
                    crossings_by_pair=per_pair,
                    top_crossings_by_pair=per_pair_top,
                    regions=len(self.regions),
                    faces=len(self.faces))


def _separate_endpoints(page, curves):
    """Resolve exact endpoint-position ties between different curves on
    the same gap (nudging top and bottom halves together, so the seam
    stays matched)."""
    non_alpha = [c for c in curves if c.family != "alpha"]
    by_gap = {}
    for ci, c in enumerate(non_alpha):
        for which in ("start", "end"):
            gap, pos = getattr(c.top, which)
            by_gap.setdefault(gap, []).append((pos, ci, which))
    moves = {}
    for gap, items in by_gap.items():
        items.sort()
        values = sorted({v for v, _, _ in items})
        groups = {}
        for v, ci, which in items:
            groups.setdefault(v, []).append((ci, which))
        for v, members in groups.items():
            if len(members) == 1:
                continue
            above = [w for w in values if w > v]
            delta = (above[0] - v) if above else (1 - v)
            members.sort()
            for k, (ci, which) in enumerate(members[1:], start=1):
                moves[(ci, which)] = v + Fraction(k, len(members) + 1) * delta
    if not moves:
        return curves
    out = []
    ci = 0
    for c in curves:
        if c.family == "alpha":
            out.append(c)
            continue
        top, bottom = c.top, c.bottom
        for which in ("start", "end"):
            if (ci, which) in moves:
                gap = getattr(top, which)[0]
                newpos = (gap, moves[(ci, which)])
                top = replace(top, **{which: newpos})
                bottom = replace(bottom, **{which: newpos})
        out.append(DiagramCurve(c.family, c.index, top, bottom))
        ci += 1
    return out


def assemble_diagram(page, curves, words):
    """Glue the two polygon-copy arrangements into the diagram map."""
    from .page import _separate_params

    curves = _separate_endpoints(page, curves)
    families = []
    for c in curves:
        if c.family not in families:
            families.append(c.family)
    non_alpha = [c for c in curves if c.family != "alpha"]
    path_curve = {pi: (c.family, c.index) for pi, c in enumerate(non_alpha)}

    tops = _separate_params(page, [c.top for c in non_alpha])
    bottoms = _separate_params(page, [c.bottom for c in non_alpha])
    reals = {TOP: realize(page, tops, mirror=False),
             BOTTOM: realize(page, bottoms, mirror=True)}
    for copy in (TOP, BOTTOM):
        for pi in range(len(non_alpha)):
            if reals[copy].self_crossing_count(pi) != 0:
                raise NonEmbeddedCurve(
                    "half of curve %s is not embedded (copy %d)"
                    % (path_curve[pi], copy))
        for pi in range(len(non_alpha)):
            for pj in range(pi + 1, len(non_alpha)):
                if path_curve[pi][0] == path_curve[pj][0] and \
                        reals[copy].crossings(pi, pj):
                    raise NonEmbeddedCurve(
                        "same-family curves %s and %s intersect (copy %d)"
                        % (path_curve[pi], path_curve[pj], copy))
    arrs = {copy: build_arrangement(page, reals[copy], copy)
            for copy in (TOP, BOTTOM)}

    diag = Diagram(page=page, families=tuple(families), curves=list(curves),
                   words=words, genus=page.arc_count)
    m = page.arc_count

    # ----- vertices -------------------------------------------------------
    vmap = {}
    for copy in (TOP, BOTTOM):
        real = arrs[copy].real
        for bp in real.points:
            node = ("b", bp.rank)
            if bp.kind == "corner":
                t, which = bp.item
                side = page.sides[t]
                param = page.corner_param(t) if which == "start" \
                    else 1 - page.corner_param(t)
                vid = ("corner", side.arc, param)
            elif bp.kind == "endpoint":
                pi, se = bp.item
                path = real.paths[pi]
                gap, pos = path.start if se == "start" else path.end
                vid = ("seam", gap, pos)
            elif bp.kind == "spacer":
                _sid, item_kind, t, mid = bp.item
                if item_kind == "side":
                    vid = ("sspacer", copy, page.sides[t].arc, mid)
                else:
                    vid = ("gspacer", t, mid)
            else:
                pi, li, _role = bp.item
                vid = ("touch", copy, pi, li)
            vmap[(copy, node)] = vid
            diag.vertices.setdefault(vid, dict(kind=vid[0]))
        for nid in arrs[copy].cross_meta:
            vid = ("cross", copy, nid[1])
            vmap[(copy, nid)] = vid
            diag.vertices[vid] = dict(kind="cross")

    # ----- edges ----------------------------------------------------------
    edge_of_dart = {}

    for copy in (TOP, BOTTOM):
        arr = arrs[copy]
        for sid, (a, b, meta) in arr.segments.items():
            if meta["kind"] != "chord":
                continue
            fam, idx = path_curve[meta["path"]]
            eid = ("C", copy, meta["path"], meta["chord"], meta["seg"])
            diag.edges[eid] = dict(kind="curve", family=fam, index=idx,
                                   copy=copy,
                                   v=(vmap[(copy, a)], vmap[(copy, b)]))
            edge_of_dart[(copy, sid, +1)] = (eid, +1)
            edge_of_dart[(copy, sid, -1)] = (eid, -1)

    def endpoint_param(copy, node, item):
        """Parameter of a boundary node on the given item (corners
        resolve to the item ends)."""
        bp = arrs[copy].real.points[node[1]]
        if bp.kind == "corner":
            t, which = bp.item
            if item[0] == "side":
                p = page.corner_param(t)
                return Fraction(p if which == "start" else 1 - p)
            return Fraction(0 if which == "start" else 1)
        if bp.kind == "endpoint":
            pi, se = bp.item
            path = arrs[copy].real.paths[pi]
            return (path.start if se == "start" else path.end)[1]
        if bp.kind == "spacer":
            return bp.item[3]
        pi, li, _role = bp.item
        return arrs[copy].real.paths[pi].params[li]

    per_item = {}
    for copy in (TOP, BOTTOM):
        for sid, item in arrs[copy].boundary_item.items():
            per_item.setdefault((copy, item), []).append(sid)

    def intervals(copy, item):
        out = []
        for sid in per_item.get((copy, item), []):
            a, b, _ = arrs[copy].segments[sid]
            pa = endpoint_param(copy, a, item)
            pb = endpoint_param(copy, b, item)
            lo, hi = (pa, pb) if pa <= pb else (pb, pa)
            out.append(((lo, hi), sid, +1 if pa <= pb else -1))
        out.sort()
        return out

    # alpha edges: side-copy intervals glued pairwise within each copy
    for copy in (TOP, BOTTOM):
        for t in range(len(page.sides)):
            side = page.sides[t]
            if side.copy != 0:
                continue
            u = page.partner(t)
            iv_t = intervals(copy, ("side", t))
            iv_u = intervals(copy, ("side", u))
            assert len(iv_t) == len(iv_u), "side gluing mismatch"
            for k, ((iv, s_t, d_t), (iv2, s_u, d_u)) in enumerate(
                    zip(iv_t, iv_u)):
                assert iv == iv2, "side gluing interval mismatch"
                eid = ("A", copy, side.arc, k)
                a, b, _ = arrs[copy].segments[s_t]
                va, vb = vmap[(copy, a)], vmap[(copy, b)]
                if d_t < 0:
                    va, vb = vb, va
                diag.edges[eid] = dict(kind="curve", family="alpha",
                                       index=side.arc, copy=copy,
                                       interval=iv, v=(va, vb))
                edge_of_dart[(copy, s_t, d_t)] = (eid, +1)
                edge_of_dart[(copy, s_t, -d_t)] = (eid, -1)
                edge_of_dart[(copy, s_u, d_u)] = (eid, +1)
                edge_of_dart[(copy, s_u, -d_u)] = (eid, -1)

    # seam edges: gap intervals glued top-bottom
    for t in range(len(page.sides)):
        iv_top = intervals(TOP, ("gap", t))
        iv_bot = intervals(BOTTOM, ("gap", t))
        assert len(iv_top) == len(iv_bot), \
            "seam endpoint sets differ between the copies"
        for k, ((iv, s_t, d_t), (iv2, s_b, d_b)) in enumerate(
                zip(iv_top, iv_bot)):
            assert iv == iv2, "seam gluing interval mismatch"
            eid = ("S", t, k)
            a, b, _ = arrs[TOP].segments[s_t]
            va, vb = vmap[(TOP, a)], vmap[(TOP, b)]
            if d_t < 0:
                va, vb = vb, va
            diag.edges[eid] = dict(kind="seam", gap=t, interval=iv,
                                   v=(va, vb))
            edge_of_dart[(TOP, s_t, d_t)] = (eid, +1)
            edge_of_dart[(TOP, s_t, -d_t)] = (eid, -1)
            edge_of_dart[(BOTTOM, s_b, d_b)] = (eid, +1)
            edge_of_dart[(BOTTOM, s_b, -d_b)] = (eid, -1)

    # ----- faces and corner records ----------------------------------------
    for copy in (TOP, BOTTOM):
        arr = arrs[copy]
        for fi, walk in enumerate(arr.faces):
            fid = ("F", copy, fi)
            diag.faces[fid] = dict(
                copy=copy,
                walk=tuple(edge_of_dart[(copy, sid, d)] for sid, d in walk))
            n = len(walk)
            for k in range(n):
                sid, d = walk[k]
                a, b, _ = arr.segments[sid]
                headnode = b if d > 0 else a
                vid = vmap[(copy, headnode)]
                if vid[0] not in ("touch", "cross"):
                    continue
                e_in = edge_of_dart[(copy, sid, d)][0]
                e_out = edge_of_dart[(copy, walk[(k + 1) % n][0],
                                      walk[(k + 1) % n][1])][0]
                diag.corner_records.setdefault(vid, []).append(
                    dict(face=fid, germ_edges=frozenset((e_in, e_out))))

    # ----- regions ----------------------------------------------------------
    face_of_dart = {}
    for copy in (TOP, BOTTOM):
        for dart, fi in arrs[copy].dart_face.items():
            sid, d = dart
            eid, ed = edge_of_dart[(copy, sid, d)]
            face_of_dart.setdefault(eid, []).append((("F", copy, fi), ed))

    parent = {fid: fid for fid in diag.faces}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid, e in diag.edges.items():
        owners = face_of_dart.get(eid, [])
        assert len(owners) == 2, (eid, owners)
        e["sides"] = (owners[0][0], owners[1][0])
        e["side_dirs"] = (owners[0][1], owners[1][1])
        assert {owners[0][1], owners[1][1]} == {+1, -1}, eid
        if e["kind"] == "seam":
            ra, rb = find(owners[0][0]), find(owners[1][0])
            if ra != rb:
                parent[ra] = rb

    region_ids = {}
    for fid in sorted(diag.faces):
        root = find(fid)
        if root not in region_ids:
            region_ids[root] = len(region_ids)
    diag.face_region = {fid: region_ids[find(fid)] for fid in diag.faces}

    for eid, e in diag.edges.items():
        if e["kind"] != "curve":
            continue
        (fa, da), (fb, db) = zip(e["sides"], e["side_dirs"])
        left, right = (fa, fb) if da == +1 else (fb, fa)
        e["left"] = diag.face_region[left]
        e["right"] = diag.face_region[right]

    # ----- basepoint --------------------------------------------------------
    # z sits in the top-copy region adjacent to the boundary segment
    # between the endpoint of the first cut arc and the feet of its
    # push-offs: the first interval of the gap carrying those feet.
    z_gap = (page.side_position(0, 1) + 1) % len(page.sides)
    z_candidates = intervals(TOP, ("gap", z_gap))
    assert z_candidates
    (_iv, sid, d) = z_candidates[0]
    for dd in (+1, -1):
        if (sid, dd) in arrs[TOP].dart_face:
            z_face = ("F", TOP, arrs[TOP].dart_face[(sid, dd)])
    diag.z_region = diag.face_region[z_face]

    # ----- region table ------------------------------------------------------
    region_faces = {}
    for fid, rid in diag.face_region.items():
        region_faces.setdefault(rid, []).append(fid)
    corner_count = {rid: 0 for rid in region_faces}
    for vid, recs in diag.corner_records.items():
        for rec in recs:
            corner_count[diag.face_region[rec["face"]]] += 1
    internal_seams = {rid: 0 for rid in region_faces}
    seams_at_vertex = {}
    for eid, e in diag.edges.items():
        if e["kind"] == "seam":
            rid = diag.face_region[e["sides"][0]]
            internal_seams[rid] += 1
            for v in e["v"]:
                seams_at_vertex.setdefault(v, []).append(rid)
    # gap spacer vertices interior to a region (all incident seam edges
    # merged into it) contribute to its Euler characteristic
    interior_vertices = {rid: 0 for rid in region_faces}
    for vid, rids in seams_at_vertex.items():
        if vid[0] == "gspacer" and len(set(rids)) == 1 and len(rids) == 2:
            interior_vertices[rids[0]] += 1
    diag.regions = []
    for rid in sorted(region_faces):
        faces = tuple(sorted(region_faces[rid]))
        chi = len(faces) - internal_seams[rid] + interior_vertices[rid]
        cc = corner_count[rid]
        diag.regions.append(RegionInfo(
            index=rid, faces=faces, chi=chi, corner_count=cc,
            euler4=4 * chi - cc, contains_z=(rid == diag.z_region)))

    # ----- crossings ---------------------------------------------------------
    for copy in (TOP, BOTTOM):
        real = arrs[copy].real
        for pi, path in enumerate(real.paths):
            for li in range(len(path.word)):
                t = path.word[li]
                diag.crossings[("touch", copy, pi, li)] = dict(
                    copy=copy,
                    families=(("alpha", page.sides[t].arc), path_curve[pi]),
                    param=path.params[li])
        for nid, meta in arrs[copy].cross_meta.items():
            i, j = meta["paths"]
            diag.crossings[("cross", copy, nid[1])] = dict(
                copy=copy, families=(path_curve[i], path_curve[j]),
                sign=meta["sign"])

    # ----- curve traversals ---------------------------------------------------
    per_arc = {}
    per_chordseg = {}
    for eid, e in diag.edges.items():
        if e["kind"] != "curve":
            continue
        if e["family"] == "alpha":
            per_arc.setdefault((e["copy"], e["index"]), []).append(
                (e["interval"], eid))
        else:
            _, copy, pi, ci, k = eid
            per_chordseg.setdefault((copy, pi), []).append(((ci, k), eid))
    for arc in range(m):
        trav = [(eid, +1) for _iv, eid in sorted(per_arc.get((TOP, arc), []))]
        trav += [(eid, -1) for _iv, eid in
                 sorted(per_arc.get((BOTTOM, arc), []), reverse=True)]
        diag.curve_edges[("alpha", arc)] = trav
    for pi, famidx in path_curve.items():
        trav = [(eid, +1) for _key, eid in
                sorted(per_chordseg.get((TOP, pi), []))]
        trav += [(eid, -1) for _key, eid in
                 sorted(per_chordseg.get((BOTTOM, pi), []), reverse=True)]
        diag.curve_edges[famidx] = trav

    _validate(diag)
    return diag


def _validate(diag):
    V, E, F = len(diag.vertices), len(diag.edges), len(diag.faces)
    expected = 2 - 2 * diag.genus
    assert V - E + F == expected, \
        "Euler characteristic %d != %d" % (V - E + F, expected)
    total = sum(r.euler4 for r in diag.regions)
    assert total == 4 * expected, \
        "region Euler measures sum to %s/4, expected %d" % (total, expected)
    assert sum(1 for r in diag.regions if r.contains_z) == 1
    for vid in diag.crossings:
        recs = diag.corner_records.get(vid, [])
        assert len(recs) == 4, (vid, recs)


# ---------------------------------------------------------------------------
# Public builders
# ---------------------------------------------------------------------------

def build_heegaard(page, g):
    """The pointed Heegaard diagram of the open book (page, g)."""
    m = page.arc_count
    b_top = [standard_pushoff(page, i, 1) for i in range(m)]
    b_bot = apply_mapping_class_to_paths(page, g, b_top)
    curves = [DiagramCurve("alpha", i, None, None) for i in range(m)]
    curves += [DiagramCurve("beta", i, b_top[i], b_bot[i]) for i in range(m)]
    return assemble_diagram(page, curves, dict(beta=g))


def build_triple(page, g, h):
    """The pointed triple-diagram of the pair (g, h); its three pairwise
    sub-diagrams present the open books of g, h, and hg."""
    m = page.arc_count
    b_top = [standard_pushoff(page, i, 1) for i in range(m)]
    c_top = [standard_pushoff(page, i, 2) for i in range(m)]
    b_bot = apply_mapping_class_to_paths(page, g, b_top)
    hg = compose(page, g, h)
    c_bot = apply_mapping_class_to_paths(page, hg, c_top)
    curves = [DiagramCurve("alpha", i, None, None) for i in range(m)]
    curves += [DiagramCurve("beta", i, b_top[i], b_bot[i]) for i in range(m)]
    curves += [DiagramCurve("gamma", i, c_top[i], c_bot[i])
               for i in range(m)]
    return assemble_diagram(page, curves, dict(beta=g, gamma=hg))


def restrict(diagram, families):
    """The sub-diagram on a subset of the families, reassembled."""
    curves = [c for c in diagram.curves if c.family in families]
    words = {f: w for f, w in diagram.words.items() if f in families}
    return assemble_diagram(diagram.page, curves, words)


def contact_generator(diagram, fam_pair=("alpha", "beta")):
    """The distinguished generator tuple: the single top-copy crossing of
    the same-index curves of the pair, for each index."""
    fams = set(fam_pair)
    points = []
    for i in range(diagram.page.arc_count):
        found = []
        for vid, info in diagram.crossings.items():
            if info["copy"] != TOP:
                continue
            (fa, ia), (fb, ib) = info["families"]
            if {fa, fb} == fams and ia == i and ib == i:
                found.append(vid)
        assert len(found) == 1, \
            "expected one top crossing for %s at index %d, got %d" \
            % (fam_pair, i, len(found))
        points.append(found[0])
    return tuple(points)


# ---------------------------------------------------------------------------
# Winding
# ---------------------------------------------------------------------------

def _wind_variant(page, path, arc, turns, band, direction, insert_at):
    """Insert a finger wound `turns` times around the core of `arc` into
    an arc path (a cancelling spiral, so the isotopy class is unchanged).

    direction selects the wrap handedness, insert_at the word position of
    the splice.
    """
    t1 = page.side_position(arc, 1)
    t0 = page.side_position(arc, 0)
    first, second = (t1, t0) if direction > 0 else (t0, t1)
    a, b = band
    step = (b - a) / (2 * turns + 1)
    letters, params = [], []
    for k in range(1, turns + 1):
        letters.append(first)
        params.append(a + (2 * k - 1) * step)
    for k in range(turns, 0, -1):
        letters.append(second)
        params.append(a + 2 * k * step)
    w, p = list(path.word), list(path.params)
    w[insert_at:insert_at] = letters
    p[insert_at:insert_at] = params
    return replace(path, word=tuple(w), params=tuple(p))


def _param_range(page, paths, arc):
    lo, hi = Fraction(1), Fraction(0)
    for p in paths:
        for li, t in enumerate(p.word):
            if page.sides[t].arc == arc:
                lo = min(lo, p.params[li])
                hi = max(hi, p.params[li])
    if lo > hi:
        lo, hi = Fraction(1, 2), Fraction(1, 2)
    return lo, hi


def _winding_variants(page, bottoms, arc, path, turns):
    lo, hi = _param_range(page, bottoms, arc)
    bands = [(lo / 3, lo * 2 / 3),
             (hi + (1 - hi) / 3, hi + (1 - hi) * 2 / 3)]
    positions = sorted({0, len(path.word)})
    for band in bands:
        if band[0] == band[1]:
            continue
        for direction in (-1, +1):
            for insert_at in positions:
                yield band, direction, insert_at


def wind_for_admissibility(diagram, budget=8):
    """Spiral non-alpha curves around the band cores in the bottom copy
    until the diagram is weakly admissible, doubling the winding number
    per attempt.  Returns the diagram unchanged if it already is."""
    from . import domains

    if domains.is_weakly_admissible(diagram)[0]:
        return diagram
    page = diagram.page

    def try_assign(curves):
        try:
            cand = assemble_diagram(page, curves, diagram.words)
        except (NonEmbeddedCurve, AssertionError):
            return None
        return cand

    current = diagram
    for attempt in range(1, budget + 1):
        turns = 2 ** (attempt - 1)
        non_alpha = [c for c in current.curves if c.family != "alpha"]
        bottoms = [c.bottom for c in non_alpha]
        # single-curve variants first, then one joint fallback
        fallback = {}
        for ci, c in enumerate(non_alpha):
            for band, direction, pos in _winding_variants(
                    page, bottoms, c.index, c.bottom, turns):
                wound = _wind_variant(page, c.bottom, c.index, turns, band,
                                      direction, pos)
                curves = [DiagramCurve(x.family, x.index, x.top,
                                       wound if x is c else x.bottom)
                          if x.family != "alpha" else x
                          for x in current.curves]
                cand = try_assign(curves)
                if cand is None:
                    continue
                if ci not in fallback:
                    fallback[ci] = wound
                if domains.is_weakly_admissible(cand)[0]:
                    return cand
        if fallback:
            curves = []
            k = 0
            for x in current.curves:
                if x.family == "alpha":
                    curves.append(x)
                    continue
                wound = fallback.get(k, x.bottom)
                curves.append(DiagramCurve(x.family, x.index, x.top, wound))
                k += 1
            cand = try_assign(curves)
            if cand is not None:
                if domains.is_weakly_admissible(cand)[0]:
                    return cand
                current = cand
    raise WindingBudgetExceeded(
        "no weakly admissible diagram within %d winding attempts" % budget)
