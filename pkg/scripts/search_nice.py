"""Offline search: nice + admissible bottom realizations for the two
stubborn annulus diagrams (identity and the left twist)."""

import itertools
import sys
import time
from dataclasses import replace
from fractions import Fraction

sys.path.insert(0, "src")

from openbook.page import (make_standard_page, core_curve, make_word,
                           MappingClassWord, reduced_word, realize)
from openbook.diagram import build_heegaard, assemble_diagram, DiagramCurve
from openbook.errors import NonEmbeddedCurve
from openbook import domains, floer

page = make_standard_page(0, 2)
core = core_curve(page, 0)


def candidates(d, target, L, deadline):
    beta = [c for c in d.curves if c.family == "beta"][0]
    words = [w for w in itertools.product((0, 1), repeat=L)
             if reduced_word(page, "arc", w)[0] == tuple(target)]
    base = [Fraction(i, L + 1) for i in range(1, L + 1)]
    print("words:", len(words), flush=True)
    tried = 0
    for w in words:
        for perm in itertools.permutations(base):
            tried += 1
            if tried % 5000 == 0:
                print("  ...", tried, time.strftime("%H:%M:%S"), flush=True)
                if time.time() > deadline:
                    return
            nb = replace(beta.bottom, word=tuple(w), params=tuple(perm))
            if realize(page, [nb]).self_crossing_count(0) != 0:
                continue
            curves = [c for c in d.curves if c.family == "alpha"] + \
                     [DiagramCurve("beta", 0, beta.top, nb)]
            try:
                cand = assemble_diagram(page, curves, d.words)
            except (NonEmbeddedCurve, AssertionError):
                continue
            if not floer.is_nice(cand):
                continue
            if not domains.is_weakly_admissible(cand)[0]:
                continue
            print("HIT word=%s params=%s regions=%s" %
                  (w, perm, [(r.corner_count, r.contains_z)
                             for r in cand.regions]), flush=True)
            return


t0 = time.time()
print("=== id, L=7", flush=True)
d = build_heegaard(page, MappingClassWord.identity())
candidates(d, (1,), 7, t0 + 2400)

print("=== t^{-1}, L=6", flush=True)
d = build_heegaard(page, make_word(page, [(core, -1)]))
candidates(d, (1, 1), 6, t0 + 4200)

print("done", time.strftime("%H:%M:%S"), flush=True)
