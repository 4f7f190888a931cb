"""Combinatorial open book decompositions and their Heegaard Floer data."""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    OpenBookError, DegeneratePage, NonEmbeddedCurve, WindingBudgetExceeded,
    NiceificationBudgetExceeded, CapExceeded, NotNice, NotAdmissible,
    NotACycle, UnknownCurve, DslError,
)
from .page import (  # noqa: F401
    Page, EmbeddedPath, MappingClassWord, make_standard_page, cut_arc_path,
    standard_pushoff, push_off, core_curve, boundary_parallel_curve,
    geometric_intersection, apply_mapping_class, make_word, compose,
)
