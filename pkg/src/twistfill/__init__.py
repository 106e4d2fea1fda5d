"""Filling families of simple closed curves built from Dehn twists, with exact verification."""
from __future__ import annotations

__version__ = "0.1.0"

from .surface_map import CombMap, FaceReport, trace_faces, validate_map
from .curve_system import (
    CurveRef,
    CurveSystem,
    CurveSystemError,
    IntersectionTable,
    algebraic_intersections,
    decompose,
    find_bigon,
    intersection_number,
    intersection_table,
    is_filling,
    reduce_bigons,
)
from .twist_engine import (
    FamilyReport,
    TwistError,
    TwistWord,
    apply_twist_word,
    construct_family,
    dehn_twist,
    family_report,
    relation_probe,
    verify_conjugation,
    verify_cor23,
    verify_prop22,
)
from .free_group import (
    ReducedWord,
    check_pingpong_inclusion,
    in_pingpong_set,
    pingpong_generator,
    reduce,
    relation_search_abstract,
    stallings_rank,
)
from .catalog_io import CatalogEntry, ParseError, get_system, load_catalog, parse_csf, serialize_csf
