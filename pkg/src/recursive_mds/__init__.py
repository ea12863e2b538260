from recursive_mds.fields import FieldSpec, ExtensionSpec, ExtElement, find_primitive_nth_root
from recursive_mds.poly import Polynomial
from recursive_mds.linalg import CompanionSpec, MdsVerdict, companion_matrix, mat_pow, is_mds, lfsr_clock
from recursive_mds.bch import SearchParams, SolutionRecord, direct_construct, search, verify_solution
from recursive_mds.classify import classify_set, frobenius_orbit
from recursive_mds.oracle import exhaustive_companion_search
from recursive_mds.config import Settings, get_settings, set_settings
from recursive_mds.progress import progress_hub

__all__ = [
    "FieldSpec",
    "ExtensionSpec",
    "ExtElement",
    "find_primitive_nth_root",
    "Polynomial",
    "CompanionSpec",
    "MdsVerdict",
    "companion_matrix",
    "mat_pow",
    "is_mds",
    "lfsr_clock",
    "SearchParams",
    "SolutionRecord",
    "direct_construct",
    "search",
    "verify_solution",
    "classify_set",
    "frobenius_orbit",
    "exhaustive_companion_search",
    "Settings",
    "get_settings",
    "set_settings",
    "progress_hub",
]
