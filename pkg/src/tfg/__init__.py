"""Genus, genus-one classification and tower rank invariants for ``t*f(x) = g(y)``."""
from .divisor import (
    ErrorKind,
    FunctionDatum,
    Partition,
    SurfaceConfig,
    ValidationError,
    config_from_dict,
    config_to_dict,
    delta,
    delta_pairsum,
    load_config,
    partitions_of,
    validate_config,
)
from .genus import GenusReport, arithmetic_genus, delta_max, genus_report, geometric_genus
from .classifier import (
    GenusOneClass,
    GuardExceeded,
    brute_delta_max,
    canonicalize,
    enumerate_genus_one,
    exceptional_bidegrees,
    is_exceptional,
    side_gcd_ok,
)
from .families import FamilyTag, match_family
from .rank import (
    NotOneZeroOnePole,
    RankReport,
    c1,
    c2_general,
    c2_onepole,
    c2_period,
    component_count,
    mw_rank,
)
from .models import ModelSpec, emit_model, family_catalog, parse_equation

__version__ = "0.1.0"
