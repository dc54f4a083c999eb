"""Exact-arithmetic toolkit for inflection-line configurations of smooth
plane quartics over finite fields of characteristic at least 5."""

from .catalog import CurveSpec, build, expected_profile, named_maps, roster
from .config import (LineConfiguration, ProjGroup, automorphism_group,
                     curve_automorphisms, from_flexes, is_transporter,
                     transporters)
from .curve import FlexRecord, PlaneQuartic, inflection_scheme
from .errors import FlexlineError
from .gf import (FieldCtx, FieldElement, compositum, embed, field,
                 parse_field_spec, prime_field)
from .proj import ProjMap, ProjPoint

__version__ = "0.1.0"

__all__ = [
    "CurveSpec", "FieldCtx", "FieldElement", "FlexRecord", "FlexlineError",
    "LineConfiguration", "PlaneQuartic", "ProjGroup", "ProjMap", "ProjPoint",
    "automorphism_group", "build", "compositum", "curve_automorphisms",
    "embed", "expected_profile", "field", "from_flexes", "inflection_scheme",
    "is_transporter", "named_maps", "parse_field_spec", "prime_field",
    "roster", "transporters", "__version__",
]
