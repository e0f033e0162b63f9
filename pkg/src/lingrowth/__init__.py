"""Growth, expansion and quasirandomness experiments in SL, GL and PSL over finite fields."""

from .errors import LingrowthError, ResourceCap, UsageError
from .field import FieldCtx, FieldElem, make_field, parse_field
from .groups import GroupElem, GroupSpec, group_order, make_spec, parse_spec
from .growth import GrowthReport, check_ruzsa, check_subgroup_growth, coset_cover_count, slow_growth_candidate, tripling
from .reports import VERSION as __version__
from .sets import ElementSet, power_set, product_set
from .verdict import Verdict
from .words import Word, parse_word, word_image

__all__ = [
    "ElementSet",
    "FieldCtx",
    "FieldElem",
    "GroupElem",
    "GroupSpec",
    "GrowthReport",
    "LingrowthError",
    "ResourceCap",
    "UsageError",
    "Verdict",
    "Word",
    "check_ruzsa",
    "check_subgroup_growth",
    "coset_cover_count",
    "group_order",
    "make_field",
    "make_spec",
    "parse_field",
    "parse_spec",
    "parse_word",
    "power_set",
    "product_set",
    "slow_growth_candidate",
    "tripling",
    "word_image",
]
