"""
Groups Module
Fundamental-group presentations, decision procedures and group-class oracles
"""

from .words import Word, free_reduce, inverse
from .presentation import (
    ComponentImage,
    EdgeWordMap,
    GroupPresentation,
    Pi1Image,
    edge_path_presentation,
    inclusion_image,
)
from .abelian import AbelianInvariants, abelianization
from .coset_enumeration import Exceeded, Index, todd_coxeter
from .tietze import Simplification, simplify_presentation, simplify_with_map
from .stallings import subgroup_rank
from .group_classes import (
    AMENABLE,
    LOG3_LOWER,
    TRIVIAL,
    Answer,
    Budget,
    ClassKind,
    GroupClass,
    LogRate,
    RoundingMode,
    Verdict,
    classify_component,
    classify_group,
    classify_image,
    exp_below,
    finite_cover_rate,
    render_fraction,
    subexp_below,
)

__all__ = [
    'AMENABLE',
    'LOG3_LOWER',
    'TRIVIAL',
    'AbelianInvariants',
    'Answer',
    'Budget',
    'ClassKind',
    'ComponentImage',
    'EdgeWordMap',
    'Exceeded',
    'GroupClass',
    'GroupPresentation',
    'Index',
    'LogRate',
    'Pi1Image',
    'RoundingMode',
    'Simplification',
    'Verdict',
    'Word',
    'abelianization',
    'classify_component',
    'classify_group',
    'classify_image',
    'edge_path_presentation',
    'exp_below',
    'finite_cover_rate',
    'free_reduce',
    'inclusion_image',
    'inverse',
    'render_fraction',
    'simplify_presentation',
    'simplify_with_map',
    'subexp_below',
    'subgroup_rank',
    'todd_coxeter',
]
