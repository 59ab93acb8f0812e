"""
Certify Module
Statements, inference rules and the fact store that turns cover bounds into vanishing certificates
"""

from .statements import Predicate, Statement, entails
from .rules import RULES, FactIndex, Rule, rule_catalog, rule_lookup
from .engine import (
    Contradiction,
    Fact,
    FactStore,
    Provenance,
    ProvenanceKind,
    QueryResult,
    SaturationReport,
    TraceNode,
    find_contradictions,
    query,
    saturate,
)

__all__ = [
    'Contradiction',
    'Fact',
    'FactIndex',
    'FactStore',
    'Predicate',
    'Provenance',
    'ProvenanceKind',
    'QueryResult',
    'RULES',
    'Rule',
    'SaturationReport',
    'Statement',
    'TraceNode',
    'entails',
    'find_contradictions',
    'query',
    'rule_catalog',
    'rule_lookup',
    'saturate',
]
