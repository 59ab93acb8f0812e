import random
from fractions import Fraction

import pytest

from certify import (
    RULES,
    FactIndex,
    FactStore,
    Predicate,
    ProvenanceKind,
    Statement,
    entails,
    query,
    rule_catalog,
    rule_lookup,
    saturate,
)
from corpus import entropy_facts, fnca_facts, klein_facts, mapping_torus_facts, s1, torus_facts
from covers import VertexCover
from errors import MalformedInputError, UnsupportedInputError
from fibration import circle_arc_cover
from groups import AMENABLE, TRIVIAL, GroupClass


def test_parse_and_render():
    s = Statement.parse("cat_upper(torus, amenable, 2)")
    assert s.predicate == Predicate.CAT_UPPER
    assert s.args == ("torus", AMENABLE, 2)
    assert str(s) == "cat_upper(torus, amenable, 2)"
    assert str(Statement.parse("manifold(M, 3, true, true, false)")) == "manifold(M, 3, true, true, false)"
    assert Statement.from_dict(s.to_dict()) == s


def test_parse_class_with_rate():
    s = Statement.parse("fca(torus, subexp<1/2, 1)")
    assert str(s.args[1]) == "subexp<1/2"
    assert Statement.parse("fnca(X, 1/50)").args[1].value == Fraction(1, 50)


def test_wildcards_only_in_goals():
    goal = Statement.parse("cat_upper(torus, _, 3)")
    assert not goal.is_ground
    with pytest.raises(MalformedInputError, match="wildcards"):
        FactStore().assert_axiom(goal, "anything")


@pytest.mark.parametrize(
    "text, message",
    [
        ("nonsense(X)", "unknown predicate"),
        ("cat_upper(X, amenable)", "takes 3 arguments"),
        ("cat_upper", "expected predicate"),
        ("cat_upper(X, amenable, -1)", "nonnegative"),
        ("manifold(M, 3, maybe, true, true)", "true or false"),
        ("cat_upper(X, nilpotent, 2)", ""),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(MalformedInputError, match=message):
        Statement.parse(text)


def test_entailment_order():
    two = Statement.parse("cat_upper(X, amenable, 2)")
    three = Statement.parse("cat_upper(X, amenable, 3)")
    assert entails(two, three)
    assert not entails(three, two)
    assert entails(Statement.parse("cat_lower(X, amenable, 4)"), Statement.parse("cat_lower(X, amenable, 3)"))
    assert entails(Statement.parse("fnca(X, 1/2)"), Statement.parse("fnca(X, 1/3)"))
    assert not entails(Statement.parse("fnca(X, 1/3)"), Statement.parse("fnca(X, 1/2)"))
    assert entails(two, Statement.parse("cat_upper(X, bar(amenable), 2)"))
    assert entails(two, Statement.parse("cat_upper(_, _, _)"))
    assert not entails(two, Statement.parse("cat_upper(Y, amenable, 2)"))


def test_catalog_matches_rules():
    assert [r.rule_id for r in RULES] == list(rule_catalog)
    assert all(rule.citation for rule in RULES)
    assert {r.rule_id for r in RULES if r.external} == {"R14"}


def test_torus_simplicial_volume_vanishes():
    store = torus_facts()
    report = saturate(store)
    assert not report.exhausted
    assert report.contradictions == []
    result = query(store, Statement.parse("simvol_zero(torus)"))
    assert result.success
    assert result.trace.rule_ids() == ["R1", "R3"]
    assert result.trace.depth == 2
    assert "[R3]" in result.render()
    assert query(store, Statement.parse("cat_upper(torus, amenable, 2)")).success


def test_fibration_bound_alone_does_not_reach_hyperbolic_mapping_torus():
    store = mapping_torus_facts()
    saturate(store)
    assert store.find(Statement.parse("cat_upper(M, amenable, 6)")) is not None
    assert not query(store, Statement.parse("cat_upper(M, amenable, 3)")).success
    result = query(store, Statement.parse("simvol_zero(M)"))
    assert not result.success
    rendered = result.render()
    assert "cannot derive simvol_zero(M)" in rendered
    assert "R3 needs: cat_upper(M, amenable, 3)" in rendered


def test_klein_bottle_through_orientation_cover():
    store = klein_facts()
    saturate(store)
    result = query(store, Statement.parse("simvol_zero(klein)"))
    assert result.success
    assert result.trace.rule_ids() == ["R20"]


def test_entropy_of_torus_vanishes():
    store = entropy_facts()
    report = saturate(store)
    assert report.contradictions == []
    result = query(store, Statement.parse("ent_zero(torus)"))
    assert result.success
    assert "R9" in result.trace.rule_ids()
    assert query(store, Statement.parse("ent_lower(rose, 2)")).success
    assert query(store, Statement.parse("ent_positive(rose)")).success


def test_non_collapsing_passes_to_finite_quotients():
    store = fnca_facts()
    report = saturate(store)
    assert report.contradictions == []
    assert query(store, Statement.parse("ent_positive(hyperbolic_product)")).success
    result = query(store, Statement.parse("fnca(quotient, 1/50)"))
    assert result.success
    assert result.trace.rule_ids()[-1] == "R11"
    assert query(store, Statement.parse("ent_positive(quotient)")).success
    assert not query(store, Statement.parse("fnca(quotient, 1/40)")).success


def test_contradictions_are_reported():
    store = FactStore()
    store.assert_axiom(Statement.parse("simvol_zero(X)"), "claimed")
    store.assert_axiom(Statement.parse("simvol_positive(X)"), "also claimed")
    store.assert_axiom(Statement.parse("cat_upper(Y, amenable, 2)"), "claimed")
    store.assert_axiom(Statement.parse("cat_lower(Y, amenable, 3)"), "claimed")
    report = saturate(store)
    assert len(report.contradictions) == 2
    assert "simplicial volume" in report.contradictions[0].description


def test_round_limit_marks_exhaustion():
    store = torus_facts()
    report = saturate(store, max_rounds=1)
    assert report.exhausted
    assert report.rounds == 1
    assert not query(store, Statement.parse("simvol_zero(torus)")).success


def test_fact_limit_marks_exhaustion():
    store = torus_facts()
    report = saturate(store, max_facts=len(store) + 1)
    assert report.exhausted
    assert "fact limit" in report.reason


def test_derivation_is_deterministic():
    first, second = torus_facts(), torus_facts()
    saturate(first)
    saturate(second)
    assert [str(f.statement) for f in first] == [str(f.statement) for f in second]


def test_axioms_need_citations():
    with pytest.raises(MalformedInputError, match="citation"):
        FactStore().assert_axiom(Statement.parse("dimension(X, 2)"), "  ")


def test_computed_facts_check_their_witness():
    store = FactStore()
    with pytest.raises(MalformedInputError, match="more than 1"):
        store.add_computed(Statement.parse("cat_upper(s1, amenable, 1)"), circle_arc_cover(s1()))
    with pytest.raises(MalformedInputError, match="lives on"):
        store.add_computed(Statement.parse("cat_upper(torus, amenable, 1)"), VertexCover(s1(), ((0, 1, 2),)))
    with pytest.raises(UnsupportedInputError):
        store.add_computed(Statement.parse("simvol_zero(s1)"), s1())
    assert len(store) == 0


def test_derived_premises_must_exist():
    with pytest.raises(MalformedInputError):
        FactStore().add_derived(Statement.parse("simvol_zero(X)"), "R3", (0, 1))


# --- seeded properties over the fact corpus ---

FACT_CORPUS = [torus_facts, klein_facts, mapping_torus_facts, entropy_facts, fnca_facts]


def _copy_base_facts(source, target):
    for fact in source:
        p = fact.provenance
        if p.kind == ProvenanceKind.AXIOM:
            target.assert_axiom(fact.statement, p.citation)
        elif p.kind == ProvenanceKind.COMPUTED:
            target.add_computed(fact.statement, p.witness)


def _leaves(node):
    if not node.children:
        return [node.fact]
    return [leaf for child in node.children for leaf in _leaves(child)]


@pytest.mark.parametrize("build", FACT_CORPUS, ids=lambda b: b.__name__)
def test_every_derivation_step_replays(build):
    store = build()
    saturate(store)
    index = FactIndex(store)
    for fact in store:
        p = fact.provenance
        if p.kind != ProvenanceKind.DERIVED:
            assert p.premises == () and fact.depth == 0
            continue
        assert all(i < fact.id for i in p.premises)
        assert fact.depth == 1 + max(store.get(i).depth for i in p.premises)
        assert (fact.statement, p.premises) in list(rule_lookup[p.rule_id].apply(index))


def test_trace_leaves_are_enough_to_rederive_the_goal():
    goal = Statement.parse("simvol_zero(torus)")
    store = torus_facts()
    saturate(store)
    leaves = _leaves(query(store, goal).trace)
    assert all(f.provenance.kind != ProvenanceKind.DERIVED for f in leaves)

    rebuilt = FactStore()
    for fact in leaves:
        if fact.provenance.kind == ProvenanceKind.AXIOM:
            rebuilt.assert_axiom(fact.statement, fact.provenance.citation)
        else:
            rebuilt.add_computed(fact.statement, fact.provenance.witness)
    saturate(rebuilt)
    assert rebuilt.find(goal) is not None


@pytest.mark.parametrize("seed", range(10))
def test_more_facts_never_lose_conclusions(seed):
    rng = random.Random(seed)
    build, other = rng.sample(FACT_CORPUS, 2)
    small = build()
    saturate(small)

    large = FactStore()
    _copy_base_facts(build(), large)
    _copy_base_facts(other(), large)
    classes = [TRIVIAL, AMENABLE, GroupClass.parse("subexp<1/2")]
    for _ in range(3):
        name = rng.choice(["torus", "klein", "M", "s1"])
        large.assert_axiom(Statement.of("cat_upper", name, rng.choice(classes), rng.randint(1, 4)), "assumed")
    report = saturate(large)
    assert not report.exhausted
    assert all(large.find(f.statement) is not None for f in small)
