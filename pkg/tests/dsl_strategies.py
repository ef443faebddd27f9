"""Hypothesis strategies for random theory documents."""

from hypothesis import strategies as st

from defreq.context import ContextCondition, ContextProfile, DefaultDomain, Dimension
from defreq.dsl import Document
from defreq.engine import DefaultRule, DefaultTheory
from defreq.logic import Atom, ClauseSet, Literal, is_satisfiable
from defreq.records import RequirementRecord

PREDICATES = ["p", "q", "isOnTime", "ownVhcl", "n", "M", "domain", "a b", "x-1"]
CONSTANTS = ["a", "Planes&Co", "Trains&Co", "boats", "c 2", "X"]
OBJECTS = ["a", "Planes&Co", "boats", "obj one"]

text = st.text(st.characters(blacklist_characters="\n", blacklist_categories=("Cs",)), max_size=12)


@st.composite
def literals(draw, constants=CONSTANTS):
    pred = draw(st.sampled_from(PREDICATES))
    args = tuple(draw(st.lists(st.sampled_from(constants), max_size=2)))
    return Literal(Atom(pred, args), draw(st.booleans()))


@st.composite
def rules(draw, rule_id="", depth=0):
    prereqs = []
    for _ in range(draw(st.integers(0, 2))):
        if depth < 2 and draw(st.integers(0, 4)) == 0:
            prereqs.append(draw(rules(depth=depth + 1)))
        else:
            prereqs.append(draw(literals()))
    cons = draw(literals())
    just = cons if draw(st.booleans()) else draw(literals())
    return DefaultRule(rule_id, tuple(prereqs), just, cons)


@st.composite
def conditions(draw):
    pred = draw(st.sampled_from(PREDICATES))
    others = draw(st.lists(st.sampled_from([c for c in CONSTANTS if c != "X"]), max_size=1))
    args = tuple(others[:1] + ["X"]) if draw(st.booleans()) else tuple(["X"] + others)
    return ContextCondition(
        draw(st.sampled_from(list(Dimension))), Literal(Atom(pred, args), draw(st.booleans())), draw(text)
    )


@st.composite
def domains(draw):
    kind = draw(st.sampled_from(["none", "conditions", "members"]))
    if kind == "none":
        return None
    conds = draw(st.lists(conditions(), max_size=4))
    used = {c.dimension for c in conds}
    na = draw(st.sets(st.sampled_from([d for d in Dimension if d not in used]))) if len(used) < 6 else set()
    if kind == "members":
        members = tuple(draw(st.lists(st.sampled_from(OBJECTS), min_size=1, max_size=3)))
        return DefaultDomain(members=members, not_applicable=frozenset(na))
    return DefaultDomain(conditions=tuple(conds), not_applicable=frozenset(na))


def _satisfiable_units(draw, lits):
    seen = {}
    for l in lits:
        seen.setdefault(l.atom, l)
    return list(seen.values())


@st.composite
def documents(draw):
    background = ClauseSet.of(_satisfiable_units(draw, draw(st.lists(literals(), max_size=5))))
    extra = draw(st.lists(st.lists(literals(), min_size=2, max_size=3), max_size=2))
    for clause in extra:
        wider = background.union([frozenset(clause)])
        if is_satisfiable(wider):
            background = wider
    records = []
    ids = draw(st.lists(st.sampled_from(["d1", "d2", "D", "Dp", "default", "rule 7", "D[a]"]), unique=True, max_size=4))
    for rid in ids:
        r = draw(rules(rule_id=rid))
        r = DefaultRule(r.id, r.prerequisites, r.justification, r.consequent, draw(domains()))
        records.append(RequirementRecord.default(r, draw(text)))
    for _ in range(draw(st.integers(0, 2))):
        records.insert(draw(st.integers(0, len(records))), RequirementRecord.ground(draw(literals()), draw(text)))
    facts = {}
    for obj in draw(st.lists(st.sampled_from(OBJECTS), unique=True, max_size=3)):
        facts[obj] = ClauseSet.of(_satisfiable_units(draw, draw(st.lists(literals(), max_size=4))))
    theory = DefaultTheory(background, tuple(r.rule for r in records if r.is_default))
    return Document(theory, ContextProfile(facts), records)
