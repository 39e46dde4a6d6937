"""Deduction engine.

Compiles a representation table into polynomial constraints on prime-power
values, propagates them with the rule chain, branches on rational roots and
collects the terminal branches into a ``SearchReport``.
"""

import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple, Union

from quadcommute.branch import Branch, BranchStatus, Caps, Constraint, normalize
from quadcommute.config import Config
from quadcommute.exactalg import deflate, format_rational
from quadcommute.families import Family, family_value, known_families, prime_power_values
from quadcommute.forms import BinaryQuadraticForm, FormError, representation_table
from quadcommute.multfn import PartialMultiplicativeFunction, constrained_variables, ring_for_limit, variable_name
from quadcommute.rule_factory import RuleFactory
from quadcommute.rules import RuleChain
from quadcommute.stats import SearchStats

logger = logging.getLogger(__name__)


class Match(str, Enum):
    CONSISTENT = 'consistent'
    INCONSISTENT = 'inconsistent'


def compile_constraints(form: BinaryQuadraticForm, limit: int,
                        fn_state: PartialMultiplicativeFunction,
                        caps: Caps = Caps()) -> List[Constraint]:
    """One constraint per representation n = Q(x, y) with n, x, y <= limit, deduplicated.

    Forms that are not reduced can represent small n with arguments above the
    limit. Those representations are skipped: fewer constraints only widen the
    leaves.
    """
    if limit < 1:
        return []
    seen = set()
    constraints = []
    skipped = 0
    for n, reps in representation_table(form, limit).items():
        for rep in reps:
            if rep.x > limit or rep.y > limit:
                skipped += 1
                continue
            poly = fn_state.value_at(n) - form.evaluate(fn_state.value_at(rep.x), fn_state.value_at(rep.y))
            poly = normalize(poly)
            if poly in seen:
                continue
            seen.add(poly)
            constraint = Constraint(len(constraints), rep, poly)
            constraint.refresh(caps)
            constraints.append(constraint)
    if skipped:
        logger.debug("skipped %d representations with arguments above %d", skipped, limit)
    logger.debug("compiled %d constraints for %s up to %d", len(constraints), form, limit)
    return constraints


def default_chain() -> RuleChain:
    return RuleFactory(Config()).build_rule_chain()


def propagate(branch: Branch, chain: Optional[RuleChain] = None,
              stats: Optional[SearchStats] = None) -> Branch:
    """Apply rules until none fires, then settle the branch status."""
    chain = chain or default_chain()
    while branch.status is BranchStatus.OPEN:
        result = chain.apply(branch)
        if result is None:
            break
        if stats is not None:
            stats.record_rule(result.name, branch.id, result.detail)
    branch.settle()
    return branch


def branch_on(branch: Branch, constraint: Constraint) -> List[Branch]:
    """One child per rational root (ascending), plus a stuck child for an irrational cofactor."""
    variables = constraint.variables
    if len(variables) != 1 or constraint.polynomial.degree(variables[0]) < 2:
        raise ValueError(f"cannot branch on {constraint.describe()}")
    var = variables[0]
    name = variable_name(var)
    roots, cofactor = deflate(constraint.polynomial)
    children = []
    for index, root in enumerate(roots):
        child = branch.fork(f"{name}={format_rational(root)}", index)
        child.assign(var, root)
        children.append(child)
    if not cofactor.is_constant:
        child = branch.fork(f"{name}~irrational", len(roots))
        for c in child.constraints:
            if c.uid == constraint.uid:
                c.polynomial = cofactor
                c.kind = 'cofactor'
        child.status = BranchStatus.STUCK
        child.reason = f"{name} is a root of {cofactor.render()}"
        children.append(child)
    logger.debug("%s: branching on %s into %d", branch.id, name, len(children))
    return children


def match_leaf(leaf: Branch, family: Family, constrained: Optional[Iterable[int]] = None) -> Match:
    """Consistent iff the family agrees with every determined value and definition.

    A definition ``f(q) := expr`` holds when expr, evaluated at the family's
    values, equals the family's f(q). With ``constrained`` only those prime
    powers are compared.
    """
    if leaf.status is not BranchStatus.CONSISTENT:
        raise ValueError(f"{leaf.id} is {leaf.status.value}, not consistent")
    scope = None if constrained is None else set(constrained)
    for q, value in leaf.determined().items():
        if scope is not None and q not in scope:
            continue
        if family_value(family, q) != value:
            return Match.INCONSISTENT
    for q, expr in leaf.definitions.items():
        if scope is not None and q not in scope:
            continue
        if expr.evaluate(prime_power_values(family, expr.variables)) != family_value(family, q):
            return Match.INCONSISTENT
    return Match.CONSISTENT


@dataclass
class LeafSummary:
    id: str
    path: Tuple[int, ...]
    status: BranchStatus
    values: Dict[str, Union[int, str]]
    families: List[str]
    pending: List[str] = field(default_factory=list)
    determined: Dict[int, object] = field(default_factory=dict, repr=False)

    @property
    def explained(self) -> bool:
        return self.status is BranchStatus.CONSISTENT and bool(self.families)

    def to_dict(self) -> dict:
        data = {'id': self.id, 'status': self.status.value,
                'values': self.values, 'families': self.families}
        if self.status is BranchStatus.STUCK:
            data['pending'] = self.pending
        return data


@dataclass
class SearchReport:
    form: BinaryQuadraticForm
    limit: int
    incomplete: bool
    leaves: List[LeafSummary]
    contradictions: int

    def counts(self) -> Dict[str, int]:
        counts = {status.value: 0 for status in (BranchStatus.CONSISTENT, BranchStatus.STUCK)}
        for leaf in self.leaves:
            counts[leaf.status.value] += 1
        counts[BranchStatus.CONTRADICTION.value] = self.contradictions
        return counts

    def consistent(self) -> List[LeafSummary]:
        return [leaf for leaf in self.leaves if leaf.status is BranchStatus.CONSISTENT]

    def stuck(self) -> List[LeafSummary]:
        return [leaf for leaf in self.leaves if leaf.status is BranchStatus.STUCK]

    def unexplained(self) -> List[LeafSummary]:
        return [leaf for leaf in self.leaves if not leaf.explained]

    def to_dict(self) -> dict:
        return {
            'form': self.form.spec(),
            'limit': self.limit,
            'incomplete': self.incomplete,
            'leaves': [leaf.to_dict() for leaf in self.leaves],
            'contradictions': self.contradictions,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def summarize_leaf(branch: Branch, families: List[Family],
                   constrained: Optional[Iterable[int]] = None) -> LeafSummary:
    matching = []
    if branch.status is BranchStatus.CONSISTENT:
        matching = [f.name for f in families
                    if match_leaf(branch, f, constrained) is Match.CONSISTENT]
    pending = [c.polynomial.render() for c in branch.unsatisfied()]
    return LeafSummary(
        id=branch.id,
        path=branch.path,
        status=branch.status,
        values=branch.fn_state.to_report(branch.definitions),
        families=matching,
        pending=pending,
        determined=branch.determined(),
    )


def search(form: BinaryQuadraticForm, limit: int, config: Optional[Config] = None,
           stats: Optional[SearchStats] = None, chain: Optional[RuleChain] = None) -> SearchReport:
    """Explore every branch for Q up to N.

    Nodes are processed a depth at a time in path order, so the caps cut the
    same branches whatever the thread count.
    """
    if limit < 3:
        raise FormError(f"search needs N >= 3, got {limit}")
    config = config or Config()
    stats = stats if stats is not None else SearchStats()
    chain = chain or RuleFactory(config).build_rule_chain()
    caps = Caps.from_config(config)
    started = time.perf_counter()

    fn_state = PartialMultiplicativeFunction(limit, ring_for_limit(limit, config.degree_cap))
    constraints = compile_constraints(form, limit, fn_state, caps)
    constrained = constrained_variables(constraints)
    families = known_families(limit)
    root = Branch(fn_state, constraints, caps)

    leaves: List[Branch] = []
    contradictions = 0
    created = 1
    incomplete = False
    frontier = [root]

    def run(branch: Branch) -> Branch:
        return propagate(branch, chain, stats)

    executor = ThreadPoolExecutor(max_workers=config.threads) if config.threads > 1 else None
    try:
        while frontier:
            processed = list(executor.map(run, frontier)) if executor else [run(b) for b in frontier]
            frontier = []
            for branch in processed:
                if branch.status is BranchStatus.CONTRADICTION:
                    contradictions += 1
                    stats.record_termination(branch.status.value)
                    continue
                if branch.status is not BranchStatus.OPEN:
                    leaves.append(branch)
                    stats.record_termination(branch.status.value)
                    continue
                if branch.depth >= config.max_depth:
                    logger.warning("%s: depth cap %d reached", branch.id, config.max_depth)
                    incomplete = True
                    continue
                children = branch_on(branch, branch.branch_candidate())
                if created + len(children) > config.max_branches:
                    logger.warning("branch cap %d reached at %s", config.max_branches, branch.id)
                    incomplete = True
                    continue
                created += len(children)
                stats.record_branches(len(children))
                for child in children:
                    if child.status is BranchStatus.STUCK:
                        leaves.append(child)
                        stats.record_termination(child.status.value)
                    else:
                        frontier.append(child)
    finally:
        if executor:
            executor.shutdown()

    leaves.sort(key=lambda b: b.path)
    stats.record_search(time.perf_counter() - started)
    report = SearchReport(
        form=form,
        limit=limit,
        incomplete=incomplete,
        leaves=[summarize_leaf(b, families, constrained) for b in leaves],
        contradictions=contradictions,
    )
    logger.info("%s N=%d: %s%s", form, limit, report.counts(), ' (incomplete)' if incomplete else '')
    return report
