"""Rule chain for applying propagation rules in priority order."""

import logging
from typing import List, Optional

from quadcommute.rules import Rule, RuleResult

logger = logging.getLogger(__name__)


class RuleChain:
    """Chains multiple rules with priority order."""

    def __init__(self, rules: List[Rule]):
        self.rules = rules

    @property
    def names(self) -> List[str]:
        return [rule.name for rule in self.rules]

    def apply(self, branch) -> Optional[RuleResult]:
        """Fire the first rule that applies; None at fixpoint."""
        for rule in self.rules:
            result = rule.apply(branch)
            if result:
                logger.debug("%s: %s %s", branch.id, result.name, result.detail)
                return result
        return None
