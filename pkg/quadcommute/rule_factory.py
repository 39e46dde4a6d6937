"""Rule factory for building the propagation chain from configuration."""

import logging
from typing import List

from quadcommute.config import Config
from quadcommute.rules import Rule, RuleChain

logger = logging.getLogger(__name__)


class RuleFactory:
    """Factory for creating rules from configuration."""

    def __init__(self, config: Config = None):
        self.config = config or Config()

    def build_rules(self) -> List[Rule]:
        rules = []
        for name in self.config.rule_priority:
            rule_config = self.config.get_rule(name)
            if not rule_config.enabled:
                logger.info("rule %s disabled", name)
                continue
            rule = Rule.create(name, rule_config)
            if rule is None:
                raise ValueError(f"unknown rule {name!r}")
            rules.append(rule)
        return rules

    def build_rule_chain(self) -> RuleChain:
        chain = RuleChain(self.build_rules())
        logger.debug("rule chain: %s", ' < '.join(chain.names))
        return chain
