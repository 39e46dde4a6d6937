"""Base rule classes for constraint propagation."""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Optional


@dataclass
class RuleResult:
    """Outcome of one rule firing."""
    name: str
    detail: str = ''
    terminal: bool = False  # True when the firing closed the branch


class Rule(ABC):
    """Abstract base class for propagation rules."""

    # Class-level registry mapping rule names to classes
    _registry: Dict[str, type] = {}

    def __init__(self, rule_config=None):
        """Initialize rule with config.

        Args:
            rule_config: RuleConfig object with options
        """
        self.rule_config = rule_config
        self.options = dict(getattr(rule_config, 'options', None) or {})

    @classmethod
    def register(cls, name: str):
        """Decorator to register a rule class."""
        def wrapper(rule_class):
            if not hasattr(rule_class, 'SCHEMA'):
                raise AttributeError(f"Rule '{name}' must define SCHEMA class attribute")
            rule_class.name = name
            cls._registry[name] = rule_class
            return rule_class
        return wrapper

    @classmethod
    def create(cls, name: str, rule_config=None) -> Optional['Rule']:
        """Create a rule instance by name."""
        rule_class = cls._registry.get(name)
        if rule_class:
            return rule_class(rule_config)
        return None

    @classmethod
    def registered(cls):
        return sorted(cls._registry)

    @classmethod
    def schema(cls, name: str) -> dict:
        rule_class = cls._registry.get(name)
        if rule_class is None:
            raise KeyError(name)
        return rule_class.SCHEMA

    def option(self, key: str):
        return self.options.get(key, self.SCHEMA[key]['default'])

    @abstractmethod
    def apply(self, branch) -> Optional[RuleResult]:
        """Fire once on the branch, or return None when the rule does not apply."""


# Import all rules so they register themselves
from quadcommute.rules.evaluate_rule import EvaluateRule
from quadcommute.rules.linear_rule import LinearRule
from quadcommute.rules.gcd_rule import GcdRule
from quadcommute.rules.resultant_rule import ResultantRule
from quadcommute.rules.rule_chain import RuleChain

__all__ = [
    'Rule',
    'RuleResult',
    'EvaluateRule',
    'LinearRule',
    'GcdRule',
    'ResultantRule',
    'RuleChain',
]
