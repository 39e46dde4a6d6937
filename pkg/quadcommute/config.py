"""Configuration management for quadcommute."""

import dataclasses
import yaml
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from quadcommute.forms import BinaryQuadraticForm, parse_form
from quadcommute.rules import Rule

DEFAULT_RULE_PRIORITY = ['evaluate', 'linear', 'gcd', 'resultant']
OUTPUT_MODES = ('text', 'json')
DEFAULT_CONFIG_FILE = 'quadcommute.yml'


class ConfigError(ValueError):
    """Invalid configuration value."""


@dataclass
class RuleConfig:
    """Individual rule configuration."""
    enabled: bool
    options: Dict[str, Any]


def _default_rules() -> Dict[str, RuleConfig]:
    return {name: RuleConfig(enabled=True, options={}) for name in DEFAULT_RULE_PRIORITY}


@dataclass
class Config:
    """quadcommute configuration."""
    form: Optional[BinaryQuadraticForm] = None
    limit: int = 100
    bound: int = 100
    degree_cap: int = 16
    variable_cap: int = 3
    max_depth: int = 64
    max_branches: int = 10000
    threads: int = 1
    output: str = 'text'
    rule_priority: List[str] = field(default_factory=lambda: list(DEFAULT_RULE_PRIORITY))
    rules: Dict[str, RuleConfig] = field(default_factory=_default_rules)

    def get_rule(self, name: str) -> RuleConfig:
        return self.rules.get(name) or RuleConfig(enabled=True, options={})

    def validate(self) -> 'Config':
        for name in ('limit', 'bound', 'degree_cap', 'variable_cap',
                     'max_depth', 'max_branches', 'threads'):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
        if self.output not in OUTPUT_MODES:
            raise ConfigError(f"output must be one of {', '.join(OUTPUT_MODES)}, got {self.output!r}")
        unknown = [r for r in list(self.rule_priority) + list(self.rules) if r not in DEFAULT_RULE_PRIORITY]
        if unknown:
            raise ConfigError(f"unknown rule(s): {', '.join(sorted(set(unknown)))}")
        for name, rule_config in self.rules.items():
            schema = Rule.schema(name)
            for key, value in rule_config.options.items():
                if key not in schema:
                    raise ConfigError(f"rule {name}: unknown option {key!r}")
                expected = schema[key]['type']
                if not isinstance(value, expected) or (expected is int and isinstance(value, bool)):
                    raise ConfigError(f"rule {name}: {key} must be {expected.__name__}, got {value!r}")
        return self

    def with_overrides(self, **overrides) -> 'Config':
        """Copy with every non-None override applied (command-line flags)."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        if isinstance(changes.get('form'), str):
            changes['form'] = parse_form(changes['form'])
        return dataclasses.replace(self, **changes).validate()

    @classmethod
    def from_yaml(cls, config_path: str = None) -> 'Config':
        """Load configuration from YAML file; defaults when it does not exist."""
        config_file = Path(config_path or DEFAULT_CONFIG_FILE)
        if not config_file.exists() and config_path is not None:
            raise ConfigError(f"config file not found: {config_path}")

        data = {}
        if config_file.exists():
            with open(config_file, 'r') as f:
                data = yaml.safe_load(f) or {}
        if not isinstance(data, dict):
            raise ConfigError(f"{config_file}: top level must be a mapping")

        search = data.get('search', {}) or {}
        verify = data.get('verify', {}) or {}
        rules_config = data.get('rules', {}) or {}

        priority = rules_config.get('priority', list(DEFAULT_RULE_PRIORITY))
        rules = _default_rules()
        for name, rule_data in rules_config.items():
            if name == 'priority':
                continue
            rule_data = rule_data or {}
            rules[name] = RuleConfig(
                enabled=rule_data.get('enabled', True),
                options={k: v for k, v in rule_data.items() if k != 'enabled'}
            )

        form = search.get('form', data.get('form'))
        try:
            config = cls(
                form=parse_form(form) if form is not None else None,
                limit=search.get('limit', 100),
                bound=verify.get('bound', 100),
                degree_cap=search.get('degree_cap', 16),
                variable_cap=search.get('variable_cap', 3),
                max_depth=search.get('max_depth', 64),
                max_branches=search.get('max_branches', 10000),
                threads=search.get('threads', 1),
                output=data.get('output', 'text'),
                rule_priority=list(priority),
                rules=rules,
            )
        except ValueError as e:
            raise ConfigError(f"{config_file}: {e}") from e
        return config.validate()
