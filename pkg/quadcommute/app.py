"""Command-line front end."""

import argparse
import json
import logging
import sys
from typing import List, Optional, TextIO

from quadcommute.config import Config, ConfigError
from quadcommute.eisenstein import (EisensteinError, inert_divisibility_check, prime_table,
                                     representable_as_norm)
from quadcommute.engine import search
from quadcommute.families import Family, FamilySpecError, verify_family
from quadcommute.forms import FormError, representations
from quadcommute.identities import (IDENTITY_PAIRS, PARITY_GROUPS, check_identity,
                                    common_root_unique, induction_start, positive_from, vieta_roots)
from quadcommute.replay import (ReplayFailure, replay_f2_pattern, replay_identity_chain,
                                replay_theorem1, replay_theorem2_cases, star_identity)
from quadcommute.report import ReportRenderer
from quadcommute.stats import SearchStats

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_UNEXPLAINED = 2
EXIT_USAGE = 3
EXIT_INCOMPLETE = 4


class UsageError(Exception):
    """Bad command line."""


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def configure_logging(verbose: int):
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s', force=True)


class QuadCommuteApp:
    """Runs one subcommand against a config and writes the report to ``out``."""

    def __init__(self, config: Config, verbose: int = 0, out: TextIO = None):
        self.config = config
        self.verbose = verbose
        self.out = out or sys.stdout
        self.renderer = ReportRenderer(config.output)
        self.stats = SearchStats()

    def _emit(self, text: str):
        print(text, file=self.out)

    def _form(self):
        if self.config.form is None:
            raise UsageError("--form is required (or set search.form in the config file)")
        return self.config.form

    def classify(self, args) -> int:
        report = search(self._form(), self.config.limit, self.config, self.stats)
        self._emit(self.renderer.search(report))
        if self.verbose:
            logger.info("stats: %s", json.dumps(self.stats.to_dict(), sort_keys=True))
        if self.verbose > 1:
            for event in self.stats.get_recent_events(20):
                logger.debug("#%d %s %s: %s", event['id'], event['branch'], event['rule'], event['detail'])
        if report.stuck() or report.unexplained():
            for leaf in report.unexplained():
                logger.warning("%s matches no known family", leaf.id)
            return EXIT_UNEXPLAINED
        return EXIT_INCOMPLETE if report.incomplete else EXIT_OK

    def verify(self, args) -> int:
        family = Family.parse(args.family)
        result = verify_family(family, self._form(), self.config.bound)
        self._emit(self.renderer.check(f"{family.name} on {self._form()} B={self.config.bound}", result))
        return EXIT_OK if result else EXIT_FAILED

    def replay(self, args) -> int:
        if args.theorem == 1:
            replay = replay_theorem1(args.limit)
            self._emit(self.renderer.replay_steps(replay.steps, replay.values))
            return EXIT_OK
        rows = replay_theorem2_cases()
        checks = {
            'condition (*)': star_identity(),
            'f(2) = 0 gives fp:2': bool(replay_f2_pattern(self.config.bound)),
            'f(2) = 2 gives identity': bool(replay_identity_chain(self.config.bound)),
        }
        self._emit(self.renderer.case_table(rows, checks))
        return EXIT_OK

    def identities(self, args) -> int:
        rows = []
        ok = True
        for pair in IDENTITY_PAIRS:
            check = check_identity(pair)
            n, other = vieta_roots(pair)
            ok = ok and check.passed
            rows.append({'name': pair.name, 'identity': check.passed, 'value': check.left.render(),
                         'roots': [n.render(), other.render()], 'threshold': pair.threshold,
                         'positive_from': positive_from(pair)})
        uniqueness = []
        for pair_a, pair_b in PARITY_GROUPS:
            k_min = induction_start(pair_a, pair_b)
            result = common_root_unique(pair_a, pair_b, k_min, args.kmax)
            ok = ok and result.passed
            uniqueness.append({'pairs': f"{pair_a.name} + {pair_b.name}", 'k_min': k_min,
                               'k_max': args.kmax, 'passed': result.passed,
                               'witness': list(result.witness) if result.witness else None})
        self._emit(self.renderer.identities(rows, uniqueness))
        return EXIT_OK if ok else EXIT_FAILED

    def eisenstein(self, args) -> int:
        if args.norm is not None:
            positive = not args.integer_domain
            self._emit(self.renderer.norm(args.norm, representable_as_norm(args.norm, positive), positive))
            return EXIT_OK
        if args.inert_check is not None:
            result = inert_divisibility_check(args.inert_check, self.config.bound)
            self._emit(self.renderer.check(f"inert divisibility p={args.inert_check} B={self.config.bound}",
                                           result))
            return EXIT_OK if result else EXIT_FAILED
        self._emit(self.renderer.prime_table(prime_table(args.prime_table)))
        return EXIT_OK

    def represent(self, args) -> int:
        self._emit(self.renderer.representations(args.n, representations(self._form(), args.n)))
        return EXIT_OK


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog='quadcommute',
                            description="Multiplicative functions commuting with binary quadratic forms")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="Increase verbosity (-v, -vv)")
    parser.add_argument("--config", metavar="PATH", help="YAML config file (default quadcommute.yml)")
    sub = parser.add_subparsers(dest='command', required=True, parser_class=ArgumentParser)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="Machine-readable output")
        return p

    p = add('classify', "Search all branches for a form up to N")
    p.add_argument("--form", help="Form as a,b,c")
    p.add_argument("--limit", type=positive_int, help="Largest argument N")
    p.add_argument("--threads", type=positive_int)
    p.add_argument("--degree-cap", type=positive_int)
    p.add_argument("--variable-cap", type=positive_int)
    p.add_argument("--max-depth", type=positive_int)
    p.add_argument("--max-branches", type=positive_int)

    p = add('verify', "Check a family against a form for 1 <= x, y <= B")
    p.add_argument("--form", help="Form as a,b,c")
    p.add_argument("--family", required=True, help="identity, const1 or fp:<p>")
    p.add_argument("--bound", type=positive_int)

    p = add('replay', "Replay the hand derivations step by step")
    p.add_argument("--theorem", type=int, choices=(1, 2), required=True)
    p.add_argument("--limit", type=positive_int, default=28, help="Table f(n) = n up to this n")
    p.add_argument("--bound", type=positive_int, help="Range for the f(2) = 0 and f(2) = 2 chains")

    p = add('identities', "Verify the induction identities")
    p.add_argument("--kmax", type=positive_int, default=10000)

    p = add('eisenstein', "Norms and prime splitting in Z[w]")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--prime-table", type=positive_int, metavar="B")
    group.add_argument("--norm", type=positive_int, metavar="n")
    group.add_argument("--inert-check", type=positive_int, metavar="p")
    p.add_argument("--integer-domain", action="store_true", help="Allow x, y of any sign for --norm")
    p.add_argument("--bound", type=positive_int)

    p = add('represent', "List the representations of n")
    p.add_argument("--form", help="Form as a,b,c")
    p.add_argument("--n", type=positive_int, required=True)
    return parser


def run(argv: Optional[List[str]] = None, out: TextIO = None) -> int:
    """Parse ``argv``, run the subcommand and return the exit code."""
    try:
        args = build_parser().parse_args(argv)
        configure_logging(args.verbose)
        config = Config.from_yaml(args.config).with_overrides(
            form=getattr(args, 'form', None),
            limit=getattr(args, 'limit', None) if args.command == 'classify' else None,
            bound=getattr(args, 'bound', None),
            threads=getattr(args, 'threads', None),
            degree_cap=getattr(args, 'degree_cap', None),
            variable_cap=getattr(args, 'variable_cap', None),
            max_depth=getattr(args, 'max_depth', None),
            max_branches=getattr(args, 'max_branches', None),
            output='json' if args.json else None,
        )
        app = QuadCommuteApp(config, args.verbose, out)
        return getattr(app, args.command)(args)
    except (UsageError, ConfigError, FormError, FamilySpecError, EisensteinError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ReplayFailure as e:
        print(f"replay failed: {e}", file=sys.stderr)
        return EXIT_FAILED


def main():
    """Main entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
