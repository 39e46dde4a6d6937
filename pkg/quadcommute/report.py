"""Text and JSON rendering for command output."""

import json
from typing import Dict, List, Optional, Sequence, Tuple

from quadcommute.eisenstein import PrimeClass
from quadcommute.engine import SearchReport
from quadcommute.exactalg import format_rational
from quadcommute.families import CheckResult
from quadcommute.forms import Representation


def _json(data) -> str:
    return json.dumps(data, indent=2)


class ReportRenderer:
    """Render results as ``text`` or ``json``. Output is deterministic."""

    def __init__(self, output: str = 'text'):
        self.json = output == 'json'

    def search(self, report: SearchReport) -> str:
        if self.json:
            return report.to_json()
        counts = report.counts()
        lines = [
            f"form {report.form.spec()}  N={report.limit}"
            + ('  (incomplete)' if report.incomplete else ''),
            'leaves: ' + ' '.join(f"{k}={v}" for k, v in counts.items()),
        ]
        for leaf in report.leaves:
            families = ', '.join(leaf.families) or 'unexplained'
            if leaf.status.value == 'stuck':
                families = 'stuck'
            lines.append(f"[{leaf.status.value}] {leaf.id}  families: {families}")
            determined = [f"{k}={v}" for k, v in leaf.values.items() if v != 'free']
            if determined:
                lines.append('    ' + ' '.join(determined))
            for pending in leaf.pending if leaf.status.value == 'stuck' else ():
                lines.append(f"    pending: {pending} = 0")
        return '\n'.join(lines)

    def check(self, title: str, result: CheckResult) -> str:
        if self.json:
            return _json(dict(check=title, **result.to_dict()))
        if result.passed:
            return f"{title}: pass"
        witness = ','.join(map(str, result.witness)) if result.witness else '-'
        return f"{title}: fail at ({witness})  {result.detail}"

    def replay_steps(self, steps, values: Sequence[Tuple[int, object]]) -> str:
        if self.json:
            return _json({
                'steps': [{'step': s.description, 'conclusion': s.conclusion} for s in steps],
                'values': {str(n): format_rational(v) for n, v in values},
            })
        width = max(len(s.description) for s in steps)
        lines = [f"{s.description.ljust(width)}  =>  {s.conclusion}" for s in steps]
        lines.append('f(n) = n for n <= ' + str(values[-1][0]))
        return '\n'.join(lines)

    def case_table(self, rows: List[Dict[int, object]], checks: Optional[Dict[str, bool]] = None) -> str:
        checks = checks or {}
        if self.json:
            return _json({
                'cases': [{f"f({n})": format_rational(v) for n, v in row.items()} for row in rows],
                'checks': checks,
            })
        columns = list(rows[0]) if rows else []
        lines = ['  '.join(f"f({n})".rjust(5) for n in columns)]
        for row in rows:
            lines.append('  '.join(format_rational(row[n]).rjust(5) for n in columns))
        lines.extend(f"{name}: {'ok' if ok else 'FAILED'}" for name, ok in checks.items())
        return '\n'.join(lines)

    def identities(self, rows: List[dict], uniqueness: List[dict]) -> str:
        if self.json:
            return _json({'identities': rows, 'uniqueness': uniqueness})
        lines = []
        for row in rows:
            lines.append(
                f"{row['name']:<14} {'ok' if row['identity'] else 'FAILED'}  Q = {row['value']}"
                f"  roots {row['roots'][0]} | {row['roots'][1]}"
                f"  k > {row['threshold']} (positive from {row['positive_from']})"
            )
        for entry in uniqueness:
            status = 'unique' if entry['passed'] else f"FAILED at {entry['witness']}"
            lines.append(f"{entry['pairs']}: k in [{entry['k_min']}, {entry['k_max']}] {status}")
        return '\n'.join(lines)

    def prime_table(self, rows: List[PrimeClass]) -> str:
        if self.json:
            return _json([row.to_dict() for row in rows])
        lines = ['    p  p%3  type      witness']
        for row in rows:
            lines.append(f"{row.p:>5}  {row.p % 3:>3}  {row.kind.value:<8}  {row.witness or '-'}")
        return '\n'.join(lines)

    def norm(self, n: int, witness: Optional[Tuple[int, int]], positive_domain: bool) -> str:
        if self.json:
            return _json({'n': n, 'positive_domain': positive_domain,
                          'witness': list(witness) if witness else None})
        if witness is None:
            return f"{n}: not a norm"
        return f"{n} = N({witness[0]} + {witness[1]}ω)"

    def representations(self, n: int, reps: List[Representation]) -> str:
        if self.json:
            return _json({'n': n, 'representations': [[r.x, r.y] for r in reps]})
        if not reps:
            return f"{n}: no representations"
        return ' '.join(f"({r.x},{r.y})" for r in reps)
