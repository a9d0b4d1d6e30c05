"""
Command Line Interface for incflow

Generates instances, runs the heuristics and exact solvers, checks the
approximation bounds, writes LP models and runs benchmarks.
"""

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..bench import BenchConfig, bench_run, config_from_dict
from ..config import Settings, load_settings
from ..core import SolveEngine, get_method_names
from ..errors import ConfigError, IncflowError
from ..exact import brute_force_permutations, exact_subset_dp
from ..heur import METHODS
from ..instgen import (
    FAMILY_K_MIN, MATCHING_INSTANCES, BipartiteParams, GeneralParams, LayeredParams, describe_instance,
    format_instance, gen_bipartite, gen_family, gen_general, gen_layered, gen_matching, read_instance,
    write_instance,
)
from ..lpwriter import EMITTERS, lp_stats
from ..netcore import min_cut
from ..theory import SUITES, all_passed, check_instance, check_matching_instance, verdicts_to_jsonl, run_suite, witness_y
from ..utils import write_text_lf

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERDICT_FAILED = 1
EXIT_USAGE = 2

FORMATS = ('json', 'csv', 'text')


class UsageError(Exception):
    """Bad command line input detected after argument parsing"""


def render(data: Any, fmt: str) -> str:
    """Render a mapping or a list of flat mappings as json, csv or text"""
    if fmt == 'json':
        return json.dumps(data, indent=2, sort_keys=True) + "\n"
    rows = data if isinstance(data, list) else [data]
    if fmt == 'csv':
        buffer = io.StringIO()
        header: List[str] = []
        for row in rows:
            header.extend(key for key in row if key not in header)
        writer = csv.DictWriter(buffer, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in row.items()})
        return buffer.getvalue()
    lines = []
    for row in rows:
        for key, value in row.items():
            lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


class IncflowConsole:
    """Console interface for incflow"""

    def __init__(self, stdout=None):
        self.stdout = stdout or sys.stdout
        self.settings = Settings()

    def setup_logging(self, level: str):
        """Configure logging on stderr so stdout stays machine readable"""
        logging.basicConfig(
            level=getattr(logging, level),
            format='%(asctime)s - %(levelname)s - %(message)s',
            datefmt='%H:%M:%S',
            stream=sys.stderr,
        )
        logging.getLogger('incflow').setLevel(getattr(logging, level))

    def create_parser(self) -> argparse.ArgumentParser:
        """Create the main argument parser"""
        parser = argparse.ArgumentParser(
            prog='incflow',
            description='incflow - build schedules for incremental maximum flow',
            formatter_class=argparse.RawDescriptionHelpFormatter,
            epilog="""
Examples:
  incflow gen --kind general --n 6 --d 0.5 --p 0.4 --u-max 3 --seed 7 -o g.txt
  incflow solve --method qtt --instance g.txt
  incflow exact --instance g.txt
  incflow family --which F3 --k 10 --run all --format text
  incflow verify --suite unit-capacity --count 200 --seed 7
  incflow emit-lp --instance g.txt --model imfp2 -o g.lp
  incflow bench --family layered --layers 3 --n 3 --count 10 --csv out.csv

Exit codes: 0 success, 1 a checked bound failed, 2 usage error.
"""
        )
        parser.add_argument('--format', choices=FORMATS, default='json', help='Output format')
        parser.add_argument('--config', help='JSON settings file')
        parser.add_argument('-v', '--verbose', action='store_true', help='Debug logging')
        parser.add_argument('-q', '--quiet', action='store_true', help='Warnings and errors only')

        subparsers = parser.add_subparsers(dest='command', help='Available commands')
        self._add_gen_parser(subparsers)
        self._add_solve_parser(subparsers)
        self._add_exact_parser(subparsers)
        self._add_bench_parser(subparsers)
        self._add_verify_parser(subparsers)
        self._add_emit_lp_parser(subparsers)
        self._add_family_parser(subparsers)
        self._add_info_parser(subparsers)
        return parser

    def _add_gen_parser(self, subparsers):
        """Add gen command parser"""
        gen_parser = subparsers.add_parser('gen', help='Generate a random instance')
        gen_parser.add_argument('--kind', choices=['general', 'layered', 'bipartite'], default='general')
        gen_parser.add_argument('--n', type=int, default=6, help='Nodes (general) or nodes per layer (layered)')
        gen_parser.add_argument('--layers', type=int, default=3, help='Number of layers (layered)')
        gen_parser.add_argument('--left', type=int, default=4, help='Left side size (bipartite)')
        gen_parser.add_argument('--right', type=int, default=4, help='Right side size (bipartite)')
        gen_parser.add_argument('--d', type=float, default=0.5, help='Arc probability')
        gen_parser.add_argument('--p', type=float, default=0.5, help='Potential arc probability')
        gen_parser.add_argument('--u-max', type=int, default=1, help='Largest capacity')
        gen_parser.add_argument('--slack', type=int, default=1, help='Periods beyond the potential arc count')
        gen_parser.add_argument('--seed', type=int, default=0)
        gen_parser.add_argument('-o', '--output', help='Instance file (default: stdout)')

    def _add_solve_parser(self, subparsers):
        """Add solve command parser"""
        solve_parser = subparsers.add_parser('solve', help='Run a heuristic on an instance file')
        solve_parser.add_argument('--instance', required=True, help='Instance file')
        solve_parser.add_argument('--method', choices=sorted(METHODS), default='qi')
        solve_parser.add_argument('--targets', help='Comma separated increments for qtt, e.g. 2,5')

    def _add_exact_parser(self, subparsers):
        """Add exact command parser"""
        exact_parser = subparsers.add_parser('exact', help='Solve an instance file to optimality')
        exact_parser.add_argument('--instance', required=True, help='Instance file')
        exact_parser.add_argument('--method', choices=['dp', 'brute'], default='dp')
        exact_parser.add_argument('--cap', type=int, help='Largest potential arc count accepted')

    def _add_bench_parser(self, subparsers):
        """Add bench command parser"""
        bench_parser = subparsers.add_parser('bench', help='Compare methods on random instances')
        bench_parser.add_argument('--bench-config', help='JSON file holding a full bench configuration')
        bench_parser.add_argument('--family', choices=['general', 'layered'], default='general')
        bench_parser.add_argument('--n', type=int, default=8)
        bench_parser.add_argument('--layers', type=int, default=3)
        bench_parser.add_argument('--d', type=float, default=0.3)
        bench_parser.add_argument('--p', type=float, default=0.5)
        bench_parser.add_argument('--u-max', type=int, default=10)
        bench_parser.add_argument('--count', type=int, default=10, help='Instances per cell')
        bench_parser.add_argument('--methods', default='qi,qtu,qtt', help='Comma separated heuristics')
        bench_parser.add_argument('--no-exact', action='store_true', help='Skip the exact solver')
        bench_parser.add_argument('--seed', type=int, default=0)
        bench_parser.add_argument('--csv', help='Row output file')
        bench_parser.add_argument('--json', help='Cell summary output file')
        bench_parser.add_argument('--no-timing', action='store_true', help='Write zero elapsed times')

    def _add_verify_parser(self, subparsers):
        """Add verify command parser"""
        verify_parser = subparsers.add_parser('verify', help='Check approximation bounds')
        verify_parser.add_argument('--suite', choices=list(SUITES) + ['witness'], default='unit-capacity')
        verify_parser.add_argument('--instance', help='Check one instance file instead of a suite')
        verify_parser.add_argument('--count', type=int, default=200)
        verify_parser.add_argument('--seed', type=int, default=0)
        verify_parser.add_argument('--r-max', type=int, default=200, help='Largest r for the witness suite')
        verify_parser.add_argument('-o', '--output', help='JSON-lines verdict file')

    def _add_emit_lp_parser(self, subparsers):
        """Add emit-lp command parser"""
        lp_parser = subparsers.add_parser('emit-lp', help='Write an LP model of an instance')
        lp_parser.add_argument('--instance', required=True, help='Instance file')
        lp_parser.add_argument('--model', choices=sorted(EMITTERS), default='imfp1')
        lp_parser.add_argument('-o', '--output', help='LP file (default: stdout)')

    def _add_family_parser(self, subparsers):
        """Add family command parser"""
        family_parser = subparsers.add_parser('family', help='Build and run an adversarial instance')
        family_parser.add_argument('--which', required=True,
                                   choices=sorted(FAMILY_K_MIN) + list(MATCHING_INSTANCES))
        family_parser.add_argument('--k', type=int, default=3)
        family_parser.add_argument('--run', default='all', help="Comma separated heuristics or 'all'")
        family_parser.add_argument('-o', '--output', help='Also write the instance file')

    def _add_info_parser(self, subparsers):
        """Add info command parser"""
        info_parser = subparsers.add_parser('info', help='Describe an instance file or show settings')
        info_parser.add_argument('--instance', help='Instance file')

    def _write(self, text: str):
        self.stdout.write(text)

    def _load(self, path: str):
        if not Path(path).exists():
            raise UsageError(f"instance file '{path}' does not exist")
        return read_instance(path)

    def handle_gen(self, args) -> int:
        """Handle gen command"""
        if args.kind == 'general':
            inst = gen_general(GeneralParams(args.n, args.d, args.p, args.u_max, args.seed, args.slack))
        elif args.kind == 'layered':
            inst = gen_layered(LayeredParams(args.layers, args.n, args.d, args.p, args.u_max, args.seed, args.slack))
        else:
            inst = gen_bipartite(BipartiteParams(args.left, args.right, args.d, args.p, args.seed, args.slack))
        if args.output:
            write_instance(inst, args.output)
            self._write(render(describe_instance(inst), args.format))
        else:
            self._write(format_instance(inst))
        return EXIT_OK

    def handle_solve(self, args) -> int:
        """Handle solve command"""
        inst = self._load(args.instance)
        options: Dict[str, Any] = {}
        if args.targets:
            if args.method != 'qtt':
                raise UsageError("--targets only applies to --method qtt")
            try:
                options['targets'] = [int(t) for t in args.targets.split(',')]
            except ValueError:
                raise UsageError(f"--targets must be comma separated integers, got '{args.targets}'")
        outcome = SolveEngine(self.settings.workers, self.settings.exact_cap).solve_single(inst, args.method, **options)
        if outcome.error is not None:
            raise outcome.error
        self._write(render(outcome.report.to_dict(), args.format))
        return EXIT_OK

    def handle_exact(self, args) -> int:
        """Handle exact command"""
        inst = self._load(args.instance)
        if args.method == 'dp':
            result = exact_subset_dp(inst.network, inst.horizon, args.cap or self.settings.exact_cap)
        else:
            result = brute_force_permutations(inst.network, inst.horizon, args.cap or self.settings.brute_cap)
        self._write(render({
            'instance': inst.name,
            'method': args.method,
            'optimum': result.optimum,
            'schedule': list(result.schedule.order),
            'explored': result.explored,
        }, args.format))
        return EXIT_OK

    def _bench_config(self, args) -> BenchConfig:
        if args.bench_config:
            path = Path(args.bench_config)
            if not path.exists():
                raise UsageError(f"bench configuration '{path}' does not exist")
            try:
                return config_from_dict(json.loads(path.read_text(encoding="utf-8")))
            except (json.JSONDecodeError, TypeError, ValueError) as e:
                raise UsageError(f"bad bench configuration {path}: {e}")
        cell: Dict[str, Any] = {'n': args.n, 'd': args.d, 'p': args.p, 'u_max': args.u_max}
        if args.family == 'layered':
            cell = {'layers': args.layers, **cell}
        try:
            return BenchConfig(
                family=args.family,
                cells=[cell],
                count=args.count,
                methods=tuple(m.strip() for m in args.methods.split(',') if m.strip()),
                include_exact=not args.no_exact,
                exact_cap=self.settings.bench_exact_cap,
                seed=args.seed,
                csv_path=Path(args.csv) if args.csv else None,
                json_path=Path(args.json) if args.json else None,
                include_timing=not args.no_timing,
                workers=self.settings.workers,
            )
        except ValueError as e:
            raise UsageError(str(e))

    def handle_bench(self, args) -> int:
        """Handle bench command"""
        cfg = self._bench_config(args)

        def progress(completed: int, total: int, label: str):
            logger.debug(f"[{completed}/{total}] {label}")

        report = bench_run(cfg, progress)
        if args.format == 'csv':
            self._write(report.to_csv())
        elif args.format == 'json':
            self._write(report.to_json())
        else:
            self._write(render(report.cells, 'text'))
        return EXIT_OK

    def handle_verify(self, args) -> int:
        """Handle verify command"""
        if args.suite == 'witness':
            failures = []
            for r in range(2, args.r_max + 1):
                try:
                    witness_y(r)
                except IncflowError as e:
                    failures.append({'r': r, 'error': str(e)})
            self._write(render({'checked': args.r_max - 1, 'failures': failures}, args.format))
            return EXIT_OK if not failures else EXIT_VERDICT_FAILED

        if args.instance:
            inst = self._load(args.instance)
            check = check_matching_instance if args.suite == 'matching' else check_instance
            results = [check(inst.network, inst.horizon, inst.name, self.settings.exact_cap)]
        else:
            results = run_suite(args.suite, args.count, args.seed, self.settings.exact_cap)

        stream = verdicts_to_jsonl(results)
        if args.output:
            write_text_lf(args.output, stream)
        passed = all_passed(results)
        summary = {
            'suite': args.suite,
            'instances': len(results),
            'failed_instances': sum(1 for _, verdicts in results if not all(v.passed for v in verdicts)),
            'passed': passed,
        }
        if args.format == 'json' and not args.output:
            self._write(stream)
        else:
            self._write(render(summary, args.format))
        return EXIT_OK if passed else EXIT_VERDICT_FAILED

    def handle_emit_lp(self, args) -> int:
        """Handle emit-lp command"""
        inst = self._load(args.instance)
        text = EMITTERS[args.model](inst.network, inst.horizon, inst.name)
        if args.output:
            write_text_lf(args.output, text)
            self._write(render({'model': args.model, 'path': args.output, **lp_stats(text)}, args.format))
        else:
            self._write(text)
        return EXIT_OK

    def handle_family(self, args) -> int:
        """Handle family command"""
        if args.which in MATCHING_INSTANCES:
            inst, predicted = gen_matching(args.which)
        else:
            inst, predicted = gen_family(args.which, args.k)
        names = sorted(METHODS) if args.run == 'all' else [m.strip() for m in args.run.split(',')]
        unknown = [m for m in names if m not in METHODS]
        if unknown:
            raise UsageError(f"unknown heuristics: {', '.join(unknown)}")
        if args.output:
            write_instance(inst, args.output)

        engine = SolveEngine(self.settings.workers, self.settings.exact_cap)
        summary = engine.solve_batch({inst.name: inst}, names)
        outcomes = {o.job.method.value: o for o in summary['results']}
        for outcome in outcomes.values():
            if not outcome.success:
                raise outcome.error or IncflowError(outcome.message)
        totals = {name: outcomes[name].report.total for name in names}
        if args.format == 'text':
            self._write("".join(f"{name}: {total}\n" for name, total in totals.items()))
        else:
            self._write(render({
                'instance': describe_instance(inst),
                'predicted': predicted.to_dict(),
                'totals': totals,
            } if args.format == 'json' else {'instance': inst.name, **totals}, args.format))
        return EXIT_OK

    def handle_info(self, args) -> int:
        """Handle info command"""
        if not args.instance:
            self._write(render({'methods': get_method_names(), **self.settings.to_dict()}, args.format))
            return EXIT_OK

        inst = self._load(args.instance)
        net = inst.network
        data = describe_instance(inst)
        data['cut_initial'], _ = min_cut(net, net.existing_ids)
        data['cut_ultimate'], _ = min_cut(net)
        data['cut_matches_flow'] = (data['cut_initial'], data['cut_ultimate']) == (data['f'], data['F'])
        if not data['cut_matches_flow']:
            logger.error(f"Flow values {data['f']}, {data['F']} disagree with networkx cuts "
                         f"{data['cut_initial']}, {data['cut_ultimate']}")
        self._write(render(data, args.format))
        return EXIT_OK if data['cut_matches_flow'] else EXIT_VERDICT_FAILED

    def run(self, args: Optional[List[str]] = None) -> int:
        """Run the CLI with given arguments; returns the exit code"""
        parser = self.create_parser()
        try:
            parsed_args = parser.parse_args(args)
        except SystemExit as e:
            return EXIT_OK if e.code in (0, None) else EXIT_USAGE

        if not parsed_args.command:
            parser.print_help(sys.stderr)
            return EXIT_USAGE

        try:
            self.settings = load_settings(parsed_args.config)
        except ConfigError as e:
            print(f"Error: {e}", file=sys.stderr)
            return EXIT_USAGE
        level = 'DEBUG' if parsed_args.verbose else 'WARNING' if parsed_args.quiet else self.settings.log_level
        self.setup_logging(level)

        handler = getattr(self, 'handle_' + parsed_args.command.replace('-', '_'))
        try:
            return handler(parsed_args)
        except KeyboardInterrupt:
            print("Operation cancelled by user", file=sys.stderr)
            return EXIT_USAGE
        except (UsageError, IncflowError, KeyError, ValueError) as e:
            print(f"Error: {e}", file=sys.stderr)
            return EXIT_USAGE


def cli(args: Optional[List[str]] = None) -> int:
    return IncflowConsole().run(args)


def main():
    """Main entry point for CLI"""
    sys.exit(cli())


if __name__ == "__main__":
    main()
