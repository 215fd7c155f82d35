#!/usr/bin/env python3
"""
Command-line entry point for the hypergraph polynomial toolkit.
Computes chromatic, independence and matching polynomials, runs isomorphism-class
censuses, witness searches and family checks, and evaluates the counting bounds.
"""
import argparse
import json
import logging
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import List, Optional

# Add src to path
sys.path.append(str(Path(__file__).parent / "src"))

from src.bounds.asymptotics import stirling_asymptotics_report
from src.bounds.products import labeled_count, product_bound
from src.bounds.sequences import ratio_sequence
from src.census.crosschecks import uniform_vs_general_check, verify_superset_mates
from src.census.family_claims import Verdict, verify_family_claims
from src.census.processor import census, write_report
from src.census.selfcheck import run_selfcheck
from src.census.witness import Stratum, witness_search
from src.core.families import FamilyKind, FamilySpec, generate_family
from src.core.hypergraph_io import format_text, read_hypergraph, to_json, write_hypergraph
from src.core.modes import CensusMode
from src.database.db_manager import get_db_manager, init_database
from src.isomorphism.burnside import SubsetModel, count_labeled, count_nonisomorphic_general, \
    count_nonisomorphic_runiform
from src.polynomials.graph_polynomial import Basis, PolynomialKind, to_falling_factorial, to_monomial
from src.polynomials.invariants import chromatic_poly, independence_poly, matching_poly
from src.utils.config import DEFAULT_CONFIG_PATH, Settings, load_settings, set_settings
from src.utils.errors import HypergraphToolkitError, ValidationError

logger = logging.getLogger(__name__)

FORMATS = ('json', 'csv', 'text')


@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand needs, resolved from flags, environment and config file"""
    command: str
    settings: Settings
    input_path: Optional[Path] = None
    output_path: Optional[Path] = None
    n: Optional[int] = None
    r: Optional[int] = None
    p: Optional[int] = None
    k: Optional[int] = None
    mode: Optional[CensusMode] = None
    polynomial: PolynomialKind = PolynomialKind.CHI
    jobs: int = 1
    seed: int = 0
    output_format: str = 'text'
    no_timestamp: bool = False

    def __post_init__(self):
        if self.jobs < 1:
            raise ValidationError(f"--jobs must be >= 1, got {self.jobs}")
        if self.output_format not in FORMATS:
            raise ValidationError(f"unknown format {self.output_format}")


def build_settings(args) -> Settings:
    """Config file, then HGPOLY_* environment, then budget flags"""
    settings = load_settings(args.config)
    settings = settings.with_limits(
        dp_max_n=args.dp_limit,
        coloring_budget=args.coloring_budget,
        matching_max_nodes=args.matching_budget,
        witness_max_labeled=args.witness_budget,
    )
    settings = settings.with_census(max_stratum_labeled=args.stratum_budget)
    processing = settings.processing
    if args.jobs is not None:
        processing = replace(processing, jobs=args.jobs)
    if args.seed is not None:
        processing = replace(processing, seed=args.seed)
    return set_settings(replace(settings, processing=processing))


def configure_logging(settings: Settings, verbose: bool):
    level = logging.DEBUG if verbose else getattr(logging, settings.logging.level.upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        format=settings.logging.format,
        handlers=[
            logging.FileHandler(settings.logging.file),
            logging.StreamHandler(sys.stdout)
        ]
    )


def run_config(args, settings: Settings) -> RunConfig:
    mode = None
    if getattr(args, 'mode', None):
        mode = CensusMode.parse(args.mode)
    elif getattr(args, 'r', None) is not None and args.command == 'census':
        mode = CensusMode.uniform(args.r)
    return RunConfig(
        command=args.command,
        settings=settings,
        input_path=Path(args.input) if getattr(args, 'input', None) else None,
        output_path=Path(args.out) if getattr(args, 'out', None) else None,
        n=getattr(args, 'n', None),
        r=getattr(args, 'r', None),
        p=getattr(args, 'p', None),
        k=getattr(args, 'k', None),
        mode=mode,
        polynomial=PolynomialKind(getattr(args, 'poly', None) or 'chi'),
        jobs=settings.processing.jobs,
        seed=settings.processing.seed,
        output_format='csv' if getattr(args, 'csv', False) else args.format,
        no_timestamp=args.no_timestamp,
    )


def emit(text: str, path: Optional[Path] = None):
    """Print to stdout, or write to a file when a path is given"""
    if path is None:
        print(text, end="" if text.endswith("\n") else "\n")
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text if text.endswith("\n") else text + "\n")
    logger.info(f"Output written to {path}")


def dump_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True, default=str) + "\n"


def _require(value, flag: str):
    if value is None:
        raise ValidationError(f"{flag} is required")
    return value


def cmd_setup(config: RunConfig, args) -> int:
    """Initialize database and create the output directories"""
    db = init_database(config.settings.database_url)
    if not db.health_check():
        logger.error(f"Database at {config.settings.database_url} is not reachable")
        return 1
    for directory in (config.settings.paths.reports, config.settings.paths.checkpoints):
        Path(directory).mkdir(parents=True, exist_ok=True)
    print(f"Database ready at {config.settings.database_url}")
    return 0


def cmd_poly(config: RunConfig, args) -> int:
    """Print one polynomial of a hypergraph file"""
    h = read_hypergraph(_require(config.input_path, "--in"), allow_small_edges=args.allow_small_edges)
    if config.polynomial == PolynomialKind.CHI:
        p = chromatic_poly(h)
    elif config.polynomial == PolynomialKind.IND:
        p = independence_poly(h)
    else:
        p = matching_poly(h)
    p = to_monomial(p) if Basis(args.basis) == Basis.MONOMIAL else to_falling_factorial(p)

    if config.output_format == 'json':
        data = {'n': h.n, 'P': config.polynomial.value, **p.to_dict()}
        emit(dump_json(data), config.output_path)
    elif config.output_format == 'csv':
        lines = ["i,coeff"] + [f"{i},{c}" for i, c in enumerate(p.coeffs)]
        emit("\n".join(lines) + "\n", config.output_path)
    else:
        emit(f"{config.polynomial.value}({h}) = {p}\ncoeffs {list(p.coeffs)}\n", config.output_path)
    return 0


def cmd_census(config: RunConfig, args) -> int:
    """Run a census and write its CSV and JSON reports"""
    n = _require(config.n, "--n")
    mode = _require(config.mode, "--r or --mode")
    edge_counts = [int(m) for m in args.edge_counts.split(",")] if args.edge_counts else None
    report = census(n, mode, config.polynomial, edge_counts=edge_counts, jobs=config.jobs,
                    checkpoint=args.checkpoint, no_timestamp=config.no_timestamp, progress=True)
    directory = config.output_path or Path(config.settings.paths.reports)
    csv_path, json_path = write_report(report, directory)

    if config.output_format == 'json':
        print(dump_json(report.to_dict()), end="")
    elif config.output_format == 'csv':
        print(csv_path.read_text(), end="")
    else:
        print(f"n={report.n} mode={report.mode.label} P={report.polynomial.value}: "
              f"H={report.classes} B={report.distinct} U={report.unique} "
              f"U/H={report.unique_fraction} B/H={report.distinct_fraction}")
    return 0


def cmd_witness(config: RunConfig, args) -> int:
    """Search a stratum for polynomial mates of a hypergraph"""
    h = read_hypergraph(_require(config.input_path, "--in"))
    result = witness_search(h, config.polynomial, Stratum(args.stratum), mode=config.mode, jobs=config.jobs)
    if config.output_format == 'json' or config.output_path:
        emit(dump_json(result.to_dict()), config.output_path)
    else:
        print(f"{result.polynomial.value} mates of {h} within {result.description}: {len(result.mates)}")
        for mate in result.mates:
            print(f"  {mate}")
    return 0


def cmd_family(config: RunConfig, args) -> int:
    """Generate a family instance as a hypergraph file"""
    spec = FamilySpec(FamilyKind(args.kind), n=config.n, m=args.m, r=config.r, p=config.p,
                      k=config.k, cycle_edge=args.cycle_edge)
    h = generate_family(spec)
    if config.output_path:
        write_hypergraph(h, config.output_path, comment=spec.label)
        print(f"{spec.label}: n={h.n}, {h.num_edges} edges -> {config.output_path}")
    elif config.output_format == 'json':
        print(to_json(h))
    else:
        print(format_text(h, comment=spec.label), end="")
    return 0


def cmd_verify(config: RunConfig, args) -> int:
    """Family claims, superset mates or the uniform-versus-general inequality"""
    if args.check == 'claims':
        report = verify_family_claims(_require(config.r, "--r"), _require(args.n_max, "--n-max"), jobs=config.jobs)
        data = report.to_dict()
        failed = report.count(Verdict.REFUTES) > 0
        if config.output_format == 'text' and not config.output_path:
            for o in report.outcomes:
                print(f"{o.verdict.value:<13} {o.family:<28} {o.claim:<32} {o.stratum}")
            return 1 if failed else 0
    elif args.check == 'superset':
        report = verify_superset_mates(_require(config.n, "--n"), config.polynomial, jobs=config.jobs)
        data, failed = report.to_dict(), not report.passed
    else:
        report = uniform_vs_general_check(_require(config.n, "--n"), _require(config.r, "--r"),
                                          config.polynomial, jobs=config.jobs)
        data, failed = report.to_dict(), not report.passed
    emit(dump_json(data), config.output_path)
    return 1 if failed else 0


def cmd_bounds(config: RunConfig, args) -> int:
    """Ratio sequences, product bounds, labeled counts and the Stirling report"""
    if args.product:
        n = _require(config.n, "--n")
        value = product_bound(args.product, n, config.k)
        emit(dump_json({'P': args.product, 'n': n, 'product': str(value)})
             if config.output_format == 'json' else f"{value}\n", config.output_path)
        return 0
    if args.labeled:
        count = labeled_count(_require(config.n, "--n"), config.r, args.model)
        data = {'n': count.n, 'r': count.r, 'model': count.model.value if count.model else None,
                'log2': count.log2, 'exact': None if count.exact is None else str(count.exact)}
        emit(dump_json(data), config.output_path)
        return 0

    if args.stirling:
        table = stirling_asymptotics_report(range(args.n_min or 1, _require(args.n_max, "--n-max") + 1))
    else:
        kind = _require(args.kind, "--kind, --product, --labeled or --stirling")
        table = ratio_sequence(kind, range(args.n_min or 6, _require(args.n_max, "--n-max") + 1, args.step))

    if args.gnuplot:
        emit("\n".join(table.to_gnuplot(q) for q in table.quantities()), config.output_path)
    elif config.output_format == 'json':
        emit(dump_json([{'n': r.n, 'quantity': r.quantity, 'exact_or_log2': r.form, 'value': r.formatted()}
                        for r in table.rows]), config.output_path)
    else:
        emit(table.to_csv(), config.output_path)
    return 0


def cmd_count(config: RunConfig, args) -> int:
    """Burnside counts of isomorphism classes"""
    n = _require(config.n, "--n")
    if config.r is not None:
        count = count_nonisomorphic_runiform(n, config.r)
        labeled = count_labeled(n, config.r)
    else:
        count = count_nonisomorphic_general(n, SubsetModel(args.model))
        labeled = count_labeled(n, model=SubsetModel(args.model))
    if config.output_format == 'json':
        print(dump_json({'n': n, 'r': config.r, 'model': None if config.r else args.model,
                         'classes': count, 'labeled': str(labeled)}), end="")
    else:
        print(count)
    return 0


def cmd_selfcheck(config: RunConfig, args) -> int:
    """Randomized differential self-check"""
    report = run_selfcheck(args.n_max or 6, args.samples, config.seed, progress=True)
    print(dump_json(report.to_dict()), end="")
    return 0 if report.passed else 1


def cmd_history(config: RunConfig, args) -> int:
    """Show recorded census runs and shard states"""
    db_manager = get_db_manager(config.settings.database_url)
    db_manager.create_tables()
    runs = db_manager.get_runs(args.limit)
    if not runs:
        print("No census runs recorded yet")
    for run in runs:
        print(f"{run['created']:%Y-%m-%d %H:%M} {run['run_key']}: H={run['H']} B={run['B']} U={run['U']} "
              f"({run['seconds']:.2f}s)")
    if args.shards:
        status_counts = {}
        for shard in db_manager.get_shards():
            status_counts[shard['status']] = status_counts.get(shard['status'], 0) + 1
            print(f"  {shard['run_key']} stratum {shard['stratum']}: {shard['status']} "
                  f"({shard['records']} records){' - ' + shard['error'] if shard['error'] else ''}")
        for status, count in sorted(status_counts.items()):
            print(f"  {status}: {count} shards")
    return 0


COMMANDS = {
    'setup': cmd_setup,
    'poly': cmd_poly,
    'census': cmd_census,
    'witness': cmd_witness,
    'family': cmd_family,
    'verify': cmd_verify,
    'bounds': cmd_bounds,
    'count': cmd_count,
    'selfcheck': cmd_selfcheck,
    'history': cmd_history,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', default=DEFAULT_CONFIG_PATH, help='YAML configuration file')
    common.add_argument('--jobs', type=int, help='Worker processes (never changes results)')
    common.add_argument('--seed', type=int, help='Seed for randomized checks (default 0)')
    common.add_argument('--format', choices=FORMATS, default='text', help='Output format')
    common.add_argument('--no-timestamp', action='store_true', help='Suppress timing fields in reports')
    common.add_argument('--verbose', action='store_true', help='Debug logging')
    common.add_argument('--dp-limit', type=int, help='Raise the chromatic DP vertex limit')
    common.add_argument('--coloring-budget', type=int, help='Raise the coloring oracle budget')
    common.add_argument('--matching-budget', type=int, help='Raise the matching search node budget')
    common.add_argument('--witness-budget', type=int, help='Raise the witness labeled-candidate budget')
    common.add_argument('--stratum-budget', type=int, help='Raise the stratum enumeration budget')

    parser = argparse.ArgumentParser(
        description="Hypergraph polynomial toolkit",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py setup                                  # Initialize database
  python main.py poly --in tri.hg --poly chi            # Chromatic polynomial (monomial basis)
  python main.py census --n 4 --r 3 --poly chi          # 3-uniform census on 4 vertices
  python main.py census --n 6 --r 3 --jobs 8            # Full 3-uniform census on 6 vertices
  python main.py witness --in sh723.hg --poly chi       # Mates within the edge-count stratum
  python main.py family sunflower --n 7 --p 2 --r 3 --out sh723.hg
  python main.py verify claims --r 3 --n-max 7          # Check the family uniqueness claims
  python main.py bounds --kind chi_general --n-max 60 --csv
  python main.py count --n 4 --r 3                      # Burnside class count
  python main.py selfcheck --samples 100 --seed 0
  python main.py history --shards
        """
    )
    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    subparsers.add_parser('setup', parents=[common], help='Initialize database and output directories')

    poly_parser = subparsers.add_parser('poly', parents=[common], help='Compute a polynomial of a hypergraph file')
    poly_parser.add_argument('--in', dest='input', required=True, help='Hypergraph file (.hg text or .json)')
    poly_parser.add_argument('--poly', choices=[k.value for k in PolynomialKind], default='chi')
    poly_parser.add_argument('--basis', choices=[b.value for b in Basis], default='monomial')
    poly_parser.add_argument('--allow-small-edges', action='store_true', help='Accept edges of size 1')
    poly_parser.add_argument('--out', help='Write output to this file')

    census_parser = subparsers.add_parser('census', parents=[common], help='Census of isomorphism classes')
    census_parser.add_argument('--n', type=int, required=True)
    census_parser.add_argument('--r', type=int, help='Edge size (uniform mode)')
    census_parser.add_argument('--mode', help='uniform<r>, sperner or all')
    census_parser.add_argument('--poly', choices=[k.value for k in PolynomialKind], default='chi')
    census_parser.add_argument('--edge-counts', help='Comma separated edge-count strata')
    census_parser.add_argument('--checkpoint', action='store_true', help='Persist shards and resume')
    census_parser.add_argument('--out', help='Report directory (default paths.reports)')

    witness_parser = subparsers.add_parser('witness', parents=[common], help='Search for polynomial mates')
    witness_parser.add_argument('--in', dest='input', required=True)
    witness_parser.add_argument('--poly', choices=[k.value for k in PolynomialKind], default='chi')
    witness_parser.add_argument('--stratum', choices=[s.value for s in Stratum], default='edge_count')
    witness_parser.add_argument('--mode', help='Search class (inferred from the hypergraph by default)')
    witness_parser.add_argument('--out')

    family_parser = subparsers.add_parser('family', parents=[common], help='Generate a family instance')
    family_parser.add_argument('kind', choices=[f.value for f in FamilyKind])
    family_parser.add_argument('--n', type=int)
    family_parser.add_argument('--m', type=int, help='Edge count (hyperpath, hypercycle)')
    family_parser.add_argument('--r', type=int)
    family_parser.add_argument('--p', type=int)
    family_parser.add_argument('--k', type=int, help='Sunflower edge count')
    family_parser.add_argument('--cycle-edge', type=int, default=1)
    family_parser.add_argument('--out')

    verify_parser = subparsers.add_parser('verify', parents=[common], help='Structural census checks')
    verify_parser.add_argument('check', choices=['claims', 'superset', 'uniform'])
    verify_parser.add_argument('--n', type=int)
    verify_parser.add_argument('--r', type=int)
    verify_parser.add_argument('--n-max', type=int)
    verify_parser.add_argument('--poly', choices=[k.value for k in PolynomialKind], default='chi')
    verify_parser.add_argument('--out')

    bounds_parser = subparsers.add_parser('bounds', parents=[common], help='Counting bounds and sequences')
    what = bounds_parser.add_mutually_exclusive_group()
    what.add_argument('--kind', help='Ratio sequence, e.g. chi_general, ind_uniform(3), chi_exact_general')
    what.add_argument('--product', choices=[k.value for k in PolynomialKind], help='Exact product bound')
    what.add_argument('--labeled', action='store_true', help='Labeled hypergraph count')
    what.add_argument('--stirling', action='store_true', help='Stirling asymptotics report')
    bounds_parser.add_argument('--n', type=int)
    bounds_parser.add_argument('--r', type=int)
    bounds_parser.add_argument('--k', type=int, help='Smallest edge size for the matching product')
    bounds_parser.add_argument('--n-min', type=int)
    bounds_parser.add_argument('--n-max', type=int)
    bounds_parser.add_argument('--step', type=int, default=1)
    bounds_parser.add_argument('--model', choices=[m.value for m in SubsetModel], default='all')
    bounds_parser.add_argument('--csv', action='store_true', help='Same as --format csv')
    bounds_parser.add_argument('--gnuplot', action='store_true', help='Two-column output per quantity')
    bounds_parser.add_argument('--out')

    count_parser = subparsers.add_parser('count', parents=[common], help='Burnside class counts')
    count_parser.add_argument('--n', type=int, required=True)
    count_parser.add_argument('--r', type=int)
    count_parser.add_argument('--model', choices=[m.value for m in SubsetModel], default='model')

    selfcheck_parser = subparsers.add_parser('selfcheck', parents=[common], help='Randomized differential checks')
    selfcheck_parser.add_argument('--n-max', type=int, default=6)
    selfcheck_parser.add_argument('--samples', type=int, default=50)

    history_parser = subparsers.add_parser('history', parents=[common], help='Recorded census runs')
    history_parser.add_argument('--limit', type=int, default=20)
    history_parser.add_argument('--shards', action='store_true', help='Also list shard states')

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main function; returns the process exit code"""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return 0

    try:
        settings = build_settings(args)
        configure_logging(settings, args.verbose)
        config = run_config(args, settings)
        code = COMMANDS[args.command](config, args)
        if code == 0:
            logger.info("Command completed successfully!")
        return code
    except HypergraphToolkitError as e:
        logger.error(f"Command failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except KeyboardInterrupt:
        logger.info("Operation cancelled by user")
        return 1
    except (OSError, ValueError) as e:
        logger.error(f"Command failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
