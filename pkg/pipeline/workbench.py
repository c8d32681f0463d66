#!/usr/bin/env python3
"""
LIE WORKBENCH: COMMAND-LINE ENTRY POINT

Enumerates admissible colored partitions and runs the verification suites
for the combinatorial basis of L(kLambda_0), type C_l^(1).

Subcommands:
- enumerate       Admissible partitions on FULL(l) or FS(2l), with counts
- verify-lemmas   T_a on generators and powers over a parameter grid
- verify-theorem  Count / quotient dimension / monomial rank / character per degree
- verify-shift    Color shift end to end with the selection property
- verify-algebra  Jacobi, form, grading, embeddings, Leibniz rule, module axiom
- dump-model      Structure constants of sp_{2m} as YAML

Exit codes: 0 pass, 1 verification failure, 2 usage/config error, 3 resource cap.
With --strict the first failed report raises and nothing is written.

Usage:
    python pipeline/workbench.py verify-theorem --ell 1 --level 1 --max-degree 6
"""

import sys
import argparse
import logging
import time
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, Field, ValidationError

sys.path.insert(0, str(Path(__file__).parent.parent))

import config
from core.errors import ResourceCapExceeded, TruncationError, VerificationFailure
from core.derivations import DerivationEngine, shift_generator
from core.lie_algebra import ColorLabel, build_symplectic_model
from core.partitions import ArrayKind, enumerate_admissible, enumerate_admissible_bruteforce
from core.reports import OUTPUT_FORMATS, merge_reports, render_model, render_partitions, render_report
from core.verification import verify_algebra, verify_lemma_grid, verify_phi, verify_shift, verify_theorem

logger = logging.getLogger("workbench")

EXIT_PASS = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

COMMANDS = ("enumerate", "verify-lemmas", "verify-theorem", "verify-shift", "verify-algebra", "dump-model")
ARRAYS = ("full", "fs")


class RunConfig(BaseModel):
    """Validated parameters of one workbench run."""

    command: Literal["enumerate", "verify-lemmas", "verify-theorem", "verify-shift",
                     "verify-algebra", "dump-model"]
    ell: int = Field(1, ge=1)
    level: int = Field(1, ge=1)
    max_degree: int = Field(4, ge=0)
    array: Literal["full", "fs"] = "full"
    output_format: Literal["csv", "text", "structured"] = "text"
    max_partitions: int = Field(config.MAX_PARTITIONS, gt=0)
    max_slice_dim: int = Field(config.MAX_SLICE_DIM, gt=0)
    max_weights: int = Field(config.MAX_WEIGHTS, gt=0)
    max_multiplicity: int = Field(3, ge=1)
    samples: int = Field(config.PROPERTY_SAMPLES, ge=1)
    seed: int = config.DEFAULT_SEED
    n_jobs: int = Field(config.N_JOBS, ge=1)
    close_slices: bool = False
    corrupt_bracket: bool = False
    check_bruteforce: bool = False
    strict: bool = False


def setup_logging():
    """Root logger on stderr; reports go to stdout or --output."""
    settings = config.load_default_config().get("logging", {})
    logging.basicConfig(
        level=getattr(logging, config.LOG_LEVEL, logging.INFO),
        format=settings.get("format", "%(asctime)s - %(name)s - %(levelname)s - %(message)s"),
        stream=sys.stderr,
    )


def build_parser():
    parser = argparse.ArgumentParser(
        description="Combinatorial bases of L(kLambda_0) for C_l^(1): enumeration and verification"
    )

    parser.add_argument(
        'command', choices=COMMANDS,
        help='Subcommand to run'
    )

    parser.add_argument(
        '--ell', type=int, default=1,
        help="Rank l of C_l (verify-lemmas: largest l; dump-model: rank of the algebra)"
    )

    parser.add_argument(
        '--level', type=int, default=1,
        help='Level k'
    )

    parser.add_argument(
        '--max-degree', type=int, default=4,
        help='Largest degree N (truncation)'
    )

    parser.add_argument(
        '--array', type=str, default='full', choices=ARRAYS,
        help='Generator array: full (FULL(l)) or fs (FS(2l))'
    )

    parser.add_argument(
        '--format', type=str, default='text', dest='output_format', choices=OUTPUT_FORMATS,
        help='Output format: csv, text or structured'
    )

    parser.add_argument(
        '--cap-slice-dim', type=int, default=config.MAX_SLICE_DIM, dest='max_slice_dim',
        help='Largest PBW slice (words per degree)'
    )

    parser.add_argument(
        '--max-multiplicity', type=int, default=3,
        help='verify-lemmas: largest power m'
    )

    parser.add_argument(
        '--samples', type=int, default=config.PROPERTY_SAMPLES,
        help='verify-algebra: random instances per property'
    )

    parser.add_argument(
        '--seed', type=int, default=config.DEFAULT_SEED,
        help='Seed for randomized property suites'
    )

    parser.add_argument(
        '--close-slices', action='store_true',
        help='verify-theorem: also check each relation slice is stable under degree-0 elements'
    )

    parser.add_argument(
        '--corrupt-bracket', action='store_true',
        help='verify-lemmas: zero one bracket of t_1 (negative control, must fail)'
    )

    parser.add_argument(
        '--check-bruteforce', action='store_true',
        help='enumerate: cross-check against explicit path enumeration'
    )

    parser.add_argument(
        '--strict', action='store_true',
        help='Stop with exit code 1 at the first failed check'
    )

    parser.add_argument(
        '--output', type=str, default=None,
        help='Write the report to this file instead of stdout'
    )

    return parser


# ============================================================================
# COMMANDS
# ============================================================================

def _check_strict(run: RunConfig, result):
    """In strict mode a failed report stops the run through its assert_passed."""
    if run.strict:
        result.assert_passed()


def cmd_enumerate(run: RunConfig):
    kind = ArrayKind.full(run.ell) if run.array == "full" else ArrayKind.fs(run.ell)
    partitions = enumerate_admissible(
        run.ell, run.level, run.max_degree, kind=kind,
        cap=run.max_partitions, n_jobs=run.n_jobs, progress=True,
    )
    passed = True
    if run.check_bruteforce:
        reference = enumerate_admissible_bruteforce(run.ell, run.level, run.max_degree, kind=kind)
        passed = reference == partitions
        if not passed:
            logger.error("Dynamic-programming and brute-force enumerations disagree")
            if run.strict:
                raise VerificationFailure(f"enumeration on {kind} disagrees with brute force")
    header = {"array": str(kind), "level": run.level, "max_degree": run.max_degree}
    return render_partitions(partitions, run.output_format, header), passed


def _corrupted_engine(ell: int) -> DerivationEngine:
    """Engine whose [t_1, 1_1_] is zeroed."""
    model = build_symplectic_model(2 * ell)
    target = ColorLabel.of(1, True, 1, True, 2 * ell)
    model = model.with_bracket_override(shift_generator(1, ell), target, {})
    return DerivationEngine(ell, model=model)


def cmd_verify_lemmas(run: RunConfig):
    lemma_grid = config.load_default_config().get("lemma_grid", {})
    degrees = lemma_grid.get("degrees", [-1, -2])
    factory = _corrupted_engine if run.corrupt_bracket else DerivationEngine
    report = verify_lemma_grid(run.ell, run.max_multiplicity, degrees, engine_factory=factory)
    _check_strict(run, report)
    return render_report(report, run.output_format), report.passed


def cmd_verify_theorem(run: RunConfig):
    table = verify_theorem(
        run.ell, run.level, run.max_degree, run.array,
        max_partitions=run.max_partitions, max_slice_dim=run.max_slice_dim,
        max_weights=run.max_weights, close_slices=run.close_slices,
        n_jobs=run.n_jobs, progress=True,
    )
    _check_strict(run, table)
    return table.render(run.output_format), bool(table.verdict)


def cmd_verify_shift(run: RunConfig):
    report = verify_shift(run.ell, run.level, run.max_degree, max_partitions=run.max_partitions, progress=True)
    _check_strict(run, report)
    return render_report(report, run.output_format), report.passed


def cmd_verify_algebra(run: RunConfig):
    report = merge_reports(
        f"algebra and phi, seed={run.seed}",
        [
            verify_algebra(2 * run.ell, run.samples, run.seed, level=run.level),
            verify_phi(run.ell, min(run.max_degree, 5)),
        ],
    )
    _check_strict(run, report)
    return render_report(report, run.output_format), report.passed


def cmd_dump_model(run: RunConfig):
    return render_model(build_symplectic_model(run.ell).dump()), True


HANDLERS = {
    "enumerate": cmd_enumerate,
    "verify-lemmas": cmd_verify_lemmas,
    "verify-theorem": cmd_verify_theorem,
    "verify-shift": cmd_verify_shift,
    "verify-algebra": cmd_verify_algebra,
    "dump-model": cmd_dump_model,
}


def write_output(text: str, output: Optional[str]):
    if output:
        Path(output).parent.mkdir(parents=True, exist_ok=True)
        with open(output, 'w', encoding='utf-8') as f:
            f.write(text)
        print(f"Report saved to {output}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    """Parse, validate, execute; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS

    try:
        config.validate_resource_caps()
        run_config = RunConfig(
            command=args.command,
            ell=args.ell,
            level=args.level,
            max_degree=args.max_degree,
            array=args.array,
            output_format=args.output_format,
            max_slice_dim=args.max_slice_dim,
            max_multiplicity=args.max_multiplicity,
            samples=args.samples,
            seed=args.seed,
            close_slices=args.close_slices,
            corrupt_bracket=args.corrupt_bracket,
            check_bruteforce=args.check_bruteforce,
            strict=args.strict,
        )
    except (ValidationError, ValueError) as e:
        print(f"[ERROR] Invalid configuration:\n{e}", file=sys.stderr)
        return EXIT_USAGE

    start_time = time.time()
    logger.info(f"Running {run_config.command} (l={run_config.ell}, k={run_config.level}, "
                f"N={run_config.max_degree}, array={run_config.array})")

    try:
        text, passed = HANDLERS[run_config.command](run_config)
    except (ResourceCapExceeded, TruncationError) as e:
        print(f"[ERROR] Resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except VerificationFailure as e:
        print(f"[FAIL] {e}", file=sys.stderr)
        return EXIT_FAILURE
    except ValueError as e:
        print(f"[ERROR] Invalid arguments: {e}", file=sys.stderr)
        return EXIT_USAGE

    write_output(text, args.output)
    elapsed_time = time.time() - start_time
    status = "[OK]" if passed else "[FAIL]"
    print(f"{status} {run_config.command} finished in {elapsed_time:.1f} seconds", file=sys.stderr)
    return EXIT_PASS if passed else EXIT_FAILURE


def main():
    setup_logging()
    sys.exit(run())


if __name__ == "__main__":
    main()
