#!/usr/bin/env python3
"""
MASTER VERIFICATION RUNNER

Runs the complete acceptance grid of the workbench in one command, one
workbench subprocess per run, reports written under the reports directory.

Pipeline stages:
1. Algebra       → reports/algebra.txt
2. T_a checks    → reports/lemmas.txt
3. Basis theorem → reports/theorem_l{l}_k{k}.txt (theorem_grid)
4. FS subspace   → reports/fs_l{l}_k{k}.txt (fs_grid)
5. Color shift   → reports/shift_l{l}_k{k}.txt (shift_grid)

Usage:
    python pipeline/run_full_pipeline.py --skip-steps 1,5
"""

import sys
import subprocess
import argparse
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

import config

WORKBENCH = str(Path(__file__).parent / 'workbench.py')


def run_command(command, description):
    """Run a pipeline step and track time."""
    print(f"\n{'='*80}")
    print(f"RUNNING: {description}")
    print(f"{'='*80}")
    print(f"Command: {' '.join(command)}\n")

    start_time = time.time()

    result = subprocess.run(command, capture_output=False, text=True)

    elapsed_time = time.time() - start_time

    if result.returncode != 0:
        print(f"\n[ERROR] Step failed: {description}")
        print(f"Exit code: {result.returncode}")
    else:
        print(f"\n[OK] Completed in {elapsed_time:.1f} seconds")

    return elapsed_time, result.returncode


def workbench(*args):
    return [sys.executable, WORKBENCH, *[str(a) for a in args]]


def main():
    parser = argparse.ArgumentParser(
        description="Run the complete verification grid"
    )

    parser.add_argument(
        '--config', type=str,
        default=config.DEFAULT_CONFIG_PATH,
        help='JSON file with the verification grids'
    )

    parser.add_argument(
        '--output-dir', type=str,
        default=config.OUTPUT_DIR,
        help='Directory for the reports'
    )

    parser.add_argument(
        '--seed', type=int,
        default=config.DEFAULT_SEED,
        help='Seed for randomized property suites'
    )

    parser.add_argument(
        '--fail-fast', action='store_true',
        help='Stop at the first failing step'
    )

    parser.add_argument(
        '--skip-steps', type=str,
        default='',
        help='Comma-separated steps to skip (e.g., "1,2")'
    )

    args = parser.parse_args()

    skip_steps = set(args.skip_steps.split(',')) if args.skip_steps else set()
    grids = config.load_default_config(args.config)
    out = Path(args.output_dir)
    config.ensure_directories(out)

    print(f"\n{'='*80}")
    print("LIE WORKBENCH - FULL VERIFICATION")
    print(f"{'='*80}")
    print(f"\nConfiguration:")
    print(f"  Grids: {args.config}")
    print(f"  Reports: {out}")
    print(f"  Seed: {args.seed}")

    steps = []

    if '1' not in skip_steps:
        algebra = grids.get('algebra_grid', {})
        steps.append(("Step 1: Algebra", workbench(
            'verify-algebra', '--ell', max(1, algebra.get('max_rank', 4) // 2),
            '--samples', algebra.get('samples', config.PROPERTY_SAMPLES),
            '--seed', args.seed, '--output', out / 'algebra.txt',
        )))
    else:
        print("\n[SKIP] Step 1: Algebra")

    if '2' not in skip_steps:
        lemmas = grids.get('lemma_grid', {})
        steps.append(("Step 2: T_a checks", workbench(
            'verify-lemmas', '--ell', lemmas.get('max_ell', 3),
            '--max-multiplicity', lemmas.get('max_multiplicity', 3),
            '--output', out / 'lemmas.txt',
        )))
    else:
        print("\n[SKIP] Step 2: T_a checks")

    for step, key, command, prefix, extra in (
        ('3', 'theorem_grid', 'verify-theorem', 'theorem', []),
        ('4', 'fs_grid', 'verify-theorem', 'fs', ['--array', 'fs']),
        ('5', 'shift_grid', 'verify-shift', 'shift', []),
    ):
        if step in skip_steps:
            print(f"\n[SKIP] Step {step}: {key}")
            continue
        for entry in grids.get(key, []):
            name = f"{prefix}_l{entry['ell']}_k{entry['level']}.txt"
            steps.append((f"Step {step}: {command} l={entry['ell']} k={entry['level']}", workbench(
                command, '--ell', entry['ell'], '--level', entry['level'],
                '--max-degree', entry['max_degree'], *extra, '--output', out / name,
            )))

    total_start = time.time()
    results = []
    for description, cmd in steps:
        elapsed, code = run_command(cmd, description)
        results.append((description, elapsed, code))
        if code != 0 and args.fail_fast:
            break

    total_time = time.time() - total_start

    # Summary
    print(f"\n{'='*80}")
    print("VERIFICATION COMPLETE")
    print(f"{'='*80}")

    print(f"\nStep execution times:")
    for description, elapsed, code in results:
        status = "OK" if code == 0 else f"FAILED (exit {code})"
        print(f"  {description}: {elapsed:.1f}s {status}")

    print(f"\nTotal time: {total_time:.1f}s ({total_time/60:.1f} minutes)")
    print(f"\nReports: {out}/")

    failed = [r for r in results if r[2] != 0]
    if failed:
        print(f"\n[ERROR] {len(failed)} step(s) failed")
        sys.exit(1)


if __name__ == "__main__":
    main()
