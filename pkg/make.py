#!/usr/bin/env python3
import argparse
import subprocess


def run_command(cmd):
    return subprocess.run(cmd, shell=True, check=True)


def build(args):
    run_command("pip install -e .[dev]")
    run_command("pip install build")

    if not args.skip_tests:
        marker = "-m 'not slow'" if args.fast else ""
        run_command(f"pytest {marker} --cov=walkstream tests/")

    if args.docs:
        run_command("pip install -e .[docs]")
        run_command("sphinx-build -b html docs docs/_build/html")

    run_command("python -m build")


def main():
    parser = argparse.ArgumentParser(description="walkstream build tool")
    parser.add_argument("--skip-tests", action="store_true", help="Skip running tests")
    parser.add_argument("--fast", action="store_true", help="Skip tests marked slow")
    parser.add_argument("--docs", action="store_true", help="Build the Sphinx docs")
    args = parser.parse_args()

    build(args)


if __name__ == "__main__":
    main()
