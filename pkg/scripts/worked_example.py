"""Run the built-in quaternion and 2x2 matrix examples and print each check."""

import argparse
import json

from algzeros.worked_example import run_all


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    checks = run_all()
    if args.json:
        print(json.dumps([{"name": c.name, "passed": c.passed, "detail": c.detail, **c.data} for c in checks], indent=2))
        return
    for i, c in enumerate(checks, 1):
        print(f"({i}) {'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}")


if __name__ == "__main__":
    main()
