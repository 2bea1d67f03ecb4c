"""Run the acceptance suite and write a JSON summary next to the console lines."""

import argparse
import json

from qcluster.acceptance import run_all


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--only", nargs="*")
    ap.add_argument("--optional", action="store_true")
    ap.add_argument("--json", default="acceptance.json")
    args = ap.parse_args()
    results = run_all(args.only, include_optional=args.optional)
    for r in results:
        print(r.line(), flush=True)
    with open(args.json, "w") as fh:
        json.dump([r.to_dict() for r in results], fh, indent=1)
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    raise SystemExit(main())
