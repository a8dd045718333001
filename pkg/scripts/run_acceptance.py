"""
Run the acceptance criteria outside pytest and print one verdict line each.

    python3 scripts/run_acceptance.py [N ...]

Exit status 0 when every selected criterion passes, 1 otherwise.  With -v
the failing checks are listed under each line.
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "tests"))

import suites  # noqa: E402


def main():
    p = argparse.ArgumentParser()
    p.add_argument("numbers", nargs="*", type=int)
    p.add_argument("-v", "--verbose", action="store_true")
    args = p.parse_args()
    numbers = args.numbers or [n for n, *_ in suites.SUITES]
    ok = True
    for n in numbers:
        o = suites.run(n)
        print(o.line(), flush=True)
        if args.verbose:
            for c in o.failures:
                print("    %s %s" % (c.label, c.detail))
        ok = ok and o.ok
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
