#!/usr/bin/env python3
"""Write a built-in demo fixture out as a problem file.

    python3 scripts/dump_problem.py ex61 > ex61.qh
    quiverhearts verify-main-theorem ex61.qh C D
"""

import sys

from quiverhearts import fixtures, problemfile


def main() -> int:
    which = sys.argv[1] if len(sys.argv) > 1 else "ex61"
    if which not in ("ex61", "ex62"):
        print("usage: dump_problem.py ex61|ex62", file=sys.stderr)
        return 2
    fx = fixtures.ex61() if which == "ex61" else fixtures.ex62()
    sys.stdout.write(problemfile.serialize(problemfile.problem_from_fixture(fx)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
