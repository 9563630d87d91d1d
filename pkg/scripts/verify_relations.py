#!/usr/bin/env python3
"""Run every local relation check and print a pass count per family."""
import sys
import time

from ffice import relations


def main() -> int:
    failed = 0
    for name in relations.RELATIONS:
        start = time.perf_counter()
        reports = relations.run(name)
        ok = sum(r.passed for r in reports)
        failed += len(reports) - ok
        print(f"{name:>13}: {ok}/{len(reports)} pass ({time.perf_counter() - start:.2f}s)")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
