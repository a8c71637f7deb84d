"""Run every bundled scenario and print a one-line summary for each."""

import argparse
import sys
import time
from dataclasses import dataclass

from cmlab.runner import bundled_scenarios, emit, run
from cmlab.scenario import parse_scenario


@dataclass
class Config:
    budget: int | None = None
    jobs: int = 1
    verbose: bool = False


def main(cfg: Config) -> int:
    worst = 0
    for name, text in bundled_scenarios().items():
        t0 = time.perf_counter()
        report = run(parse_scenario(text), budget=cfg.budget, jobs=cfg.jobs)
        s = report.summary
        print(f"{name:42} exit={report.exit_code}  pass={s['pass']} info={s['info']} "
              f"fail={s['fail']} violation={s['violation']} error={s['error']}  {time.perf_counter() - t0:.2f}s")
        if cfg.verbose:
            print(emit(report, "text"))
        worst = max(worst, report.exit_code)
    return worst


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--budget", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--verbose", action="store_true")
    sys.exit(main(Config(**vars(p.parse_args()))))
