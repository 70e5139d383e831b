"""Time the compiled and pure-Python rewriting kernels on the same searches.

Instances are recorded from a full verification of a fixture, plus a few
searches that exhaust their budget (unequal words with equal homology).

    python benchmarks/bench_rewrite.py [--fixture G13] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

from clttf_aut import kernel
from clttf_aut.fixtures import NAMES, fixture
from clttf_aut.presentation import relation_sets, verify_presentation
from clttf_aut.words import ArtinWord, _rules_for, encode


class Recorder:
    def __init__(self, inner):
        self.inner = inner
        self.calls = []

    def __getattr__(self, name):
        return getattr(self.inner, name)

    def search(self, start, rules, max_len, budget):
        self.calls.append((start, rules, max_len, budget))
        return self.inner.search(start, rules, max_len, budget)


def record(name: str):
    g = fixture(name)
    rec = Recorder(kernel.python_kernel)
    saved, kernel.active = kernel.active, rec
    try:
        relation_sets.cache_clear()
        verify_presentation(g)
    finally:
        kernel.active = saved
    return g, rec.calls


def hard_cases(g, budget):
    rules = _rules_for(g).rules
    vs = list(g.vertices)
    out = []
    for a in vs[:4]:
        for b in vs[-3:]:
            if a != b and not g.has_edge(a, b):
                w = ArtinWord.parse(f"{a} {b} {a}^-1 {b}^-1")
                out.append((encode(g, w), rules, 24, budget))
    return out


def run(mod, calls, repeat):
    best = float("inf")
    results = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        results = [mod.search(*c) for c in calls]
        best = min(best, time.perf_counter() - t0)
    return best, results


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--fixture", choices=NAMES, default="G13")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--budget", type=int, default=20_000, help="budget for the unequal cases")
    args = p.parse_args()

    g, calls = record(args.fixture)
    suites = {"verification": calls, "budget-exhausting": hard_cases(g, args.budget)}
    comp = kernel.compiled_kernel
    print(f"fixture {args.fixture}; compiled kernel {'available' if comp else 'MISSING'}")
    for label, cs in suites.items():
        t_py, r_py = run(kernel.python_kernel, cs, args.repeat)
        line = f"{label:<18} {len(cs):>5} searches  python {t_py:8.3f}s"
        if comp is not None:
            t_c, r_c = run(comp, cs, args.repeat)
            assert r_c == r_py, "kernels disagree"
            line += f"  compiled {t_c:8.3f}s  speedup {t_py / max(t_c, 1e-9):5.1f}x"
        print(line)


if __name__ == "__main__":
    main()
