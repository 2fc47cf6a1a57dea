#!/usr/bin/env python3
"""Infinite towers of dense vectors with zero expected stabilizer.

Dense vectors with expected stabilizer dimension exactly zero are the
rigid case: the generic configuration has finite stabilizer.  Two
constructions generate such towers from a seed vector — appending the
current total (which grows entries like the Fibonacci numbers) and
appending a fixed entry equal to the excess.  Every member is certified
dense by the oracle.  Run:

    python demos/family_towers.py
"""

from grassdense import fibonacci_family, oracle_decide, parse, repeat_family


def show(label: str, members) -> None:
    print(label)
    for v in members:
        rep = oracle_decide(v, samples=2, seed=5)
        print(f"  {str(v):>28}  n={v.ambient:>3}  excess={v.excess:>2}  "
              f"expected={v.expected_stab_dim}  {rep.verdict_class.value}")


def main() -> None:
    show("total-appending tower from (1^3;2):",
         fibonacci_family(parse("(1^3;2)"), 5))
    print()
    show("entry-repeating tower from (1^3,2;3):",
         repeat_family(parse("(1^3,2;3)"), 4))

    # zero expected stabilizer does not force density: the towers thread a
    # needle that e.g. (5^4,13;14) misses
    v = parse("(5^4,13;14)")
    rep = oracle_decide(v, samples=4, seed=5)
    print(f"\ncounterpoint {v}: expected {v.expected_stab_dim}, observed "
          f"stab dims {sorted(s for _, s in rep.stab_dims)} "
          f"-> {rep.verdict_class.value}")


if __name__ == "__main__":
    main()
