"""Size caps for the exhaustive oracles.

``KLEINFOUR_BUDGET=N`` (or ``--budget N`` on the command line) replaces every
cap with N.
"""

import os
from dataclasses import dataclass, replace


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Budget:
    scan_q: int = 13  # anisotropy scan of one triple, q^4 points
    sweep_q: int = 9  # scan of all q^3 triples
    morphism_q: int = 7  # generator-image morphism enumeration

    def check(self, kind, q):
        cap = getattr(self, f"{kind}_q")
        if q > cap:
            raise BudgetExceeded(f"budget exceeded: {kind} requires q <= {cap}, got q = {q}")

    def uniform(self, n):
        return replace(self, scan_q=n, sweep_q=n, morphism_q=n)


def default_budget():
    env = os.environ.get("KLEINFOUR_BUDGET")
    if env:
        return Budget().uniform(int(env))
    return Budget()


def resolve(budget):
    return default_budget() if budget is None else budget
