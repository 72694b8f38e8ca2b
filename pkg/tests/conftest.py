"""Shared helpers for the test suite."""

from fractions import Fraction
import random

from reebedit.plcore import PLFunction, SimplicialComplex
from reebedit.generators import random_instance
from reebedit.reeb import compute_reeb


def third_function(cx: SimplicialComplex, seed: int) -> PLFunction:
    """A deterministic extra PL function on an existing complex."""
    rng = random.Random(10_000 + seed)
    return PLFunction(
        cx,
        {v: Fraction(rng.randint(-8, 8), rng.randint(1, 3)) for v in cx.vertices},
    )


def random_quotient(seed: int, nverts: int = 6):
    """(complex, f, Reeb graph, quotient map) for one random instance."""
    cx, f, _ = random_instance(seed, nverts=nverts)
    r, p = compute_reeb(cx, f)
    return cx, f, r, p
