import random

import pytest

from pentagon import (
    canonical_solution,
    cycle_solution,
    cyclic_group,
    ext_solution,
    group_solution,
    identity_solution,
    irretractable_solution,
    trivial_group,
    xor_group,
)
from pentagon.constructors import Decomposition, SigmaMap


def small_involutive_panel():
    """Involutive pentagon solutions of assorted shapes, sizes up to 12."""
    sigma = SigmaMap(2, 1, ((0, 1), (1, 0)))
    return [
        identity_solution(1),
        identity_solution(3),
        irretractable_solution(1),
        irretractable_solution(2),
        group_solution(xor_group(1)),
        group_solution(xor_group(2)),
        canonical_solution(2, 1, 0),
        canonical_solution(1, 1, 1),
        canonical_solution(3, 1, 1),
        ext_solution(Decomposition(2, 1, 0, sigma)),
    ]


def bijective_finite_order_panel():
    """Bijective solutions of finite order that need not be involutive."""
    return [
        group_solution(cyclic_group(3)),
        group_solution(cyclic_group(4)),
        cycle_solution((3, 0, 1, 2), cyclic_group(2)),
        cycle_solution((1, 0, 3, 2), trivial_group()),
    ] + small_involutive_panel()


def non_solution_panel(seed=20240305, count=12, max_size=3):
    """Random tables; very few will satisfy anything, none is assumed to."""
    from oracles import random_table

    rng = random.Random(seed)
    return [
        random_table(rng.randrange(1, max_size + 1), rng) for _ in range(count)
    ]


@pytest.fixture
def rng():
    return random.Random(20240305)
