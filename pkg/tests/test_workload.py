import random
from fractions import Fraction

import pytest

from oracles import (
    naive_balanced_violation,
    naive_bounded_violation,
    random_colours,
    random_env,
)
from sectorsearch.constraints import (
    BalancedConstraint,
    BoundedConstraint,
    deviation_check,
    mu_of,
    scale_delta,
)
from sectorsearch.errors import InputError
from sectorsearch.geometry import envelop, grid
from sectorsearch.state import ColourState

RELOPS = ("<=", "<", "=", "!=", ">", ">=")


def make_state(colours, n=2):
    env = envelop(grid(len(colours), 1, dim=2))
    return ColourState(env, n, colours={i: c for i, c in enumerate(colours)})


def test_mu_of():
    assert mu_of([3, 5, 4], 2) == Fraction(6)
    assert mu_of([0, 0], 3) == 0
    assert mu_of([1, 1, 1], 2) == Fraction(3, 2)
    assert scale_delta(5, 4) == 20


def test_deviation_check_examples():
    assert deviation_check([8, 4], Fraction(6), 8)
    assert deviation_check([6, 6], Fraction(6), 0)
    assert not deviation_check([8, 4], Fraction(6), 7)


def test_balanced_violation_examples():
    st = make_state([1, 1, 2])
    values = {0: 3, 1: 5, 2: 4}
    assert BalancedConstraint(st, values, 8).violation() == 0
    assert BalancedConstraint(st, values, 6).violation() == 2
    st_even = make_state([1, 2])
    assert BalancedConstraint(st_even, {0: 5, 1: 5}, 0).violation() == 0


def test_balanced_var_violation():
    st = make_state([1, 1, 2])
    c = BalancedConstraint(st, {0: 3, 1: 5, 2: 4}, 8)
    assert c.var_violation(0) == 4  # |2*8 - 12|
    assert c.var_violation(2) == 4  # |2*4 - 12|
    st_even = make_state([1, 2])
    c2 = BalancedConstraint(st_even, {0: 5, 1: 5}, 0)
    assert c2.var_violation(0) == 0


def test_balanced_probe_example():
    st = make_state([1, 1, 2])
    c = BalancedConstraint(st, {0: 3, 1: 5, 2: 4}, 0)
    assert c.probe_assign(2, 1) == 16
    assert c.probe_assign(2, 2) == 0


def test_balanced_probe_reaching_balance():
    st = make_state([1, 1, 2, 2])
    c = BalancedConstraint(st, {0: 1, 1: 2, 2: 2, 3: 3}, 0)
    # moving vertex 1 to colour 2 gives sums (1, 7): worse; moving 3 to 1 balances
    before = c.violation()
    assert c.probe_assign(3, 1) == naive_balanced_violation(
        {0: 1, 1: 1, 2: 2, 3: 1}, {0: 1, 1: 2, 2: 2, 3: 3}, 2, 0
    ) - before


def test_balanced_mu_validation():
    st = make_state([1, 1, 2])
    BalancedConstraint(st, {0: 3, 1: 5, 2: 4}, 0, mu=Fraction(6))
    with pytest.raises(InputError):
        BalancedConstraint(st, {0: 3, 1: 5, 2: 4}, 0, mu=Fraction(5))


def test_bounded_violation_examples():
    st = make_state([1, 1, 2])
    values = {0: 3, 1: 5, 2: 4}
    assert BoundedConstraint(st, values, "<=", 7).violation() == 1
    assert BoundedConstraint(st, values, "<=", 12).violation() == 0
    assert BoundedConstraint(st, values, ">=", 0).violation() == 0


def test_bounded_probe_example():
    st = make_state([1, 1, 2])
    c = BoundedConstraint(st, {0: 3, 1: 5, 2: 4}, "<=", 7)
    assert c.probe_assign(0, 2) == -1


def test_probes_match_scratch():
    rng = random.Random(89)
    for _ in range(300):
        env = random_env(rng)
        n = rng.randint(2, 3)
        st = ColourState(env, n, colours=random_colours(rng, env, n))
        values = {v: rng.randint(0, 9) for v in sorted(env.vertices)}
        colours = st.snapshot()
        v = rng.choice(sorted(env.vertices))
        colour = rng.randint(1, n)
        after = dict(colours)
        after[v] = colour

        delta = rng.randint(0, 40)
        bal = BalancedConstraint(st, values, delta)
        expected = naive_balanced_violation(after, values, n, delta) - naive_balanced_violation(
            colours, values, n, delta
        )
        assert bal.probe_assign(v, colour) == expected

        relop = rng.choice(RELOPS)
        t = rng.randint(0, 25)
        bou = BoundedConstraint(st, values, relop, t)
        expected = naive_bounded_violation(after, values, n, relop, t) - naive_bounded_violation(
            colours, values, n, relop, t
        )
        assert bou.probe_assign(v, colour) == expected


def test_commits_conserve_sums():
    rng = random.Random(97)
    env = random_env(rng)
    n = 3
    st = ColourState(env, n, colours=random_colours(rng, env, n))
    values = {v: rng.randint(1, 9) for v in sorted(env.vertices)}
    bal = BalancedConstraint(st, values, 10)
    bou = BoundedConstraint(st, values, "<=", 15)
    st.register(bal)
    st.register(bou)
    total = sum(values.values())
    for _ in range(200):
        v = rng.choice(sorted(env.vertices))
        st.assign(v, rng.randint(1, n))
        assert sum(bal.sums.values()) == total
        assert sum(bou.sums.values()) == total
        colours = st.snapshot()
        assert bal.violation() == naive_balanced_violation(colours, values, n, 10)
        assert bou.violation() == naive_bounded_violation(colours, values, n, "<=", 15)
        assert (bal.violation() == 0) == bal.check()
        assert (bou.violation() == 0) == bou.check()


def test_balanced_over_volumes_is_balanced_size():
    env = envelop(grid(2, 2, dim=2, cell_volume=3))
    st = ColourState(env, 2, colours={0: 1, 1: 1, 2: 2, 3: 2})
    volumes = {v: env.base.volume(v) for v in env.vertices}
    c = BalancedConstraint(st, volumes, 0, id="balanced_size")
    assert c.violation() == 0  # two cells of volume 3 per colour
    st.assign(3, 1)
    c.rebuild()
    assert c.violation() == naive_balanced_violation(st.snapshot(), volumes, 2, 0)
