from semiband import SupportSet, is_sbp, support
from semiband.generators import gen_random_operator, gen_random_wce
from semiband.wce import WceForm, make_wce


def test_wce_generator_deterministic():
    a = gen_random_wce(42, 6)
    b = gen_random_wce(42, 6)
    assert a == b
    c = gen_random_wce(43, 6)
    assert a != c


def test_wce_generator_valid_and_sbp():
    form = gen_random_wce(42, 6)
    assert isinstance(form, WceForm)
    # re-validating through the constructor must be a no-op
    assert make_wce(form.space, form.blocks, form.u, form.psi) == form
    assert is_sbp(form.to_operator()).holds
    seen = 0
    for block, u, psi in zip(form.blocks, form.u, form.psi):
        assert support(u) == block
        assert support(psi) <= block
        assert seen & block.mask == 0
        seen |= block.mask


def test_wce_generator_single_atom():
    form = gen_random_wce(7, 1)
    assert form.blocks == (SupportSet.of(1),)


def test_operator_generator_contracts():
    z = gen_random_operator(1, 4, 0.0)
    assert all(all(x == 0 for x in row) for row in z.rows)
    d = gen_random_operator(1, 4, 1.0)
    assert all(all(x != 0 for x in row) for row in d.rows)
    assert gen_random_operator(5, 3, 0.5).rows == gen_random_operator(5, 3, 0.5).rows
    assert gen_random_operator(5, 3, 0.5).rows != gen_random_operator(6, 3, 0.5).rows


def test_entries_are_small_rationals():
    T = gen_random_operator(9, 5, 0.8)
    for row in T.rows:
        for x in row:
            assert abs(x.numerator) <= 9 and 1 <= x.denominator <= 9
