from hypothesis import given, strategies as st

from src.rng import LCG_INCREMENT, LCG_MULTIPLIER, MASK64, Lcg64


def test_first_state_follows_recurrence():
    rng = Lcg64(13)
    assert rng.next_uint64() == (13 * LCG_MULTIPLIER + LCG_INCREMENT) & MASK64


def test_random_uses_top_53_bits():
    state = (7 * LCG_MULTIPLIER + LCG_INCREMENT) & MASK64
    assert Lcg64(7).random() == (state >> 11) / 2 ** 53


def test_same_seed_same_stream():
    a, b = Lcg64(42), Lcg64(42)
    assert [a.next_uint64() for _ in range(10)] == [b.next_uint64() for _ in range(10)]


def test_derive_seeds_with_stream_offset():
    derived = Lcg64.derive(13, 1)
    expected = Lcg64((13 * LCG_MULTIPLIER + 1) & MASK64)
    assert derived.next_uint64() == expected.next_uint64()


def test_uniform_array_is_row_major():
    values = Lcg64(5).uniform_array((2, 3), 0.5)
    rng = Lcg64(5)
    expected = [rng.uniform(-0.5, 0.5) for _ in range(6)]
    assert values.shape == (2, 3)
    assert values.ravel().tolist() == expected


@given(st.integers(min_value=0, max_value=2 ** 64 - 1), st.integers(min_value=1, max_value=1000))
def test_randbelow_in_range(seed, n):
    rng = Lcg64(seed)
    assert all(0 <= rng.randbelow(n) < n for _ in range(20))


@given(st.integers(min_value=0, max_value=2 ** 32), st.lists(st.integers(), max_size=50))
def test_shuffle_is_permutation(seed, items):
    shuffled = list(items)
    Lcg64(seed).shuffle(shuffled)
    assert sorted(shuffled) == sorted(items)
