from fractions import Fraction

from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def rationals(min_num=-20, max_num=20, max_den=12):
    return st.builds(Fraction, st.integers(min_num, max_num), st.integers(1, max_den))


def positive_rationals(max_num=20, max_den=12):
    return st.builds(Fraction, st.integers(1, max_num), st.integers(1, max_den))


def coeff_lists(min_size=1, max_size=8, elements=None):
    return st.lists(elements or rationals(), min_size=min_size, max_size=max_size)
