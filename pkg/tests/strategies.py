"""Hypothesis strategies shared by the test modules."""
from fractions import Fraction

from hypothesis import strategies as st

from partmon import make_game

QUARTERS = [Fraction(k, 4) for k in range(5)]

NAMED = [
    ("spam", "0"), ("spam", "1/10"), ("spam", "1/3"), ("spam", "1/2"), ("spam", "3/5"),
    ("spam", "9/10"), ("hopeless2x2", None), ("exhibit1", None), ("exhibit2", "1/3"),
    ("exhibit3", None), ("exhibit4", None), ("flower", 3), ("flower", 5),
]


@st.composite
def games(draw, max_K=4, max_E=3, max_F=3, values=QUARTERS):
    K = draw(st.integers(2, max_K))
    E = draw(st.integers(2, max_E))
    F = draw(st.integers(1, max_F))
    loss = [[draw(st.sampled_from(values)) for _ in range(E)] for _ in range(K)]
    fb = [[draw(st.integers(1, F)) for _ in range(E)] for _ in range(K)]
    return make_game("random", loss, fb, F=F)
