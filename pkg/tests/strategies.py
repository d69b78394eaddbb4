"""Hypothesis strategies shared by the property tests."""

from fractions import Fraction

from hypothesis import strategies as st

from telegraph_taylor import expr as E

leaves = st.one_of(
    st.just(E.X),
    st.just(E.T),
    st.just(E.PI),
    st.integers(-3, 3).map(lambda n: E.Const(Fraction(n))),
    st.fractions(min_value=-2, max_value=2, max_denominator=4).map(E.Const),
)


def trees(depth=5):
    """Expression trees at most ``depth`` levels deep."""
    if depth == 0:
        return leaves
    sub = trees(depth - 1)
    pair = st.lists(sub, min_size=2, max_size=2)
    return st.one_of(
        leaves,
        pair.map(lambda cs: E.Add(*cs)),
        pair.map(lambda cs: E.Mul(*cs)),
        sub.map(E.Neg),
        st.tuples(sub, st.integers(1, 2)).map(lambda a: E.Pow(*a)),
        st.tuples(st.sampled_from(sorted(E.FUNCS)), sub).map(lambda a: E.FUNCS[a[0]](a[1])),
    )


points = st.tuples(st.floats(-1, 1), st.floats(-1, 1))
