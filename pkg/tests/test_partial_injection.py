import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isomon import partial_injection as pi
from isomon.errors import MismatchedGroundSet, NotInjective, OutOfRange


@st.composite
def injections(draw, n=None):
    n = n or draw(st.integers(3, 7))
    dom = draw(st.lists(st.integers(1, n), unique=True, max_size=n))
    img = draw(st.permutations(range(1, n + 1)))
    return pi.make(n, zip(dom, img[: len(dom)]))


triple = st.integers(3, 7).flatmap(lambda n: st.tuples(injections(n), injections(n), injections(n)))


@given(triple)
def test_associative(t):
    a, b, c = t
    assert pi.compose(pi.compose(a, b), c) == pi.compose(a, pi.compose(b, c))


@given(injections())
@settings(max_examples=200)
def test_inverse_laws(a):
    b = pi.inverse(a)
    assert pi.compose(pi.compose(a, b), a) == a
    assert pi.compose(pi.compose(b, a), b) == b
    assert pi.rank(b) == pi.rank(a)


@given(injections())
def test_identity_is_neutral(a):
    e = pi.identity(a.n)
    assert pi.compose(e, a) == a == pi.compose(a, e)


@given(injections())
def test_classify_is_consistent(a):
    c = pi.classify(a)
    assert c.partial_identity == (c.extensive and c.coextensive)
    if c.shift is not None:
        assert all(y - x == c.shift for x, y in a.pairs)
    assert pi.in_odp(a) == (c.order_preserving and c.isometry)
    assert pi.in_dp(a) == c.isometry


@given(injections())
def test_parse_render_round_trip(a):
    assert pi.parse(pi.render(a)) == a


def test_right_action():
    a = pi.make(3, [(1, 2)])
    b = pi.make(3, [(2, 3)])
    assert pi.compose(a, b).pairs == ((1, 3),)
    assert pi.compose(b, a).pairs == ()


def test_errors():
    with pytest.raises(OutOfRange):
        pi.make(3, [(4, 1)])
    with pytest.raises(NotInjective):
        pi.make(3, [(1, 2), (3, 2)])
    with pytest.raises(MismatchedGroundSet):
        pi.compose(pi.identity(3), pi.identity(4))


def test_empty_map_is_everywhere():
    z = pi.empty(4)
    assert pi.rank(z) == 0 and pi.in_odp(z) and pi.in_dp(z)
