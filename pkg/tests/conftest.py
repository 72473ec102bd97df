from fractions import Fraction

from hypothesis import strategies as st

from lienil.coeff import GF, QQ, ZZ, ZZ3, RingKind
from lienil.freealg import Poly

RINGS = [QQ, ZZ, ZZ3, GF(5), GF(3)]


@st.composite
def scalars(draw, ring):
    n = draw(st.integers(-50, 50))
    if ring.kind is RingKind.RATIONALS:
        return ring.coerce(Fraction(n, draw(st.integers(1, 20))))
    if ring.kind is RingKind.INTEGERS_LOC3:
        return ring.coerce(Fraction(n, 3 ** draw(st.integers(0, 3))))
    return ring.coerce(n)


@st.composite
def polys(draw, ring, generator_count=3, max_degree=3, max_terms=4):
    words = st.lists(st.integers(0, generator_count - 1), max_size=max_degree).map(tuple)
    items = draw(st.lists(st.tuples(words, scalars(ring)), max_size=max_terms))
    return Poly(ring, dict(items))


rings = st.sampled_from(RINGS)

from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for crit in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[crit])
