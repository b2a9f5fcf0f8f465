from __future__ import annotations

from fractions import Fraction

from hypothesis import settings, strategies as st

from orbitkit.exactalg import Poly, RatFunc

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_ints = st.integers(-6, 6)
rats = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 12))
nonzero_rats = rats.filter(bool)
polys = st.lists(rats, max_size=4).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())
ratfuncs = st.builds(RatFunc, polys, nonzero_polys)
nonzero_ratfuncs = ratfuncs.filter(bool)
