# Hochschild cohomology of the torus algebra with generic q.

from hhlab import make_params
from hhlab.hochschild import Hochschild, hh_ring_low_degree
from hhlab.resolution import Resolution

fp = make_params("Lambda_mn", 3, 3, q="t", field="Q(t)")

res = Resolution(fp)
print(res.generator(2, 1, 0, 0).expansion)    # a b + q b a
print(res.differential_of((2, 1, 0, 0)))      # four terms, left or right arrow each
print(all(res.d_squared_zero(l) for l in range(1, 5)))
print(res.span_matches_oracle(4))             # generators span the intersection space
print(res.exactness_spot_check(2))

hh = Hochschild(fp, res)
for row in hh.hh_table(8):
    print(row)                                # dim HH: 1 2 1 0 0 0 0 0 0

u, v = hh.f_a(), hh.f_b()
uv = hh.cup_product(u, v)                     # lift v to a chain map, compose with u
print(hh.same_class(uv, hh.f_ab()))           # True
print(hh.is_coboundary(hh.cup_product(u, u))) # True: u^2 = 0

verdict = hh_ring_low_degree(fp)
print(verdict.to_dict())                      # exterior algebra on u, v
