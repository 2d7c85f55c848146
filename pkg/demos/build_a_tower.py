"""Blow up P3 at two points, then along the line through them, and look around."""
from towercalc import base_space, gamma, intersect_dd, pair_dc, triple

y = base_space("P3").blowup_point().blowup_point()
line = y.curve_class({"HH": 1, "L1": -1, "L2": -1})
print("gamma of the line on Y:", gamma(y, line, 0))

x = y.blowup_curve(line, 0)
f = x.div("F1")
print("F1.F1     =", intersect_dd(f, f))
print("F1^3      =", triple(f, f, f))
print("c1        =", x.c1)
print("c2        =", x.c2)
print("c1.c2     =", pair_dc(x.c1, x.c2))
