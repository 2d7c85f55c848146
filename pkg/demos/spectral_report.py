"""Dynamical degrees of a few actions on the two-point blowup of P3."""
from towercalc import base_space
from towercalc.spectral import AutAction, char_poly, degrees_report, spectral_radius

print("char poly of [[2,1],[1,1]]:", char_poly([[2, 1], [1, 1]]))
print("its spectral radius:      ", spectral_radius([[2, 1], [1, 1]]))

v = base_space("P3").blowup_point().blowup_point()
swap = [[1, 0, 0], [0, 0, 1], [0, 1, 0]]
rep = degrees_report(v, AutAction(swap, swap), inverse=AutAction(swap, swap))
for key, value in sorted(rep.to_json().items()):
    print(f"{key:>24}: {value}")
