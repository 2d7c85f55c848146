"""Which classes a*H - sum f_j F_j square to zero on P3 blown up along plane curves?"""
from towercalc.eta import X1Config, x1_solve, x1_system

for curves in [((1, 0),), ((2, 0),), ((1, 0), (1, 0)), ((2, 1), (2, 1), (1, 0))]:
    config = X1Config(points=1, curves=curves)
    system = x1_system(config)
    rays = x1_solve(config)
    print(f"curves (d, g) = {list(curves)}")
    for eq in system.equations():
        print("   ", eq)
    print("    rays:", [str(r) for r in rays] or "none")
