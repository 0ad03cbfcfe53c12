"""The scalar quadratic flow dw/dt = w^2 - 1 in real and imaginary time.

Real time from the origin slides down to the sink at -1 along -tanh(t).
Imaginary time turns the same field into a family of closed loops of
period pi; trajectories that start on the real axis outside [-1, 1]
still close up after passing through the point at infinity, which the
integrator crosses on the inverse chart.  The period lattice of the
field explains both behaviours at once.
"""

import math

import numpy as np

from eternal_kit import scalar_ode


def main():
    fld = scalar_ode.PolyField.quadratic()

    traj = scalar_ode.integrate(fld, 0.0, [3.0], t_eval_per_unit=6)
    print("real time from 0 (against -tanh):")
    for s, w in zip(traj.sigma, traj.w):
        print(f"  t={s:4.1f}: w = {w.real:+.9f}   -tanh = {-math.tanh(s):+.9f}")

    print("\nimaginary time from 0: the ray hits the pole ladder")
    vert = scalar_ode.integrate(fld, 0.0, [2.0j], t_eval_per_unit=4)
    crossings = ", ".join(f"{s:.6f}" for s, _ in vert.sup_crossings)
    print(f"  chart swaps: {vert.chart_swaps}, large-|w| crossings at s = {crossings}")
    print(f"  (poles of -tan(s) sit at pi/2 = {math.pi / 2:.6f}, ...)")

    print("\nimaginary time from w0 = 1.5 closes up through infinity:")
    loop = scalar_ode.integrate(fld, 1.5, [1j * math.pi], t_eval_per_unit=8)
    print(f"  w(pi) = {loop.final:+.9f} vs w(0) = +1.5, "
          f"return error {abs(loop.final - 1.5):.2e}")

    lat = scalar_ode.period_lattice(fld)
    gens = ", ".join(f"{g:.6f}" for g in lat.generators)
    print(f"\nperiod lattice: closure {lat.closure}, generators {gens}")
    print("(rank one and purely imaginary, hence the pi-periodic loops)")

    print("\ncyclotomic quartic for contrast:")
    lat4 = scalar_ode.period_lattice(scalar_ode.PolyField.cyclotomic(4))
    print(f"  closure {lat4.closure}, degenerate residue subsets "
          f"{sorted(lat4.degenerate_subsets)}")


if __name__ == "__main__":
    main()
