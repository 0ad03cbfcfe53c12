"""Traveling waves W(x - ct) of w_t = w_xx + w^2 - 1 and their tails.

The front decays like e^(-mu_minus xi) ahead of the wave and oscillates
behind it while c < 2 sqrt(2); the decay/oscillation rates come from the
characteristic polynomials at the two rest states.  At the resonant
speeds c_m the tail frequencies lock to integer ratios.  The standing
wave c = 0 is the explicit soliton 3 sech^2(xi / sqrt(2)) - 1.
"""

import math

import numpy as np

from eternal_kit import waves


def main():
    print(f"critical speed 2 sqrt(2) = {waves.C_CRITICAL:.6f}\n")

    print("tail data across speeds:")
    for c in (0.0, 1.0, 2.0, waves.C_CRITICAL, 3.0):
        wp = waves.wave_params(c)
        osc = "oscillatory" if wp.oscillatory else "monotone"
        print(f"  c={c:.4f}: mu- = {wp.mu_minus:.6f}, period p = {wp.p:.6f}, "
              f"{osc} rear tail")

    print("\nresonant speeds c_m = *sqrt(2) (sqrt(m) + 1/sqrt(m)):")
    for m, c in waves.resonant_speeds(4):
        order = waves.resonance_order(c)
        print(f"  m={m}: c_m = {c:.6f}   recovered order: {order}")

    print("\nstanding soliton profile and residual:")
    xs = np.linspace(-4.0, 4.0, 9)
    for x in xs:
        print(f"  W({x:+.1f}) = {waves.soliton(float(x)):+.9f}")
    # residual of W'' + W^2 - 1 via a sixth-order finite difference
    h = 1e-2
    stencil = np.array([2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0]) / (180.0 * h * h)
    worst = 0.0
    for x in np.linspace(-3.0, 3.0, 61):
        second = sum(s * waves.soliton(float(x + (i - 3) * h))
                     for i, s in enumerate(stencil))
        worst = max(worst, abs(second + waves.soliton(float(x)) ** 2 - 1.0))
    print(f"  profile equation residual (FD check): {worst:.2e}")

    print(f"\npole ladder of the complex-extended soliton: "
          f"i pi sqrt(2) (m + 1/2), first at {math.pi * math.sqrt(2) / 2:.6f}i")


if __name__ == "__main__":
    main()
