"""The multiplicative invariant g_k = u' + k u^2 along blow-up orbits.

For k solving 2k^2 + A k - B = 0 the quantity g_k evolves as
g_k(t) = g_k(0) exp((A + 2k) int_0^t u), so its sign never changes and
the parabolas u' = -k u^2 are invariant separatrices.  The identity is
checked here to near machine precision even while u grows to 10^3.
"""
import numpy as np

import blowuplab as bl


def main():
    for m in (3.0, 5.0, 9.0):
        p = bl.params_from_dimension(m)
        k_big = max(abs(p.k_minus), abs(p.k_plus))
        opts = bl.IntegrateOptions(
            t_end=20.0,
            blowup_threshold=1e3,
            local_tol=1e-13,
            h_max=5e-3,
            h_cap_factor=0.01 / k_big,
        )
        traj = bl.integrate(p, bl.State(0.0, 0.3, -0.8), bl.IntegratorKind.GAUSS6, opts)
        dev_m = bl.check_gk_identity(p, traj, p.k_minus)
        dev_p = bl.check_gk_identity(p, traj, p.k_plus)
        u_max = float(np.max(np.abs(traj.u)))
        print(
            f"m = {m:g}: {traj.termination.kind:9s} max|u| = {u_max:9.3g}  "
            f"deviation k- = {dev_m:.2e}, k+ = {dev_p:.2e}"
        )

    # an orbit started on the separatrix stays on it
    p = bl.params_from_dimension(5.0)
    u0 = 1.0
    v0 = -p.k_plus * u0 * u0
    opts = bl.IntegrateOptions(t_end=2.0, blowup_threshold=1e6, local_tol=1e-12)
    traj = bl.integrate(p, bl.State(0.0, u0, v0), bl.IntegratorKind.GAUSS6, opts)
    g = traj.v + p.k_plus * traj.u**2
    print(f"\nstarted on u' = -k+ u^2: max |g_k+| along the run = {np.max(np.abs(g)):.2e}")


if __name__ == "__main__":
    main()
