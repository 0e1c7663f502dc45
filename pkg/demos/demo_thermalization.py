"""Relaxation of a qubit colliding with a stream of thermal units.

Runs the thermalization scenario, prints how the trace distance to the
thermal target shrinks, and shows the continuous-limit scaling where the
per-collision angle obeys theta^2 = gamma * tau.
"""

import numpy as np

from collisim import qstate, scenarios

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None


def main():
    result = scenarios.run_scenario("thermalization")
    traj = result.trajectory
    cfg = traj.config
    target = qstate.thermal_state(cfg.system_hamiltonian,
                                  result.summary["params"]["beta"])
    dist = np.array([qstate.trace_distance(s, target) for s in traj.snapshots])

    print("thermalization scenario")
    print(f"  collisions: {len(traj.records)}")
    for n in (0, 10, 50, 200, 1000, len(dist) - 1):
        print(f"  distance to thermal after {n:5d} collisions: {dist[n]:.3e}")
    print(f"  monotone decay: {result.summary['monotone_decay']}")

    limit = scenarios.run_scenario("continuous_limit")
    print("\ncontinuous-limit scaling (theta^2 = gamma * tau)")
    print(f"  fitted decay rate: {limit.summary['fitted_rate']:.4f}"
          f"  (gamma = {limit.summary['params']['gamma']})")
    for tau, dev in zip(limit.summary["tau_grid"],
                        limit.summary["max_deviation_per_tau"]):
        print(f"  tau = {tau:<7g} max deviation from exponential: {dev:.3e}")

    if plt is not None:
        fig, ax = plt.subplots()
        ax.semilogy(dist)
        ax.set_xlabel("collision number")
        ax.set_ylabel("trace distance to thermal state")
        fig.savefig("thermalization.png", dpi=150)
        print("\nwrote thermalization.png")


if __name__ == "__main__":
    main()
