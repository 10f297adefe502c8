"""Cross-check the mean-field prediction with a finite population.

The replicator field is the infinite-population limit; here 1000 agents
per side play the same game under pairwise-comparison imitation with a
little mutation.  For a game whose only stable corner is (1, 1), the
long-run strategy frequencies should sit within a few percent of it.
"""

from cyberevo import AbmConfig, GameParams, simulate, stable_set


def main() -> None:
    params = GameParams(w=0.98, c_a=0.51, c_d=0.20, b_a=0.90, b_d=0.79, v=0.26)
    stable = sorted(kind.value for kind in stable_set(params))
    print("game:", params)
    print("mean-field stable set:", stable)
    print()

    config = AbmConfig(
        population_size=1000,
        selection_strength=10.0,
        mutation_rate=0.001,
        steps=400_000,
        burn_in=100_000,
        seed=1,
    )
    result = simulate(params, config)
    print(
        f"finite-population means after {config.steps} steps "
        f"(burn-in {config.burn_in}):"
    )
    print(f"  mean defence frequency beta = {result.mean_beta:.4f}")
    print(f"  mean attack frequency alpha = {result.mean_alpha:.4f}")
    print()

    print("thinned trajectory (every ~40k steps):")
    for step, beta, alpha in result.trajectory_thinned[::40]:
        print(f"  step {step:7d}  beta={beta:.3f}  alpha={alpha:.3f}")
    print()
    print("both frequencies hover near 1, matching the E4 corner; the")
    print("small gap is the mutation pressure of the finite process.")


if __name__ == "__main__":
    main()
