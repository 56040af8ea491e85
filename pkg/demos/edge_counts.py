"""Monte Carlo check of the hard-edge intensity: eigenvalues of truncated
matrices, mapped by w = -n i log z, land in a fixed box at the rate the
closed-form kernel predicts."""

import numpy as np
from scipy.integrate import quad

from cbens import cmv, coeffs, roots, sampling, stats

SEED = 13
N = 120
REPS = 800
BOX = (0.0, 10.0, 0.0, 3.0)


def main():
    spec = sampling.EnsembleSpec(sampling.CIRCULAR, n=N + 1, beta=2.0)
    alpha = sampling.sample_ensemble_coefficients(
        spec, sampling.RngStream(SEED), size=REPS)

    counts = np.empty(REPS)
    for i in range(REPS):
        rev = coeffs.reverse(alpha[i])
        eigs = roots.find_roots(cmv.szego_polynomials(rev[:-1])[-1][0])
        w = roots.edge_scale(roots.PointSample(eigs), N)
        counts[i] = stats.count_in_box(w, BOX)

    expected = (BOX[1] - BOX[0]) * quad(
        lambda y: stats.edge_kernel_intensity(1j * y), BOX[2] + 1e-12,
        BOX[3])[0]
    mean = counts.mean()
    print(f"box {BOX}, n = {N}, {REPS} replicates")
    print(f"mean count  : {mean:.4f} +- {counts.std() / np.sqrt(REPS):.4f}")
    print(f"kernel value: {expected:.4f}")
    print(f"relative gap: {abs(mean - expected) / expected:.2%}")


if __name__ == "__main__":
    main()
