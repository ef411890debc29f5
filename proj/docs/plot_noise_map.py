"""Plot an offset map and its Gaussian-noise map written by `smartq run`.

Usage: python plot_noise_map.py out/identity_map
"""

import sys

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd


def grid(df, x, y, z):
    table = df.pivot(index=y, columns=x, values=z)
    return table.columns.values, table.index.values, table.values


def main(stem):
    offsets = pd.read_csv(f"{stem}.csv")
    noise = pd.read_csv(f"{stem}_noise.csv")

    fig, (a, b) = plt.subplots(1, 2, figsize=(10, 4))
    x, y, f = grid(offsets, "delta_nu_mhz", "delta_omega_frac", "fidelity")
    m = a.pcolormesh(x, y, f, shading="auto", vmin=0, vmax=1)
    a.contour(x, y, f, levels=[0.99], colors="w")
    a.set_xlabel("delta nu (MHz)")
    a.set_ylabel("delta Omega / Omega")
    fig.colorbar(m, ax=a, label="fidelity")

    x, y, inf = grid(noise, "sigma_nu_mhz", "sigma_omega_frac", "infidelity")
    m = b.pcolormesh(x, y, np.log10(np.clip(inf, 1e-12, None)), shading="auto")
    b.set_xlabel("sigma nu (MHz)")
    b.set_ylabel("sigma Omega")
    fig.colorbar(m, ax=b, label="log10(1 - F)")

    fig.tight_layout()
    fig.savefig(f"{stem}.png", dpi=150)


if __name__ == "__main__":
    main(sys.argv[1])
