"""Covariant families on three dynamical systems: spectra agree along each orbit."""

import argparse

import numpy as np

from ncq import crossed as cr
from ncq.groups import make_group, tau_sample


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--group", default="dihedral:4")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    G, D = make_group(args.group)
    rng = np.random.default_rng(args.seed)
    H = cr.normal_subgroup(G)
    systems = {
        "translation": cr.translation_system(G),
        "cosets": cr.coset_system(G, H),
        "seeded": cr.seeded_permutation_system(G, rng, H),
    }
    for tname, tau in tau_sample(G, rng).items():
        for sname, S in systems.items():
            h = cr.random_omega_symbol(D, S.omega_size, rng)
            for o in cr.orbit_spectra(G, D, tau, S, h):
                radius = np.max(np.abs(o["spectra"][0]))
                print(f"tau={tname:<8} system={sname:<12} orbit size {len(o['orbit']):3d}  "
                      f"spectral radius {radius:8.4f}  max Hausdorff distance {o['max_distance']:.2e}")


if __name__ == "__main__":
    main()
