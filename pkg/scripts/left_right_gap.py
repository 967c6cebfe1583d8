"""Gap between left and right quantizations of the same symbol on every catalog group."""

import numpy as np

from ncq.groups import CATALOG, make_group, tau_sample
from ncq.harmonic import random_symbol
from ncq.quantize import op_from_symbol


def main():
    rng = np.random.default_rng(0)
    print(f"{'group':<22} {'abelian':>7} {'min gap':>10} {'max gap':>10}")
    for spec in CATALOG:
        G, D = make_group(spec)
        a = random_symbol(D, rng)
        gaps = [
            np.linalg.norm(op_from_symbol(G, D, t, a, "R") - op_from_symbol(G, D, t, a, "L"), 2)
            for t in tau_sample(G, rng).values()
        ]
        print(f"{spec:<22} {str(G.is_abelian()):>7} {min(gaps):10.3e} {max(gaps):10.3e}")


if __name__ == "__main__":
    main()
