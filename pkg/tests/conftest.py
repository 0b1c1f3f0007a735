import numpy as np
import pytest

from weyltorus.elliptic import TorusModulus
from weyltorus.lattice import Signature
from weyltorus.torus_action import TorusParams

TAUS = (1.0j, 0.31 + 1.17j, -0.4 + 0.9j)


@pytest.fixture(scope="session")
def mod_i():
    return TorusModulus(1.0j)


@pytest.fixture(scope="session")
def mod_generic():
    return TorusModulus(0.31 + 1.17j)


def random_state(sig: Signature, mod: TorusModulus, seed: int, variant: str = "theta_ratio",
                 min_sep: float = 0.05) -> TorusParams:
    """Marked points drawn uniformly from the cell, pairwise separated."""
    rng = np.random.default_rng(seed)
    pts: list = []
    while len(pts) < sig.m:
        t = complex(rng.random()) + complex(rng.random()) * mod.tau
        from weyltorus.elliptic import lattice_dist
        if all(lattice_dist(t, p, mod) > min_sep for p in pts) and \
                lattice_dist(t, 0.0, mod) > min_sep:
            pts.append(t)
    if variant == "weierstrass":
        return TorusParams.weierstrass(sig, mod, pts)
    eps = complex(0.08 + 0.11 * rng.random()) + complex(0.05 * rng.random()) * mod.tau
    return TorusParams.theta_ratio(sig, mod, pts, eps)
