"""Name -> fusion-backend registry shared by the benchmark harness and
the command line."""

from __future__ import annotations

from .approx import approx_fuse
from .baselines import accu_fuse, majority_vote, precrec_fuse, twostep_fuse
from .exact import exact_fuse
from .quality import FusionBackend


def _hybrid(claims, qualities, prior):
    return approx_fuse(claims, qualities, prior, record_steps=False)


def _hybrid_exact(claims, qualities, prior):
    return exact_fuse(claims, qualities, prior)


def _accu(claims, qualities, prior):
    return accu_fuse(claims, qualities, prior.n)


def _majority(claims, qualities, prior):
    return majority_vote(claims)


FUSION_BACKENDS: dict[str, FusionBackend] = {
    "hybrid": _hybrid,
    "hybrid-exact": _hybrid_exact,
    "accu": _accu,
    "precrec": precrec_fuse,
    "twostep": twostep_fuse,
    "majority": _majority,
}


def fusion_backend(name: str) -> FusionBackend:
    try:
        return FUSION_BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown method {name!r}; expected one of {sorted(FUSION_BACKENDS)}") from None
