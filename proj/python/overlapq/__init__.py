"""Waiting and overlap times in single-server queues with FGM-dependent inputs."""

from ._core import (
    DistributionSpec,
    QueueModel,
    analyze,
    erlang,
    erlang_arrivals,
    exponential,
    fgm_cdf,
    fgm_density,
    fgm_sample,
    hyperexponential,
    invert_cdf,
    mg1,
    proportional,
    rank_correlations,
    simulate,
    sweep,
    waiting_lst,
    __version__,
)

__all__ = [
    "DistributionSpec",
    "QueueModel",
    "analyze",
    "erlang",
    "erlang_arrivals",
    "exponential",
    "fgm_cdf",
    "fgm_density",
    "fgm_sample",
    "hyperexponential",
    "invert_cdf",
    "mg1",
    "proportional",
    "rank_correlations",
    "simulate",
    "sweep",
    "waiting_lst",
    "__version__",
]
