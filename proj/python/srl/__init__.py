"""Python bindings for the sparse support recovery library."""

from ._core import (  # noqa: F401
    Error,
    InvalidArgument,
    aurwm_derive,
    bss_exhaustive,
    ets_deltas,
    ets_select,
    generate_design,
    hard_threshold,
    iht,
    lasso_select,
    marginal_correlations,
    ms_select,
    run_config,
    spike_value,
    verify,
    wilson_interval,
)

__version__ = "0.1.0"


def run_config_file(path, workers=1, omit_timing=False):
    """Run the YAML config at ``path``; returns (records_csv, summary_csv)."""
    with open(path, encoding="utf-8") as fh:
        return run_config(fh.read(), workers=workers, omit_timing=omit_timing)
