"""Fourier summation pairs: Hermite-Biehler pipelines, eta-product
self-dual measures and their numerical verification."""

from ._fsumm import (
    DegenerateError,
    DiscreteMeasure,
    ExpSum,
    FSPair,
    FsummError,
    HermiteBiehler,
    InvalidArgument,
    KernelContext,
    NotHermiteBiehler,
    SelfDualSeries,
    TestFunction,
    __version__,
    check_pair,
    check_pair_suite,
    check_selfdual,
    eta_product,
    exact_spectrum,
    family_l,
    fejer_identity_check,
    fplus,
    functional_equation_residual,
    gaussian_suite,
    kernel_closed,
    kernel_series,
    ks_from_q,
    lambda_invariant,
    make_hermite_biehler,
    mean_value,
    measure_from_phase,
    pair_from_hb,
    progression_hits,
    selfdual_measure,
)


def sine_q(m=1, denominator=2):
    """sin(2 pi m z / denominator) as an ExpSum over the basis {1}."""
    return ExpSum.from_json(
        {
            "basis": [1.0],
            "denominator": denominator,
            "terms": [{"k": [m], "c": [0.0, -0.5]}, {"k": [-m], "c": [0.0, 0.5]}],
        }
    )


GUINAND = (4, {1: "2/3", 2: "-1/3", 4: "2/3"})
POISSON = (4, {1: -2, 2: 5, 4: -2})
