"""Resolution chromatography of diffusion noise schedules.

Grids are numpy arrays of shape (side, side) or (side, side, channels) with a
power-of-two side.
"""

from ._core import (
    GaussianImageModel,
    NoiseSchedule,
    alpha_adjusted,
    band_decompose,
    cascaded_sample,
    chromatography,
    chromatography_numeric,
    cli,
    ddim_sample,
    downsample,
    intensity_scale,
    level_posterior,
    max_levels,
    multiresolution_threshold,
    natural_chromatography,
    natural_remap,
    project,
    psd2d,
    radial_average,
    remap_between,
    residual_target,
    snr,
    snr_inverse,
    time_adjust,
    uniform_times,
    upsample,
)

__version__ = "0.1.0"
