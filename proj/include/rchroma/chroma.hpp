#pragma once

#include <span>
#include <vector>

#include "rchroma/profile.hpp"
#include "rchroma/schedule.hpp"

namespace rchroma {

// log2(side) + 1: the coarsest level is the single averaged pixel.
int max_levels(int side);

// tau_m = SNR^{-1}(4^m SNR(t)) on the same schedule. tau_0 == t, and
// tau_m decreases strictly in m until the target saturates the alpha clamp.
double time_adjust(const NoiseSchedule& s, double t, int m);

// lambda_t^{(m)} = 2^m / sqrt(1 + (4^m - 1) alpha_t), in [1, 2^m].
double intensity_scale(double alpha_t, int m);

// alpha_{tau_m} = 4^m alpha / ((4^m - 1) alpha + 1): the alpha whose SNR is 4^m times larger.
double alpha_adjusted(double alpha_t, int m);

// 1 - alpha_{tau_m} = (1 - alpha) / ((4^m - 1) alpha + 1), without the
// cancellation of subtracting alpha_adjusted from 1 when it is close to 1.
double alpha_adjusted_complement(double alpha_t, int m);

// Closed-form chromatography of the natural schedule alpha = exp(-t*):
// r*_m proportional to 4^m e^{t*} / (e^{t*} + 4^m - 1)^2, normalized over m < levels.
std::vector<double> natural_chromatography(double t_star, int levels);

// r_m(t) for any schedule, read off the natural profile at t* = -ln alpha_t.
ChromatographyProfile chromatography(const NoiseSchedule& s, std::span<const double> times,
                                     int levels);

// r_m(t) from central differences of alpha_{tau_m}(t) with step h, tau_m found by
// root finding on the schedule itself. Every time must be at least h inside the
// domain. Independent of the closed form; used to cross-check it.
ChromatographyProfile chromatography_numeric(const NoiseSchedule& s, std::span<const double> times,
                                             int levels, double h);

// Default finite-difference step: 1e-4 of the domain length.
double default_fd_step(const NoiseSchedule& s);

}  // namespace rchroma
