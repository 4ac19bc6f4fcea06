#pragma once

#include <vector>

namespace iruwb {

// Unit-energy transmit pulse, sampled on a closed grid over [-T_m/2, +T_m/2].
// Time unit is ns throughout; the matching frequency unit is GHz.
struct PulseShape {
    double shape_parameter = 0.0;  // width parameter of the underlying Gaussian, ns
    double duration = 0.0;         // truncation window T_m, ns
    double sample_period = 0.0;    // grid step, ns
    std::vector<double> samples;   // amplitude at -T_m/2 + i*sample_period
    double energy = 0.0;           // sum(p^2) * dt, 1.0 after normalization

    double time_at(std::size_t i) const {
        return -0.5 * duration + static_cast<double>(i) * sample_period;
    }
};

// Tabulated autocorrelation of the truncated pulse on lags [-T_m, +T_m],
// linearly interpolated between grid points and exactly zero outside.
struct AutocorrTable {
    double duration = 0.0;       // support half-width T_m, ns
    double sample_period = 0.0;  // lag grid step, ns
    std::vector<double> lags;    // -T_m ... +T_m
    std::vector<double> values;

    double operator()(double lag) const;
};

// Second derivative of a Gaussian, truncated to [-T_m/2, T_m/2] and
// renormalized to unit energy over the truncated support.
PulseShape make_gaussian_doublet(double shape_parameter, double t_m, double sample_period);

AutocorrTable autocorrelation(const PulseShape& p);

// Width of the band where |P(f)|^2 stays within 10 dB of its peak, GHz.
double bandwidth_10db(const PulseShape& p);

// Shape parameter such that the truncated doublet has the requested 10 dB
// bandwidth (GHz). Solved by bisection; bandwidth decreases with the
// parameter.
double calibrate_shape_parameter(double t_m, double sample_period, double target_bandwidth_ghz);

// Closed-form autocorrelation of the untruncated doublet:
//   R(s) = (1 - 4*pi*u + (4/3)*pi^2*u^2) * exp(-pi*u),  u = (s/tau)^2.
double doublet_autocorrelation(double lag, double shape_parameter);

}  // namespace iruwb
