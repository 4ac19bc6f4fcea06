#pragma once

#include <functional>
#include <vector>

#include "iruwb/channel.hpp"
#include "iruwb/modem.hpp"
#include "iruwb/pulse.hpp"
#include "iruwb/quadrature.hpp"

namespace iruwb {

// Pulse autocorrelation as seen by the interference integrals. breakpoints
// lists lags where the evaluator is not smooth (table knots); empty for the
// closed-form kernel.
struct CorrelationKernel {
    std::function<double(double)> value;
    std::vector<double> breakpoints;
};

CorrelationKernel kernel_from_table(const AutocorrTable& table);
CorrelationKernel kernel_untruncated(double shape_parameter);

struct AnalysisOptions {
    // Displacement of the s-th interfering pulse in the energy-sum integral:
    // s frame periods (physical reading) or literally s hop ranges.
    bool shift_uses_frame_period = true;
};

// Closed-form outputs for one operating point.
struct LinkAnalysis {
    double eb = 0.0;
    double noise_var = 0.0;
    double iasi_var = 0.0;
    double isi_var = 0.0;
    double interfering_energy = 0.0;  // summed mean first-ray energy of interfering pulses
    double mui_var = 0.0;
    double sinr = 0.0;  // linear
    double ber = 0.5;
};

// Mean energy of the first arriving ray (the synchronized tap).
double first_ray_mean_energy(const ChannelParams& chan);

// Variance of the own-pulse multipath leakage into the correlator.
double iasi_variance(const ChannelParams& chan, const SystemParams& sys,
                     const CorrelationKernel& kernel, const QuadratureSpec& quad);

// Summed mean first-ray energy of all interfering pulses within the delay
// spread (zero when the delay spread fits inside one frame).
double interfering_energy_sum(const ChannelParams& chan, const SystemParams& sys,
                              const QuadratureSpec& quad, const AnalysisOptions& opts = {});

// Variance of the same-user previous-pulse leakage; proportional to the
// interfering energy sum by construction.
double isi_variance(const ChannelParams& chan, const SystemParams& sys,
                    const CorrelationKernel& kernel, const QuadratureSpec& quad,
                    double interfering_energy);

// Variance of the other-user leakage; exactly linear in the interferer count.
double mui_variance(const ChannelParams& chan, const SystemParams& sys,
                    const CorrelationKernel& kernel, const QuadratureSpec& quad,
                    double interfering_energy);

// Decision-variable signal energy and noise variance. The second form derives
// the noise spectral density from a requested Eb/N0.
double eb_energy(const ChannelParams& chan, const SystemParams& sys);
double noise_variance_for_psd(const ChannelParams& chan, const SystemParams& sys, double n0);
std::pair<double, double> eb_and_noise(const ChannelParams& chan, const SystemParams& sys,
                                       double ebn0_db);

double sinr_linear(double eb, double noise_var, double iasi_var, double isi_var, double mui_var);
double ber_bpsk(double sinr);

// Everything that does not depend on the operating point, computed once.
struct InterferenceBudget {
    double interfering_energy = 0.0;
    double iasi_var = 0.0;
    double isi_var = 0.0;
    double mui_var = 0.0;
};

InterferenceBudget interference_budget(const ChannelParams& chan, const SystemParams& sys,
                                       const CorrelationKernel& kernel,
                                       const QuadratureSpec& quad,
                                       const AnalysisOptions& opts = {});

LinkAnalysis analyze_point(const ChannelParams& chan, const SystemParams& sys,
                           const InterferenceBudget& budget, double ebn0_db);

}  // namespace iruwb
