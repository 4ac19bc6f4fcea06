#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "iruwb/rng.hpp"

namespace iruwb {

enum class RayModel { single_poisson, mixture_poisson };

// Statistical parameters of the 802.15.4a indoor-office LOS channel.
// Rates are 1/ns, times are ns, shadowing is dB.
struct ChannelParams {
    double cluster_rate = 0.016;      // Poisson rate of cluster arrivals
    double ray_rate1 = 0.19;          // sparse component of the ray mixture
    double ray_rate2 = 2.97;          // dense component (dominant indoors)
    double mix_prob = 0.0184;         // weight of the sparse component
    double cluster_decay = 14.6;      // inter-cluster energy decay constant
    double ray_decay_base = 6.4;      // intra-cluster decay at cluster delay 0
    double ray_decay_slope = 0.0;     // linear growth of the intra-cluster decay
    double cluster_shadow_db = 0.0;   // per-cluster lognormal shadowing std
    double m_log_mean = 0.42;         // ln-mean of the Nakagami m factor
    double m_log_std = 0.31;          // ln-std of the Nakagami m factor
    double freq_exponent = 0.03;      // pathloss frequency dependence
    double freq_scale = 1.0;          // constant of the frequency dependence
    double ref_omega = 31.4159265358979324;     // reference angular frequency, rad/ns
    double center_omega = 37.6991118430775189;  // center angular frequency, rad/ns
    double observation_window = 200.0;          // generation cutoff tau_max, ns
    RayModel ray_model = RayModel::mixture_poisson;

    void validate() const;  // throws std::invalid_argument with the violated rule
};

struct Tap {
    int cluster = 0;       // 1-based cluster index
    int ray = 0;           // 1-based ray index within the cluster
    double delay = 0.0;    // absolute arrival time T_l + tau_{k,l}, ns
    double amplitude = 0.0;  // signed fading amplitude
};

// One sampled impulse response. Immutable after construction.
struct ChannelRealization {
    std::vector<Tap> taps;                  // ordered by (cluster, ray)
    std::vector<double> cluster_arrivals;   // T_l, first entry always 0
    std::vector<double> cluster_decays;     // intra-cluster decay constant per cluster
    std::vector<double> cluster_energies;   // integrated cluster energy Omega_l
    double freq_scale = 1.0;                // F(omega_ref), a pure energy scale
    std::vector<std::size_t> delay_order;   // tap indices sorted by delay

    const Tap& first_tap() const { return taps.front(); }
};

// Cluster arrival times: T_1 = 0, exponential gaps, truncated at the window.
std::vector<double> sample_cluster_arrivals(const ChannelParams& params, Rng& rng);

// Ray arrivals within one cluster: first ray at 0, gaps from the configured
// single or two-component mixture process, truncated at cluster_window.
std::vector<double> sample_ray_arrivals(const ChannelParams& params, double cluster_window,
                                        Rng& rng);

// Intra-cluster decay constant for a cluster arriving at t_cluster.
double intra_cluster_decay(const ChannelParams& params, double t_cluster);

// Cluster energy: exponential decay in dB plus one normal shadowing draw.
double cluster_energy(const ChannelParams& params, double t_cluster, Rng& rng);

// Mean tap power at intra-cluster delay tau for a cluster of energy omega_l.
double ray_mean_power(const ChannelParams& params, double omega_l, double decay, double tau);

// Nakagami amplitude: alpha with alpha^2 ~ Gamma(shape=m, scale=omega/m).
double sample_nakagami(double m, double omega, Rng& rng);

// Full impulse response over [0, observation_window].
ChannelRealization generate_realization(const ChannelParams& params, Rng& rng);

// Same statistics, but amplitudes are only materialized for taps whose delay
// falls inside one of the given merged, ascending [lo, hi] windows. The ray
// and cluster point processes are walked identically; taps outside every
// window are dropped. The (1,1) tap is always kept.
ChannelRealization generate_realization(const ChannelParams& params, Rng& rng,
                                        std::span<const std::pair<double, double>> windows);

// Delay of cluster l relative to cluster 1: Erlang(l-1, cluster_rate) density.
double pdf_cluster_delay(const ChannelParams& params, int l, double x);

// Delay of ray k relative to the first ray: Erlang(k-1, ray_rate2) density.
double pdf_ray_delay(const ChannelParams& params, int k, double x);

// Hop-code offset between two pulses: uniform on [-t_s, t_s].
double pdf_code_interval(double t_s, double x);

double mean_ray_interval(const ChannelParams& params);
double mean_cluster_interval(const ChannelParams& params);

// CSV export/import (columns: l,k,delay_ns,amplitude) for inspection and for
// replaying one realization across engines.
std::string realization_to_csv(const ChannelRealization& ch);
ChannelRealization realization_from_csv(const std::string& text);

}  // namespace iruwb
