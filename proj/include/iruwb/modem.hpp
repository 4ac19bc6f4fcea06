#pragma once

#include <span>
#include <vector>

#include "iruwb/channel.hpp"
#include "iruwb/pulse.hpp"
#include "iruwb/rng.hpp"

namespace iruwb {

// Link parameters. Times in ns, rates in 1/ns.
struct SystemParams {
    int pulses_per_symbol = 1;        // N_s
    double frame_period = 200.0 / 3;  // T_f
    double hop_slot = 0.5;            // T_c
    int hop_count = 16;               // N_h
    double bit_rate = 0.015;          // R_b; T_f * R_b * N_s == 1
    int num_interferers = 0;          // users beyond the desired one
    double pulse_energy = 1.0;        // E_p
    double noise_psd = 0.0;           // one-sided N_0; set per operating point
    std::vector<double> user_delays;  // fixed interferer delays; empty = draw per trial

    double max_hop_offset() const { return hop_count * hop_slot; }  // T_s

    // frames whose multipath can reach the current frame
    int interfering_frames(double tau_max) const {
        return static_cast<int>(std::ceil(tau_max / frame_period));
    }

    void validate() const;
};

// Correlator output split by origin. total is the plain sum of the parts.
struct DecisionComponents {
    double desired = 0.0;  // own pulse through the synchronized tap
    double noise = 0.0;
    double iasi = 0.0;  // other taps of the own pulse, same frame
    double isi = 0.0;   // taps of the same user's other pulses
    double mui = 0.0;   // everything transmitted by other users
    double total = 0.0;
    int bit_estimate = 1;
};

// What one user transmitted around the decision instant.
struct UserTx {
    int current_bit = 1;             // drives all N_s pulses of the current symbol
    std::vector<int> current_hops;   // size N_s, values in 1..N_h
    std::vector<int> history_bits;   // one per previous pulse, most recent first
    std::vector<int> history_hops;
    double delay = 0.0;  // offset relative to the desired user, 0 for the desired one
};

struct TransmitterState {
    const ChannelRealization* channel = nullptr;
    UserTx tx;
};

// i.i.d. uniform draw over {1, ..., hop_count}.
std::vector<int> gen_th_sequence(int hop_count, int length, Rng& rng);

// Correlation receiver locked to the desired user's (1,1) tap, evaluated
// exactly in the tap domain: every (template pulse, transmitted pulse, tap)
// triple contributes amplitude * R(offset) to exactly one component.
// history_pulses is the required per-user history depth (N_I * N_s); shorter
// histories are rejected.
DecisionComponents decision_statistic(const TransmitterState& desired,
                                      std::span<const TransmitterState> interferers,
                                      const AutocorrTable& autocorr, const SystemParams& sys,
                                      int history_pulses, double noise_variance, Rng& rng);

}  // namespace iruwb
