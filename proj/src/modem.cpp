#include "iruwb/modem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iruwb {

void SystemParams::validate() const {
    if (pulses_per_symbol < 1) throw std::invalid_argument("pulses_per_symbol must be >= 1");
    if (!(frame_period > 0.0)) throw std::invalid_argument("frame_period must be positive");
    if (!(hop_slot > 0.0)) throw std::invalid_argument("hop_slot must be positive");
    if (hop_count < 1) throw std::invalid_argument("hop_count must be >= 1");
    if (!(bit_rate > 0.0)) throw std::invalid_argument("bit_rate must be positive");
    if (num_interferers < 0) throw std::invalid_argument("num_interferers must be >= 0");
    if (!(pulse_energy > 0.0)) throw std::invalid_argument("pulse_energy must be positive");
    if (std::abs(frame_period * bit_rate * pulses_per_symbol - 1.0) > 1e-9) {
        throw std::invalid_argument(
            "frame_period, bit_rate and pulses_per_symbol are inconsistent: "
            "T_f * R_b * N_s must equal 1");
    }
    if (max_hop_offset() > frame_period + 1e-12) {
        throw std::invalid_argument("hop range violates T_s <= T_f (N_h * T_c exceeds T_f)");
    }
    if (!user_delays.empty() &&
        user_delays.size() != static_cast<std::size_t>(num_interferers)) {
        throw std::invalid_argument("user_delays must be empty or match num_interferers");
    }
}

std::vector<int> gen_th_sequence(int hop_count, int length, Rng& rng) {
    if (hop_count < 1) throw std::invalid_argument("hop_count must be >= 1");
    std::vector<int> seq(static_cast<std::size_t>(length));
    for (auto& c : seq) c = rng.uniform_index(hop_count);
    return seq;
}

namespace {

enum class Origin { same_pulse, other_own_pulse, other_user };

// Accumulate the correlation of one transmitted pulse against one template
// pulse. base = transmitted pulse position - template pulse position; only
// taps with |base + delay| < T_m can contribute.
void accumulate(const ChannelRealization& ch, double base, double pulse_amp,
                const AutocorrTable& autocorr, Origin origin, DecisionComponents& out) {
    const double t_m = autocorr.duration;
    const double lo = -t_m - base;
    const double hi = t_m - base;
    if (hi <= 0.0) return;  // all taps arrive too late to matter

    const auto& order = ch.delay_order;
    const auto& taps = ch.taps;
    auto begin = std::lower_bound(order.begin(), order.end(), lo,
                                  [&](std::size_t i, double v) { return taps[i].delay < v; });
    for (auto it = begin; it != order.end(); ++it) {
        const Tap& tap = taps[*it];
        if (tap.delay >= hi) break;
        const double value = pulse_amp * tap.amplitude * autocorr(base + tap.delay);
        switch (origin) {
            case Origin::same_pulse:
                if (*it == 0) {
                    out.desired += value;  // the synchronized (1,1) tap
                } else {
                    out.iasi += value;
                }
                break;
            case Origin::other_own_pulse:
                out.isi += value;
                break;
            case Origin::other_user:
                out.mui += value;
                break;
        }
    }
}

}  // namespace

DecisionComponents decision_statistic(const TransmitterState& desired,
                                      std::span<const TransmitterState> interferers,
                                      const AutocorrTable& autocorr, const SystemParams& sys,
                                      int history_pulses, double noise_variance, Rng& rng) {
    const int n_s = sys.pulses_per_symbol;
    const double t_f = sys.frame_period;
    const double t_c = sys.hop_slot;

    auto check_user = [&](const TransmitterState& u) {
        if (u.channel == nullptr || u.channel->taps.empty()) {
            throw std::invalid_argument("transmitter is missing a channel realization");
        }
        if (u.tx.current_hops.size() != static_cast<std::size_t>(n_s)) {
            throw std::invalid_argument("current_hops must hold one hop per pulse of the symbol");
        }
        if (u.tx.history_bits.size() < static_cast<std::size_t>(history_pulses) ||
            u.tx.history_hops.size() < static_cast<std::size_t>(history_pulses)) {
            throw std::invalid_argument("history shorter than the required N_I * N_s pulses");
        }
    };
    check_user(desired);
    for (const auto& u : interferers) check_user(u);

    DecisionComponents out;

    // Template locked to the desired user's (1,1) tap, which arrives at
    // delay 0 by construction.
    std::vector<double> template_pos(static_cast<std::size_t>(n_s));
    for (int j = 0; j < n_s; ++j) {
        template_pos[static_cast<std::size_t>(j)] =
            j * t_f + desired.tx.current_hops[static_cast<std::size_t>(j)] * t_c;
    }

    const double root_ep = std::sqrt(sys.pulse_energy);

    auto process_user = [&](const TransmitterState& u, bool is_desired) {
        const double scale = root_ep * std::sqrt(u.channel->freq_scale);
        for (int j = 0; j < n_s; ++j) {
            const double p_j = template_pos[static_cast<std::size_t>(j)];
            // current-symbol pulses
            for (int jj = 0; jj < n_s; ++jj) {
                const double pos =
                    jj * t_f + u.tx.current_hops[static_cast<std::size_t>(jj)] * t_c + u.tx.delay;
                const Origin origin = !is_desired      ? Origin::other_user
                                      : jj == j        ? Origin::same_pulse
                                                       : Origin::other_own_pulse;
                accumulate(*u.channel, pos - p_j, u.tx.current_bit * scale, autocorr, origin, out);
            }
            // previous pulses, index s is s frames back
            const auto history = static_cast<int>(u.tx.history_bits.size());
            for (int s = 1; s <= history; ++s) {
                const double pos = -s * t_f +
                                   u.tx.history_hops[static_cast<std::size_t>(s - 1)] * t_c +
                                   u.tx.delay;
                const Origin origin = is_desired ? Origin::other_own_pulse : Origin::other_user;
                accumulate(*u.channel, pos - p_j,
                           u.tx.history_bits[static_cast<std::size_t>(s - 1)] * scale, autocorr,
                           origin, out);
            }
        }
    };

    process_user(desired, true);
    for (const auto& u : interferers) process_user(u, false);

    if (noise_variance > 0.0) {
        out.noise = rng.normal(0.0, std::sqrt(noise_variance));
    }

    out.total = out.desired + out.noise + out.iasi + out.isi + out.mui;
    out.bit_estimate = out.total >= 0.0 ? 1 : -1;
    return out;
}

}  // namespace iruwb
