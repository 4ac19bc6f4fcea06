#include "iruwb/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace iruwb {

namespace {

constexpr double kMinNakagamiM = 0.5;

double ray_gap(const ChannelParams& params, Rng& rng) {
    if (params.ray_model == RayModel::single_poisson) {
        return rng.exponential(params.ray_rate2);
    }
    const double rate = rng.uniform() < params.mix_prob ? params.ray_rate1 : params.ray_rate2;
    return rng.exponential(rate);
}

double erlang_pdf(double rate, int stages, double x) {
    if (x < 0.0) return 0.0;
    double density = rate * std::exp(-rate * x);
    for (int j = 1; j < stages; ++j) {
        density *= rate * x / static_cast<double>(j);
    }
    return density;
}

}  // namespace

void ChannelParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw std::invalid_argument(std::string(name) + " must be positive");
    };
    positive(cluster_rate, "cluster_rate");
    positive(ray_rate2, "ray_rate2");
    positive(cluster_decay, "cluster_decay");
    positive(ray_decay_base, "ray_decay_base");
    positive(observation_window, "observation_window");
    if (mix_prob < 0.0 || mix_prob > 1.0) {
        throw std::invalid_argument("mix_prob must lie in [0, 1]");
    }
    if (ray_model == RayModel::mixture_poisson) {
        positive(ray_rate1, "ray_rate1");
        if (!(ray_rate2 > ray_rate1)) {
            throw std::invalid_argument("ray_rate2 must exceed ray_rate1 (dense LOS regime)");
        }
    }
    if (cluster_shadow_db < 0.0) throw std::invalid_argument("cluster_shadow_db must be >= 0");
    if (ray_decay_slope < 0.0) throw std::invalid_argument("ray_decay_slope must be >= 0");
    if (m_log_std < 0.0) throw std::invalid_argument("m_log_std must be >= 0");
    positive(freq_scale, "freq_scale");
}

std::vector<double> sample_cluster_arrivals(const ChannelParams& params, Rng& rng) {
    std::vector<double> arrivals{0.0};
    for (;;) {
        const double next = arrivals.back() + rng.exponential(params.cluster_rate);
        if (next > params.observation_window) break;
        arrivals.push_back(next);
    }
    return arrivals;
}

std::vector<double> sample_ray_arrivals(const ChannelParams& params, double cluster_window,
                                        Rng& rng) {
    if (!(cluster_window > 0.0)) {
        throw std::invalid_argument("cluster_window must be positive");
    }
    std::vector<double> arrivals{0.0};
    for (;;) {
        const double next = arrivals.back() + ray_gap(params, rng);
        if (next > cluster_window) break;
        arrivals.push_back(next);
    }
    return arrivals;
}

double intra_cluster_decay(const ChannelParams& params, double t_cluster) {
    if (t_cluster < 0.0) throw std::invalid_argument("cluster arrival must be >= 0");
    return params.ray_decay_slope * t_cluster + params.ray_decay_base;
}

double cluster_energy(const ChannelParams& params, double t_cluster, Rng& rng) {
    if (t_cluster < 0.0) throw std::invalid_argument("cluster arrival must be >= 0");
    const double mean_db = 10.0 * std::log10(std::exp(-t_cluster / params.cluster_decay));
    const double shadow_db =
        params.cluster_shadow_db > 0.0 ? rng.normal(0.0, params.cluster_shadow_db) : 0.0;
    return std::pow(10.0, (mean_db + shadow_db) / 10.0);
}

double ray_mean_power(const ChannelParams& params, double omega_l, double decay, double tau) {
    if (!(decay > 0.0)) throw std::invalid_argument("decay must be positive");
    const double normalizer =
        decay * ((1.0 - params.mix_prob) * params.ray_rate1 + params.mix_prob * params.ray_rate2 +
                 1.0);
    return omega_l * std::exp(-tau / decay) / normalizer;
}

double sample_nakagami(double m, double omega, Rng& rng) {
    if (m < kMinNakagamiM) throw std::invalid_argument("Nakagami m must be at least 0.5");
    if (!(omega > 0.0)) throw std::invalid_argument("Nakagami omega must be positive");
    return std::sqrt(rng.gamma(m, omega / m));
}

ChannelRealization generate_realization(const ChannelParams& params, Rng& rng) {
    const std::pair<double, double> full{0.0, params.observation_window};
    return generate_realization(params, rng, std::span(&full, 1));
}

ChannelRealization generate_realization(const ChannelParams& params, Rng& rng,
                                        std::span<const std::pair<double, double>> windows) {
    params.validate();
    ChannelRealization ch;
    ch.freq_scale = params.freq_scale;  // F(omega) ~ F(omega_ref) = C0

    const double window_end =
        windows.empty() ? params.observation_window
                        : std::min(params.observation_window, windows.back().second);
    auto in_window = [&](double delay) {
        for (const auto& [lo, hi] : windows) {
            if (delay < lo) return false;
            if (delay <= hi) return true;
        }
        return false;
    };

    double t_cluster = 0.0;
    int cluster_index = 1;
    for (;;) {
        ch.cluster_arrivals.push_back(t_cluster);
        const double decay = intra_cluster_decay(params, t_cluster);
        const double omega_l = cluster_energy(params, t_cluster, rng);
        ch.cluster_decays.push_back(decay);
        ch.cluster_energies.push_back(omega_l);

        const double cluster_window = params.observation_window - t_cluster;
        double tau = 0.0;
        int ray_index = 1;
        for (;;) {
            const double delay = t_cluster + tau;
            const bool keep = (cluster_index == 1 && ray_index == 1) || in_window(delay);
            if (keep) {
                const double mean_power = ray_mean_power(params, omega_l, decay, tau);
                const double m =
                    std::max(kMinNakagamiM, rng.lognormal(params.m_log_mean, params.m_log_std));
                const double magnitude = sample_nakagami(m, mean_power, rng);
                const double sign = rng.coin() ? 1.0 : -1.0;
                ch.taps.push_back({cluster_index, ray_index, delay, sign * magnitude});
            }
            tau += ray_gap(params, rng);
            if (tau > cluster_window || t_cluster + tau > window_end) break;
            ++ray_index;
        }

        t_cluster += rng.exponential(params.cluster_rate);
        if (t_cluster > params.observation_window || t_cluster > window_end) break;
        ++cluster_index;
    }

    ch.delay_order.resize(ch.taps.size());
    std::iota(ch.delay_order.begin(), ch.delay_order.end(), std::size_t{0});
    std::sort(ch.delay_order.begin(), ch.delay_order.end(), [&](std::size_t a, std::size_t b) {
        return ch.taps[a].delay < ch.taps[b].delay;
    });
    return ch;
}

double pdf_cluster_delay(const ChannelParams& params, int l, double x) {
    if (l < 2) throw std::invalid_argument("cluster delay pdf is defined for l >= 2");
    if (x < 0.0) throw std::invalid_argument("delay must be >= 0");
    return erlang_pdf(params.cluster_rate, l - 1, x);
}

double pdf_ray_delay(const ChannelParams& params, int k, double x) {
    if (k < 2) throw std::invalid_argument("ray delay pdf is defined for k >= 2");
    if (x < 0.0) throw std::invalid_argument("delay must be >= 0");
    return erlang_pdf(params.ray_rate2, k - 1, x);
}

double pdf_code_interval(double t_s, double x) {
    if (!(t_s > 0.0)) throw std::invalid_argument("t_s must be positive");
    return std::abs(x) <= t_s ? 1.0 / (2.0 * t_s) : 0.0;
}

double mean_ray_interval(const ChannelParams& params) { return 1.0 / params.ray_rate2; }

double mean_cluster_interval(const ChannelParams& params) { return 1.0 / params.cluster_rate; }

std::string realization_to_csv(const ChannelRealization& ch) {
    std::ostringstream out;
    out.precision(17);
    out << "l,k,delay_ns,amplitude\n";
    for (const Tap& t : ch.taps) {
        out << t.cluster << ',' << t.ray << ',' << t.delay << ',' << t.amplitude << '\n';
    }
    return out.str();
}

ChannelRealization realization_from_csv(const std::string& text) {
    ChannelRealization ch;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("l,k,delay_ns,amplitude", 0) != 0) {
        throw std::invalid_argument("realization CSV must start with the l,k,delay_ns,amplitude header");
    }
    int last_cluster = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Tap t;
        char comma = 0;
        std::istringstream row(line);
        if (!(row >> t.cluster >> comma >> t.ray >> comma >> t.delay >> comma >> t.amplitude)) {
            throw std::invalid_argument("malformed realization CSV row: " + line);
        }
        if (t.cluster != last_cluster) {
            ch.cluster_arrivals.push_back(t.delay);
            last_cluster = t.cluster;
        }
        ch.taps.push_back(t);
    }
    if (ch.taps.empty()) throw std::invalid_argument("realization CSV contains no taps");
    ch.delay_order.resize(ch.taps.size());
    std::iota(ch.delay_order.begin(), ch.delay_order.end(), std::size_t{0});
    std::sort(ch.delay_order.begin(), ch.delay_order.end(), [&](std::size_t a, std::size_t b) {
        return ch.taps[a].delay < ch.taps[b].delay;
    });
    return ch;
}

}  // namespace iruwb
