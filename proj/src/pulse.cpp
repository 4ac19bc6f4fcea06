#include "iruwb/pulse.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace iruwb {

namespace {

constexpr double kPi = std::numbers::pi;

double doublet_value(double t, double tau) {
    const double u = (t / tau) * (t / tau);
    return (1.0 - 4.0 * kPi * u) * std::exp(-2.0 * kPi * u);
}

// number of grid intervals; throws unless sample_period divides t_m
std::size_t grid_intervals(double t_m, double sample_period) {
    const double ratio = t_m / sample_period;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * ratio) {
        throw std::invalid_argument("sample_period must divide the pulse duration exactly");
    }
    return static_cast<std::size_t>(rounded);
}

}  // namespace

double AutocorrTable::operator()(double lag) const {
    const double a = std::abs(lag);
    if (a >= duration) return 0.0;
    const double x = (lag + duration) / sample_period;
    const auto i = static_cast<std::size_t>(x);
    if (i + 1 >= values.size()) return values.back();
    const double f = x - static_cast<double>(i);
    return (1.0 - f) * values[i] + f * values[i + 1];
}

PulseShape make_gaussian_doublet(double shape_parameter, double t_m, double sample_period) {
    if (shape_parameter <= 0.0 || t_m <= 0.0 || sample_period <= 0.0) {
        throw std::invalid_argument("pulse parameters must be positive");
    }
    if (sample_period > t_m / 32.0 + 1e-15) {
        throw std::invalid_argument("sample_period must be at most T_m/32");
    }
    const std::size_t n = grid_intervals(t_m, sample_period) + 1;

    PulseShape p;
    p.shape_parameter = shape_parameter;
    p.duration = t_m;
    p.sample_period = sample_period;
    p.samples.resize(n);
    double energy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = doublet_value(p.time_at(i), shape_parameter);
        p.samples[i] = v;
        energy += v * v;
    }
    energy *= sample_period;
    const double scale = 1.0 / std::sqrt(energy);
    double check = 0.0;
    for (auto& v : p.samples) {
        v *= scale;
        check += v * v;
    }
    p.energy = check * sample_period;
    return p;
}

AutocorrTable autocorrelation(const PulseShape& p) {
    const std::size_t n = p.samples.size();
    AutocorrTable r;
    r.duration = p.duration;
    r.sample_period = p.sample_period;
    r.lags.resize(2 * n - 1);
    r.values.resize(2 * n - 1);
    for (std::size_t j = 0; j < 2 * n - 1; ++j) {
        const auto k = static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(n - 1);
        const auto shift = static_cast<std::size_t>(k < 0 ? -k : k);
        double acc = 0.0;
        for (std::size_t i = 0; i + shift < n; ++i) {
            acc += p.samples[i] * p.samples[i + shift];
        }
        r.lags[j] = static_cast<double>(k) * p.sample_period;
        r.values[j] = acc * p.sample_period;
    }
    // lags +-T_m touch the support edge; the continuous overlap there is zero
    r.values.front() = 0.0;
    r.values.back() = 0.0;
    return r;
}

double bandwidth_10db(const PulseShape& p) {
    const std::size_t n = p.samples.size();
    const std::size_t padded = n * 32;
    const double dt = p.sample_period;
    const double df = 1.0 / (static_cast<double>(padded) * dt);  // GHz

    std::vector<double> power(padded / 2 + 1);
    for (std::size_t k = 0; k < power.size(); ++k) {
        std::complex<double> acc{0.0, 0.0};
        const double w = -2.0 * kPi * df * static_cast<double>(k) * dt;
        for (std::size_t i = 0; i < n; ++i) {
            acc += p.samples[i] * std::polar(1.0, w * static_cast<double>(i));
        }
        power[k] = std::norm(acc);
    }

    std::size_t peak = 0;
    for (std::size_t k = 1; k < power.size(); ++k) {
        if (power[k] > power[peak]) peak = k;
    }
    const double threshold = power[peak] / 10.0;

    std::size_t lo = peak;
    while (lo > 0 && power[lo - 1] >= threshold) --lo;
    std::size_t hi = peak;
    while (hi + 1 < power.size() && power[hi + 1] >= threshold) ++hi;

    auto edge = [&](std::size_t inside, std::size_t outside) {
        const double pi_ = power[inside];
        const double po = power[outside];
        const double f = (pi_ - threshold) / (pi_ - po);
        return (static_cast<double>(inside) +
                f * (static_cast<double>(outside) - static_cast<double>(inside))) *
               df;
    };
    const double f_lo = lo > 0 ? edge(lo, lo - 1) : 0.0;
    const double f_hi = hi + 1 < power.size() ? edge(hi, hi + 1) : static_cast<double>(hi) * df;
    return f_hi - f_lo;
}

double calibrate_shape_parameter(double t_m, double sample_period, double target_bandwidth_ghz) {
    if (target_bandwidth_ghz <= 0.0) {
        throw std::invalid_argument("target bandwidth must be positive");
    }
    double lo = 0.02 * t_m;  // very wideband
    double hi = 4.0 * t_m;   // very narrowband
    auto bw = [&](double tau) {
        return bandwidth_10db(make_gaussian_doublet(tau, t_m, sample_period));
    };
    if (bw(lo) < target_bandwidth_ghz || bw(hi) > target_bandwidth_ghz) {
        throw std::domain_error("target bandwidth outside the calibratable range");
    }
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (bw(mid) > target_bandwidth_ghz) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-7 * hi) break;
    }
    return 0.5 * (lo + hi);
}

double doublet_autocorrelation(double lag, double shape_parameter) {
    const double u = (lag / shape_parameter) * (lag / shape_parameter);
    return (1.0 - 4.0 * kPi * u + (4.0 / 3.0) * kPi * kPi * u * u) * std::exp(-kPi * u);
}

}  // namespace iruwb
