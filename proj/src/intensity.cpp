#include "motifperc/intensity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "motifperc/errors.hpp"

namespace motifperc {

namespace {

constexpr double kLogFloor = 1e-12;  // keeps log(lambda) finite at the first event

std::vector<double> event_times_of(const Cascade& cascade) {
    std::vector<double> t;
    t.reserve(cascade.events.size());
    for (const auto& e : cascade.events) t.push_back(e.time);
    return t;
}

std::vector<double> make_grid(double horizon, int resolution) {
    if (resolution < 16) throw std::invalid_argument("grid resolution must be >= 16");
    const double span = horizon > 0.0 ? horizon : 1.0;
    std::vector<double> grid(resolution);
    for (int i = 0; i < resolution; ++i)
        grid[i] = span * static_cast<double>(i) / (resolution - 1);
    return grid;
}

// Equal-value runs [first,last] of v.
std::vector<std::pair<int, int>> value_runs(std::span<const double> v) {
    std::vector<std::pair<int, int>> runs;
    int start = 0;
    for (int i = 1; i <= static_cast<int>(v.size()); ++i) {
        if (i == static_cast<int>(v.size()) || v[i] != v[start]) {
            runs.emplace_back(start, i - 1);
            start = i;
        }
    }
    return runs;
}

}  // namespace

IntensitySeries hawkes_intensity(std::span<const double> event_times, double theta,
                                 std::span<const double> grid) {
    if (theta <= 0.0) throw std::invalid_argument("kernel bandwidth must be positive");
    IntensitySeries out;
    out.times.assign(grid.begin(), grid.end());
    out.values.resize(grid.size());

    // Forward recursion: decay the running kernel sum between grid points and
    // fold in events as they pass. Events at exactly t are excluded (t_i < t).
    double acc = 0.0;
    double prev = grid.empty() ? 0.0 : grid.front();
    std::size_t next_event = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double t = grid[g];
        acc *= std::exp(-(t - prev) / theta);
        while (next_event < event_times.size() && event_times[next_event] < t) {
            acc += std::exp(-(t - event_times[next_event]) / theta);
            ++next_event;
        }
        out.values[g] = acc / theta;
        prev = t;
    }
    return out;
}

IntensitySeries intensity(const Cascade& cascade, const KernelParams& params) {
    if (cascade.events.empty()) throw std::invalid_argument("intensity of empty cascade");
    const auto times = event_times_of(cascade);
    const auto grid = make_grid(cascade.duration, params.grid_resolution);
    return hawkes_intensity(times, params.bandwidth, grid);
}

std::vector<double> moving_average(std::span<const double> values, int width) {
    if (width < 1 || width % 2 == 0) throw std::invalid_argument("smooth width must be odd and >= 1");
    if (static_cast<std::size_t>(width) > values.size())
        throw std::invalid_argument("smooth width exceeds series length");
    const int n = static_cast<int>(values.size());
    const int h = width / 2;
    std::vector<double> out(values.size());
    for (int i = 0; i < n; ++i) {
        const int lo = std::max(0, i - h);
        const int hi = std::min(n - 1, i + h);
        double s = 0.0;
        for (int j = lo; j <= hi; ++j) s += values[j];
        out[i] = s / (hi - lo + 1);
    }
    return out;
}

namespace {

ExtremaIntervals extrema_of(std::span<const double> sm) {
    ExtremaIntervals out;
    const int n = static_cast<int>(sm.size());
    if (n < 2) return out;
    const double global_max = *std::max_element(sm.begin(), sm.end());
    for (const auto& [a, b] : value_runs(sm)) {
        const bool at_left = a == 0;
        const bool at_right = b == n - 1;
        if (at_left && at_right) continue;  // constant series
        const bool left_lower = at_left || sm[a - 1] < sm[a];
        const bool left_higher = at_left || sm[a - 1] > sm[a];
        const bool right_lower = at_right || sm[b + 1] < sm[b];
        const bool right_higher = at_right || sm[b + 1] > sm[b];
        if (!at_left && !at_right) {
            if (left_lower && right_lower) out.maxima.emplace_back(a, b);
            if (left_higher && right_higher) out.minima.emplace_back(a, b);
        } else if (sm[a] == global_max && left_lower && right_lower) {
            // Endpoint runs count only when they hold the global maximum.
            out.maxima.emplace_back(a, b);
        }
    }
    return out;
}

}  // namespace

ExtremaIntervals find_extrema(const IntensitySeries& series, int smooth_width) {
    const auto sm = moving_average(series.values, smooth_width);
    return extrema_of(sm);
}

double hawkes_log_likelihood(std::span<const double> event_times, double horizon,
                             double theta) {
    if (theta <= 0.0) throw std::invalid_argument("kernel bandwidth must be positive");
    double ll = 0.0;
    // lambda just before each event, grouped so equal-time events see the
    // same (strictly earlier) history.
    double acc = 0.0;
    std::size_t i = 0;
    double prev = event_times.empty() ? 0.0 : event_times.front();
    while (i < event_times.size()) {
        const double t = event_times[i];
        acc *= std::exp(-(t - prev) / theta);
        std::size_t j = i;
        while (j < event_times.size() && event_times[j] == t) ++j;
        for (std::size_t e = i; e < j; ++e) ll += std::log(acc / theta + kLogFloor);
        acc += static_cast<double>(j - i);
        prev = t;
        i = j;
    }
    // Closed-form compensator for the unit-mass exponential kernel.
    for (double t : event_times) ll -= 1.0 - std::exp(-(horizon - t) / theta);
    return ll;
}

double fit_bandwidth(const Cascade& cascade, std::span<const double> theta_grid) {
    if (theta_grid.empty()) throw std::invalid_argument("empty bandwidth grid");
    for (double t : theta_grid)
        if (t <= 0.0) throw std::invalid_argument("bandwidth candidates must be positive");

    std::vector<double> sorted(theta_grid.begin(), theta_grid.end());
    std::sort(sorted.begin(), sorted.end());
    if (cascade.events.size() <= 1) return sorted[(sorted.size() - 1) / 2];

    const auto times = event_times_of(cascade);
    std::vector<double> ll(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        ll[i] = hawkes_log_likelihood(times, cascade.duration, sorted[i]);

    const double best = *std::max_element(ll.begin(), ll.end());
    std::vector<std::size_t> tied;
    for (std::size_t i = 0; i < ll.size(); ++i)
        if (ll[i] == best) tied.push_back(i);
    return sorted[tied[(tied.size() - 1) / 2]];
}

PhaseDetection detect_phases(const Cascade& cascade, std::span<const Window> windows,
                             const KernelParams& params, double quiescence_fraction) {
    if (windows.empty()) throw std::invalid_argument("detect_phases: no windows");
    if (quiescence_fraction <= 0.0 || quiescence_fraction >= 1.0)
        throw std::invalid_argument("quiescence fraction must be in (0,1)");

    const auto series = intensity(cascade, params);
    const auto sm = moving_average(series.values, params.smooth_width);
    const auto extrema = extrema_of(sm);

    PhaseDetection det;
    for (const auto& [a, b] : extrema.maxima)
        det.maxima_times.emplace_back(series.times[a], series.times[b]);
    for (const auto& [a, b] : extrema.minima)
        det.minima_times.emplace_back(series.times[a], series.times[b]);

    // Global maximum run -> t_steep (midpoint of the run's time span).
    const int peak_first =
        static_cast<int>(std::max_element(sm.begin(), sm.end()) - sm.begin());
    int peak_last = peak_first;
    while (peak_last + 1 < static_cast<int>(sm.size()) && sm[peak_last + 1] == sm[peak_first])
        ++peak_last;
    const double peak_value = sm[peak_first];
    det.t_steep = 0.5 * (series.times[peak_first] + series.times[peak_last]);

    const double threshold = quiescence_fraction * peak_value;
    bool found = false;
    for (const auto& [a, b] : extrema.minima) {
        const double rep = 0.5 * (series.times[a] + series.times[b]);
        if (rep <= det.t_steep) continue;
        bool quiescent = true;
        for (int j = a; j < static_cast<int>(sm.size()); ++j) {
            if (sm[j] >= threshold) {
                quiescent = false;
                break;
            }
        }
        if (quiescent) {
            det.t_inhib = rep;
            found = true;
            break;
        }
    }

    const auto window_of = [&](double t) {
        for (const auto& w : windows)
            if (t <= w.end_time) return w.index;
        return windows.back().index;
    };

    det.steep_window = window_of(det.t_steep);
    if (found) {
        det.inhib_window = window_of(det.t_inhib);
    } else {
        det.fallback = true;
        det.inhib_window = windows.back().index;
        det.t_inhib = windows.back().end_time;
    }
    return det;
}

}  // namespace motifperc
