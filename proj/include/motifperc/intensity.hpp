#pragma once

#include <span>
#include <utility>
#include <vector>

#include "motifperc/cascade.hpp"
#include "motifperc/window.hpp"

namespace motifperc {

struct KernelParams {
    double bandwidth = 60.0;   // exponential kernel scale theta, seconds
    int grid_resolution = 512; // evaluation points over [0, duration]
    int smooth_width = 5;      // centered moving-average width, odd
};

struct IntensitySeries {
    std::vector<double> times;   // strictly increasing
    std::vector<double> values;  // lambda(t), >= 0
};

// lambda(t) = sum_{t_i < t} (1/theta) exp(-(t - t_i)/theta). Evaluated with a
// single forward recursion over the merged event/grid stream; must agree with
// the direct double sum to ~1e-9 relative.
IntensitySeries hawkes_intensity(std::span<const double> event_times, double theta,
                                 std::span<const double> grid);

IntensitySeries intensity(const Cascade& cascade, const KernelParams& params);

std::vector<double> moving_average(std::span<const double> values, int width);

// Index runs [first,last] of strict local extrema after smoothing. Runs that
// touch a series endpoint only qualify as maxima when they attain the global
// maximum; whole-series runs (constant series) never qualify.
struct ExtremaIntervals {
    std::vector<std::pair<int, int>> maxima;
    std::vector<std::pair<int, int>> minima;
};

ExtremaIntervals find_extrema(const IntensitySeries& series, int smooth_width);

// Exponential-kernel point-process log likelihood:
//   sum_i log(lambda(t_i-) + floor) - sum_i (1 - exp(-(T - t_i)/theta))
double hawkes_log_likelihood(std::span<const double> event_times, double horizon,
                             double theta);

// Grid-search MLE over candidate bandwidths. Ties resolve to the median of
// the tied candidates; cascades with <= 1 event return the grid median.
double fit_bandwidth(const Cascade& cascade, std::span<const double> theta_grid);

struct PhaseDetection {
    double t_steep = 0.0;
    double t_inhib = 0.0;
    int steep_window = 0;
    int inhib_window = 0;
    bool fallback = false;  // no qualifying quiescent minimum; clamped to last window
    std::vector<std::pair<double, double>> maxima_times;
    std::vector<std::pair<double, double>> minima_times;
};

// t_steep: time of the global smoothed-intensity maximum. t_inhib: earliest
// candidate minimum after t_steep from which the smoothed intensity stays
// below quiescence_fraction * lambda(t_steep).
PhaseDetection detect_phases(const Cascade& cascade, std::span<const Window> windows,
                             const KernelParams& params, double quiescence_fraction);

}  // namespace motifperc
