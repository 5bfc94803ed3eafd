#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace motifperc {

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

// Two-sided tail probability of Student's t with (possibly fractional) dof.
double student_t_two_sided_p(double t, double dof);

struct WelchResult {
    std::size_t n_a = 0, n_b = 0;
    double mean_a = 0.0, mean_b = 0.0;
    double var_a = 0.0, var_b = 0.0;  // unbiased
    double t = 0.0;
    double dof = 0.0;
    double p = 1.0;
    bool significant = false;
};

// Welch's unequal-variance two-sample t test, two-sided. Samples need at
// least two values each. Zero pooled variance: equal means give t=0, p=1;
// different means give p=0.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b,
                         double alpha);

struct TTestRow {
    int pattern = -1;  // catalog index
    std::size_t n_steep = 0, n_inhib = 0;
    double mean_steep = 0.0, mean_inhib = 0.0;
    double t = 0.0, dof = 0.0, p = 1.0;
    bool significant = false;
    double p_bonferroni = 1.0;
    bool skipped = false;  // insufficient population; t/dof/p meaningless
};

// Per-cascade NC values for the steep and inhibition windows, keyed by
// catalog index. Patterns absent from a window are simply missing here.
struct CascadePhaseCoverage {
    std::string cascade_id;
    std::map<int, double> steep_nc;
    std::map<int, double> inhib_nc;
};

// One Welch test per pattern present in any cascade. With absent_as_zero a
// cascade missing the pattern in a phase contributes NC = 0 to that sample;
// otherwise it is dropped from the sample (rows with < 2 values per side are
// flagged skipped).
std::vector<TTestRow> compare_phases(std::span<const CascadePhaseCoverage> corpus,
                                     double alpha, bool absent_as_zero = true);

}  // namespace motifperc
