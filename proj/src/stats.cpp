#include "motifperc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <tuple>

namespace motifperc {

namespace {

// Lentz's continued fraction for the incomplete beta (Numerical Recipes
// style). Converges for x < (a+1)/(a+b+2); the caller applies the symmetry
// transform otherwise.
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

std::pair<double, double> mean_var(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return {mean, x.size() > 1 ? ss / (n - 1.0) : 0.0};
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("incomplete beta: a,b > 0 required");
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("incomplete beta: x in [0,1] required");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double dof) {
    if (dof <= 0.0) throw std::invalid_argument("student t: dof must be positive");
    if (std::isinf(t)) return 0.0;
    if (t == 0.0) return 1.0;
    return regularized_incomplete_beta(dof / 2.0, 0.5, dof / (dof + t * t));
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b,
                         double alpha) {
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("welch_t_test: need at least two values per sample");
    if (alpha <= 0.0 || alpha >= 1.0)
        throw std::invalid_argument("welch_t_test: alpha must be in (0,1)");

    WelchResult r;
    r.n_a = a.size();
    r.n_b = b.size();
    std::tie(r.mean_a, r.var_a) = mean_var(a);
    std::tie(r.mean_b, r.var_b) = mean_var(b);

    const double na = static_cast<double>(r.n_a), nb = static_cast<double>(r.n_b);
    const double sa = r.var_a / na, sb = r.var_b / nb;
    const double se2 = sa + sb;
    if (se2 == 0.0) {
        r.dof = na + nb - 2.0;
        if (r.mean_a == r.mean_b) {
            r.t = 0.0;
            r.p = 1.0;
        } else {
            r.t = r.mean_a > r.mean_b ? std::numeric_limits<double>::infinity()
                                      : -std::numeric_limits<double>::infinity();
            r.p = 0.0;
        }
    } else {
        r.t = (r.mean_a - r.mean_b) / std::sqrt(se2);
        r.dof = se2 * se2 / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
        r.p = student_t_two_sided_p(r.t, r.dof);
    }
    r.significant = r.p < alpha;
    return r;
}

std::vector<TTestRow> compare_phases(std::span<const CascadePhaseCoverage> corpus,
                                     double alpha, bool absent_as_zero) {
    std::set<int> patterns;
    for (const auto& c : corpus) {
        for (const auto& [p, _] : c.steep_nc) patterns.insert(p);
        for (const auto& [p, _] : c.inhib_nc) patterns.insert(p);
    }

    std::vector<TTestRow> rows;
    for (int pattern : patterns) {
        std::vector<double> a, b;
        for (const auto& c : corpus) {
            auto it = c.steep_nc.find(pattern);
            if (it != c.steep_nc.end())
                a.push_back(it->second);
            else if (absent_as_zero)
                a.push_back(0.0);
            it = c.inhib_nc.find(pattern);
            if (it != c.inhib_nc.end())
                b.push_back(it->second);
            else if (absent_as_zero)
                b.push_back(0.0);
        }
        TTestRow row;
        row.pattern = pattern;
        row.n_steep = a.size();
        row.n_inhib = b.size();
        if (a.size() < 2 || b.size() < 2) {
            row.skipped = true;
            auto [ma, _va] = a.empty() ? std::pair(0.0, 0.0) : mean_var(a);
            auto [mb, _vb] = b.empty() ? std::pair(0.0, 0.0) : mean_var(b);
            row.mean_steep = ma;
            row.mean_inhib = mb;
        } else {
            const WelchResult w = welch_t_test(a, b, alpha);
            row.mean_steep = w.mean_a;
            row.mean_inhib = w.mean_b;
            row.t = w.t;
            row.dof = w.dof;
            row.p = w.p;
            row.significant = w.significant;
        }
        rows.push_back(row);
    }

    std::size_t tested = 0;
    for (const auto& r : rows)
        if (!r.skipped) ++tested;
    for (auto& r : rows)
        if (!r.skipped) r.p_bonferroni = std::min(1.0, r.p * static_cast<double>(tested));
    return rows;
}

}  // namespace motifperc
