#include "dronevoc/exact_tests.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dronevoc/errors.hpp"

namespace dronevoc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double lchoose(std::int64_t n, std::int64_t k) {
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

double logsumexp(const std::vector<double>& xs) {
    double m = kNegInf;
    for (double x : xs) m = std::max(m, x);
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}

double score_stat(std::int64_t x1, std::int64_t n1, std::int64_t x2, std::int64_t n2) {
    const std::int64_t s = x1 + x2;
    if (s == 0 || s == n1 + n2) return 0.0;
    const double p1 = static_cast<double>(x1) / static_cast<double>(n1);
    const double p2 = static_cast<double>(x2) / static_cast<double>(n2);
    const double pooled = static_cast<double>(s) / static_cast<double>(n1 + n2);
    const double var = pooled * (1.0 - pooled) *
                       (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2));
    return (p1 - p2) / std::sqrt(var);
}

// Tail mass as a function of the nuisance rate pi, with tables grouped by
// total success count so one evaluation costs O(n1 + n2) instead of
// O(n1 * n2): p(pi) = sum_s W_s * pi^s * (1-pi)^(N-s).
struct TailPoly {
    std::vector<double> log_w;  // index s, kNegInf where the tail has no table
    std::int64_t n_total = 0;

    double eval(double pi) const {
        const double lp = std::log(pi);
        const double lq = std::log1p(-pi);
        double m = kNegInf;
        for (std::size_t s = 0; s < log_w.size(); ++s) {
            if (log_w[s] == kNegInf) continue;
            const double term = log_w[s] + static_cast<double>(s) * lp +
                                static_cast<double>(n_total - static_cast<std::int64_t>(s)) * lq;
            m = std::max(m, term);
        }
        if (m == kNegInf) return 0.0;
        double acc = 0.0;
        for (std::size_t s = 0; s < log_w.size(); ++s) {
            if (log_w[s] == kNegInf) continue;
            const double term = log_w[s] + static_cast<double>(s) * lp +
                                static_cast<double>(n_total - static_cast<std::int64_t>(s)) * lq;
            acc += std::exp(term - m);
        }
        return std::exp(m) * acc;
    }
};

struct SupResult {
    double p = 0.0;
    double pi = 0.5;
};

// Supremum over the open unit interval: uniform grid scan, then
// golden-section refinement of every grid-local maximum.
SupResult maximize(const TailPoly& poly, int grid_points, double refine_tol) {
    std::vector<double> pis(static_cast<std::size_t>(grid_points));
    std::vector<double> vals(static_cast<std::size_t>(grid_points));
    for (int i = 0; i < grid_points; ++i) {
        const double pi = static_cast<double>(i + 1) / static_cast<double>(grid_points + 1);
        pis[static_cast<std::size_t>(i)] = pi;
        vals[static_cast<std::size_t>(i)] = poly.eval(pi);
    }

    SupResult best;
    for (int i = 0; i < grid_points; ++i) {
        const std::size_t u = static_cast<std::size_t>(i);
        if (vals[u] > best.p) {
            best.p = vals[u];
            best.pi = pis[u];
        }
    }

    constexpr double kInvPhi = 0.6180339887498949;
    for (int i = 0; i < grid_points; ++i) {
        const std::size_t u = static_cast<std::size_t>(i);
        const double left = i > 0 ? vals[u - 1] : kNegInf;
        const double right = i + 1 < grid_points ? vals[u + 1] : kNegInf;
        if (vals[u] < left || vals[u] < right) continue;  // not a local max
        double a = i > 0 ? pis[u - 1] : pis[u];
        double b = i + 1 < grid_points ? pis[u + 1] : pis[u];
        double x1 = b - kInvPhi * (b - a);
        double x2 = a + kInvPhi * (b - a);
        double f1 = poly.eval(x1);
        double f2 = poly.eval(x2);
        while (b - a > refine_tol) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + kInvPhi * (b - a);
                f2 = poly.eval(x2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - kInvPhi * (b - a);
                f1 = poly.eval(x1);
            }
        }
        const double pi_mid = 0.5 * (a + b);
        const double f_mid = poly.eval(pi_mid);
        if (f_mid > best.p) {
            best.p = f_mid;
            best.pi = pi_mid;
        }
    }
    return best;
}

}  // namespace

void TwoByTwo::validate() const {
    if (a < 0 || b < 0 || c < 0 || d < 0) {
        throw ValidationError("contingency table entries must be non-negative");
    }
    if (n1() == 0 || n2() == 0) {
        throw ValidationError("each group needs at least one observation");
    }
}

double wald_pooled(const TwoByTwo& t) {
    t.validate();
    return score_stat(t.a, t.n1(), t.b, t.n2());
}

ExactTestResult barnard_exact(const TwoByTwo& t, int grid_points, double refine_tol) {
    t.validate();
    if (grid_points < 3) throw ValidationError("grid_points must be at least 3");
    if (!(refine_tol > 0.0)) throw ValidationError("refine_tol must be positive");

    const std::int64_t n1 = t.n1();
    const std::int64_t n2 = t.n2();
    const std::int64_t n_total = n1 + n2;

    ExactTestResult out;
    out.t_obs = score_stat(t.a, n1, t.b, n2);

    std::vector<double> lc1(static_cast<std::size_t>(n1) + 1);
    std::vector<double> lc2(static_cast<std::size_t>(n2) + 1);
    for (std::int64_t x = 0; x <= n1; ++x) lc1[static_cast<std::size_t>(x)] = lchoose(n1, x);
    for (std::int64_t x = 0; x <= n2; ++x) lc2[static_cast<std::size_t>(x)] = lchoose(n2, x);

    const double abs_obs = std::abs(out.t_obs);
    std::vector<std::vector<double>> one_terms(static_cast<std::size_t>(n_total) + 1);
    std::vector<std::vector<double>> two_terms(static_cast<std::size_t>(n_total) + 1);
    for (std::int64_t x1 = 0; x1 <= n1; ++x1) {
        for (std::int64_t x2 = 0; x2 <= n2; ++x2) {
            const double stat = score_stat(x1, n1, x2, n2);
            const bool in_one = out.t_obs == 0.0 ||
                                (out.t_obs < 0.0 ? stat <= out.t_obs : stat >= out.t_obs);
            const bool in_two = std::abs(stat) >= abs_obs;
            if (!in_one && !in_two) continue;
            const double log_coef = lc1[static_cast<std::size_t>(x1)] + lc2[static_cast<std::size_t>(x2)];
            const std::size_t s = static_cast<std::size_t>(x1 + x2);
            if (in_one) {
                one_terms[s].push_back(log_coef);
                ++out.included_one;
            }
            if (in_two) {
                two_terms[s].push_back(log_coef);
                ++out.included_two;
            }
        }
    }

    TailPoly one{std::vector<double>(static_cast<std::size_t>(n_total) + 1, kNegInf), n_total};
    TailPoly two{std::vector<double>(static_cast<std::size_t>(n_total) + 1, kNegInf), n_total};
    for (std::size_t s = 0; s <= static_cast<std::size_t>(n_total); ++s) {
        if (!one_terms[s].empty()) one.log_w[s] = logsumexp(one_terms[s]);
        if (!two_terms[s].empty()) two.log_w[s] = logsumexp(two_terms[s]);
    }

    if (out.t_obs == 0.0) {
        // Every table is at least as extreme in both senses; the tail mass is
        // identically 1 for every nuisance rate.
        out.p_one_sided = 1.0;
        out.pi_one = 0.5;
        out.p_two_sided = 1.0;
        out.pi_two = 0.5;
        return out;
    }

    const SupResult sup_one = maximize(one, grid_points, refine_tol);
    out.p_one_sided = std::min(1.0, sup_one.p);
    out.pi_one = sup_one.pi;

    const SupResult sup_two = maximize(two, grid_points, refine_tol);
    out.p_two_sided = std::min(1.0, sup_two.p);
    out.pi_two = sup_two.pi;
    return out;
}

double fisher_exact_two_sided(const TwoByTwo& t) {
    t.validate();
    const std::int64_t n1 = t.n1();
    const std::int64_t n2 = t.n2();
    const std::int64_t successes = t.a + t.b;
    const std::int64_t n_total = n1 + n2;

    const std::int64_t k_lo = std::max<std::int64_t>(0, successes - n2);
    const std::int64_t k_hi = std::min(n1, successes);
    const double log_denom = lchoose(n_total, successes);

    auto log_pmf = [&](std::int64_t k) {
        return lchoose(n1, k) + lchoose(n2, successes - k) - log_denom;
    };

    const double log_obs = log_pmf(t.a);
    // Tie allowance mirrors the usual practice of accepting probabilities
    // within one part in 1e7 of the observed table's.
    const double cutoff = log_obs + std::log1p(1e-7);

    std::vector<double> included;
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
        const double lp = log_pmf(k);
        if (lp <= cutoff) included.push_back(lp);
    }
    const double log_p = logsumexp(included);
    return std::min(1.0, std::exp(log_p));
}

OutlierScan zscore_outliers(const std::vector<double>& xs, double threshold) {
    if (xs.size() < 2) throw ValidationError("outlier scan needs at least two values");
    if (!(threshold > 0.0)) throw ValidationError("threshold must be positive");
    OutlierScan out;
    const double n = static_cast<double>(xs.size());
    double sum = 0.0;
    for (double x : xs) sum += x;
    out.mean = sum / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.stddev = std::sqrt(ss / (n - 1.0));
    if (out.stddev == 0.0) {
        throw ValidationError("outlier scan requires non-zero variance");
    }
    out.zscores.resize(xs.size(), 0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out.zscores[i] = (xs[i] - out.mean) / out.stddev;
        if (out.zscores[i] > threshold) out.indices.push_back(i);
    }
    return out;
}

}  // namespace dronevoc
