#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dronevoc {

// 2x2 contingency table [[a, b], [c, d]]: columns are the two groups, rows
// are success/failure, so a and b count successes, c and d failures, and the
// group sizes are n1 = a + c, n2 = b + d with rates a/n1 and b/n2.
struct TwoByTwo {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;
    std::int64_t d = 0;

    std::int64_t n1() const { return a + c; }
    std::int64_t n2() const { return b + d; }

    void validate() const;  // non-negative entries, both groups non-empty
};

// Pooled-variance score statistic for the difference of two proportions:
// (p1 - p2) / sqrt(phat*(1-phat)*(1/n1 + 1/n2)); 0 when the pooled rate is
// degenerate (all successes or all failures).
double wald_pooled(const TwoByTwo& t);

struct ExactTestResult {
    double t_obs = 0.0;
    // Directional tail: tables with T <= t_obs when t_obs < 0, T >= t_obs
    // when t_obs > 0, every table when t_obs == 0 (p exactly 1).
    double p_one_sided = 1.0;
    double pi_one = 0.5;               // nuisance value attaining the supremum
    std::int64_t included_one = 0;     // tables in the tail
    // Magnitude tail: tables with |T| >= |t_obs|.
    double p_two_sided = 1.0;
    double pi_two = 0.5;
    std::int64_t included_two = 0;
};

// Unconditional exact test for two independent binomials with the pooled
// score statistic.  The nuisance success rate is maximized over an open
// uniform grid followed by golden-section refinement of every grid-local
// maximum down to refine_tol in the rate.
ExactTestResult barnard_exact(const TwoByTwo& t, int grid_points = 1001,
                              double refine_tol = 1e-6);

// Conditional exact test (both margins fixed, hypergeometric null).
// Two-sided by summing all tables whose probability does not exceed the
// observed table's, with a one-part-in-1e7 tie allowance.
double fisher_exact_two_sided(const TwoByTwo& t);

struct OutlierScan {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation (n-1)
    std::vector<double> zscores;
    std::vector<std::size_t> indices;  // z strictly above the threshold
};

// One-sided screen for values far above the mean: flags indices with
// (x - mean)/stddev > threshold.  Zero variance is an error since no value
// can stand out from identical data.
OutlierScan zscore_outliers(const std::vector<double>& xs, double threshold = 2.0);

}  // namespace dronevoc
