#pragma once

#include <qinterp/field.hpp>
#include <qinterp/polynomial.hpp>
#include <qinterp/rational.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace qinterp {

enum class Scope { all, good };

std::string_view to_string(Scope scope) noexcept;

// Parameters of one interpolation instance: degree-d polynomials in n
// variables over F_q, learned from k queries.
struct ProblemParams {
    Field field;
    unsigned d = 1;
    unsigned k = 1;
    unsigned n = 1;

    // Throws InvalidParams unless d, k, n >= 1 and q > d. With
    // `require_good_pairs`, also requires k distinct points to exist.
    void validate(bool require_good_pairs = false) const;

    std::uint32_t q() const noexcept { return field.order(); }
    // J = C(n+d, d); equals d+1 for univariate problems.
    std::size_t num_coeffs() const;
    // q^n, the number of query points.
    std::uint64_t point_count() const;
};

std::uint64_t binomial(unsigned n, unsigned k);

// The exponent tuples j with |j| <= d, in graded lexicographic order: by total
// degree, then lexicographically. For n = 1 this is 0, 1, ..., d.
std::vector<std::vector<unsigned>> exponent_set(unsigned n, unsigned d);

// Query points and weights. For n > 1, `x` holds k points of n coordinates
// each, point-major.
struct PairXY {
    std::vector<Elem> x;
    std::vector<Elem> y;

    friend bool operator==(const PairXY&, const PairXY&) = default;
};

// Distinct points (n coordinates each).
bool is_good_x(std::span<const Elem> x, unsigned n = 1);
// No zero weight.
bool is_good_y(std::span<const Elem> y);

// Row-major index of a tuple over F_q: the first entry is most significant.
std::uint64_t tuple_index(const Field& field, std::span<const Elem> tuple);
std::vector<Elem> tuple_from_index(const Field& field, std::uint64_t index, std::size_t length);

// q^e, throwing BudgetExceeded when it does not fit in 64 bits.
std::uint64_t checked_power(std::uint64_t q, std::uint64_t e);

// f_c(point) = sum_j c_j point^j. Throws LengthMismatch.
Elem poly_eval(const ProblemParams& params, std::span<const Elem> c, std::span<const Elem> point);

// Z(x, y)_j = sum_i y_i x_i^j over the exponent set. Throws LengthMismatch.
std::vector<Elem> z_eval(const ProblemParams& params, const PairXY& pair);

// Univariate power sums sum_i y_i x_i^j for j = 0 .. count-1.
std::vector<Elem> power_sums(const Field& field, std::span<const Elem> x, std::span<const Elem> y,
                             std::size_t count);

struct EnumerationLimits {
    // Counters in the z-space (q^J of them).
    std::uint64_t cell_cap = std::uint64_t{1} << 28;
    // Pairs (x, y) visited by a scan.
    std::uint64_t pair_cap = std::uint64_t{1} << 32;
    unsigned workers = 1;
};

// Sorted (fiber size, number of z with that fiber size) pairs, including the
// fiber size 0.
using Histogram = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

// Exhaustive census of the Z-map over all pairs and over good pairs.
struct RangeCensus {
    ProblemParams params;
    // |Z^{-1}(z)| and |Z^{-1}(z)^good| indexed by the row-major z index.
    std::vector<std::uint32_t> fiber_all{};
    std::vector<std::uint32_t> fiber_good{};
    std::uint64_t range_size_all = 0;
    std::uint64_t range_size_good = 0;
    std::uint64_t pair_count_all = 0;
    std::uint64_t pair_count_good = 0;
    Histogram histogram_all{};
    Histogram histogram_good{};
    double wall_seconds = 0.0;

    std::uint64_t cells() const noexcept { return fiber_all.size(); }
    std::uint64_t range_size(Scope s) const noexcept {
        return s == Scope::all ? range_size_all : range_size_good;
    }
    std::uint64_t pair_count(Scope s) const noexcept {
        return s == Scope::all ? pair_count_all : pair_count_good;
    }
    const Histogram& histogram(Scope s) const noexcept {
        return s == Scope::all ? histogram_all : histogram_good;
    }
    const std::vector<std::uint32_t>& fibers(Scope s) const noexcept {
        return s == Scope::all ? fiber_all : fiber_good;
    }
};

// Visits every (x, y) in row-major pair order, partitioning the x-space into
// contiguous ranges across workers with private counters. The result does not
// depend on the worker count. Throws BudgetExceeded.
RangeCensus enumerate_census(const ProblemParams& params, const EnumerationLimits& limits = {});

std::uint64_t preimage_count(const RangeCensus& census, std::span<const Elem> z, Scope scope);
// Direct scan over all pairs, without a census.
std::uint64_t preimage_count(const ProblemParams& params, std::span<const Elem> z, Scope scope,
                             const EnumerationLimits& limits = {});

// |X^good| * |Y^good| = (q^n)!/(q^n - k)! * (q-1)^k.
BigInt good_pair_count(const ProblemParams& params);

// |R_k| / q^J or |R_k^good| / q^J.
Rational success_probability(const RangeCensus& census, Scope scope);

// Mean and variance of the fiber size under a uniform z.
struct Moments {
    Rational mean;
    Rational variance;
};
Moments moment_stats(const RangeCensus& census, Scope scope);

// One pair per z in the range: the pair of smallest row-major index (x-tuple
// major, y-tuple minor). Sorted by z index.
struct Representative {
    std::uint64_t z_index = 0;
    PairXY pair;
};
std::vector<Representative> smallest_representatives(const ProblemParams& params, Scope scope,
                                                     const EnumerationLimits& limits = {});

// Range-size exploration for the multivariate map.
enum class MultivariateMode { exact, sample };
enum class SampleEstimator {
    automatic,        // membership when the pair space fits the pair cap
    membership,       // draw uniform z, test for a preimage by scanning pairs
    distinct_images,  // count distinct images of uniform pairs; a lower bound
};

struct MultivariateEstimate {
    MultivariateMode mode = MultivariateMode::exact;
    SampleEstimator estimator = SampleEstimator::automatic;
    std::size_t num_coeffs = 0;
    std::uint64_t space_size = 0;  // q^J
    std::uint64_t samples = 0;
    std::uint64_t hits = 0;
    std::optional<std::uint64_t> exact_range_size;
    double ratio = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;  // 95% Wilson interval
    double ci_high = 0.0;
    bool lower_bound = false;
};

inline constexpr std::uint64_t kMinimumSamples = 30;

// Exact mode runs the census. Sample mode draws `samples` uniform z (or
// pairs, for the distinct-image estimator). Throws BudgetExceeded and
// InsufficientSamples.
MultivariateEstimate multivariate_census(const ProblemParams& params, MultivariateMode mode,
                                         std::uint64_t samples, Rng& rng,
                                         SampleEstimator estimator = SampleEstimator::automatic,
                                         const EnumerationLimits& limits = {});

}  // namespace qinterp
