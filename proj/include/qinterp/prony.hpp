#pragma once

#include <qinterp/field.hpp>
#include <qinterp/polynomial.hpp>
#include <qinterp/zmap.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qinterp {

// Dense row-major matrix over F_q.
struct FqMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Elem> data{};

    FqMatrix() = default;
    FqMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, Field::zero()) {}

    Elem& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    Elem operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    friend bool operator==(const FqMatrix&, const FqMatrix&) = default;
};

// Solves A v = b by Gaussian elimination. Returns nullopt when A is singular.
std::optional<std::vector<Elem>> solve_linear(const Field& field, FqMatrix a, std::vector<Elem> b);

// V[i][j] = x_i^j for i, j < k.
FqMatrix vandermonde(const Field& field, std::span<const Elem> x);

// e_j(x_1, ..., x_k), with e_0 = 1. Throws IndexOutOfRange unless j <= k.
Elem elementary_symmetric(const Field& field, std::span<const Elem> x, std::size_t j);

// x_i^k == -sum_{j=1}^k x_i^{k-j} (-1)^j e_j(x), for 1-based i.
bool check_sympoly_identity(const Field& field, std::span<const Elem> x, std::size_t i);

// Whether the power sums z_j = sum_i y_i x_i^j obey the order-k recurrence
// z_{n+k} = sum_j a_j z_{n+j} for every n <= n_max.
bool check_recurrence(const Field& field, std::span<const Elem> x, std::span<const Elem> y,
                      std::size_t n_max);

// H[i][j] = z_{i+j} for i, j < k, with right-hand side (z_k, ..., z_{2k-1}).
struct HankelSystem {
    std::size_t k = 0;
    FqMatrix matrix{};
    std::vector<Elem> rhs{};

    // Throws LengthMismatch when z has fewer than 2k entries.
    static HankelSystem from_z(std::span<const Elem> z, std::size_t k);
};

// chi(X) = X^k - sum_j a_j X^j.
struct RecurrenceCoeffs {
    std::vector<Elem> a{};

    FqPolynomial characteristic_polynomial(const Field& field) const;
};

// Solves the Hankel system. Throws SingularHankel.
RecurrenceCoeffs char_poly_from_z(const Field& field, std::span<const Elem> z, std::size_t k);

// A good preimage with x sorted by element index. `extension` holds the
// guessed z_{d+1} when one was needed, and `attempts` counts draws.
struct CanonicalPair {
    PairXY pair;
    std::optional<Elem> extension;
    unsigned attempts = 0;
};

// Recovers the unique sorted good pair from 2k power sums. Throws
// SingularHankel, WrongRootCount or ZeroWeight when there is none.
PairXY invert_power_sums(const Field& field, std::span<const Elem> z, std::size_t k,
                         RootStrategy strategy, Rng& rng);

// For d odd and k = (d+1)/2. Throws InvalidParams and LengthMismatch on bad
// input, otherwise as invert_power_sums.
CanonicalPair invert_z(const ProblemParams& params, std::span<const Elem> z, Rng& rng,
                       RootStrategy strategy = RootStrategy::randomized);
// Same, with exhaustive root finding.
CanonicalPair invert_z(const ProblemParams& params, std::span<const Elem> z);

// 40 k! draws.
unsigned default_attempt_cap(unsigned k);

// For d even and k = d/2 + 1: guesses z_{d+1} uniformly until the extended
// vector inverts. Throws AttemptsExhausted after `attempt_cap` draws (0 means
// the default).
CanonicalPair invert_z_extended(const ProblemParams& params, std::span<const Elem> z, Rng& rng,
                                unsigned attempt_cap = 0,
                                RootStrategy strategy = RootStrategy::randomized);

// Every z_{d+1} for which the extended vector inverts, with its pair, in
// increasing order of z_{d+1}.
std::vector<CanonicalPair> valid_extensions(const ProblemParams& params, std::span<const Elem> z);

}  // namespace qinterp
