#pragma once

#include <qinterp/field.hpp>
#include <qinterp/zmap.hpp>

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace qinterp {

using Amplitude = std::complex<double>;

struct StateLimits {
    std::uint64_t state_cap = std::uint64_t{1} << 22;  // amplitudes per state
};

// Dense state of m registers, each of dimension q. Basis index i encodes the
// register contents row-major: register 0 is the most significant digit.
class StateVector {
public:
    // |0...0>. Throws BudgetExceeded when q^m exceeds the cap.
    StateVector(Field field, unsigned registers, const StateLimits& limits = {});

    static StateVector basis(Field field, unsigned registers, std::uint64_t index,
                             const StateLimits& limits = {});

    const Field& field() const noexcept { return field_; }
    unsigned registers() const noexcept { return registers_; }
    std::uint64_t size() const noexcept { return amps_.size(); }

    std::span<Amplitude> amplitudes() noexcept { return amps_; }
    std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
    Amplitude& operator[](std::uint64_t i) { return amps_[i]; }
    Amplitude operator[](std::uint64_t i) const { return amps_[i]; }

    double norm() const;

private:
    Field field_;
    unsigned registers_;
    std::vector<Amplitude> amps_;
};

// |x> -> q^{-1/2} sum_y e(xy)|y> on each listed register, or its inverse.
// Throws BadRegisterIndex.
void fourier_on_registers(StateVector& state, std::span<const unsigned> registers, bool inverse = false);

// The state holds k x-registers followed by k y-registers, matching the pair
// index order of the census. Both throw ShapeMismatch.
// |x, y> -> |x, y + f(x)> on each register pair.
void standard_query(StateVector& state, std::span<const Elem> c);
// |x, y> -> e(sum_i y_i f(x_i)) |x, y>.
void phase_query(StateVector& state, std::span<const Elem> c);

enum class QueryModel {
    phase,
    standard,  // phase queries built as inverse Fourier, standard query, Fourier
};

// Full outcome distribution of a Fourier-basis measurement on d+1 registers.
struct MeasurementResult {
    std::vector<double> distribution;  // indexed by the row-major index of c
    std::uint64_t c_index = 0;
    double success = 0.0;  // distribution[c_index]
    std::uint64_t support = 0;  // |R| used by the algorithm
};

// Inverse Fourier transform on all registers, then the squared amplitudes.
MeasurementResult measure_fourier(StateVector state, std::span<const Elem> c);

enum class RepresentativeSource {
    automatic,  // prony when d is odd, k = (d+1)/2 and the scope is good
    prony,
    census,
};

// The query algorithm over a uniform superposition of one representative pair
// per z in the range.
class OptimalInterpolator {
public:
    // Throws BudgetExceeded, and InvalidParams when prony representatives are
    // requested outside their regime.
    OptimalInterpolator(const ProblemParams& params, Scope scope = Scope::good,
                        RepresentativeSource source = RepresentativeSource::automatic,
                        const StateLimits& limits = {});

    const ProblemParams& params() const noexcept { return params_; }
    RepresentativeSource source() const noexcept { return source_; }
    std::uint64_t representative_count() const noexcept { return pair_index_.size(); }

    // State on the d+1 z-registers after the queries and the in-place Z map.
    StateVector final_state(std::span<const Elem> c, QueryModel model = QueryModel::phase) const;
    MeasurementResult run(std::span<const Elem> c, QueryModel model = QueryModel::phase) const;

private:
    ProblemParams params_;
    RepresentativeSource source_;
    StateLimits limits_;
    std::vector<std::uint64_t> pair_index_;  // sorted by z index
    std::vector<std::uint64_t> z_index_;
};

MeasurementResult run_interpolation(const ProblemParams& params, std::span<const Elem> c,
                                    Scope scope = Scope::good, const StateLimits& limits = {});

// k uniform standard queries, Fourier on the y-registers, then the
// |Z^{-1}(z)> -> |z> relabelling.
class PgmSimulator {
public:
    PgmSimulator(const ProblemParams& params, const StateLimits& limits = {});

    MeasurementResult run(std::span<const Elem> c) const;
    // (sum_z sqrt|Z^{-1}(z)|)^2 / q^{2k+d+1}
    double formula() const;

private:
    ProblemParams params_;
    StateLimits limits_;
    std::vector<std::uint64_t> z_of_pair_;
    std::vector<std::uint32_t> fiber_;
};

MeasurementResult run_pgm(const ProblemParams& params, std::span<const Elem> c, const StateLimits& limits = {});

// For d even and k = d/2 + 1: each z in the good range is represented by the
// uniform superposition over its whole good fiber, built from every valid
// z_{d+1} extension and every reordering of the recovered pair.
class SuperposedRepSimulator {
public:
    SuperposedRepSimulator(const ProblemParams& params, const StateLimits& limits = {});

    std::uint64_t range_size() const noexcept { return range_size_; }
    // Good fiber size for each z index.
    const std::vector<std::uint32_t>& fiber_sizes() const noexcept { return fiber_size_; }

    MeasurementResult run(std::span<const Elem> c) const;

private:
    ProblemParams params_;
    StateLimits limits_;
    std::uint64_t range_size_ = 0;
    std::vector<std::uint32_t> fiber_size_;
    std::vector<std::uint64_t> z_of_pair_;  // only for pairs in a good fiber
    std::vector<std::uint64_t> fiber_pairs_;
};

MeasurementResult run_superposed_rep(const ProblemParams& params, std::span<const Elem> c,
                                     const StateLimits& limits = {});

// Numerical rank (singular values above 1e-8 sigma_max) of the matrix whose
// rows are the final states of the optimal algorithm for every c. With k = 0
// every row is the same state and the rank is 1.
std::uint64_t span_rank(const ProblemParams& params, unsigned k, Scope scope = Scope::all,
                        const StateLimits& limits = {});

}  // namespace qinterp
