#include <qinterp/prony.hpp>
#include <qinterp/qsim.hpp>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qinterp {

namespace {

std::uint64_t dimension(const Field& field, unsigned registers, const StateLimits& limits) {
    std::uint64_t dim = 1;
    for (unsigned i = 0; i < registers; ++i) {
        dim *= field.order();
        if (dim > limits.state_cap) {
            throw Error(ErrorKind::BudgetExceeded, "state of " + std::to_string(registers) +
                                                       " registers over F_" + std::to_string(field.order()) +
                                                       " exceeds the cap of " + std::to_string(limits.state_cap) +
                                                       " amplitudes");
        }
    }
    return dim;
}

// The univariate polynomial evaluated at every field element.
std::vector<Elem> value_table(const Field& F, std::span<const Elem> c) {
    std::vector<Elem> values(F.order());
    for (std::uint32_t x = 0; x < F.order(); ++x) {
        Elem acc = Field::zero();
        for (std::size_t j = c.size(); j-- > 0;) acc = F.add(F.mul(acc, Elem{x}), c[j]);
        values[x] = acc;
    }
    return values;
}

unsigned query_pairs(const StateVector& state, std::span<const Elem> c) {
    if (state.registers() % 2 != 0 || state.registers() == 0) {
        throw Error(ErrorKind::ShapeMismatch, "queries need paired x and y registers");
    }
    for (Elem e : c) {
        if (!state.field().contains(e)) throw Error(ErrorKind::ShapeMismatch, "coefficient outside the field");
    }
    if (c.empty()) throw Error(ErrorKind::ShapeMismatch, "empty coefficient vector");
    return state.registers() / 2;
}

std::vector<unsigned> register_range(unsigned first, unsigned count) {
    std::vector<unsigned> regs(count);
    std::iota(regs.begin(), regs.end(), first);
    return regs;
}

std::uint64_t pair_index(const Field& F, const PairXY& pair) {
    return tuple_index(F, pair.x) * checked_power(F.order(), pair.y.size()) + tuple_index(F, pair.y);
}

// z index of every pair, in pair index order.
std::vector<std::uint64_t> z_index_table(const ProblemParams& params) {
    const Field& F = params.field;
    const std::uint64_t side = checked_power(params.q(), params.k);
    std::vector<std::uint64_t> out(side * side);
    for (std::uint64_t xi = 0; xi < side; ++xi) {
        const auto x = tuple_from_index(F, xi, params.k);
        for (std::uint64_t yi = 0; yi < side; ++yi) {
            const auto y = tuple_from_index(F, yi, params.k);
            out[xi * side + yi] = tuple_index(F, power_sums(F, x, y, params.d + 1));
        }
    }
    return out;
}

void require_coeffs(const ProblemParams& params, std::span<const Elem> c) {
    if (c.size() != params.d + 1) {
        throw Error(ErrorKind::ShapeMismatch, "coefficient vector has " + std::to_string(c.size()) +
                                                  " entries, expected " + std::to_string(params.d + 1));
    }
}

}  // namespace

StateVector::StateVector(Field field, unsigned registers, const StateLimits& limits)
    : field_(std::move(field)), registers_(registers), amps_(dimension(field_, registers, limits)) {
    amps_[0] = 1.0;
}

StateVector StateVector::basis(Field field, unsigned registers, std::uint64_t index, const StateLimits& limits) {
    StateVector s(std::move(field), registers, limits);
    if (index >= s.size()) throw Error(ErrorKind::IndexOutOfRange, "basis index outside the state");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const auto& a : amps_) sum += std::norm(a);
    return std::sqrt(sum);
}

void fourier_on_registers(StateVector& state, std::span<const unsigned> registers, bool inverse) {
    const Field& F = state.field();
    const std::uint32_t q = F.order();
    for (unsigned r : registers) {
        if (r >= state.registers()) {
            throw Error(ErrorKind::BadRegisterIndex, "register " + std::to_string(r) + " of " +
                                                         std::to_string(state.registers()));
        }
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(q));
    std::vector<Amplitude> matrix(std::size_t{q} * q);
    for (std::uint32_t x = 0; x < q; ++x) {
        for (std::uint32_t y = 0; y < q; ++y) {
            const Amplitude e = F.character(F.mul(Elem{x}, Elem{y})) * scale;
            matrix[std::size_t{x} * q + y] = inverse ? std::conj(e) : e;
        }
    }

    auto amps = state.amplitudes();
    std::vector<Amplitude> in(q), out(q);
    for (unsigned r : registers) {
        std::uint64_t stride = 1;
        for (unsigned i = r + 1; i < state.registers(); ++i) stride *= q;
        const std::uint64_t block = stride * q;
        for (std::uint64_t base = 0; base < amps.size(); base += block) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                for (std::uint32_t x = 0; x < q; ++x) in[x] = amps[base + x * stride + off];
                std::fill(out.begin(), out.end(), Amplitude{});
                for (std::uint32_t x = 0; x < q; ++x) {
                    if (in[x] == Amplitude{}) continue;
                    const Amplitude* row = &matrix[std::size_t{x} * q];
                    for (std::uint32_t y = 0; y < q; ++y) out[y] += in[x] * row[y];
                }
                for (std::uint32_t y = 0; y < q; ++y) amps[base + y * stride + off] = out[y];
            }
        }
    }
}

void standard_query(StateVector& state, std::span<const Elem> c) {
    const unsigned k = query_pairs(state, c);
    const Field& F = state.field();
    const auto f = value_table(F, c);
    const std::uint64_t side = checked_power(F.order(), k);
    auto amps = state.amplitudes();
    std::vector<Amplitude> next(amps.size());
    for (std::uint64_t xi = 0; xi < side; ++xi) {
        const auto x = tuple_from_index(F, xi, k);
        for (std::uint64_t yi = 0; yi < side; ++yi) {
            auto y = tuple_from_index(F, yi, k);
            for (unsigned i = 0; i < k; ++i) y[i] = F.add(y[i], f[x[i].v]);
            next[xi * side + tuple_index(F, y)] = amps[xi * side + yi];
        }
    }
    std::copy(next.begin(), next.end(), amps.begin());
}

void phase_query(StateVector& state, std::span<const Elem> c) {
    const unsigned k = query_pairs(state, c);
    const Field& F = state.field();
    const auto f = value_table(F, c);
    const std::uint64_t side = checked_power(F.order(), k);
    auto amps = state.amplitudes();
    for (std::uint64_t xi = 0; xi < side; ++xi) {
        const auto x = tuple_from_index(F, xi, k);
        for (std::uint64_t yi = 0; yi < side; ++yi) {
            const auto y = tuple_from_index(F, yi, k);
            Elem phase = Field::zero();
            for (unsigned i = 0; i < k; ++i) phase = F.add(phase, F.mul(y[i], f[x[i].v]));
            amps[xi * side + yi] *= F.character(phase);
        }
    }
}

MeasurementResult measure_fourier(StateVector state, std::span<const Elem> c) {
    if (c.size() != state.registers()) throw Error(ErrorKind::ShapeMismatch, "outcome length differs from registers");
    const auto regs = register_range(0, state.registers());
    fourier_on_registers(state, regs, true);
    MeasurementResult result;
    result.distribution.reserve(state.size());
    for (const auto& a : state.amplitudes()) result.distribution.push_back(std::norm(a));
    result.c_index = tuple_index(state.field(), c);
    result.success = result.distribution[result.c_index];
    return result;
}

OptimalInterpolator::OptimalInterpolator(const ProblemParams& params, Scope scope, RepresentativeSource source,
                                         const StateLimits& limits)
    : params_(params), source_(source), limits_(limits) {
    params_.validate(scope == Scope::good);
    if (params_.n != 1) throw Error(ErrorKind::InvalidParams, "simulation is univariate (n = 1)");
    dimension(params_.field, 2 * params_.k, limits_);
    dimension(params_.field, params_.d + 1, limits_);

    const bool prony_regime = scope == Scope::good && params_.d % 2 == 1 && params_.k == (params_.d + 1) / 2;
    if (source_ == RepresentativeSource::automatic) {
        source_ = prony_regime ? RepresentativeSource::prony : RepresentativeSource::census;
    }
    const Field& F = params_.field;
    if (source_ == RepresentativeSource::prony) {
        if (!prony_regime) {
            throw Error(ErrorKind::InvalidParams, "prony representatives need scope good, d odd and k = (d+1)/2");
        }
        const std::uint64_t cells = checked_power(params_.q(), params_.d + 1);
        for (std::uint64_t zi = 0; zi < cells; ++zi) {
            const auto z = tuple_from_index(F, zi, params_.d + 1);
            try {
                const auto rep = invert_z(params_, z);
                pair_index_.push_back(pair_index(F, rep.pair));
                z_index_.push_back(zi);
            } catch (const Error& e) {
                if (!is_not_in_good_range(e.kind())) throw;
            }
        }
    } else {
        for (const auto& rep : smallest_representatives(params_, scope)) {
            pair_index_.push_back(pair_index(F, rep.pair));
            z_index_.push_back(rep.z_index);
        }
    }
}

StateVector OptimalInterpolator::final_state(std::span<const Elem> c, QueryModel model) const {
    require_coeffs(params_, c);
    const Field& F = params_.field;
    const unsigned k = params_.k;
    StateVector pairs(F, 2 * k, limits_);
    pairs[0] = 0.0;
    const double amp = 1.0 / std::sqrt(static_cast<double>(pair_index_.size()));
    for (auto t : pair_index_) pairs[t] = amp;

    if (model == QueryModel::phase) {
        phase_query(pairs, c);
    } else {
        const auto ys = register_range(k, k);
        fourier_on_registers(pairs, ys, true);
        standard_query(pairs, c);
        fourier_on_registers(pairs, ys, false);
    }

    // Z is a bijection from the representatives onto the range, so moving
    // each amplitude to its z index is unitary on the populated subspace.
    StateVector out(F, params_.d + 1, limits_);
    out[0] = 0.0;
    for (std::size_t t = 0; t < pair_index_.size(); ++t) out[z_index_[t]] = pairs[pair_index_[t]];
    return out;
}

MeasurementResult OptimalInterpolator::run(std::span<const Elem> c, QueryModel model) const {
    auto result = measure_fourier(final_state(c, model), c);
    result.support = pair_index_.size();
    return result;
}

MeasurementResult run_interpolation(const ProblemParams& params, std::span<const Elem> c, Scope scope,
                                    const StateLimits& limits) {
    return OptimalInterpolator(params, scope, RepresentativeSource::automatic, limits).run(c);
}

PgmSimulator::PgmSimulator(const ProblemParams& params, const StateLimits& limits)
    : params_(params), limits_(limits) {
    params_.validate();
    if (params_.n != 1) throw Error(ErrorKind::InvalidParams, "simulation is univariate (n = 1)");
    dimension(params_.field, 2 * params_.k, limits_);
    const std::uint64_t cells = dimension(params_.field, params_.d + 1, limits_);
    z_of_pair_ = z_index_table(params_);
    fiber_.assign(cells, 0);
    for (auto z : z_of_pair_) ++fiber_[z];
}

double PgmSimulator::formula() const {
    double sum = 0.0;
    for (auto n : fiber_) sum += std::sqrt(static_cast<double>(n));
    const double denom = std::pow(static_cast<double>(params_.q()), 2.0 * params_.k + params_.d + 1);
    return sum * sum / denom;
}

MeasurementResult PgmSimulator::run(std::span<const Elem> c) const {
    require_coeffs(params_, c);
    const Field& F = params_.field;
    const unsigned k = params_.k;
    StateVector pairs(F, 2 * k, limits_);
    fourier_on_registers(pairs, register_range(0, k));
    standard_query(pairs, c);
    fourier_on_registers(pairs, register_range(k, k));

    StateVector out(F, params_.d + 1, limits_);
    out[0] = 0.0;
    for (std::uint64_t t = 0; t < z_of_pair_.size(); ++t) {
        const auto z = z_of_pair_[t];
        out[z] += pairs[t] / std::sqrt(static_cast<double>(fiber_[z]));
    }
    auto result = measure_fourier(std::move(out), c);
    result.support = static_cast<std::uint64_t>(std::count_if(fiber_.begin(), fiber_.end(), [](auto n) { return n > 0; }));
    return result;
}

MeasurementResult run_pgm(const ProblemParams& params, std::span<const Elem> c, const StateLimits& limits) {
    return PgmSimulator(params, limits).run(c);
}

SuperposedRepSimulator::SuperposedRepSimulator(const ProblemParams& params, const StateLimits& limits)
    : params_(params), limits_(limits) {
    params_.validate(true);
    if (params_.n != 1) throw Error(ErrorKind::InvalidParams, "simulation is univariate (n = 1)");
    if (params_.d % 2 != 0 || params_.k != params_.d / 2 + 1) {
        throw Error(ErrorKind::InvalidParams, "superposed representatives need d even and k = d/2 + 1");
    }
    dimension(params_.field, 2 * params_.k, limits_);
    const std::uint64_t cells = dimension(params_.field, params_.d + 1, limits_);
    const Field& F = params_.field;
    const unsigned k = params_.k;

    fiber_size_.assign(cells, 0);
    std::vector<unsigned> perm(k);
    for (std::uint64_t zi = 0; zi < cells; ++zi) {
        const auto z = tuple_from_index(F, zi, params_.d + 1);
        for (const auto& ext : valid_extensions(params_, z)) {
            std::iota(perm.begin(), perm.end(), 0u);
            do {
                PairXY p;
                for (auto i : perm) {
                    p.x.push_back(ext.pair.x[i]);
                    p.y.push_back(ext.pair.y[i]);
                }
                fiber_pairs_.push_back(pair_index(F, p));
                z_of_pair_.push_back(zi);
                ++fiber_size_[zi];
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        if (fiber_size_[zi] > 0) ++range_size_;
    }
}

MeasurementResult SuperposedRepSimulator::run(std::span<const Elem> c) const {
    require_coeffs(params_, c);
    const Field& F = params_.field;
    StateVector pairs(F, 2 * params_.k, limits_);
    pairs[0] = 0.0;
    const double norm = 1.0 / std::sqrt(static_cast<double>(range_size_));
    for (std::size_t t = 0; t < fiber_pairs_.size(); ++t) {
        pairs[fiber_pairs_[t]] = norm / std::sqrt(static_cast<double>(fiber_size_[z_of_pair_[t]]));
    }
    phase_query(pairs, c);

    StateVector out(F, params_.d + 1, limits_);
    out[0] = 0.0;
    for (std::size_t t = 0; t < fiber_pairs_.size(); ++t) {
        const auto z = z_of_pair_[t];
        out[z] += pairs[fiber_pairs_[t]] / std::sqrt(static_cast<double>(fiber_size_[z]));
    }
    auto result = measure_fourier(std::move(out), c);
    result.support = range_size_;
    return result;
}

MeasurementResult run_superposed_rep(const ProblemParams& params, std::span<const Elem> c,
                                     const StateLimits& limits) {
    return SuperposedRepSimulator(params, limits).run(c);
}

std::uint64_t span_rank(const ProblemParams& params, unsigned k, Scope scope, const StateLimits& limits) {
    ProblemParams with_k = params;
    with_k.k = std::max(k, 1u);
    with_k.validate(scope == Scope::good);
    if (k == 0) return 1;

    const std::uint64_t rows = dimension(params.field, params.d + 1, limits);
    if (rows * rows > limits.state_cap) {
        throw Error(ErrorKind::BudgetExceeded, "rank matrix of " + std::to_string(rows) + "^2 entries exceeds the cap");
    }
    const OptimalInterpolator alg(with_k, scope, RepresentativeSource::automatic, limits);
    Eigen::MatrixXcd m(rows, rows);
    for (std::uint64_t ci = 0; ci < rows; ++ci) {
        const auto c = tuple_from_index(params.field, ci, params.d + 1);
        const auto state = alg.final_state(c);
        for (std::uint64_t j = 0; j < rows; ++j) m(ci, j) = state[j];
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    const double tol = 1e-8 * s(0);
    return static_cast<std::uint64_t>((s.array() > tol).count());
}

}  // namespace qinterp
