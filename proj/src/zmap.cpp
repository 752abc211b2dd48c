#include <qinterp/zmap.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <unordered_set>

namespace qinterp {

std::string_view to_string(Scope scope) noexcept { return scope == Scope::all ? "all" : "good"; }

void ProblemParams::validate(bool require_good_pairs) const {
    if (d < 1) throw Error(ErrorKind::InvalidParams, "degree d must be at least 1");
    if (k < 1) throw Error(ErrorKind::InvalidParams, "query count k must be at least 1");
    if (n < 1) throw Error(ErrorKind::InvalidParams, "number of variables n must be at least 1");
    if (q() <= d) {
        throw Error(ErrorKind::InvalidParams, "need q > d (q=" + std::to_string(q()) +
                                                  ", d=" + std::to_string(d) + ")");
    }
    if (require_good_pairs && k > point_count()) {
        throw Error(ErrorKind::InvalidParams, "good pairs need k <= q^n distinct points");
    }
}

std::size_t ProblemParams::num_coeffs() const { return binomial(n + d, d); }

std::uint64_t ProblemParams::point_count() const { return checked_power(q(), n); }

std::uint64_t binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    std::uint64_t out = 1;
    for (unsigned i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

std::vector<std::vector<unsigned>> exponent_set(unsigned n, unsigned d) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> e(n, 0);
    // Odometer over [0, d]^n keeping tuples of bounded total degree.
    while (true) {
        unsigned total = 0;
        for (auto v : e) total += v;
        if (total <= d) out.push_back(e);
        std::size_t i = n;
        while (i-- > 0) {
            if (++e[i] <= d) break;
            e[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        unsigned sa = 0, sb = 0;
        for (auto v : a) sa += v;
        for (auto v : b) sb += v;
        return sa != sb ? sa < sb : a < b;
    });
    return out;
}

bool is_good_x(std::span<const Elem> x, unsigned n) {
    const std::size_t k = x.size() / n;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (std::equal(x.begin() + i * n, x.begin() + (i + 1) * n, x.begin() + j * n)) return false;
        }
    }
    return true;
}

bool is_good_y(std::span<const Elem> y) {
    return std::none_of(y.begin(), y.end(), [](Elem e) { return e == Field::zero(); });
}

std::uint64_t tuple_index(const Field& field, std::span<const Elem> tuple) {
    std::uint64_t index = 0;
    for (Elem e : tuple) index = index * field.order() + e.v;
    return index;
}

std::vector<Elem> tuple_from_index(const Field& field, std::uint64_t index, std::size_t length) {
    std::vector<Elem> out(length);
    for (std::size_t i = length; i-- > 0;) {
        out[i] = Elem{static_cast<std::uint32_t>(index % field.order())};
        index /= field.order();
    }
    return out;
}

std::uint64_t checked_power(std::uint64_t q, std::uint64_t e) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (out > std::numeric_limits<std::uint64_t>::max() / q) {
            throw Error(ErrorKind::BudgetExceeded,
                        std::to_string(q) + "^" + std::to_string(e) + " overflows 64 bits");
        }
        out *= q;
    }
    return out;
}

namespace {

void check_elements(const Field& field, std::span<const Elem> v) {
    for (Elem e : v) {
        if (!field.contains(e)) throw Error(ErrorKind::FieldMismatch, "element index out of range");
    }
}

// point^e for every query point and every exponent tuple, point-major.
class MonomialTable {
public:
    explicit MonomialTable(const ProblemParams& params)
        : J_(params.num_coeffs()), points_(params.point_count()) {
        const auto exps = exponent_set(params.n, params.d);
        values_.resize(points_ * J_);
        for (std::uint64_t u = 0; u < points_; ++u) {
            const auto coords = tuple_from_index(params.field, u, params.n);
            for (std::size_t j = 0; j < J_; ++j) {
                Elem m = Field::one();
                for (unsigned t = 0; t < params.n; ++t) m = params.field.mul(m, params.field.pow(coords[t], exps[j][t]));
                values_[u * J_ + j] = m;
            }
        }
    }

    std::span<const Elem> row(std::uint64_t point) const {
        return std::span<const Elem>(values_).subspan(point * J_, J_);
    }

private:
    std::size_t J_;
    std::uint64_t points_;
    std::vector<Elem> values_;
};

// Walks pairs (x, y) with x-tuple index in [x_lo, x_hi) in row-major pair
// order. The visitor receives (x index, y index, z index, good) and returns
// false to stop the walk.
template <class Visit>
class PairScanner {
public:
    PairScanner(const ProblemParams& params, const MonomialTable& mono, Visit& visit)
        : F_(params.field), mono_(mono), visit_(visit), k_(params.k), J_(params.num_coeffs()),
          points_(params.point_count()), pts_(params.k), sums_((params.k + 1) * J_, Field::zero()) {}

    // Returns false if the visitor stopped the walk.
    bool run(std::uint64_t x_lo, std::uint64_t x_hi) {
        for (std::uint64_t xi = x_lo; xi < x_hi; ++xi) {
            std::uint64_t rest = xi;
            for (std::size_t i = k_; i-- > 0;) {
                pts_[i] = rest % points_;
                rest /= points_;
            }
            good_x_ = true;
            for (std::size_t i = 0; i < k_ && good_x_; ++i)
                for (std::size_t j = i + 1; j < k_; ++j)
                    if (pts_[i] == pts_[j]) {
                        good_x_ = false;
                        break;
                    }
            x_index_ = xi;
            if (!descend(0, 0, true)) return false;
        }
        return true;
    }

private:
    bool descend(std::size_t level, std::uint64_t y_prefix, bool good_y) {
        const Elem* base = sums_.data() + level * J_;
        Elem* next = sums_.data() + (level + 1) * J_;
        if (level == k_) {
            std::uint64_t zi = 0;
            for (std::size_t j = 0; j < J_; ++j) zi = zi * F_.order() + base[j].v;
            return visit_(x_index_, y_prefix, zi, good_x_ && good_y);
        }
        const auto m = mono_.row(pts_[level]);
        for (std::uint32_t yv = 0; yv < F_.order(); ++yv) {
            const Elem y{yv};
            for (std::size_t j = 0; j < J_; ++j) next[j] = F_.add(base[j], F_.mul(y, m[j]));
            if (!descend(level + 1, y_prefix * F_.order() + yv, good_y && yv != 0)) return false;
        }
        return true;
    }

    const Field& F_;
    const MonomialTable& mono_;
    Visit& visit_;
    std::size_t k_;
    std::size_t J_;
    std::uint64_t points_;
    std::vector<std::uint64_t> pts_;
    std::vector<Elem> sums_;
    std::uint64_t x_index_ = 0;
    bool good_x_ = true;
};

template <class Visit>
bool scan_pairs(const ProblemParams& params, const MonomialTable& mono, std::uint64_t x_lo,
                std::uint64_t x_hi, Visit&& visit) {
    PairScanner<std::remove_reference_t<Visit>> scanner(params, mono, visit);
    return scanner.run(x_lo, x_hi);
}

struct SpaceSizes {
    std::uint64_t cells;
    std::uint64_t x_count;
    std::uint64_t y_count;
    std::uint64_t pairs;
};

SpaceSizes space_sizes(const ProblemParams& params) {
    SpaceSizes s{};
    s.cells = checked_power(params.q(), params.num_coeffs());
    s.x_count = checked_power(params.point_count(), params.k);
    s.y_count = checked_power(params.q(), params.k);
    if (s.x_count > std::numeric_limits<std::uint64_t>::max() / s.y_count) {
        throw Error(ErrorKind::BudgetExceeded, "pair space overflows 64 bits");
    }
    s.pairs = s.x_count * s.y_count;
    return s;
}

void check_pair_budget(const SpaceSizes& s, const EnumerationLimits& limits) {
    if (s.pairs > limits.pair_cap) {
        throw Error(ErrorKind::BudgetExceeded, std::to_string(s.pairs) + " pairs exceed the pair cap " +
                                                   std::to_string(limits.pair_cap));
    }
}

void check_cell_budget(const SpaceSizes& s, const EnumerationLimits& limits) {
    if (s.cells > limits.cell_cap) {
        throw Error(ErrorKind::BudgetExceeded, std::to_string(s.cells) + " cells exceed the cell cap " +
                                                   std::to_string(limits.cell_cap));
    }
}

Histogram make_histogram(const std::vector<std::uint32_t>& fibers) {
    std::map<std::uint64_t, std::uint64_t> counts;
    for (auto c : fibers) ++counts[c];
    return Histogram(counts.begin(), counts.end());
}

std::uint64_t z_index_checked(const ProblemParams& params, std::span<const Elem> z) {
    if (z.size() != params.num_coeffs()) {
        throw Error(ErrorKind::LengthMismatch, "z has " + std::to_string(z.size()) + " entries, expected " +
                                                   std::to_string(params.num_coeffs()));
    }
    check_elements(params.field, z);
    return tuple_index(params.field, z);
}

PairXY decode_pair(const ProblemParams& params, std::uint64_t x_index, std::uint64_t y_index) {
    PairXY pair;
    std::vector<std::uint64_t> pts(params.k);
    for (std::size_t i = params.k; i-- > 0;) {
        pts[i] = x_index % params.point_count();
        x_index /= params.point_count();
    }
    for (auto u : pts) {
        const auto coords = tuple_from_index(params.field, u, params.n);
        pair.x.insert(pair.x.end(), coords.begin(), coords.end());
    }
    pair.y = tuple_from_index(params.field, y_index, params.k);
    return pair;
}

}  // namespace

Elem poly_eval(const ProblemParams& params, std::span<const Elem> c, std::span<const Elem> point) {
    const Field& F = params.field;
    if (c.size() != params.num_coeffs()) throw Error(ErrorKind::LengthMismatch, "coefficient vector length");
    if (point.size() != params.n) throw Error(ErrorKind::LengthMismatch, "point dimension");
    if (params.n == 1) {
        Elem acc = Field::zero();
        for (std::size_t j = c.size(); j-- > 0;) acc = F.add(F.mul(acc, point[0]), c[j]);
        return acc;
    }
    const auto exps = exponent_set(params.n, params.d);
    Elem acc = Field::zero();
    for (std::size_t j = 0; j < exps.size(); ++j) {
        Elem m = c[j];
        for (unsigned t = 0; t < params.n; ++t) m = F.mul(m, F.pow(point[t], exps[j][t]));
        acc = F.add(acc, m);
    }
    return acc;
}

std::vector<Elem> z_eval(const ProblemParams& params, const PairXY& pair) {
    if (pair.y.size() != params.k || pair.x.size() != std::size_t{params.k} * params.n) {
        throw Error(ErrorKind::LengthMismatch, "pair does not have k entries");
    }
    const Field& F = params.field;
    const auto exps = exponent_set(params.n, params.d);
    std::vector<Elem> z(exps.size(), Field::zero());
    for (std::size_t i = 0; i < params.k; ++i) {
        for (std::size_t j = 0; j < exps.size(); ++j) {
            Elem m = pair.y[i];
            for (unsigned t = 0; t < params.n; ++t) m = F.mul(m, F.pow(pair.x[i * params.n + t], exps[j][t]));
            z[j] = F.add(z[j], m);
        }
    }
    return z;
}

std::vector<Elem> power_sums(const Field& field, std::span<const Elem> x, std::span<const Elem> y,
                             std::size_t count) {
    if (x.size() != y.size()) throw Error(ErrorKind::LengthMismatch, "x and y lengths differ");
    std::vector<Elem> z(count, Field::zero());
    for (std::size_t i = 0; i < x.size(); ++i) {
        Elem term = y[i];
        for (std::size_t j = 0; j < count; ++j) {
            z[j] = field.add(z[j], term);
            term = field.mul(term, x[i]);
        }
    }
    return z;
}

RangeCensus enumerate_census(const ProblemParams& params, const EnumerationLimits& limits) {
    params.validate();
    const auto start = std::chrono::steady_clock::now();
    const SpaceSizes s = space_sizes(params);
    check_cell_budget(s, limits);
    check_pair_budget(s, limits);
    if (s.pairs > std::numeric_limits<std::uint32_t>::max()) {
        throw Error(ErrorKind::BudgetExceeded, "fiber counters are 32-bit; pair space too large");
    }

    std::uint64_t workers = std::clamp<std::uint64_t>(limits.workers, 1, s.x_count);
    while (workers > 1 && workers * s.cells > limits.cell_cap) --workers;

    const MonomialTable mono(params);
    std::vector<std::vector<std::uint32_t>> all(workers), good(workers);
    auto work = [&](std::uint64_t w) {
        all[w].assign(s.cells, 0);
        good[w].assign(s.cells, 0);
        auto& a = all[w];
        auto& g = good[w];
        const std::uint64_t lo = s.x_count * w / workers;
        const std::uint64_t hi = s.x_count * (w + 1) / workers;
        scan_pairs(params, mono, lo, hi, [&](std::uint64_t, std::uint64_t, std::uint64_t zi, bool is_good) {
            ++a[zi];
            if (is_good) ++g[zi];
            return true;
        });
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (std::uint64_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
        for (auto& t : threads) t.join();
    }
    for (std::uint64_t w = 1; w < workers; ++w) {
        for (std::uint64_t i = 0; i < s.cells; ++i) {
            all[0][i] += all[w][i];
            good[0][i] += good[w][i];
        }
        std::vector<std::uint32_t>().swap(all[w]);
        std::vector<std::uint32_t>().swap(good[w]);
    }

    RangeCensus census{.params = params};
    census.fiber_all = std::move(all[0]);
    census.fiber_good = std::move(good[0]);
    for (std::uint64_t i = 0; i < s.cells; ++i) {
        census.range_size_all += census.fiber_all[i] != 0;
        census.range_size_good += census.fiber_good[i] != 0;
        census.pair_count_all += census.fiber_all[i];
        census.pair_count_good += census.fiber_good[i];
    }
    census.histogram_all = make_histogram(census.fiber_all);
    census.histogram_good = make_histogram(census.fiber_good);
    census.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return census;
}

std::uint64_t preimage_count(const RangeCensus& census, std::span<const Elem> z, Scope scope) {
    return census.fibers(scope)[z_index_checked(census.params, z)];
}

std::uint64_t preimage_count(const ProblemParams& params, std::span<const Elem> z, Scope scope,
                             const EnumerationLimits& limits) {
    params.validate();
    const std::uint64_t target = z_index_checked(params, z);
    const SpaceSizes s = space_sizes(params);
    check_pair_budget(s, limits);
    const MonomialTable mono(params);
    std::uint64_t count = 0;
    scan_pairs(params, mono, 0, s.x_count, [&](std::uint64_t, std::uint64_t, std::uint64_t zi, bool good) {
        if (zi == target && (scope == Scope::all || good)) ++count;
        return true;
    });
    return count;
}

BigInt good_pair_count(const ProblemParams& params) {
    const std::uint64_t points = params.point_count();
    if (params.k > points) return 0;
    BigInt out = 1;
    for (unsigned i = 0; i < params.k; ++i) out *= BigInt(points - i) * (params.q() - 1);
    return out;
}

Rational success_probability(const RangeCensus& census, Scope scope) {
    return Rational(BigInt(census.range_size(scope)), BigInt(census.cells()));
}

Moments moment_stats(const RangeCensus& census, Scope scope) {
    BigInt sum = 0, sum_sq = 0;
    for (const auto& [count, multiplicity] : census.histogram(scope)) {
        sum += BigInt(count) * multiplicity;
        sum_sq += BigInt(count) * count * multiplicity;
    }
    const BigInt cells(census.cells());
    Moments m;
    m.mean = Rational(sum, cells);
    m.variance = Rational(sum_sq, cells) - m.mean * m.mean;
    return m;
}

std::vector<Representative> smallest_representatives(const ProblemParams& params, Scope scope,
                                                     const EnumerationLimits& limits) {
    params.validate();
    const SpaceSizes s = space_sizes(params);
    check_cell_budget(s, limits);
    check_pair_budget(s, limits);
    constexpr std::uint64_t kUnset = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> first(s.cells, kUnset);
    const MonomialTable mono(params);
    scan_pairs(params, mono, 0, s.x_count,
               [&](std::uint64_t xi, std::uint64_t yi, std::uint64_t zi, bool good) {
                   if (first[zi] == kUnset && (scope == Scope::all || good)) first[zi] = xi * s.y_count + yi;
                   return true;
               });
    std::vector<Representative> reps;
    for (std::uint64_t zi = 0; zi < s.cells; ++zi) {
        if (first[zi] == kUnset) continue;
        reps.push_back({zi, decode_pair(params, first[zi] / s.y_count, first[zi] % s.y_count)});
    }
    return reps;
}

MultivariateEstimate multivariate_census(const ProblemParams& params, MultivariateMode mode,
                                         std::uint64_t samples, Rng& rng, SampleEstimator estimator,
                                         const EnumerationLimits& limits) {
    params.validate();
    MultivariateEstimate est;
    est.mode = mode;
    est.num_coeffs = params.num_coeffs();
    est.space_size = checked_power(params.q(), est.num_coeffs);

    if (mode == MultivariateMode::exact) {
        const RangeCensus census = enumerate_census(params, limits);
        est.exact_range_size = census.range_size_all;
        est.samples = est.space_size;
        est.hits = census.range_size_all;
        est.ratio = static_cast<double>(est.hits) / static_cast<double>(est.space_size);
        est.ci_low = est.ci_high = est.ratio;
        return est;
    }

    if (samples < kMinimumSamples) {
        throw Error(ErrorKind::InsufficientSamples, "need at least " + std::to_string(kMinimumSamples) +
                                                        " samples, got " + std::to_string(samples));
    }
    const SpaceSizes s = space_sizes(params);
    if (estimator == SampleEstimator::automatic) {
        estimator = s.pairs <= limits.pair_cap ? SampleEstimator::membership : SampleEstimator::distinct_images;
    }
    est.estimator = estimator;
    est.samples = samples;
    const MonomialTable mono(params);

    if (estimator == SampleEstimator::membership) {
        check_pair_budget(s, limits);
        std::uniform_int_distribution<std::uint64_t> pick(0, est.space_size - 1);
        for (std::uint64_t t = 0; t < samples; ++t) {
            const std::uint64_t target = pick(rng);
            const bool exhausted = scan_pairs(params, mono, 0, s.x_count,
                                              [&](std::uint64_t, std::uint64_t, std::uint64_t zi, bool) {
                                                  return zi != target;
                                              });
            if (!exhausted) ++est.hits;
        }
        const double m = static_cast<double>(samples);
        const double p = static_cast<double>(est.hits) / m;
        constexpr double z = 1.96;
        const double denom = 1.0 + z * z / m;
        const double center = (p + z * z / (2 * m)) / denom;
        const double half = z * std::sqrt(p * (1 - p) / m + z * z / (4 * m * m)) / denom;
        est.ratio = p;
        est.std_error = std::sqrt(p * (1 - p) / m);
        est.ci_low = std::max(0.0, center - half);
        est.ci_high = std::min(1.0, center + half);
        return est;
    }

    // Distinct images of uniformly drawn pairs: every image is in the range,
    // so the ratio is a lower bound on |R| / q^J.
    std::uniform_int_distribution<std::uint64_t> pick_point(0, params.point_count() - 1);
    std::uniform_int_distribution<std::uint32_t> pick_y(0, params.q() - 1);
    std::unordered_set<std::uint64_t> seen;
    const std::size_t J = est.num_coeffs;
    std::vector<Elem> z(J);
    for (std::uint64_t t = 0; t < samples; ++t) {
        std::fill(z.begin(), z.end(), Field::zero());
        for (unsigned i = 0; i < params.k; ++i) {
            const auto row = mono.row(pick_point(rng));
            const Elem y{pick_y(rng)};
            for (std::size_t j = 0; j < J; ++j) z[j] = params.field.add(z[j], params.field.mul(y, row[j]));
        }
        seen.insert(tuple_index(params.field, z));
    }
    est.hits = seen.size();
    est.ratio = static_cast<double>(est.hits) / static_cast<double>(est.space_size);
    est.lower_bound = true;
    est.ci_low = est.ratio;
    est.ci_high = 1.0;
    return est;
}

}  // namespace qinterp
