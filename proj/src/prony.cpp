#include <qinterp/prony.hpp>

#include <algorithm>
#include <string>

namespace qinterp {

std::optional<std::vector<Elem>> solve_linear(const Field& F, FqMatrix a, std::vector<Elem> b) {
    const std::size_t n = a.rows;
    if (a.cols != n || b.size() != n) throw Error(ErrorKind::LengthMismatch, "solve_linear needs a square system");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col) == Field::zero()) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
            std::swap(b[pivot], b[col]);
        }
        const Elem inv = F.inv(a(col, col));
        for (std::size_t j = col; j < n; ++j) a(col, j) = F.mul(a(col, j), inv);
        b[col] = F.mul(b[col], inv);
        for (std::size_t row = 0; row < n; ++row) {
            const Elem f = a(row, col);
            if (row == col || f == Field::zero()) continue;
            for (std::size_t j = col; j < n; ++j) a(row, j) = F.sub(a(row, j), F.mul(f, a(col, j)));
            b[row] = F.sub(b[row], F.mul(f, b[col]));
        }
    }
    return b;
}

FqMatrix vandermonde(const Field& F, std::span<const Elem> x) {
    const std::size_t k = x.size();
    FqMatrix v(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        Elem p = Field::one();
        for (std::size_t j = 0; j < k; ++j) {
            v(i, j) = p;
            p = F.mul(p, x[i]);
        }
    }
    return v;
}

Elem elementary_symmetric(const Field& F, std::span<const Elem> x, std::size_t j) {
    if (j > x.size()) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "e_" + std::to_string(j) + " of " + std::to_string(x.size()) + " variables");
    }
    // e[m] after processing a prefix; standard one-pass recurrence.
    std::vector<Elem> e(j + 1, Field::zero());
    e[0] = Field::one();
    for (Elem xi : x) {
        for (std::size_t m = j; m >= 1; --m) e[m] = F.add(e[m], F.mul(xi, e[m - 1]));
    }
    return e[j];
}

bool check_sympoly_identity(const Field& F, std::span<const Elem> x, std::size_t i) {
    const std::size_t k = x.size();
    if (i < 1 || i > k) return false;
    const Elem xi = x[i - 1];
    Elem rhs = Field::zero();
    for (std::size_t j = 1; j <= k; ++j) {
        Elem term = F.mul(F.pow(xi, k - j), elementary_symmetric(F, x, j));
        if (j % 2 == 1) term = F.neg(term);
        rhs = F.add(rhs, term);
    }
    return F.pow(xi, k) == F.neg(rhs);
}

bool check_recurrence(const Field& F, std::span<const Elem> x, std::span<const Elem> y, std::size_t n_max) {
    const std::size_t k = x.size();
    const auto z = power_sums(F, x, y, n_max + k + 1);
    // a_j = -(-1)^{k-j} e_{k-j}
    std::vector<Elem> a(k);
    for (std::size_t j = 0; j < k; ++j) {
        const Elem e = elementary_symmetric(F, x, k - j);
        a[j] = (k - j) % 2 == 0 ? F.neg(e) : e;
    }
    for (std::size_t n = 0; n <= n_max; ++n) {
        Elem rhs = Field::zero();
        for (std::size_t j = 0; j < k; ++j) rhs = F.add(rhs, F.mul(a[j], z[n + j]));
        if (z[n + k] != rhs) return false;
    }
    return true;
}

HankelSystem HankelSystem::from_z(std::span<const Elem> z, std::size_t k) {
    if (z.size() < 2 * k) {
        throw Error(ErrorKind::LengthMismatch, "Hankel system of order " + std::to_string(k) + " needs " +
                                                   std::to_string(2 * k) + " entries of z");
    }
    HankelSystem h{k, FqMatrix(k, k), std::vector<Elem>(z.begin() + k, z.begin() + 2 * k)};
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) h.matrix(i, j) = z[i + j];
    }
    return h;
}

FqPolynomial RecurrenceCoeffs::characteristic_polynomial(const Field& F) const {
    std::vector<Elem> c(a.size() + 1);
    for (std::size_t j = 0; j < a.size(); ++j) c[j] = F.neg(a[j]);
    c.back() = Field::one();
    return FqPolynomial(std::move(c));
}

RecurrenceCoeffs char_poly_from_z(const Field& F, std::span<const Elem> z, std::size_t k) {
    const auto first = z.subspan(0, std::min(z.size(), 2 * k));
    if (std::all_of(first.begin(), first.end(), [](Elem e) { return e == Field::zero(); })) {
        throw Error(ErrorKind::SingularHankel, "z vanishes on the Hankel entries");
    }
    HankelSystem h = HankelSystem::from_z(z, k);
    auto a = solve_linear(F, std::move(h.matrix), std::move(h.rhs));
    if (!a) throw Error(ErrorKind::SingularHankel, "Hankel matrix is singular");
    return RecurrenceCoeffs{std::move(*a)};
}

PairXY invert_power_sums(const Field& F, std::span<const Elem> z, std::size_t k, RootStrategy strategy,
                         Rng& rng) {
    const RecurrenceCoeffs rc = char_poly_from_z(F, z, k);
    const auto roots = poly_roots(F, rc.characteristic_polynomial(F), strategy, rng);
    if (roots.size() != k ||
        std::any_of(roots.begin(), roots.end(), [](const Root& r) { return r.multiplicity != 1; })) {
        throw Error(ErrorKind::WrongRootCount, "characteristic polynomial does not split into " +
                                                   std::to_string(k) + " distinct linear factors");
    }
    PairXY pair;
    for (const Root& r : roots) pair.x.push_back(r.value);

    // V^T y = (z_0, ..., z_{k-1})
    const FqMatrix v = vandermonde(F, pair.x);
    FqMatrix vt(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) vt(i, j) = v(j, i);
    }
    auto y = solve_linear(F, std::move(vt), std::vector<Elem>(z.begin(), z.begin() + k));
    if (!y) throw Error(ErrorKind::WrongRootCount, "Vandermonde system is singular");
    if (std::find(y->begin(), y->end(), Field::zero()) != y->end()) {
        throw Error(ErrorKind::ZeroWeight, "recovered weight vector has a zero entry");
    }
    pair.y = std::move(*y);
    return pair;
}

namespace {

void require_univariate(const ProblemParams& params, std::span<const Elem> z) {
    params.validate(true);
    if (params.n != 1) throw Error(ErrorKind::InvalidParams, "inversion is univariate (n = 1)");
    if (z.size() != params.d + 1) {
        throw Error(ErrorKind::LengthMismatch,
                    "z has " + std::to_string(z.size()) + " entries, expected " + std::to_string(params.d + 1));
    }
    for (Elem e : z) {
        if (!params.field.contains(e)) throw Error(ErrorKind::FieldMismatch, "z entry outside the field");
    }
}

void require_extended_shape(const ProblemParams& params, std::span<const Elem> z) {
    require_univariate(params, z);
    if (params.d % 2 != 0 || params.k != params.d / 2 + 1) {
        throw Error(ErrorKind::InvalidParams, "extended inversion needs d even and k = d/2 + 1");
    }
}

}  // namespace

CanonicalPair invert_z(const ProblemParams& params, std::span<const Elem> z, Rng& rng, RootStrategy strategy) {
    require_univariate(params, z);
    if (params.d % 2 != 1 || params.k != (params.d + 1) / 2) {
        throw Error(ErrorKind::InvalidParams, "inversion needs d odd and k = (d+1)/2");
    }
    return CanonicalPair{invert_power_sums(params.field, z, params.k, strategy, rng), std::nullopt, 1};
}

CanonicalPair invert_z(const ProblemParams& params, std::span<const Elem> z) {
    Rng unused(0);
    return invert_z(params, z, unused, RootStrategy::exhaustive);
}

unsigned default_attempt_cap(unsigned k) {
    unsigned f = 1;
    for (unsigned i = 2; i <= k; ++i) f *= i;
    return 40 * f;
}

CanonicalPair invert_z_extended(const ProblemParams& params, std::span<const Elem> z, Rng& rng,
                                unsigned attempt_cap, RootStrategy strategy) {
    require_extended_shape(params, z);
    const Field& F = params.field;
    if (attempt_cap == 0) attempt_cap = default_attempt_cap(params.k);

    std::vector<Elem> extended(z.begin(), z.end());
    extended.push_back(Field::zero());
    std::uniform_int_distribution<std::uint32_t> draw(0, F.order() - 1);
    for (unsigned attempt = 1; attempt <= attempt_cap; ++attempt) {
        extended.back() = Elem{draw(rng)};
        try {
            return CanonicalPair{invert_power_sums(F, extended, params.k, strategy, rng), extended.back(), attempt};
        } catch (const Error& e) {
            if (!is_not_in_good_range(e.kind())) throw;
        }
    }
    throw Error(ErrorKind::AttemptsExhausted,
                "no z_{d+1} guess inverted after " + std::to_string(attempt_cap) + " attempts");
}

std::vector<CanonicalPair> valid_extensions(const ProblemParams& params, std::span<const Elem> z) {
    require_extended_shape(params, z);
    const Field& F = params.field;
    Rng unused(0);
    std::vector<CanonicalPair> out;
    std::vector<Elem> extended(z.begin(), z.end());
    extended.push_back(Field::zero());
    for (Elem guess : F.elements()) {
        extended.back() = guess;
        try {
            out.push_back(CanonicalPair{
                invert_power_sums(F, extended, params.k, RootStrategy::exhaustive, unused), guess, 1});
        } catch (const Error& e) {
            if (!is_not_in_good_range(e.kind())) throw;
        }
    }
    return out;
}

}  // namespace qinterp
