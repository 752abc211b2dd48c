#include <qinterp/field.hpp>
#include <qinterp/polynomial.hpp>

#include <cassert>
#include <cmath>
#include <numbers>
#include <string>

namespace qinterp {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotPrime: return "NotPrime";
        case ErrorKind::DegreeZero: return "DegreeZero";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::DivideByZero: return "DivideByZero";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::EmptyPolynomial: return "EmptyPolynomial";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::InsufficientSamples: return "InsufficientSamples";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::SingularHankel: return "SingularHankel";
        case ErrorKind::WrongRootCount: return "WrongRootCount";
        case ErrorKind::ZeroWeight: return "ZeroWeight";
        case ErrorKind::AttemptsExhausted: return "AttemptsExhausted";
        case ErrorKind::BadRegisterIndex: return "BadRegisterIndex";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    }
    return "Unknown";
}

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

std::pair<std::uint32_t, std::uint32_t> prime_power_decomposition(std::uint64_t q) noexcept {
    if (q < 2) return {0, 0};
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = q;
    std::uint32_t r = 0;
    while (q % p == 0) {
        q /= p;
        ++r;
    }
    if (q != 1 || p > UINT32_MAX) return {0, 0};
    return {static_cast<std::uint32_t>(p), r};
}

namespace {

constexpr std::uint64_t kAddTableMaxOrder = 1024;
// Lookup tables are indexed by 32-bit values; this bounds q independently of
// the user-configurable limit.
constexpr std::uint64_t kHardMaxOrder = std::uint64_t{1} << 24;

using Digits = std::vector<std::uint32_t>;

Digits to_digits(std::uint32_t index, std::uint32_t p, std::uint32_t r) {
    Digits d(r);
    for (std::uint32_t i = 0; i < r; ++i) {
        d[i] = index % p;
        index /= p;
    }
    return d;
}

std::uint32_t from_digits(const Digits& d, std::uint32_t p) {
    std::uint32_t index = 0;
    for (std::size_t i = d.size(); i-- > 0;) index = index * p + d[i];
    return index;
}

// Product of two residue vectors reduced modulo the monic modulus. Only used
// while building the log tables.
Digits mul_mod(const Digits& a, const Digits& b, const Digits& modulus, std::uint32_t p) {
    const std::size_t r = a.size();
    std::vector<std::uint64_t> prod(2 * r - 1, 0);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
    }
    for (std::size_t deg = prod.size(); deg-- > r;) {
        const std::uint64_t c = prod[deg];
        if (c == 0) continue;
        for (std::size_t i = 0; i <= r; ++i) {
            const std::size_t pos = deg - r + i;
            prod[pos] = (prod[pos] + (p - c) * modulus[i]) % p;
        }
    }
    Digits out(r);
    for (std::size_t i = 0; i < r; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return out;
}

bool is_irreducible(const Field& Fp, const FqPolynomial& f) {
    const int r = f.degree();
    if (r <= 1) return r == 1;
    if (f.coefficient(0) == Field::zero()) return false;
    // A reducible f has an irreducible factor of degree i <= r/2, which divides
    // X^{p^i} - X.
    const FqPolynomial x = FqPolynomial::monomial(Field::one(), 1);
    FqPolynomial h = x;
    for (int i = 1; i <= r / 2; ++i) {
        h = poly::powmod(Fp, h, Fp.characteristic(), f);
        if (poly::gcd(Fp, f, poly::sub(Fp, h, x)).degree() > 0) return false;
    }
    return true;
}

Digits smallest_irreducible(std::uint32_t p, std::uint32_t r) {
    if (r == 1) return {0, 1};
    const Field Fp(p, 1);
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < r; ++i) count *= p;
    // Candidates ordered by the integer sum_i c_i p^i of their lower
    // coefficients, i.e. lexicographically from the X^{r-1} coefficient down.
    for (std::uint64_t m = 0; m < count; ++m) {
        Digits d = to_digits(static_cast<std::uint32_t>(m), p, r);
        std::vector<Elem> coeffs;
        coeffs.reserve(r + 1);
        for (auto c : d) coeffs.push_back(Elem{c});
        coeffs.push_back(Field::one());
        if (is_irreducible(Fp, FqPolynomial(std::move(coeffs)))) {
            d.push_back(1);
            return d;
        }
    }
    // Irreducible polynomials exist in every degree.
    assert(false);
    return {};
}

}  // namespace

Field::Field(std::uint32_t p, std::uint32_t r, const FieldLimits& limits) {
    if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    if (r == 0) throw Error(ErrorKind::DegreeZero, "extension degree must be at least 1");
    const std::uint64_t cap = std::min(limits.max_order, kHardMaxOrder);
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
        q *= p;
        if (q > cap) {
            throw Error(ErrorKind::CapExceeded, std::to_string(p) + "^" + std::to_string(r) +
                                                    " exceeds the field order cap " +
                                                    std::to_string(cap));
        }
    }

    auto t = std::make_shared<detail::FieldTables>();
    t->p = p;
    t->r = r;
    t->q = static_cast<std::uint32_t>(q);
    t->modulus = smallest_irreducible(p, r);

    t->neg.resize(q);
    for (std::uint32_t a = 0; a < q; ++a) {
        Digits d = to_digits(a, p, r);
        for (auto& x : d) x = (p - x) % p;
        t->neg[a] = from_digits(d, p);
    }

    // Find the primitive element of smallest index and tabulate its powers.
    t->exp.assign(2 * (q - 1), 0);
    t->log.assign(q, 0);
    for (std::uint32_t g = 1; g < q; ++g) {
        const Digits gd = to_digits(g, p, r);
        Digits cur = to_digits(1, p, r);
        bool primitive = true;
        for (std::uint64_t i = 0; i < q - 1; ++i) {
            const std::uint32_t idx = from_digits(cur, p);
            if (i > 0 && idx == 1) {
                primitive = false;
                break;
            }
            t->exp[i] = idx;
            cur = mul_mod(cur, gd, t->modulus, p);
        }
        if (primitive) break;
    }
    for (std::uint64_t i = 0; i < q - 1; ++i) {
        t->exp[i + q - 1] = t->exp[i];
        t->log[t->exp[i]] = static_cast<std::uint32_t>(i);
    }

    t->roots_of_unity.resize(p);
    for (std::uint32_t j = 0; j < p; ++j) {
        const double angle = 2.0 * std::numbers::pi * j / p;
        t->roots_of_unity[j] = {std::cos(angle), std::sin(angle)};
    }
    // Exact values where they are known avoid rounding noise in sums.
    t->roots_of_unity[0] = {1.0, 0.0};
    if (p == 2) t->roots_of_unity[1] = {-1.0, 0.0};

    t_ = t;
    if (q <= kAddTableMaxOrder) {
        t->add.resize(q * q);
        for (std::uint32_t a = 0; a < q; ++a) {
            for (std::uint32_t b = 0; b < q; ++b) {
                t->add[std::size_t{a} * q + b] = static_cast<std::uint16_t>(add_digits(Elem{a}, Elem{b}).v);
            }
        }
    }

    t->trace.resize(q);
    for (std::uint32_t a = 0; a < q; ++a) {
        Elem acc = zero();
        Elem term{a};
        for (std::uint32_t i = 0; i < r; ++i) {
            acc = add(acc, term);
            term = pow(term, p);
        }
        assert(acc.v < p);
        t->trace[a] = acc.v;
    }
}

Field Field::of_order(std::uint64_t q, const FieldLimits& limits) {
    const auto [p, r] = prime_power_decomposition(q);
    if (p == 0) throw Error(ErrorKind::NotPrime, std::to_string(q) + " is not a prime power");
    return Field(p, r, limits);
}

Elem Field::element(std::uint64_t index) const {
    if (index >= t_->q) {
        throw Error(ErrorKind::FieldMismatch, "index " + std::to_string(index) +
                                                  " is not an element of a field of order " +
                                                  std::to_string(t_->q));
    }
    return Elem{static_cast<std::uint32_t>(index)};
}

Elem Field::from_int(std::int64_t value) const noexcept {
    const std::int64_t p = t_->p;
    return Elem{static_cast<std::uint32_t>(((value % p) + p) % p)};
}

std::vector<Elem> Field::elements() const {
    std::vector<Elem> out(t_->q);
    for (std::uint32_t i = 0; i < t_->q; ++i) out[i] = Elem{i};
    return out;
}

std::vector<std::uint32_t> Field::coefficients(Elem a) const { return to_digits(a.v, t_->p, t_->r); }

Elem Field::from_coefficients(std::span<const std::uint32_t> coeffs) const {
    if (coeffs.size() != t_->r) {
        throw Error(ErrorKind::LengthMismatch, "expected " + std::to_string(t_->r) + " coefficients");
    }
    std::uint32_t index = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] >= t_->p) throw Error(ErrorKind::FieldMismatch, "coefficient out of range");
        index = index * t_->p + coeffs[i];
    }
    return Elem{index};
}

Elem Field::add_digits(Elem a, Elem b) const noexcept {
    const std::uint32_t p = t_->p;
    std::uint32_t x = a.v, y = b.v, out = 0, place = 1;
    for (std::uint32_t i = 0; i < t_->r; ++i) {
        out += ((x % p + y % p) % p) * place;
        x /= p;
        y /= p;
        place *= p;
    }
    return Elem{out};
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
    Elem result = one();
    Elem base = a;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

Elem Field::inv(Elem a) const {
    if (a == zero()) throw Error(ErrorKind::DivideByZero, "inverse of zero");
    return pow(a, std::uint64_t{t_->q} - 2);
}

Elem Field::arith(Elem a, Elem b, ArithOp op) const {
    if (!contains(a) || !contains(b)) {
        throw Error(ErrorKind::FieldMismatch, "operand is not an element of F_" + std::to_string(t_->q));
    }
    switch (op) {
        case ArithOp::add: return add(a, b);
        case ArithOp::sub: return sub(a, b);
        case ArithOp::mul: return mul(a, b);
        case ArithOp::div: return div(a, b);
    }
    return zero();
}

}  // namespace qinterp
