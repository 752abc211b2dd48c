#pragma once

#include <qinterp/field.hpp>

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace qinterp {

using Rng = std::mt19937_64;

// Univariate polynomial over F_q with coefficients stored constant term first.
// The representation is always trimmed: the leading coefficient is nonzero
// unless the polynomial is zero, in which case the coefficient list is empty.
class FqPolynomial {
public:
    FqPolynomial() = default;
    explicit FqPolynomial(std::vector<Elem> coeffs);

    static FqPolynomial constant(Elem c) { return FqPolynomial({c}); }
    static FqPolynomial monomial(Elem c, std::size_t degree);
    // X - a
    static FqPolynomial linear_factor(const Field& field, Elem a);

    bool is_zero() const noexcept { return coeffs_.empty(); }
    // Degree, or -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == Field::one(); }

    Elem leading() const noexcept { return coeffs_.empty() ? Field::zero() : coeffs_.back(); }
    Elem coefficient(std::size_t i) const noexcept {
        return i < coeffs_.size() ? coeffs_[i] : Field::zero();
    }
    const std::vector<Elem>& coefficients() const noexcept { return coeffs_; }

    friend bool operator==(const FqPolynomial&, const FqPolynomial&) = default;

private:
    void trim();

    std::vector<Elem> coeffs_;
};

namespace poly {

FqPolynomial add(const Field& F, const FqPolynomial& a, const FqPolynomial& b);
FqPolynomial sub(const Field& F, const FqPolynomial& a, const FqPolynomial& b);
FqPolynomial mul(const Field& F, const FqPolynomial& a, const FqPolynomial& b);
FqPolynomial scale(const Field& F, const FqPolynomial& a, Elem s);

// Quotient and remainder. Throws DivideByZero when b is zero.
std::pair<FqPolynomial, FqPolynomial> divmod(const Field& F, const FqPolynomial& a,
                                             const FqPolynomial& b);
FqPolynomial mod(const Field& F, const FqPolynomial& a, const FqPolynomial& b);

FqPolynomial make_monic(const Field& F, const FqPolynomial& a);

// Monic gcd; gcd(0, 0) = 0.
FqPolynomial gcd(const Field& F, FqPolynomial a, FqPolynomial b);

// base^e mod m by square-and-multiply.
FqPolynomial powmod(const Field& F, const FqPolynomial& base, std::uint64_t e,
                    const FqPolynomial& m);

Elem eval(const Field& F, const FqPolynomial& f, Elem x) noexcept;

}  // namespace poly

enum class RootStrategy { exhaustive, randomized };

struct Root {
    Elem value;
    unsigned multiplicity = 1;

    friend bool operator==(const Root&, const Root&) = default;
};

// All roots of f in F_q with multiplicities, sorted by canonical index.
//
// `exhaustive` evaluates f at every element. `randomized` isolates the split
// part gcd(f, X^q - X) and separates its linear factors by Cantor-Zassenhaus
// style equal-degree splitting with random shifts; after 8*deg f failed
// splitting attempts it falls back to scanning the split part exhaustively.
// Throws EmptyPolynomial when deg f < 1.
std::vector<Root> poly_roots(const Field& F, const FqPolynomial& f, RootStrategy strategy,
                             Rng& rng);

}  // namespace qinterp
