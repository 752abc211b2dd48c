#pragma once

#include <qinterp/error.hpp>

#include <complex>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace qinterp {

// An element of F_q, stored as its canonical index in [0, q).
//
// The index is the base-p positional encoding of the coefficient vector in the
// polynomial basis 1, w, w^2, ..., w^{r-1}: index = sum_i a_i p^i. Index 0 is
// zero and index 1 is one in every field; for prime fields the index is the
// residue itself. Ordering compares indices, which is the lexicographic order
// used to pick canonical representatives.
struct Elem {
    std::uint32_t v = 0;

    friend constexpr bool operator==(Elem, Elem) = default;
    friend constexpr auto operator<=>(Elem, Elem) = default;
};

struct FieldLimits {
    std::uint64_t max_order = std::uint64_t{1} << 16;
};

enum class ArithOp { add, sub, mul, div };

namespace detail {

struct FieldTables {
    std::uint32_t p = 0;
    std::uint32_t r = 0;
    std::uint32_t q = 0;
    std::vector<std::uint32_t> modulus;   // monic, low to high, length r + 1
    std::vector<std::uint16_t> add;       // q*q table, empty when q is large
    std::vector<std::uint32_t> neg;
    std::vector<std::uint32_t> log;       // log[0] unused
    std::vector<std::uint32_t> exp;       // length 2(q-1), exp[i] = g^i
    std::vector<std::uint32_t> trace;
    std::vector<std::complex<double>> roots_of_unity;  // e^{2 pi i t / p}
};

}  // namespace detail

// The finite field F_q, q = p^r, as an immutable shared context.
//
// Copies are cheap and share lookup tables, so a Field can be passed by value
// and handed to worker threads freely. Element operations take and return
// Elem and never validate their inputs; `arith` is the checked entry point.
class Field {
public:
    // Builds F_{p^r} with the lexicographically smallest monic irreducible
    // modulus of degree r. Throws NotPrime, DegreeZero or CapExceeded.
    Field(std::uint32_t p, std::uint32_t r, const FieldLimits& limits = {});

    // Builds the field of order q, which must be a prime power.
    static Field of_order(std::uint64_t q, const FieldLimits& limits = {});

    std::uint32_t characteristic() const noexcept { return t_->p; }
    std::uint32_t degree() const noexcept { return t_->r; }
    std::uint32_t order() const noexcept { return t_->q; }

    // Coefficients of the modulus, constant term first; the last entry is 1.
    const std::vector<std::uint32_t>& modulus() const noexcept { return t_->modulus; }

    static constexpr Elem zero() noexcept { return Elem{0}; }
    static constexpr Elem one() noexcept { return Elem{1}; }

    bool contains(Elem a) const noexcept { return a.v < t_->q; }

    // Checked conversion from a canonical index. Throws FieldMismatch.
    Elem element(std::uint64_t index) const;

    // Image of an integer in the prime subfield.
    Elem from_int(std::int64_t value) const noexcept;

    std::vector<Elem> elements() const;

    std::vector<std::uint32_t> coefficients(Elem a) const;
    Elem from_coefficients(std::span<const std::uint32_t> coeffs) const;

    Elem add(Elem a, Elem b) const noexcept {
        const auto& t = *t_;
        if (!t.add.empty()) return Elem{t.add[std::size_t{a.v} * t.q + b.v]};
        return add_digits(a, b);
    }
    Elem neg(Elem a) const noexcept { return Elem{t_->neg[a.v]}; }
    Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const noexcept {
        if (a.v == 0 || b.v == 0) return zero();
        const auto& t = *t_;
        return Elem{t.exp[t.log[a.v] + t.log[b.v]]};
    }

    // a^e by square-and-multiply; 0^0 = 1.
    Elem pow(Elem a, std::uint64_t e) const noexcept;

    // Multiplicative inverse as a^{q-2}. Throws DivideByZero for zero.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    // Checked arithmetic: validates that both operands belong to this field.
    Elem arith(Elem a, Elem b, ArithOp op) const;

    // Absolute trace Tr(a) = a + a^p + ... + a^{p^{r-1}}, as a residue in [0, p).
    std::uint32_t trace(Elem a) const noexcept { return t_->trace[a.v]; }

    // Additive character e(a) = exp(2 pi i Tr(a) / p).
    std::complex<double> character(Elem a) const noexcept {
        return t_->roots_of_unity[t_->trace[a.v]];
    }

    friend bool operator==(const Field& a, const Field& b) noexcept {
        return a.t_ == b.t_ || (a.t_->p == b.t_->p && a.t_->r == b.t_->r);
    }

private:
    Elem add_digits(Elem a, Elem b) const noexcept;

    std::shared_ptr<const detail::FieldTables> t_;
};

bool is_prime(std::uint64_t n) noexcept;

// Returns (p, r) with q = p^r, or (0, 0) when q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power_decomposition(std::uint64_t q) noexcept;

}  // namespace qinterp
