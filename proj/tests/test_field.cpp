#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qinterp/field.hpp>
#include <qinterp/polynomial.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace qinterp;

namespace {

// Residue-vector arithmetic over F_p written independently of Field, used as
// the extended-Euclid oracle for inverses.
using Res = std::vector<long>;

void trim(Res& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

long inv_mod(long a, long p) {
    long r = 1;
    for (long e = p - 2, b = a % p; e > 0; e >>= 1, b = b * b % p) {
        if (e & 1) r = r * b % p;
    }
    return r;
}

Res sub_scaled(Res a, const Res& b, long c, std::size_t shift, long p) {
    if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = ((a[i + shift] - c * b[i]) % p + p) % p;
    trim(a);
    return a;
}

Res mul_res(const Res& a, const Res& b, long p) {
    if (a.empty() || b.empty()) return {};
    Res out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    trim(out);
    return out;
}

Res mod_res(Res a, const Res& m, long p) {
    const long li = inv_mod(m.back(), p);
    while (a.size() >= m.size()) {
        const long c = a.back() * li % p;
        a = sub_scaled(a, m, c, a.size() - m.size(), p);
    }
    return a;
}

// s with s*a = 1 mod modulus, by the extended Euclidean algorithm.
Res euclid_inverse(Res a, const Res& modulus, long p) {
    Res r0 = modulus, r1 = a, s0{}, s1{1};
    while (!r1.empty()) {
        Res q{}, r = r0;
        const long li = inv_mod(r1.back(), p);
        while (r.size() >= r1.size()) {
            const long c = r.back() * li % p;
            const std::size_t shift = r.size() - r1.size();
            if (q.size() < shift + 1) q.resize(shift + 1, 0);
            q[shift] = c;
            r = sub_scaled(r, r1, c, shift, p);
        }
        trim(q);
        Res s2 = s0;
        const Res qs = mul_res(q, s1, p);
        if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
        for (std::size_t i = 0; i < qs.size(); ++i) s2[i] = ((s2[i] - qs[i]) % p + p) % p;
        trim(s2);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    // r0 is a nonzero constant.
    const long c = inv_mod(r0[0], p);
    for (auto& v : s0) v = v * c % p;
    return mod_res(s0, modulus, p);
}

Res to_res(const Field& F, Elem a) {
    Res out;
    for (auto c : F.coefficients(a)) out.push_back(c);
    trim(out);
    return out;
}

const std::vector<std::pair<std::uint32_t, std::uint32_t>> kFields = {
    {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {2, 4},
    {5, 2}, {3, 3}, {7, 2}, {11, 2}, {2, 10}, {3, 7},
};

}  // namespace

TEST_CASE("field construction") {
    SUBCASE("prime field has modulus X") {
        Field F(5, 1);
        CHECK(F.order() == 5);
        CHECK(F.modulus() == std::vector<std::uint32_t>{0, 1});
    }
    SUBCASE("F_4 modulus is X^2+X+1, the only irreducible monic quadratic") {
        // Oracle: a monic quadratic over F_2 is irreducible iff it has no root.
        std::vector<std::vector<std::uint32_t>> irreducible;
        for (std::uint32_t c0 = 0; c0 < 2; ++c0)
            for (std::uint32_t c1 = 0; c1 < 2; ++c1) {
                bool has_root = false;
                for (std::uint32_t x = 0; x < 2; ++x) has_root |= (x * x + c1 * x + c0) % 2 == 0;
                if (!has_root) irreducible.push_back({c0, c1, 1});
            }
        REQUIRE(irreducible.size() == 1);
        CHECK(Field(2, 2).modulus() == irreducible.front());
    }
    SUBCASE("smallest irreducible moduli of a few extensions") {
        CHECK(Field(2, 3).modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});
        CHECK(Field(3, 2).modulus() == std::vector<std::uint32_t>{1, 0, 1});
        CHECK(Field(5, 2).modulus() == std::vector<std::uint32_t>{2, 0, 1});
        CHECK(Field(3, 3).modulus() == std::vector<std::uint32_t>{1, 2, 0, 1});
        CHECK(Field(7, 2).modulus() == std::vector<std::uint32_t>{1, 0, 1});
    }
    SUBCASE("errors") {
        auto kind_of = [](auto&& fn) {
            try {
                fn();
            } catch (const Error& e) {
                return e.kind();
            }
            FAIL("no error raised");
            return ErrorKind::InvalidParams;
        };
        CHECK(kind_of([] { Field(4, 1); }) == ErrorKind::NotPrime);
        CHECK(kind_of([] { Field(1, 1); }) == ErrorKind::NotPrime);
        CHECK(kind_of([] { Field(5, 0); }) == ErrorKind::DegreeZero);
        CHECK(kind_of([] { Field(2, 20); }) == ErrorKind::CapExceeded);
        CHECK(kind_of([] { Field(3, 3, FieldLimits{.max_order = 20}); }) == ErrorKind::CapExceeded);
        CHECK(kind_of([] { Field::of_order(12); }) == ErrorKind::NotPrime);
    }
    SUBCASE("of_order decomposes prime powers") {
        CHECK(Field::of_order(49).characteristic() == 7);
        CHECK(Field::of_order(49).degree() == 2);
        CHECK(Field::of_order(27).degree() == 3);
        CHECK(Field::of_order(31).degree() == 1);
    }
    SUBCASE("enumeration starts with 0 and 1 and is exhaustive") {
        for (auto [p, r] : kFields) {
            Field F(p, r);
            auto els = F.elements();
            CHECK(els.size() == F.order());
            CHECK(els[0] == Field::zero());
            CHECK(els[1] == Field::one());
            CHECK(std::set<Elem>(els.begin(), els.end()).size() == F.order());
        }
    }
}

TEST_CASE("field arithmetic examples") {
    Field F5(5, 1);
    CHECK(F5.mul(Elem{3}, Elem{4}) == Elem{2});
    CHECK(F5.arith(Elem{3}, Elem{4}, ArithOp::mul) == Elem{2});
    CHECK_THROWS_AS(F5.arith(Elem{2}, Elem{0}, ArithOp::div), Error);
    try {
        F5.arith(Elem{2}, Elem{0}, ArithOp::div);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DivideByZero);
    }
    try {
        F5.arith(Elem{2}, Elem{7}, ArithOp::add);
        FAIL("expected FieldMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::FieldMismatch);
    }

    Field F4(2, 2);
    const Elem w{2};  // class of X
    CHECK(F4.mul(w, w) == F4.add(w, Field::one()));
    CHECK(F4.coefficients(F4.mul(w, w)) == std::vector<std::uint32_t>{1, 1});
}

TEST_CASE("trace and character examples") {
    Field F5(5, 1);
    CHECK(F5.trace(Elem{3}) == 3);
    CHECK(F5.trace(Field::zero()) == 0);

    Field F4(2, 2);
    CHECK(F4.trace(Elem{2}) == 1);
    CHECK(F4.character(Elem{2}) == std::complex<double>(-1.0, 0.0));
    CHECK(F4.character(Field::zero()) == std::complex<double>(1.0, 0.0));

    std::complex<double> sum = 0;
    for (auto z : F5.elements()) sum += F5.character(F5.mul(z, Elem{2}));
    CHECK(std::abs(sum) < 1e-12);
}

TEST_CASE("inverse agrees with extended Euclid") {
    for (auto [p, r] : kFields) {
        Field F(p, r);
        Res modulus(F.modulus().begin(), F.modulus().end());
        const std::uint32_t step = F.order() > 200 ? F.order() / 97 : 1;
        for (std::uint32_t a = 1; a < F.order(); a += step) {
            const Res expected = euclid_inverse(to_res(F, Elem{a}), modulus, p);
            CHECK(to_res(F, F.inv(Elem{a})) == expected);
        }
    }
}

TEST_CASE("field axioms, Frobenius, trace linearity and orthogonality") {
    Rng rng(20260419);
    for (auto [p, r] : kFields) {
        Field F(p, r);
        CAPTURE(F.order());
        std::uniform_int_distribution<std::uint32_t> any(0, F.order() - 1);
        for (int trial = 0; trial < 2000; ++trial) {
            const Elem a{any(rng)}, b{any(rng)}, c{any(rng)};
            REQUIRE(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
            REQUIRE(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
            REQUIRE(F.add(a, b) == F.add(b, a));
            REQUIRE(F.mul(a, b) == F.mul(b, a));
            REQUIRE(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
            REQUIRE(F.add(a, Field::zero()) == a);
            REQUIRE(F.mul(a, Field::one()) == a);
            REQUIRE(F.add(a, F.neg(a)) == Field::zero());
            if (a != Field::zero()) REQUIRE(F.mul(a, F.inv(a)) == Field::one());
            REQUIRE(F.pow(F.add(a, b), p) == F.add(F.pow(a, p), F.pow(b, p)));
            REQUIRE(F.trace(F.add(a, b)) == (F.trace(a) + F.trace(b)) % p);
            const std::uint32_t lambda = any(rng) % p;
            REQUIRE(F.trace(F.mul(F.from_int(lambda), a)) == (lambda * F.trace(a)) % p);
            REQUIRE(F.trace(F.pow(a, p)) == F.trace(a));
            REQUIRE(F.trace(a) < p);
            REQUIRE(std::abs(F.character(F.add(a, b)) - F.character(a) * F.character(b)) < 1e-12);
            REQUIRE(std::abs(std::abs(F.character(a)) - 1.0) < 1e-12);
        }
        if (F.order() <= 256) {
            for (auto v : F.elements()) {
                std::complex<double> sum = 0;
                for (auto z : F.elements()) sum += F.character(F.mul(z, v));
                const double expected = v == Field::zero() ? F.order() : 0.0;
                REQUIRE(std::abs(sum - expected) < 1e-9 * F.order());
            }
        }
    }
}

TEST_CASE("polynomial root finding examples") {
    Rng rng(7);
    Field F5(5, 1);
    FqPolynomial chi({Elem{2}, Elem{2}, Elem{1}});  // X^2 + 2X + 2
    for (auto strategy : {RootStrategy::exhaustive, RootStrategy::randomized}) {
        auto roots = poly_roots(F5, chi, strategy, rng);
        CHECK(roots == std::vector<Root>{{Elem{1}, 1}, {Elem{2}, 1}});
        roots = poly_roots(F5, FqPolynomial({Elem{1}, Elem{0}, Elem{1}}), strategy, rng);
        CHECK(roots == std::vector<Root>{{Elem{2}, 1}, {Elem{3}, 1}});
        CHECK(poly_roots(Field(3, 1), FqPolynomial({Elem{1}, Elem{0}, Elem{1}}), strategy, rng).empty());
        // (X-1)^3 (X-4)
        FqPolynomial f = poly::mul(F5, poly::mul(F5, FqPolynomial::linear_factor(F5, Elem{1}),
                                                 FqPolynomial::linear_factor(F5, Elem{1})),
                                   poly::mul(F5, FqPolynomial::linear_factor(F5, Elem{1}),
                                             FqPolynomial::linear_factor(F5, Elem{4})));
        CHECK(poly_roots(F5, f, strategy, rng) == std::vector<Root>{{Elem{1}, 3}, {Elem{4}, 1}});
    }
    try {
        poly_roots(F5, FqPolynomial::constant(Elem{3}), RootStrategy::randomized, rng);
        FAIL("expected EmptyPolynomial");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptyPolynomial);
    }
}

TEST_CASE("randomized and exhaustive root finding agree") {
    Rng rng(99);
    for (auto [p, r] : kFields) {
        Field F(p, r);
        if (F.order() > 256) continue;
        CAPTURE(F.order());
        std::uniform_int_distribution<std::uint32_t> any(0, F.order() - 1);
        std::uniform_int_distribution<int> deg(1, 8);
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<Elem> coeffs;
            const int n = deg(rng);
            // Half the cases are built from chosen roots so that splitting is exercised.
            FqPolynomial f;
            if (trial % 2 == 0) {
                f = FqPolynomial::constant(Elem{1 + any(rng) % (F.order() - 1)});
                for (int i = 0; i < n; ++i) f = poly::mul(F, f, FqPolynomial::linear_factor(F, Elem{any(rng)}));
            } else {
                for (int i = 0; i < n; ++i) coeffs.push_back(Elem{any(rng)});
                coeffs.push_back(Elem{1 + any(rng) % (F.order() - 1)});
                f = FqPolynomial(coeffs);
            }
            const auto a = poly_roots(F, f, RootStrategy::exhaustive, rng);
            const auto b = poly_roots(F, f, RootStrategy::randomized, rng);
            REQUIRE(a == b);
            for (const auto& root : a) REQUIRE(poly::eval(F, f, root.value) == Field::zero());
        }
    }
}

TEST_CASE("polynomial division and gcd") {
    Field F(7, 1);
    Rng rng(3);
    std::uniform_int_distribution<std::uint32_t> any(0, 6);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Elem> ac(6), bc(3);
        for (auto& c : ac) c = Elem{any(rng)};
        for (auto& c : bc) c = Elem{any(rng)};
        FqPolynomial a(ac), b(bc);
        if (b.is_zero()) continue;
        auto [q, r] = poly::divmod(F, a, b);
        CHECK(r.degree() < b.degree());
        CHECK(poly::add(F, poly::mul(F, q, b), r) == a);
        const auto g = poly::gcd(F, poly::mul(F, a, b), b);
        CHECK(g == poly::make_monic(F, b));
    }
}
