#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qinterp/prony.hpp>

#include <algorithm>
#include <numeric>
#include <set>

using namespace qinterp;

namespace {

ProblemParams make(std::uint64_t q, unsigned d, unsigned k) { return ProblemParams{Field::of_order(q), d, k, 1}; }

std::vector<Elem> elems(std::initializer_list<std::uint32_t> v) {
    std::vector<Elem> out;
    for (auto x : v) out.push_back(Elem{x});
    return out;
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::ShapeMismatch;
}

PairXY sorted_pair(PairXY p) {
    std::vector<std::size_t> order(p.x.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return p.x[a] < p.x[b]; });
    PairXY out;
    for (auto i : order) {
        out.x.push_back(p.x[i]);
        out.y.push_back(p.y[i]);
    }
    return out;
}

PairXY random_good_pair(const Field& F, unsigned k, Rng& rng) {
    std::uniform_int_distribution<std::uint32_t> any(0, F.order() - 1), nonzero(1, F.order() - 1);
    std::set<std::uint32_t> xs;
    while (xs.size() < k) xs.insert(any(rng));
    PairXY p;
    for (auto v : xs) p.x.push_back(Elem{v});
    for (unsigned i = 0; i < k; ++i) p.y.push_back(Elem{nonzero(rng)});
    std::shuffle(p.x.begin(), p.x.end(), rng);
    return p;
}

// Coefficients of prod_i (X - x_i), expanded by hand, low degree first.
std::vector<Elem> product_of_linear_factors(const Field& F, std::span<const Elem> x) {
    std::vector<Elem> c{Field::one()};
    for (Elem r : x) {
        std::vector<Elem> next(c.size() + 1, Field::zero());
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] = F.add(next[i + 1], c[i]);
            next[i] = F.sub(next[i], F.mul(r, c[i]));
        }
        c = std::move(next);
    }
    return c;
}

}  // namespace

TEST_CASE("elementary symmetric polynomials") {
    const Field F(5, 1);
    CHECK(elementary_symmetric(F, elems({1, 2}), 0) == Elem{1});
    CHECK(elementary_symmetric(F, elems({1, 2}), 1) == Elem{3});
    CHECK(elementary_symmetric(F, elems({1, 2}), 2) == Elem{2});
    CHECK(elementary_symmetric(F, elems({2, 3}), 1) == Elem{0});
    CHECK(elementary_symmetric(F, elems({2, 3}), 2) == Elem{1});
    CHECK(elementary_symmetric(F, {}, 0) == Elem{1});
    CHECK(kind_of([&] { elementary_symmetric(F, elems({1, 2}), 3); }) == ErrorKind::IndexOutOfRange);

    // Against the expanded product: prod (X - x_i) = sum_j (-1)^j e_j X^{k-j}.
    Rng rng(3);
    for (auto [p, r] : std::vector<std::pair<unsigned, unsigned>>{{7, 1}, {3, 2}, {2, 3}}) {
        const Field G(p, r);
        for (int t = 0; t < 100; ++t) {
            auto x = random_good_pair(G, 4, rng).x;
            auto c = product_of_linear_factors(G, x);
            for (std::size_t j = 0; j <= 4; ++j) {
                Elem e = elementary_symmetric(G, x, j);
                if (j % 2) e = G.neg(e);
                CHECK(c[4 - j] == e);
            }
        }
    }
}

TEST_CASE("symmetric polynomial identity and recurrence") {
    const Field F5(5, 1);
    CHECK(check_sympoly_identity(F5, elems({2, 3}), 1));
    CHECK(check_sympoly_identity(F5, elems({2, 3}), 2));
    CHECK(check_sympoly_identity(F5, elems({4}), 1));
    CHECK(check_recurrence(F5, elems({1, 2}), elems({1, 1}), 6));
    CHECK(check_recurrence(F5, elems({1, 2}), elems({0, 0}), 6));
    CHECK(power_sums(F5, elems({1, 2}), elems({1, 1}), 5)[4] == Elem{2});

    Rng rng(9);
    for (auto q : {7u, 9u, 16u}) {
        const Field F = Field::of_order(q);
        for (int t = 0; t < 200; ++t) {
            const auto p = random_good_pair(F, 3, rng);
            for (std::size_t i = 1; i <= 3; ++i) REQUIRE(check_sympoly_identity(F, p.x, i));
            REQUIRE(check_recurrence(F, p.x, p.y, 10));
        }
    }
    // A wrong weight pattern still obeys the recurrence: it depends only on x.
    CHECK(check_recurrence(Field(7, 1), elems({1, 1, 3}), elems({2, 5, 6}), 10));
}

TEST_CASE("Hankel solve") {
    const Field F(5, 1);
    const auto z = elems({2, 3, 0, 4});
    const auto h = HankelSystem::from_z(z, 2);
    FqMatrix expected(2, 2);
    expected.data = elems({2, 3, 3, 0});
    CHECK(h.matrix == expected);
    CHECK(h.rhs == elems({0, 4}));

    const auto rc = char_poly_from_z(F, z, 2);
    CHECK(rc.a == elems({3, 3}));
    // chi = X^2 + 2X + 2
    CHECK(rc.characteristic_polynomial(F).coefficients() == elems({2, 2, 1}));
    CHECK(kind_of([&] { char_poly_from_z(F, elems({0, 0, 0, 0}), 2); }) == ErrorKind::SingularHankel);
    CHECK(kind_of([&] { char_poly_from_z(F, elems({1, 1, 1, 1}), 2); }) == ErrorKind::SingularHankel);
    CHECK(kind_of([&] { HankelSystem::from_z(elems({1, 2, 3}), 2); }) == ErrorKind::LengthMismatch);
}

TEST_CASE("invert_z worked example and rejections") {
    auto P = make(5, 3, 2);
    const auto got = invert_z(P, elems({2, 3, 0, 4}));
    CHECK(got.pair.x == elems({1, 2}));
    CHECK(got.pair.y == elems({1, 1}));
    CHECK_FALSE(got.extension.has_value());

    CHECK(kind_of([&] { invert_z(P, elems({0, 0, 0, 0})); }) == ErrorKind::SingularHankel);
    CHECK(kind_of([&] { invert_z(P, elems({1, 2, 3})); }) == ErrorKind::LengthMismatch);
    CHECK(kind_of([&] { invert_z(make(5, 2, 2), elems({1, 2, 3})); }) == ErrorKind::InvalidParams);
    CHECK(kind_of([&] { invert_z(P, elems({1, 2, 3, 9})); }) == ErrorKind::FieldMismatch);

    // Every z outside the good range is rejected with one of the three kinds.
    auto census = enumerate_census(P);
    std::size_t rejected = 0;
    for (std::uint64_t zi = 0; zi < census.cells(); ++zi) {
        if (census.fiber_good[zi] != 0) continue;
        const auto z = tuple_from_index(P.field, zi, 4);
        REQUIRE(is_not_in_good_range(kind_of([&] { invert_z(P, z); })));
        ++rejected;
    }
    CHECK(rejected == 625 - 160);
}

TEST_CASE("exhaustive round trip at k = (d+1)/2") {
    for (auto [q, d] : std::vector<std::pair<unsigned, unsigned>>{
             {5, 3}, {7, 3}, {4, 3}, {8, 3}, {9, 3}, {11, 3}, {13, 3}, {7, 5}, {8, 5}}) {
        auto P = make(q, d, (d + 1) / 2);
        CAPTURE(q);
        CAPTURE(d);
        const Field& F = P.field;
        const unsigned k = P.k;
        const std::uint64_t x_count = checked_power(q, k);
        std::size_t checked = 0;
        Rng rng(q * 31 + d);
        for (std::uint64_t xi = 0; xi < x_count; ++xi) {
            const auto x = tuple_from_index(F, xi, k);
            if (!is_good_x(x)) continue;
            // y: all nonzero tuples for k = 2, a random sample of them for k = 3
            const std::uint64_t y_count = checked_power(q - 1, k);
            const std::uint64_t y_step = k == 2 ? 1 : std::max<std::uint64_t>(1, y_count / 20);
            for (std::uint64_t yi = 0; yi < y_count; yi += y_step) {
                PairXY pair{x, {}};
                for (std::uint64_t rest = yi, i = 0; i < k; ++i, rest /= (q - 1)) {
                    pair.y.push_back(Elem{static_cast<std::uint32_t>(rest % (q - 1) + 1)});
                }
                const auto z = z_eval(P, pair);
                const auto got = invert_z(P, z, rng);
                REQUIRE(got.pair == sorted_pair(pair));
                ++checked;
            }
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("randomized round trip at larger q") {
    for (unsigned q : {25u, 27u, 49u}) {
        auto P = make(q, 3, 2);
        Rng rng(q);
        for (int t = 0; t < 10000; ++t) {
            const auto pair = random_good_pair(P.field, 2, rng);
            REQUIRE(invert_z(P, z_eval(P, pair), rng).pair == sorted_pair(pair));
        }
    }
    auto P = make(31, 5, 3);
    Rng rng(1);
    for (int t = 0; t < 2000; ++t) {
        const auto pair = random_good_pair(P.field, 3, rng);
        REQUIRE(invert_z(P, z_eval(P, pair), rng).pair == sorted_pair(pair));
    }
}

TEST_CASE("factorization, coefficient consistency and the root set") {
    Rng rng(21);
    for (auto [q, d] : std::vector<std::pair<unsigned, unsigned>>{{11, 3}, {9, 5}, {16, 5}, {13, 7}}) {
        auto P = make(q, d, (d + 1) / 2);
        const Field& F = P.field;
        const unsigned k = P.k;
        for (int t = 0; t < 200; ++t) {
            const auto z = z_eval(P, random_good_pair(F, k, rng));
            const auto got = invert_z(P, z, rng).pair;

            // H = V^T diag(y) V
            const auto h = HankelSystem::from_z(z, k);
            const auto v = vandermonde(F, got.x);
            FqMatrix prod(k, k);
            for (unsigned i = 0; i < k; ++i) {
                for (unsigned j = 0; j < k; ++j) {
                    Elem s = Field::zero();
                    for (unsigned l = 0; l < k; ++l) s = F.add(s, F.mul(F.mul(v(l, i), got.y[l]), v(l, j)));
                    prod(i, j) = s;
                }
            }
            REQUIRE(prod == h.matrix);

            // a_j = -(-1)^{k-j} e_{k-j}(x)
            const auto rc = char_poly_from_z(F, z, k);
            for (unsigned j = 0; j < k; ++j) {
                Elem e = elementary_symmetric(F, got.x, k - j);
                if ((k - j) % 2 == 0) e = F.neg(e);
                REQUIRE(rc.a[j] == e);
            }

            // The roots of chi are exactly the recovered points.
            const auto chi = rc.characteristic_polynomial(F);
            std::vector<Elem> roots;
            for (Elem a : F.elements()) {
                if (poly::eval(F, chi, a) == Field::zero()) roots.push_back(a);
            }
            REQUIRE(roots == got.x);
        }
    }
}

TEST_CASE("extended inversion at k = d/2 + 1") {
    SUBCASE("worked example over F_7") {
        auto P = make(7, 2, 2);
        const auto z = z_eval(P, PairXY{elems({1, 2}), elems({1, 1})});
        CHECK(z == elems({2, 3, 5}));
        Rng rng(4);
        for (int t = 0; t < 50; ++t) {
            const auto got = invert_z_extended(P, z, rng);
            REQUIRE(got.extension.has_value());
            REQUIRE(got.attempts >= 1);
            REQUIRE(is_good_x(got.pair.x));
            REQUIRE(is_good_y(got.pair.y));
            REQUIRE(std::is_sorted(got.pair.x.begin(), got.pair.x.end()));
            REQUIRE(z_eval(P, got.pair) == z);
            const auto sums = power_sums(P.field, got.pair.x, got.pair.y, 4);
            REQUIRE(sums[3] == *got.extension);
        }
        const auto ext = valid_extensions(P, z);
        const bool has_example = std::any_of(ext.begin(), ext.end(), [](const CanonicalPair& c) {
            return c.extension == Elem{2} && c.pair.x == elems({1, 2});
        });
        CHECK(has_example);
    }
    SUBCASE("extension count equals good fiber over k!") {
        for (auto [q, d, kfact] : std::vector<std::array<unsigned, 3>>{{7, 2, 2}, {9, 2, 2}, {11, 2, 2}, {7, 4, 6}}) {
            auto P = make(q, d, d / 2 + 1);
            auto census = enumerate_census(P);
            for (std::uint64_t zi = 0; zi < census.cells(); ++zi) {
                const auto z = tuple_from_index(P.field, zi, d + 1);
                const auto ext = valid_extensions(P, z);
                REQUIRE(ext.size() * kfact == census.fiber_good[zi]);
                for (const auto& c : ext) REQUIRE(z_eval(P, c.pair) == z);
            }
        }
    }
    SUBCASE("empty good fiber exhausts the attempts") {
        auto P = make(7, 2, 2);
        auto census = enumerate_census(P);
        Rng rng(8);
        std::size_t tried = 0;
        for (std::uint64_t zi = 0; zi < census.cells() && tried < 10; ++zi) {
            if (census.fiber_good[zi] != 0) continue;
            const auto z = tuple_from_index(P.field, zi, 3);
            CHECK(kind_of([&] { invert_z_extended(P, z, rng, 30); }) == ErrorKind::AttemptsExhausted);
            ++tried;
        }
        CHECK(tried == 10);
    }
    SUBCASE("parameter checks") {
        Rng rng(0);
        CHECK(kind_of([&] { invert_z_extended(make(7, 3, 2), elems({1, 2, 3, 4}), rng); }) ==
              ErrorKind::InvalidParams);
        CHECK(default_attempt_cap(2) == 80);
        CHECK(default_attempt_cap(3) == 240);
    }
}
