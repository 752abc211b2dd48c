#include <qinterp/polynomial.hpp>

#include <algorithm>

namespace qinterp {

FqPolynomial::FqPolynomial(std::vector<Elem> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

FqPolynomial FqPolynomial::monomial(Elem c, std::size_t degree) {
    std::vector<Elem> coeffs(degree + 1, Field::zero());
    coeffs[degree] = c;
    return FqPolynomial(std::move(coeffs));
}

FqPolynomial FqPolynomial::linear_factor(const Field& field, Elem a) {
    return FqPolynomial({field.neg(a), Field::one()});
}

void FqPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == Field::zero()) coeffs_.pop_back();
}

namespace poly {

FqPolynomial add(const Field& F, const FqPolynomial& a, const FqPolynomial& b) {
    const std::size_t n = std::max(a.coefficients().size(), b.coefficients().size());
    std::vector<Elem> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = F.add(a.coefficient(i), b.coefficient(i));
    return FqPolynomial(std::move(out));
}

FqPolynomial sub(const Field& F, const FqPolynomial& a, const FqPolynomial& b) {
    const std::size_t n = std::max(a.coefficients().size(), b.coefficients().size());
    std::vector<Elem> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = F.sub(a.coefficient(i), b.coefficient(i));
    return FqPolynomial(std::move(out));
}

FqPolynomial mul(const Field& F, const FqPolynomial& a, const FqPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const auto& ac = a.coefficients();
    const auto& bc = b.coefficients();
    std::vector<Elem> out(ac.size() + bc.size() - 1, Field::zero());
    for (std::size_t i = 0; i < ac.size(); ++i) {
        if (ac[i] == Field::zero()) continue;
        for (std::size_t j = 0; j < bc.size(); ++j) out[i + j] = F.add(out[i + j], F.mul(ac[i], bc[j]));
    }
    return FqPolynomial(std::move(out));
}

FqPolynomial scale(const Field& F, const FqPolynomial& a, Elem s) {
    std::vector<Elem> out = a.coefficients();
    for (auto& c : out) c = F.mul(c, s);
    return FqPolynomial(std::move(out));
}

std::pair<FqPolynomial, FqPolynomial> divmod(const Field& F, const FqPolynomial& a,
                                             const FqPolynomial& b) {
    if (b.is_zero()) throw Error(ErrorKind::DivideByZero, "polynomial division by zero");
    if (a.degree() < b.degree()) return {FqPolynomial{}, a};
    std::vector<Elem> rem = a.coefficients();
    const auto& bc = b.coefficients();
    const std::size_t db = bc.size() - 1;
    const Elem lead_inv = F.inv(b.leading());
    std::vector<Elem> quot(rem.size() - db, Field::zero());
    for (std::size_t deg = rem.size(); deg-- > db;) {
        const Elem c = F.mul(rem[deg], lead_inv);
        quot[deg - db] = c;
        if (c != Field::zero()) {
            for (std::size_t i = 0; i <= db; ++i) {
                rem[deg - db + i] = F.sub(rem[deg - db + i], F.mul(c, bc[i]));
            }
        }
    }
    return {FqPolynomial(std::move(quot)), FqPolynomial(std::move(rem))};
}

FqPolynomial mod(const Field& F, const FqPolynomial& a, const FqPolynomial& b) {
    return divmod(F, a, b).second;
}

FqPolynomial make_monic(const Field& F, const FqPolynomial& a) {
    if (a.is_zero() || a.is_monic()) return a;
    return scale(F, a, F.inv(a.leading()));
}

FqPolynomial gcd(const Field& F, FqPolynomial a, FqPolynomial b) {
    while (!b.is_zero()) {
        FqPolynomial r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(F, a);
}

FqPolynomial powmod(const Field& F, const FqPolynomial& base, std::uint64_t e,
                    const FqPolynomial& m) {
    FqPolynomial result = mod(F, FqPolynomial::constant(Field::one()), m);
    FqPolynomial b = mod(F, base, m);
    while (e > 0) {
        if (e & 1) result = mod(F, mul(F, result, b), m);
        e >>= 1;
        if (e > 0) b = mod(F, mul(F, b, b), m);
    }
    return result;
}

Elem eval(const Field& F, const FqPolynomial& f, Elem x) noexcept {
    const auto& c = f.coefficients();
    Elem acc = Field::zero();
    for (std::size_t i = c.size(); i-- > 0;) acc = F.add(F.mul(acc, x), c[i]);
    return acc;
}

}  // namespace poly

namespace {

unsigned multiplicity(const Field& F, FqPolynomial f, Elem a) {
    const FqPolynomial factor = FqPolynomial::linear_factor(F, a);
    unsigned m = 0;
    while (f.degree() >= 1) {
        auto [quot, rem] = poly::divmod(F, f, factor);
        if (!rem.is_zero()) break;
        f = std::move(quot);
        ++m;
    }
    return m;
}

std::vector<Elem> scan_roots(const Field& F, const FqPolynomial& f) {
    std::vector<Elem> roots;
    for (std::uint32_t i = 0; i < F.order(); ++i) {
        if (poly::eval(F, f, Elem{i}) == Field::zero()) roots.push_back(Elem{i});
    }
    return roots;
}

// Splitting polynomial whose roots are a random half of the field: the
// quadratic-character test (X + s)^{(q-1)/2} - 1 in odd characteristic, and the
// absolute trace Tr(sX) in characteristic two.
FqPolynomial splitter(const Field& F, const FqPolynomial& g, Rng& rng) {
    std::uniform_int_distribution<std::uint32_t> pick(1, F.order() - 1);
    const Elem s{pick(rng)};
    if (F.characteristic() == 2) {
        FqPolynomial term = poly::mod(F, FqPolynomial({Field::zero(), s}), g);
        FqPolynomial acc = term;
        for (std::uint32_t i = 1; i < F.degree(); ++i) {
            term = poly::mod(F, poly::mul(F, term, term), g);
            acc = poly::add(F, acc, term);
        }
        return acc;
    }
    const FqPolynomial shifted({s, Field::one()});
    FqPolynomial h = poly::powmod(F, shifted, (std::uint64_t{F.order()} - 1) / 2, g);
    return poly::sub(F, h, FqPolynomial::constant(Field::one()));
}

// Separates the distinct linear factors of a squarefree, fully split g.
void split_linear(const Field& F, const FqPolynomial& g, Rng& rng, unsigned& attempts_left,
                  std::vector<Elem>& out) {
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        out.push_back(F.neg(F.div(g.coefficient(0), g.leading())));
        return;
    }
    while (attempts_left > 0) {
        --attempts_left;
        const FqPolynomial h = poly::gcd(F, g, splitter(F, g, rng));
        if (h.degree() > 0 && h.degree() < g.degree()) {
            split_linear(F, h, rng, attempts_left, out);
            split_linear(F, poly::divmod(F, g, h).first, rng, attempts_left, out);
            return;
        }
    }
    const auto roots = scan_roots(F, g);
    out.insert(out.end(), roots.begin(), roots.end());
}

}  // namespace

std::vector<Root> poly_roots(const Field& F, const FqPolynomial& f, RootStrategy strategy, Rng& rng) {
    if (f.degree() < 1) throw Error(ErrorKind::EmptyPolynomial, "root finding needs degree >= 1");

    std::vector<Elem> distinct;
    if (strategy == RootStrategy::exhaustive) {
        distinct = scan_roots(F, f);
    } else {
        const FqPolynomial monic = poly::make_monic(F, f);
        const FqPolynomial x = FqPolynomial::monomial(Field::one(), 1);
        const FqPolynomial xq = poly::powmod(F, x, F.order(), monic);
        const FqPolynomial split_part = poly::gcd(F, monic, poly::sub(F, xq, x));
        unsigned attempts_left = 8u * static_cast<unsigned>(f.degree());
        split_linear(F, split_part, rng, attempts_left, distinct);
        std::sort(distinct.begin(), distinct.end());
    }

    std::vector<Root> roots;
    roots.reserve(distinct.size());
    for (Elem a : distinct) roots.push_back(Root{a, multiplicity(F, f, a)});
    return roots;
}

}  // namespace qinterp
