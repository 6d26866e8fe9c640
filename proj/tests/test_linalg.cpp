#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>

#include "prismcalc/linalg.hpp"

using namespace prismcalc;

namespace {

std::shared_ptr<LocalField> make_field(std::int64_t p, std::vector<std::int64_t> E,
                                       std::int64_t N) {
    std::vector<std::pair<BigInt, BigInt>> c;
    for (auto x : E) c.emplace_back(x, 1);
    return std::make_shared<LocalField>(p, c, N);
}

KMatrix random_matrix(const LocalField* f, std::int64_t d, std::mt19937_64& rng,
                      std::int64_t span = 9) {
    std::vector<KElement> e;
    for (std::int64_t i = 0; i < d * d; ++i)
        e.push_back(f->from_integer(static_cast<std::int64_t>(rng() % (2 * span + 1)) - span));
    return KMatrix(f, d, std::move(e));
}

// independent charpoly oracle: expand det(xI - A) by cofactors over KPoly
KPoly kpoly_scalar(const LocalField* f, const KElement& c) { return KPoly{f, {c}}; }

KPoly cofactor_charpoly(const KMatrix& a) {
    const LocalField* f = &a.field();
    std::int64_t d = a.dim();
    // entries of xI - A as degree <= 1 polynomials
    std::vector<KPoly> m;
    for (std::int64_t i = 0; i < d; ++i)
        for (std::int64_t j = 0; j < d; ++j) {
            KPoly e{f, {-a.at(i, j)}};
            if (i == j) e.coeffs.push_back(f->one());
            m.push_back(e);
        }
    // recursive Laplace expansion along the first row of the submatrix
    // selected by `rows` x `cols`
    struct Det {
        const LocalField* f;
        std::int64_t d;
        const std::vector<KPoly>& m;
        KPoly run(std::vector<std::int64_t> rows, std::vector<std::int64_t> cols) {
            if (rows.size() == 1) return m[rows[0] * d + cols[0]];
            KPoly acc{f, {f->zero()}};
            for (std::size_t j = 0; j < cols.size(); ++j) {
                std::vector<std::int64_t> r2(rows.begin() + 1, rows.end());
                std::vector<std::int64_t> c2;
                for (std::size_t t = 0; t < cols.size(); ++t)
                    if (t != j) c2.push_back(cols[t]);
                KPoly term = m[rows[0] * d + cols[j]] * run(r2, c2);
                if (j % 2 == 1)
                    for (auto& c : term.coeffs) c = -c;
                acc = acc + term;
            }
            return acc;
        }
    };
    std::vector<std::int64_t> idx(d);
    for (std::int64_t i = 0; i < d; ++i) idx[i] = i;
    return Det{f, d, m}.run(idx, idx);
}

bool poly_eq_tracked(const KPoly& a, const KPoly& b) {
    if (a.degree() != b.degree()) return false;
    for (std::int64_t i = 0; i <= a.degree(); ++i)
        if (!eq_tracked(a[i], b[i])) return false;
    return true;
}

} // namespace

TEST_CASE("Berkowitz charpoly equals the cofactor oracle") {
    auto f = make_field(3, {-3, 0, 1}, 14);
    std::mt19937_64 rng(23);
    for (std::int64_t d = 1; d <= 3; ++d)
        for (int t = 0; t < 20; ++t) {
            KMatrix a = random_matrix(f.get(), d, rng);
            CHECK(poly_eq_tracked(charpoly(a), cofactor_charpoly(a)));
        }
}

TEST_CASE("charpoly basics") {
    auto f = make_field(5, {-5, 1}, 12);
    auto id = KMatrix::identity(f.get(), 3);
    KPoly chi = charpoly(id);  // (x-1)^3 = x^3 - 3x^2 + 3x - 1
    REQUIRE(chi.degree() == 3);
    CHECK(eq_tracked(chi[0], f->from_integer(-1)));
    CHECK(eq_tracked(chi[1], f->from_integer(3)));
    CHECK(eq_tracked(chi[2], f->from_integer(-3)));
    CHECK(eq_tracked(chi[3], f->one()));

    KPoly chiz = charpoly(KMatrix::zeros(f.get(), 2));
    CHECK(chiz[0].is_exact_zero());
    CHECK(chiz[1].is_exact_zero());
}

TEST_CASE("shift law: charpoly(A + sI)(x) = charpoly(A)(x - s)") {
    auto f = make_field(2, {2, 1}, 16);
    std::mt19937_64 rng(31);
    KMatrix a = random_matrix(f.get(), 3, rng);
    KElement s = f->from_integer(3);
    KPoly lhs = charpoly(a.shift(s));
    KPoly rhs = charpoly(a);
    for (std::int64_t t = -2; t <= 2; ++t) {
        KElement x = f->from_integer(t);
        CHECK(eq_tracked(lhs.eval(x), rhs.eval(x - s)));
    }
}

TEST_CASE("conjugation invariance of charpoly") {
    auto f = make_field(5, {-5, 1}, 14);
    std::mt19937_64 rng(7);
    KMatrix a = random_matrix(f.get(), 3, rng);
    // S = I + 2 E_{01}: inverse is I - 2 E_{01}, exactly
    KMatrix s = KMatrix::identity(f.get(), 3).with_entry(0, 1, f->from_integer(2));
    KMatrix sinv = KMatrix::identity(f.get(), 3).with_entry(0, 1, f->from_integer(-2));
    CHECK(eq_tracked(s * sinv, KMatrix::identity(f.get(), 3)));
    CHECK(poly_eq_tracked(charpoly(s * a * sinv), charpoly(a)));
}

TEST_CASE("determinant is multiplicative") {
    auto f = make_field(3, {-3, 0, 1}, 16);
    std::mt19937_64 rng(13);
    for (int t = 0; t < 15; ++t) {
        KMatrix a = random_matrix(f.get(), 2, rng);
        KMatrix b = random_matrix(f.get(), 2, rng);
        CHECK(eq_tracked(det(a * b), det(a) * det(b)));
    }
    CHECK(eq_tracked(det(KMatrix::identity(f.get(), 3)), f->one()));
    // 2x2 closed form
    KMatrix m(f.get(), 2,
              {f->from_integer(2), f->from_integer(3), f->from_integer(4), f->from_integer(5)});
    CHECK(eq_tracked(det(m), f->from_integer(-2)));
}

TEST_CASE("min_entry_valuation semantics") {
    auto f = make_field(3, {-3, 0, 1}, 10);
    CHECK(min_entry_valuation(KMatrix::zeros(f.get(), 2)) == Frac::infinity());
    KMatrix m = KMatrix::zeros(f.get(), 2)
                    .with_entry(0, 0, f->pi().pow(3))
                    .with_entry(1, 1, f->from_integer(3));
    CHECK(min_entry_valuation(m) == Frac(2));  // v(3) = 2 < v(pi^3) = 3
}

TEST_CASE("Cayley-Hamilton at desk scale") {
    auto f = make_field(5, {-5, 1}, 14);
    std::mt19937_64 rng(41);
    KMatrix a = random_matrix(f.get(), 3, rng);
    KPoly chi = charpoly(a);
    KMatrix acc = KMatrix::zeros(f.get(), 3);
    KMatrix pw = KMatrix::identity(f.get(), 3);
    for (std::int64_t i = 0; i <= chi.degree(); ++i) {
        acc = acc + pw * chi[i];
        if (i < chi.degree()) pw = pw * a;
    }
    CHECK(eq_tracked(acc, KMatrix::zeros(f.get(), 3)));
}

TEST_CASE("shape mismatch rejected") {
    auto f = make_field(3, {-3, 0, 1}, 10);
    auto a = KMatrix::identity(f.get(), 2);
    auto b = KMatrix::identity(f.get(), 3);
    CHECK_THROWS_AS(a + b, ShapeMismatch);
    CHECK_THROWS_AS(a * b, ShapeMismatch);
}
