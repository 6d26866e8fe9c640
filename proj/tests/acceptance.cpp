// Acceptance gate: eight independent criteria, one verdict line each.
#include <chrono>
#include <cstdint>
#include <iostream>
#include <map>
#include <memory>
#include <vector>

#include "prismcalc/config.hpp"
#include "prismcalc/selftest.hpp"
#include "prismcalc/sen_ops.hpp"

using namespace prismcalc;

namespace {

struct Rng {
    std::uint64_t s;
    std::uint64_t next() {
        s += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    std::int64_t in_range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
};

std::shared_ptr<LocalField> random_field(Rng& rng, std::int64_t margin_degree,
                                         std::int64_t target_precision = 12) {
    const std::int64_t primes[] = {2, 3, 5};
    std::int64_t p = primes[rng.below(3)];
    std::int64_t e = rng.in_range(1, 3);
    std::vector<std::pair<BigInt, BigInt>> E;
    std::int64_t c0 = p * (1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(p - 1 > 0 ? p - 1 : 1))));
    while (c0 % (p * p) == 0) c0 += p;
    E.emplace_back(rng.below(2) ? c0 : -c0, 1);
    for (std::int64_t i = 1; i < e; ++i) E.emplace_back(p * rng.in_range(-2, 2), 1);
    E.emplace_back(1, 1);
    std::int64_t margin = e * vp_factorial(p, std::max<std::int64_t>(margin_degree, 8)) + 2;
    return std::make_shared<LocalField>(p, E, target_precision + margin);
}

KMatrix random_a1(const LocalField* f, std::int64_t d, Rng& rng) {
    std::vector<KElement> e;
    for (std::int64_t i = 0; i < d * d; ++i) {
        std::vector<std::pair<BigInt, BigInt>> pib;
        for (std::int64_t k = 0; k < f->ramification_index(); ++k)
            pib.emplace_back(rng.in_range(-9, 9), 1);
        e.push_back(f->from_pi_basis(pib));
    }
    return KMatrix(f, d, std::move(e));
}

// nearly-HT triangular matrix: diagonal -i*E'(pi) + m with m in the maximal ideal
KMatrix stratum_a_matrix(const LocalField* f, std::int64_t d, Rng& rng) {
    KMatrix a = KMatrix::zeros(f, d);
    for (std::int64_t i = 0; i < d; ++i) {
        std::int64_t cls = rng.in_range(0, f->prime() - 1);
        KElement m = f->pi() * f->from_integer(rng.in_range(0, 2));
        a = a.with_entry(i, i, -(f->from_integer(cls) * f->Eprime_pi()) + m);
        for (std::int64_t j = i + 1; j < d; ++j)
            a = a.with_entry(i, j, f->from_integer(rng.in_range(-3, 3)));
    }
    return a;
}

KMatrix stratum_b_matrix(const LocalField* f, std::int64_t d, Rng& rng) {
    KMatrix a = KMatrix::zeros(f, d);
    for (std::int64_t i = 0; i < d; ++i) {
        a = a.with_entry(i, i, f->from_rational(1 + static_cast<std::int64_t>(rng.below(3)),
                                                f->prime()));
        for (std::int64_t j = i + 1; j < d; ++j)
            a = a.with_entry(i, j, f->from_integer(rng.in_range(-3, 3)));
    }
    return a;
}

// e = 1 only: companion matrix of x^2 - s x - t, irreducible mod p
KMatrix stratum_c_matrix(const LocalField* f, Rng& rng) {
    const std::int64_t p = f->prime();
    for (;;) {
        std::int64_t s = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(p)));
        std::int64_t t = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(p)));
        bool has_root = false;
        for (std::int64_t x = 0; x < p; ++x)
            if ((x * x - s * x - t) % p == 0) has_root = true;
        if (has_root) continue;
        return KMatrix(f, 2, {f->zero(), f->from_integer(t), f->one(), f->from_integer(s)});
    }
}

// independent cofactor charpoly for d <= 3
KPoly cofactor_charpoly(const KMatrix& a) {
    const LocalField* f = &a.field();
    std::int64_t d = a.dim();
    std::vector<KPoly> m;
    for (std::int64_t i = 0; i < d; ++i)
        for (std::int64_t j = 0; j < d; ++j) {
            KPoly e{f, {-a.at(i, j)}};
            if (i == j) e.coeffs.push_back(f->one());
            m.push_back(e);
        }
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

BigInt binom_int(std::int64_t n, std::int64_t k) {
    BigInt r = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

int failures = 0;

void report(int idx, const char* what, bool ok, double secs) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << idx << ": " << what << " ("
              << secs << " s)\n";
    if (!ok) ++failures;
}

template <class F>
void criterion(int idx, const char* what, F body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception& e) {
        std::cout << "  exception: " << e.what() << "\n";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(idx, what, ok, secs);
}

} // namespace

int main() {
    criterion(1, "recursion matches binomial closed form to degree 8, 50 crystals", [] {
        Rng rng{101};
        for (int t = 0; t < 50; ++t) {
            auto f = random_field(rng, 8);
            std::int64_t d = rng.in_range(1, 3);
            HTCrystal c{f.get(), d, random_a1(f.get(), d, rng)};
            auto s = stratify(c, 8);
            auto b = binomial_series(c, 8);
            for (std::int64_t n = 0; n <= 8; ++n)
                if (!eq_tracked(s.a[n], b.a[n])) return false;
        }
        return true;
    });

    criterion(2, "cocycle holds at D=6; 20 unit perturbations fail with witness", [] {
        Rng rng{202};
        for (int t = 0; t < 20; ++t) {
            auto f = random_field(rng, 7);
            std::int64_t d = rng.in_range(1, 3);
            HTCrystal c{f.get(), d, random_a1(f.get(), d, rng)};
            auto s = stratify(c, 6);
            if (!cocycle_check(s).holds) return false;
            // perturb one coefficient of A_n (n >= 2) by a unit
            std::int64_t n = rng.in_range(2, 6);
            std::int64_t i = rng.in_range(0, d - 1), j = rng.in_range(0, d - 1);
            auto bad = s;
            bad.a[n] = bad.a[n].with_entry(i, j, bad.a[n].at(i, j) + f->one());
            auto r = cocycle_check(bad);
            if (r.holds || r.degree > n + 1) return false;
            if (!r.witness_diff.has_value()) return false;
            bool nonzero = false;
            for (const auto& x : r.witness_diff->entries())
                if (!x.is_zero_at_precision()) nonzero = true;
            if (!nonzero) return false;
        }
        return true;
    });

    criterion(3, "nearly-HT check agrees with the convergence oracle, 60+ triangular cases", [] {
        Rng rng{303};
        const Frac T(8);
        int cases = 0;
        while (cases < 66) {
            auto f = random_field(rng, 2);
            std::int64_t p = f->prime();
            int stratum = cases % 3;
            if (stratum == 2 && f->ramification_index() != 1) continue;
            std::int64_t d = stratum == 2 ? 2 : rng.in_range(1, 3);
            KMatrix a1 = stratum == 0   ? stratum_a_matrix(f.get(), d, rng)
                         : stratum == 1 ? stratum_b_matrix(f.get(), d, rng)
                                        : stratum_c_matrix(f.get(), rng);
            HTCrystal c{f.get(), d, a1};
            auto v = nearly_ht_check(c);
            auto o = convergence_oracle(c, T, 400);
            if (stratum == 0) {
                if (!v.nearly_ht) return false;
                if (o.kind != ConvergenceResult::Kind::ConvergedAt) return false;
                if (o.n > p * (d * 8 + d)) return false;
            } else {
                if (v.nearly_ht) return false;
                if (o.kind != ConvergenceResult::Kind::BoundedBelowEvidence) return false;
            }
            ++cases;
        }
        return true;
    });

    criterion(4, "Sen recovery from the tau cocycle; bivariate multiplicativity at D=6", [] {
        Rng rng{404};
        for (int t = 0; t < 12; ++t) {
            auto f = random_field(rng, 6, 14);
            std::int64_t d = rng.in_range(1, 3);
            HTCrystal c{f.get(), d, stratum_a_matrix(f.get(), d, rng)};
            KMatrix phi = c.a1 * (-(f->Eprime_pi().inv()));
            if (!eq_tracked(recover_sen(tau_cocycle(c, 6)), phi)) return false;

            // U(z1) U(z2) = U(z1 + z2 - z1 z2) to total degree 6
            const std::int64_t D = 6;
            auto u = tau_cocycle(c, D);
            using Key = std::array<std::int64_t, 2>;
            auto mul = [&](const std::map<Key, KMatrix>& a, const std::map<Key, KMatrix>& b) {
                std::map<Key, KMatrix> r;
                for (const auto& [ka, ca] : a)
                    for (const auto& [kb, cb] : b) {
                        Key k{ka[0] + kb[0], ka[1] + kb[1]};
                        if (k[0] + k[1] > D) continue;
                        KMatrix prod = ca * cb;
                        auto it = r.find(k);
                        if (it == r.end())
                            r.insert_or_assign(k, prod);
                        else
                            it->second = it->second + prod;
                    }
                return r;
            };
            std::map<Key, KMatrix> u1, u2;
            for (std::int64_t n = 0; n <= D; ++n) {
                u1.insert_or_assign(Key{n, 0}, u.m[n]);
                u2.insert_or_assign(Key{0, n}, u.m[n]);
            }
            auto lhs = mul(u1, u2);
            // rhs: substitute z = z1 + z2 - z1 z2
            auto id = KMatrix::identity(f.get(), d);
            std::map<Key, KMatrix> z{{Key{1, 0}, id}, {Key{0, 1}, id}, {Key{1, 1}, -id}};
            std::map<Key, KMatrix> rhs{{Key{0, 0}, u.m[0]}};
            std::map<Key, KMatrix> pw{{Key{0, 0}, id}};
            for (std::int64_t n = 1; n <= D; ++n) {
                pw = mul(pw, z);
                for (const auto& [k, cf] : pw) {
                    KMatrix term = u.m[n] * cf;
                    auto it = rhs.find(k);
                    if (it == rhs.end())
                        rhs.insert_or_assign(k, term);
                    else
                        it->second = it->second + term;
                }
            }
            for (std::int64_t i = 0; i <= D; ++i)
                for (std::int64_t j = 0; i + j <= D; ++j) {
                    Key k{i, j};
                    auto il = lhs.find(k), ir = rhs.find(k);
                    KMatrix cl = il == lhs.end() ? KMatrix::zeros(f.get(), d) : il->second;
                    KMatrix cr = ir == rhs.end() ? KMatrix::zeros(f.get(), d) : ir->second;
                    if (!eq_tracked(cl, cr)) return false;
                }
        }
        return true;
    });

    criterion(5, "integer twists preserve the verdict and shift residues/weights by k", [] {
        Rng rng{505};
        for (int t = 0; t < 20; ++t) {
            auto f = random_field(rng, 2);
            std::int64_t p = f->prime();
            std::int64_t d = rng.in_range(1, 3);
            bool good = rng.below(2) == 0;
            KMatrix a1 = good ? stratum_a_matrix(f.get(), d, rng)
                              : stratum_b_matrix(f.get(), d, rng);
            HTCrystal c{f.get(), d, a1};
            auto base = nearly_ht_check(c);
            KMatrix phi = c.a1 * (-(f->Eprime_pi().inv()));
            for (std::int64_t k = -2; k <= 2; ++k) {
                KMatrix twisted = a1 - (KMatrix::identity(f.get(), d) *
                                        (f->Eprime_pi() * f->from_integer(k)));
                HTCrystal ck{f.get(), d, twisted};
                auto v = nearly_ht_check(ck);
                if (v.nearly_ht != base.nearly_ht) return false;
                // Phi shifts by exactly k I
                KMatrix phik = ck.a1 * (-(f->Eprime_pi().inv()));
                if (!eq_tracked(phik, phi.shift(f->from_integer(k)))) return false;
                if (f->ramification_index() == 1 && base.nearly_ht) {
                    // residue classes shift by k mod p
                    std::map<std::int64_t, std::int64_t> want, got;
                    for (auto [i, m] : base.residue_classes)
                        want[(((i + k) % p) + p) % p] += m;
                    for (auto [i, m] : v.residue_classes) got[i] += m;
                    if (want != got) return false;
                }
            }
        }
        return true;
    });

    criterion(6, "theta normalization: Kummer closed form at N=12; valuation law, 20 fields", [] {
        for (std::int64_t p : {2, 3, 5}) {
            const std::int64_t N = 12;
            auto f = std::make_shared<LocalField>(
                p, std::vector<std::pair<BigInt, BigInt>>{{-p, 1}, {1, 1}}, N + 3);
            auto theta = theta_u_lambda_prime(*f, N);
            BigInt mod = big_pow(p, N);
            BigInt expect = 1;
            for (std::int64_t pn = p; pn - 1 < N; pn *= p)
                expect = expect * (1 - big_pow(p, pn - 1)) % mod;
            expect = (-expect % mod + mod) % mod;
            auto diff = theta - f->from_scalar(PadicScalar::from_integer(p, expect, N));
            if (diff.valuation_lower_bound() < Frac(N)) return false;
        }
        Rng rng{606};
        for (int t = 0; t < 20; ++t) {
            auto f = random_field(rng, 2);
            auto theta = theta_u_lambda_prime(*f, 8);
            Frac expect = Frac(1) + f->vpi_Eprime_pi() - Frac(f->ramification_index());
            if (theta.valuation() != expect) return false;
        }
        return true;
    });

    criterion(7, "infrastructure oracles: charpoly, valuation, pd binomial law", [] {
        Rng rng{707};
        for (int t = 0; t < 100; ++t) {
            auto f = random_field(rng, 2);
            std::int64_t d = rng.in_range(1, 3);
            KMatrix a = random_a1(f.get(), d, rng);
            KPoly bk = charpoly(a);
            KPoly co = cofactor_charpoly(a);
            if (bk.degree() != co.degree()) return false;
            for (std::int64_t i = 0; i <= bk.degree(); ++i)
                if (!eq_tracked(bk[i], co[i])) return false;
        }
        for (int t = 0; t < 100; ++t) {
            auto f = random_field(rng, 2);
            std::vector<std::pair<BigInt, BigInt>> ca, cb;
            for (std::int64_t i = 0; i < f->ramification_index(); ++i) {
                ca.emplace_back(rng.in_range(1, 9), 1);
                cb.emplace_back(rng.in_range(1, 9), 1);
            }
            auto a = f->from_pi_basis(ca);
            auto b = f->from_pi_basis(cb);
            if ((a * b).valuation() != a.valuation() + b.valuation()) return false;
        }
        {
            auto f = std::make_shared<LocalField>(
                2, std::vector<std::pair<BigInt, BigInt>>{{2, 1}, {1, 1}}, 24);
            for (std::int64_t a = 0; a <= 8; ++a)
                for (std::int64_t b = 0; a + b <= 8; ++b) {
                    PDSeries xa(f.get(), 1, 8, 1), xb(f.get(), 1, 8, 1);
                    xa.set_coeff({a, 0}, KMatrix(f.get(), 1, {f->one()}));
                    xb.set_coeff({b, 0}, KMatrix(f.get(), 1, {f->one()}));
                    auto prod = xa * xb;
                    auto expect = f->from_scalar(
                        PadicScalar::from_integer(2, binom_int(a + b, a), f->precision()));
                    if (!eq_tracked(prod.coeff({a + b, 0}).at(0, 0), expect)) return false;
                }
        }
        return true;
    });

    criterion(8, "selftest --count 50 deterministic and under 60 s", [] {
        SelftestOptions opts;
        opts.seed = 1;
        opts.count = 50;
        opts.parallel = false;
        auto t0 = std::chrono::steady_clock::now();
        auto a = run_selftest(opts);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        auto b = run_selftest(opts);
        opts.parallel = true;
        auto c = run_selftest(opts);
        return secs < 60.0 && a.failed == 0 && a.case_lines == b.case_lines &&
               a.case_lines == c.case_lines;
    });

    std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed\n"
                                : "ACCEPTANCE: FAILURES PRESENT\n");
    return failures == 0 ? 0 : 1;
}
