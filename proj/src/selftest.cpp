#include "prismcalc/selftest.hpp"

#include <algorithm>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "prismcalc/config.hpp"
#include "prismcalc/errors.hpp"
#include "prismcalc/sen_ops.hpp"

namespace prismcalc {

namespace {

// deterministic generator, platform-independent
struct Rng {
    std::uint64_t state;
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    std::int64_t below(std::int64_t n) { return static_cast<std::int64_t>(next() % n); }
    std::int64_t in_range(std::int64_t lo, std::int64_t hi) { return lo + below(hi - lo + 1); }
};

struct Rational {
    BigInt num;
    BigInt den = 1;
    Rational plus(const Rational& o) const { return {num * o.den + o.num * den, den * o.den}; }
    Rational times_int(std::int64_t c) const { return {num * c, den}; }
};

// an A1 entry as pi-basis rationals, so the generated config reparses verbatim
using Entry = std::vector<Rational>;

Entry entry_zero(std::int64_t e) { return Entry(e, Rational{0, 1}); }

Entry entry_add(const Entry& a, const Entry& b) {
    Entry r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i].plus(b[i]);
    return r;
}

Entry entry_scale(const Entry& a, std::int64_t c) {
    Entry r = a;
    for (auto& x : r) x = x.times_int(c);
    return r;
}

using EntryMatrix = std::vector<std::vector<Entry>>;

// conjugation by the exact shear S = I + c E_{uv}:
// A' = A + c E_uv A - c A E_uv - c^2 A[v][u] E_uv
EntryMatrix shear_conjugate(const EntryMatrix& a, std::int64_t u, std::int64_t v,
                            std::int64_t c) {
    std::int64_t d = static_cast<std::int64_t>(a.size());
    EntryMatrix r = a;
    for (std::int64_t j = 0; j < d; ++j)
        r[u][j] = entry_add(r[u][j], entry_scale(a[v][j], c));
    for (std::int64_t i = 0; i < d; ++i)
        r[i][v] = entry_add(r[i][v], entry_scale(a[i][u], -c));
    r[u][v] = entry_add(r[u][v], entry_scale(a[v][u], -c * c));
    return r;
}

struct GeneratedCase {
    CrystalConfig cfg;
    char stratum;
};

GeneratedCase generate_case(Rng& rng, char stratum, std::int64_t precision,
                            std::int64_t degree) {
    static const std::int64_t primes[] = {2, 3, 5};
    GeneratedCase g;
    g.stratum = stratum;
    CrystalConfig& cfg = g.cfg;
    cfg.p = primes[rng.below(3)];
    cfg.precision = precision;
    cfg.degree = degree;
    const std::int64_t p = cfg.p;
    std::int64_t e = (stratum == 'c') ? 1 : 1 + rng.below(3);
    std::int64_t d = (stratum == 'c') ? 2 : 1 + rng.below(3);

    // random Eisenstein E: c_0 = +-p*unit, middle coefficients p*t
    std::int64_t unit = 1 + rng.below(std::max<std::int64_t>(p - 1, 1));
    std::int64_t sign = rng.below(2) ? 1 : -1;
    cfg.E.push_back({BigInt(sign * unit * p), 1});
    for (std::int64_t i = 1; i < e; ++i) cfg.E.push_back({BigInt(p * rng.in_range(-2, 2)), 1});
    cfg.E.push_back({1, 1});

    EntryMatrix a(d, std::vector<Entry>(d, entry_zero(e)));
    if (stratum == 'a') {
        for (std::int64_t k = 0; k < d; ++k) {
            Entry diag = entry_zero(e);
            if (e == 1) {
                // -i + p*t  (E'(pi) = 1 when e = 1)
                std::int64_t i = rng.below(p);
                diag[0] = Rational{BigInt(-i + p * rng.in_range(-2, 2)), 1};
            } else {
                // any element of the maximal ideal
                diag[0] = Rational{BigInt(p * rng.in_range(-2, 2)), 1};
                diag[1] = Rational{BigInt(rng.in_range(-2, 2)), 1};
                if (diag[0].num == 0 && diag[1].num == 0) diag[1] = Rational{1, 1};
            }
            a[k][k] = diag;
            for (std::int64_t j = k + 1; j < d; ++j)
                a[k][j][0] = Rational{BigInt(rng.in_range(-2, 2)), 1};
        }
    } else if (stratum == 'b') {
        // every eigenvalue of negative valuation: diagonal entries unit/p
        for (std::int64_t k = 0; k < d; ++k) {
            std::int64_t s = (1 + rng.below(std::max<std::int64_t>(p - 1, 1))) *
                             (rng.below(2) ? 1 : -1);
            a[k][k][0] = Rational{BigInt(s), BigInt(p)};
            for (std::int64_t j = k + 1; j < d; ++j)
                a[k][j][0] = Rational{BigInt(rng.in_range(-2, 2)), 1};
        }
    } else {
        // companion matrix of x^2 - s x - t with irreducible residue over F_p
        std::int64_t s, t;
        for (;;) {
            s = rng.below(p);
            t = rng.below(p);
            bool has_root = false;
            for (std::int64_t x = 0; x < p; ++x)
                if (((x * x - s * x - t) % p + p) % p == 0) {
                    has_root = true;
                    break;
                }
            if (!has_root) break;
        }
        a[0][0][0] = Rational{0, 1};
        a[0][1][0] = Rational{BigInt(t), 1};
        a[1][0][0] = Rational{1, 1};
        a[1][1][0] = Rational{BigInt(s), 1};
    }

    // one or two exact shear conjugations
    std::int64_t shears = d > 1 ? 1 + rng.below(2) : 0;
    for (std::int64_t k = 0; k < shears; ++k) {
        std::int64_t u = rng.below(d);
        std::int64_t v = rng.below(d);
        if (u == v) continue;
        a = shear_conjugate(a, u, v, rng.in_range(1, 2));
    }

    cfg.has_a1 = true;
    for (std::int64_t i = 0; i < d; ++i) {
        std::vector<std::vector<RationalLit>> row;
        for (std::int64_t j = 0; j < d; ++j) {
            std::vector<RationalLit> entry;
            for (const auto& r : a[i][j]) entry.push_back({r.num, r.den});
            row.push_back(std::move(entry));
        }
        cfg.a1.push_back(std::move(row));
    }
    return g;
}

bool strat_eq(const StratificationSeries& x, const StratificationSeries& y) {
    if (x.degree != y.degree) return false;
    for (std::int64_t n = 0; n <= x.degree; ++n)
        if (!eq_tracked(x.a[n], y.a[n])) return false;
    return true;
}

struct CaseOutcome {
    bool pass = true;
    std::string line;
};

CaseOutcome run_case(const GeneratedCase& g, Rng& rng) {
    const CrystalConfig& cfg = g.cfg;
    CrystalInstance inst = build_instance(cfg);
    const HTCrystal& c = *inst.crystal;
    const LocalField* f = inst.field.get();
    const std::int64_t D = std::max<std::int64_t>(cfg.degree, 3);
    const std::int64_t p = f->prime();
    const std::int64_t d = c.rank;

    bool agreement, cocycle_ok, verdict_ok, sen_ok, twist_ok;

    StratificationSeries strat = stratify(c, D);
    agreement = strat_eq(strat, binomial_series(c, D));

    {
        CocycleResult ok = cocycle_check(strat);
        cocycle_ok = ok.holds;
        // a unit perturbation of A_n (n >= 2) must fail at total degree <= n+1;
        // n = 1 is excluded: changing A_1 alone can land on another crystal's
        // valid stratification
        std::int64_t n = 2 + rng.below(D - 2);
        std::int64_t i = rng.below(d), j = rng.below(d);
        StratificationSeries bad = strat;
        bad.a[n] = bad.a[n].with_entry(i, j, bad.a[n].at(i, j) + f->one());
        CocycleResult fail = cocycle_check(bad);
        cocycle_ok = cocycle_ok && !fail.holds && fail.degree <= n + 1;
    }

    {
        NhtVerdict v = nearly_ht_check(c);
        ConvergenceResult o = convergence_oracle(c, Frac(8), 400);
        if (g.stratum == 'a') {
            verdict_ok = v.nearly_ht && o.kind == ConvergenceResult::Kind::ConvergedAt &&
                         o.n <= p * (d * 8 + d);
        } else {
            verdict_ok = !v.nearly_ht && o.kind == ConvergenceResult::Kind::BoundedBelowEvidence;
        }
    }

    {
        SenData sd = sen_from_crystal(c);
        sen_ok = eq_tracked(recover_sen(tau_cocycle(c, D)), sd.phi);
    }

    {
        twist_ok = true;
        NhtVerdict base = nearly_ht_check(c);
        KMatrix phi = c.a1 * (-(f->Eprime_pi().inv()));
        for (std::int64_t k = -2; k <= 2; ++k) {
            KMatrix a1t = c.a1.shift(-(f->Eprime_pi() * f->from_integer(k)));
            HTCrystal ct{f, d, a1t};
            NhtVerdict vt = nearly_ht_check(ct);
            if (vt.nearly_ht != base.nearly_ht) twist_ok = false;
            if (f->ramification_index() == 1 && base.nearly_ht) {
                auto shifted = base.residue_classes;
                for (auto& [i, m] : shifted) i = ((i + k) % p + p) % p;
                std::sort(shifted.begin(), shifted.end());
                auto got = vt.residue_classes;
                std::sort(got.begin(), got.end());
                if (shifted != got) twist_ok = false;
            }
            KMatrix phit = a1t * (-(f->Eprime_pi().inv()));
            if (!eq_tracked(phit, phi.shift(f->from_integer(k)))) twist_ok = false;
        }
    }

    CaseOutcome out;
    out.pass = agreement && cocycle_ok && verdict_ok && sen_ok && twist_ok;
    std::ostringstream os;
    os << "stratum=" << g.stratum << " p=" << p << " e=" << f->ramification_index() << " d=" << d
       << " agreement=" << (agreement ? "ok" : "FAIL")
       << " cocycle=" << (cocycle_ok ? "ok" : "FAIL")
       << " verdict=" << (verdict_ok ? "ok" : "FAIL") << " sen=" << (sen_ok ? "ok" : "FAIL")
       << " twist=" << (twist_ok ? "ok" : "FAIL");
    out.line = os.str();
    return out;
}

} // namespace

SelftestResult run_selftest(const SelftestOptions& options) {
    std::vector<char> enabled;
    for (char s : options.strata)
        if (s == 'a' || s == 'b' || s == 'c') enabled.push_back(s);
    if (enabled.empty()) enabled = {'a', 'b', 'c'};

    const std::int64_t n = options.count;
    std::vector<CaseOutcome> outcomes(n);
    std::vector<std::string> configs(n);

    auto run_one = [&](std::int64_t idx) {
        Rng rng{options.seed * 0x2545F4914F6CDD1DULL + static_cast<std::uint64_t>(idx)};
        char stratum = enabled[idx % enabled.size()];
        GeneratedCase g = generate_case(rng, stratum, options.precision, options.degree);
        configs[idx] = emit_config(g.cfg) + "# stratum " + stratum + "\n";
        try {
            outcomes[idx] = run_case(g, rng);
        } catch (const std::exception& ex) {
            outcomes[idx] = {false, std::string("stratum=") + stratum + " exception=" + ex.what()};
        }
    };

    if (options.parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < n; ++i) run_one(i);
    } else {
        for (std::int64_t i = 0; i < n; ++i) run_one(i);
    }

    SelftestResult result;
    for (std::int64_t i = 0; i < n; ++i) {
        std::ostringstream os;
        os << "case " << i << ": " << outcomes[i].line << (outcomes[i].pass ? " PASS" : " FAIL");
        result.case_lines.push_back(os.str());
        if (outcomes[i].pass) {
            ++result.passed;
        } else {
            ++result.failed;
            if (result.first_counterexample.empty()) result.first_counterexample = configs[i];
        }
    }
    return result;
}

} // namespace prismcalc
