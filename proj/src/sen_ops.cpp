#include "prismcalc/sen_ops.hpp"

#include "prismcalc/errors.hpp"

namespace prismcalc {

FormalMatrixSeries FormalMatrixSeries::operator*(const FormalMatrixSeries& o) const {
    if (field != o.field || degree != o.degree || rank != o.rank)
        throw ShapeMismatch("formal series shape mismatch");
    FormalMatrixSeries r{field, rank, degree, {}};
    r.m.reserve(degree + 1);
    for (std::int64_t n = 0; n <= degree; ++n) {
        KMatrix s = KMatrix::zeros(field, rank);
        for (std::int64_t k = 0; k <= n; ++k) s = s + m[k] * o.m[n - k];
        r.m.push_back(s);
    }
    return r;
}

FormalMatrixSeries FormalMatrixSeries::operator-(const FormalMatrixSeries& o) const {
    if (field != o.field || degree != o.degree || rank != o.rank)
        throw ShapeMismatch("formal series shape mismatch");
    FormalMatrixSeries r{field, rank, degree, {}};
    for (std::int64_t n = 0; n <= degree; ++n) r.m.push_back(m[n] - o.m[n]);
    return r;
}

bool eq_tracked(const FormalMatrixSeries& a, const FormalMatrixSeries& b) {
    FormalMatrixSeries d = a - b;
    for (const auto& c : d.m)
        for (const auto& x : c.entries())
            if (!x.is_zero_at_precision()) return false;
    return true;
}

// Smallest positive root valuation of f, bounded from below using only the
// coefficients' valuation lower bounds. Lowering a polygon point can only
// lower the predicted minimal root valuation, so the result is a valid lower
// bound even when vertices are not certified at the tracked precision.
static Frac min_positive_root_valuation_lb(const KPoly& f) {
    struct Pt {
        std::int64_t x;
        Frac y;
    };
    std::vector<Pt> pts;
    std::int64_t exact_zero_roots = 0;
    for (std::int64_t i = 0; i <= f.degree(); ++i) {
        const KElement& c = f.coeffs[i];
        if (c.is_exact_zero()) {
            if (pts.empty()) ++exact_zero_roots;
            continue;
        }
        pts.push_back({i, c.valuation_lower_bound()});
    }
    std::vector<Pt> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull[hull.size() - 1];
            if ((b.y - a.y) * Frac(pt.x - a.x) < (pt.y - a.y) * Frac(b.x - a.x)) break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    Frac lb = Frac::infinity();
    bool any_positive = false;
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        Frac rv = -((hull[s + 1].y - hull[s].y) / Frac(hull[s + 1].x - hull[s].x));
        if (rv > Frac(0)) {
            lb = min(lb, rv);
            any_positive = true;
        }
    }
    if (!any_positive && exact_zero_roots == 0) return Frac(0);
    return lb;
}

SenData sen_from_crystal(const HTCrystal& c) {
    const LocalField* f = c.field;
    KMatrix phi = c.a1 * (-(f->Eprime_pi().inv()));
    KPoly chi = charpoly(phi);
    SenData s{f, phi, chi, NewtonPolygon{0, {}}, {}};
    try {
        s.weight_polygon = newton_polygon(chi);
    } catch (const PrecisionInsufficient&) {
        // trailing coefficients vanish at the tracked precision: the
        // corresponding weights have valuation beyond what the polygon can
        // certify. Split them off and keep the certified part, recording a
        // bound on their total valuation.
        KPoly work = chi;
        std::size_t t = 0;
        while (t < work.coeffs.size() && work.coeffs[t].is_exact_zero()) ++t;
        std::size_t k = t;
        while (k < work.coeffs.size() && work.coeffs[k].is_zero_at_precision()) ++k;
        if (k == t || k >= work.coeffs.size()) throw;
        Frac low = work.coeffs[t].valuation_lower_bound();
        Frac rest = work.coeffs[k].valuation_lower_bound();
        for (std::size_t i = t; i < k; ++i) work.coeffs[i] = f->zero();
        s.weight_polygon = newton_polygon(work);
        s.weight_polygon.x_order = static_cast<std::int64_t>(t);
        s.unresolved_weights = static_cast<std::int64_t>(k - t);
        s.unresolved_bound = low - rest;
    }
    if (f->ramification_index() == 1) {
        NhtVerdict v = nearly_ht_check(c);
        for (const auto& [i, mult] : v.residue_classes) {
            // v_pi(weight - i) bounds from the polygon of charpoly(Phi - i I)
            KPoly shifted = charpoly(phi.shift(f->from_integer(-i)));
            s.residue_report.push_back({i, mult, min_positive_root_valuation_lb(shifted)});
        }
    }
    return s;
}

FormalMatrixSeries tau_cocycle(const HTCrystal& c, std::int64_t degree) {
    const LocalField* f = c.field;
    KMatrix phi = c.a1 * (-(f->Eprime_pi().inv()));
    FormalMatrixSeries u{f, c.rank, degree, {}};
    u.m.reserve(degree + 1);
    KMatrix binom_acc = KMatrix::identity(f, c.rank);  // binom(Phi, n)
    u.m.push_back(binom_acc);
    for (std::int64_t n = 1; n <= degree; ++n) {
        PadicScalar inv_n = PadicScalar::from_integer(f->prime(), n, f->precision()).inv();
        binom_acc = binom_acc * phi.shift(f->from_integer(-(n - 1))) * inv_n;
        u.m.push_back(n % 2 == 0 ? binom_acc : -binom_acc);
    }
    return u;
}

FormalMatrixSeries series_log(const FormalMatrixSeries& u) {
    const LocalField* f = u.field;
    KMatrix ident = KMatrix::identity(f, u.rank);
    if (!eq_tracked(u.m[0], ident))
        throw ShapeMismatch("series_log: constant term must be the identity");
    FormalMatrixSeries v = u;  // I - U
    for (std::int64_t n = 0; n <= u.degree; ++n) v.m[n] = -u.m[n];
    v.m[0] = v.m[0] + ident;

    FormalMatrixSeries acc{f, u.rank, u.degree,
                           std::vector<KMatrix>(u.degree + 1, KMatrix::zeros(f, u.rank))};
    FormalMatrixSeries pw = v;
    for (std::int64_t k = 1; k <= u.degree; ++k) {
        PadicScalar inv_k = PadicScalar::from_integer(f->prime(), k, f->precision()).inv();
        for (std::int64_t n = 0; n <= u.degree; ++n) acc.m[n] = acc.m[n] - pw.m[n] * inv_k;
        if (k < u.degree) pw = pw * v;
    }
    return acc;
}

KMatrix recover_sen(const FormalMatrixSeries& u) {
    if (u.degree < 1) throw ShapeMismatch("recover_sen needs degree >= 1");
    return -series_log(u).m[1];
}

KElement theta_u_lambda_prime(const LocalField& field, std::int64_t N) {
    if (N < 1) throw std::invalid_argument("theta_u_lambda_prime: N must be >= 1");
    const std::int64_t p = field.prime();
    KPoly E{&field, {}};
    for (const auto& c : field.E_coeffs()) E.coeffs.push_back(field.from_scalar(c));
    const KElement e0_inv = field.from_scalar(field.E0()).inv();

    KElement result = field.pi() * field.Eprime_pi() * e0_inv;
    KElement pi_pow = field.pi();
    for (;;) {
        pi_pow = pi_pow.pow(p);  // pi^(p^n)
        KElement factor = E.eval(pi_pow) * e0_inv;
        KElement dist = factor - field.one();
        if (dist.is_zero_at_precision()) break;
        if (dist.valuation_lower_bound() >= Frac(field.ramification_index() * N)) {
            // tail factors are 1 + O(p^N); the remaining product no longer
            // moves the first N digits
            result = result * factor;
            break;
        }
        result = result * factor;
    }
    return result;
}

} // namespace prismcalc
