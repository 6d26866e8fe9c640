#include "prismcalc/ht_crystal.hpp"

#include <algorithm>

#include "prismcalc/errors.hpp"

namespace prismcalc {

PDSeries StratificationSeries::as_pd_series(int nvars, int var) const {
    PDSeries s(field, nvars, degree, rank);
    for (std::int64_t n = 0; n <= degree; ++n) {
        PDIndex k{0, 0};
        k[var] = n;
        s.set_coeff(k, a[n]);
    }
    return s;
}

StratificationSeries stratify(const HTCrystal& c, std::int64_t degree) {
    const LocalField* f = c.field;
    const KElement& ep = f->Eprime_pi();
    StratificationSeries s{f, c.rank, degree, {}};
    s.a.reserve(degree + 1);
    s.a.push_back(KMatrix::identity(f, c.rank));
    KMatrix prod = KMatrix::identity(f, c.rank);
    for (std::int64_t n = 1; n <= degree; ++n) {
        // next factor: (n-1) E'(pi) + A_1
        prod = prod * c.a1.shift(ep * PadicScalar::from_integer(f->prime(), n - 1, f->precision()));
        s.a.push_back(prod);
    }
    return s;
}

StratificationSeries binomial_series(const HTCrystal& c, std::int64_t degree) {
    const LocalField* f = c.field;
    const KElement ep = f->Eprime_pi();
    const KElement neg_ep_inv = -(ep.inv());
    // Phi = -A1 / E'(pi); coefficient of X^n/n! is (-E'(pi))^n Phi(Phi-1)...(Phi-n+1)
    KMatrix phi = c.a1 * neg_ep_inv;
    StratificationSeries s{f, c.rank, degree, {}};
    s.a.reserve(degree + 1);
    KMatrix q = KMatrix::identity(f, c.rank);
    s.a.push_back(q);
    for (std::int64_t n = 1; n <= degree; ++n) {
        KMatrix factor = phi.shift(f->from_integer(-(n - 1))) * (-ep);
        q = q * factor;
        s.a.push_back(q);
    }
    return s;
}

NhtVerdict nearly_ht_check(const HTCrystal& c) {
    const LocalField* f = c.field;
    const std::int64_t e = f->ramification_index();
    const std::int64_t p = f->prime();
    NhtVerdict v;
    v.vpi_Eprime = f->vpi_Eprime_pi();
    v.e_minus_1 = e - 1;
    KPoly chi = charpoly(c.a1);
    const std::int64_t d = c.rank;

    if (e > 1) {
        // condition <=> every root in the maximal ideal <=> every non-leading
        // coefficient of chi has v_pi > 0
        bool all_positive = true;
        for (std::int64_t i = 0; i < d; ++i) {
            const KElement& ci = chi[i];
            Frac lb = ci.valuation_lower_bound();
            if (lb > Frac(0)) continue;
            // lower bound fails; need the exact valuation to certify either way
            Frac val = ci.valuation();  // throws PrecisionInsufficient if unknown
            if (!(val > Frac(0))) {
                all_positive = false;
                break;
            }
        }
        v.coeffs_in_maximal_ideal = all_positive;
        v.all_roots_integral = all_positive;
        v.nearly_ht = all_positive;
        return v;
    }

    // e = 1: integrality first
    for (std::int64_t i = 0; i < d; ++i) {
        Frac lb = chi[i].valuation_lower_bound();
        if (!lb.is_infinite() && lb < Frac(0)) {
            Frac val = chi[i].valuation();
            if (val < Frac(0)) {
                v.all_roots_integral = false;
                v.nearly_ht = false;
                v.unmatched_degree = d;
                return v;
            }
        }
    }
    v.all_roots_integral = true;

    // residue factorization: chi-bar must equal prod_i (x + i*cbar)^{m_i}
    FpPoly chibar = residue_reduce(chi);
    std::int64_t cbar = 0;
    {
        KPoly epoly{f, {f->Eprime_pi()}};
        FpPoly r = residue_reduce(epoly);
        cbar = r.empty() ? 0 : r[0];
    }
    for (std::int64_t i = 0; i < p && chibar.size() > 1; ++i) {
        FpPoly factor{(i * cbar) % p, 1};  // x + i*cbar
        std::int64_t mult = 0;
        while (chibar.size() > 1) {
            auto [q, r] = fp_divmod(chibar, factor, p);
            if (!r.empty()) break;
            chibar = q;
            ++mult;
        }
        if (mult > 0) v.residue_classes.emplace_back(i, mult);
    }
    v.unmatched_degree = chibar.empty() ? 0 : static_cast<std::int64_t>(chibar.size()) - 1;
    v.nearly_ht = v.unmatched_degree == 0;
    return v;
}

ConvergenceResult convergence_oracle(const HTCrystal& c, const Frac& threshold,
                                     std::int64_t budget) {
    const LocalField* f = c.field;
    const std::int64_t p = f->prime();
    const std::int64_t d = c.rank;
    const KElement& ep = f->Eprime_pi();
    KPoly chi = charpoly(c.a1);
    const Frac det_cap = threshold * Frac(d);

    KMatrix partial = KMatrix::identity(f, d);
    Frac det_val(0);
    std::int64_t flat_steps = 0;
    for (std::int64_t n = 1; n <= budget; ++n) {
        std::int64_t i = n - 1;
        KElement shift_scalar = ep * PadicScalar::from_integer(p, i, f->precision());
        partial = partial * c.a1.shift(shift_scalar);
        if (min_entry_valuation(partial) >= threshold)
            return {ConvergenceResult::Kind::ConvergedAt, n};
        // det(iE' + A1) = (-1)^d chi(-iE'); only its valuation matters
        KElement factor_det = chi.eval(-shift_scalar);
        bool increased = true;
        try {
            Frac dv = factor_det.valuation();
            if (!dv.is_infinite()) {
                det_val = det_val + dv;
                increased = dv > Frac(0);
            }
        } catch (const PrecisionInsufficient&) {
            // only a high lower bound is known; counts as growth
        }
        if (!increased && det_val < det_cap) {
            if (++flat_steps >= p) return {ConvergenceResult::Kind::BoundedBelowEvidence, n};
        } else {
            flat_steps = 0;
        }
    }
    return {ConvergenceResult::Kind::Undetermined, budget};
}

CocycleResult cocycle_check(const StratificationSeries& s) {
    if (s.degree < 2) throw ShapeMismatch("cocycle_check needs degree >= 2");
    const LocalField* f = s.field;
    const std::int64_t D = s.degree;

    PDSeries f_x1 = s.as_pd_series(2, 0);
    PDSeries f_x2 = s.as_pd_series(2, 1);
    PDSeries x1 = PDSeries::variable(f, 2, D, 0);
    PDSeries x2 = PDSeries::variable(f, 2, D, 1);
    PDSeries pullback = (x2 - x1) * PDSeries::geom_inv(f->Eprime_pi(), 2, D, 0);
    PDSeries lhs = f_x1 * pd_substitute(s.as_pd_series(1, 0), pullback);
    PDSeries diff = lhs - f_x2;

    for (std::int64_t total = 0; total <= D; ++total) {
        for (std::int64_t k1 = 0; k1 <= total; ++k1) {
            PDIndex k{k1, total - k1};
            KMatrix cdiff = diff.coeff(k);
            bool zero = true;
            for (const auto& x : cdiff.entries())
                if (!x.is_zero_at_precision()) {
                    zero = false;
                    break;
                }
            if (!zero) return {false, total, k, std::move(cdiff)};
        }
    }
    return {true, D, {0, 0}, std::nullopt};
}

} // namespace prismcalc
