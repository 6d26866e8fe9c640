#include "prismcalc/local_field.hpp"

#include <algorithm>
#include <sstream>

#include "prismcalc/berkowitz.hpp"
#include "prismcalc/errors.hpp"

namespace prismcalc {

LocalField::LocalField(std::int64_t p, const std::vector<std::pair<BigInt, BigInt>>& E_coeffs,
                       std::int64_t precision)
    : p_(p), prec_(precision) {
    if (E_coeffs.size() < 2) throw NotMonic("E must have degree >= 1");
    e_ = static_cast<std::int64_t>(E_coeffs.size()) - 1;
    if (E_coeffs.back().first != E_coeffs.back().second)
        throw NotMonic("leading coefficient of E must be 1");
    E_.reserve(e_ + 1);
    for (const auto& [num, den] : E_coeffs)
        E_.push_back(PadicScalar::from_rational(p, num, den, precision));
    // Eisenstein: v_p(c_i) >= 1 for i < e, v_p(c_0) = 1
    if (E_[0].is_exact_zero() || E_[0].valuation() != 1)
        throw NotEisenstein("constant term must have v_p = 1");
    for (std::int64_t i = 1; i < e_; ++i) {
        if (!E_[i].is_exact_zero() && E_[i].valuation() < 1)
            throw NotEisenstein("coefficient of u^" + std::to_string(i) + " has v_p = 0");
    }

    // u^(e+k) mod E, k = 0..e-2
    std::vector<PadicScalar> row(e_, PadicScalar::zero(p_));
    for (std::int64_t i = 0; i < e_; ++i) row[i] = -E_[i];
    red_.push_back(row);
    for (std::int64_t k = 1; k + 1 < e_; ++k) {
        std::vector<PadicScalar> next(e_, PadicScalar::zero(p_));
        const auto& prev = red_.back();
        for (std::int64_t i = 0; i + 1 < e_; ++i) next[i + 1] = prev[i];
        const PadicScalar& top = prev[e_ - 1];  // coefficient of u^e
        for (std::int64_t i = 0; i < e_; ++i) next[i] = next[i] + top * red_[0][i];
        red_.push_back(std::move(next));
    }

    // E'(pi): deg E' = e-1, no reduction needed
    std::vector<PadicScalar> dcoeffs(e_, PadicScalar::zero(p_));
    for (std::int64_t i = 1; i <= e_; ++i)
        dcoeffs[i - 1] = E_[i] * PadicScalar::from_integer(p_, i, prec_);
    Eprime_pi_ = std::make_unique<KElement>(this, std::move(dcoeffs));
}

Frac LocalField::vpi_Eprime_pi() const { return Eprime_pi_->valuation(); }

KElement LocalField::zero() const {
    return KElement(this, std::vector<PadicScalar>(e_, PadicScalar::zero(p_)));
}

KElement LocalField::one() const { return from_integer(1); }

KElement LocalField::pi() const {
    std::vector<PadicScalar> c(e_, PadicScalar::zero(p_));
    if (e_ == 1) {
        c[0] = -E_[0];  // u = -c_0 when E = u + c_0
    } else {
        c[1] = PadicScalar::one(p_, prec_);
    }
    return KElement(this, std::move(c));
}

KElement LocalField::from_scalar(const PadicScalar& a) const {
    std::vector<PadicScalar> c(e_, PadicScalar::zero(p_));
    c[0] = a;
    return KElement(this, std::move(c));
}

KElement LocalField::from_rational(const BigInt& num, const BigInt& den) const {
    return from_scalar(PadicScalar::from_rational(p_, num, den, prec_));
}

KElement LocalField::from_integer(std::int64_t n) const {
    return from_scalar(PadicScalar::from_integer(p_, n, prec_));
}

KElement LocalField::from_pi_basis(const std::vector<std::pair<BigInt, BigInt>>& coeffs) const {
    if (static_cast<std::int64_t>(coeffs.size()) > e_)
        throw ShapeMismatch("pi-basis literal longer than ramification index");
    std::vector<PadicScalar> c(e_, PadicScalar::zero(p_));
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        c[i] = PadicScalar::from_rational(p_, coeffs[i].first, coeffs[i].second, prec_);
    return KElement(this, std::move(c));
}

KElement::KElement(const LocalField* field, std::vector<PadicScalar> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
    if (static_cast<std::int64_t>(coeffs_.size()) != field_->ramification_index())
        throw ShapeMismatch("KElement coefficient count != e");
}

void KElement::check_same_field(const KElement& o) const {
    if (field_ != o.field_) throw FieldMismatch("operands from different fields");
}

bool KElement::is_exact_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const PadicScalar& a) { return a.is_exact_zero(); });
}

bool KElement::is_zero_at_precision() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const PadicScalar& a) { return a.is_zero_at_precision(); });
}

Frac KElement::valuation() const {
    const std::int64_t e = field_->ramification_index();
    Frac definite = Frac::infinity();
    Frac bound = Frac::infinity();
    for (std::int64_t i = 0; i < e; ++i) {
        const auto& a = coeffs_[i];
        if (a.is_exact_zero()) continue;
        Frac cand(e * a.valuation_lower_bound() + i);
        if (a.is_zero_at_precision()) {
            bound = min(bound, cand);
        } else {
            definite = min(definite, cand);
        }
    }
    if (definite.is_infinite() && bound.is_infinite()) return Frac::infinity();
    if (definite <= bound) return definite;
    throw PrecisionInsufficient("KElement valuation not certified at tracked precision");
}

Frac KElement::valuation_lower_bound() const {
    const std::int64_t e = field_->ramification_index();
    Frac b = Frac::infinity();
    for (std::int64_t i = 0; i < e; ++i) {
        const auto& a = coeffs_[i];
        if (a.is_exact_zero()) continue;
        b = min(b, Frac(e * a.valuation_lower_bound() + i));
    }
    return b;
}

KElement KElement::operator+(const KElement& o) const {
    check_same_field(o);
    std::vector<PadicScalar> c;
    c.reserve(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c.push_back(coeffs_[i] + o.coeffs_[i]);
    return KElement(field_, std::move(c));
}

KElement KElement::operator-() const {
    std::vector<PadicScalar> c;
    c.reserve(coeffs_.size());
    for (const auto& a : coeffs_) c.push_back(-a);
    return KElement(field_, std::move(c));
}

KElement KElement::operator-(const KElement& o) const { return *this + (-o); }

KElement KElement::operator*(const KElement& o) const {
    check_same_field(o);
    const std::int64_t e = field_->ramification_index();
    const std::int64_t p = field_->prime();
    std::vector<PadicScalar> conv(2 * e - 1, PadicScalar::zero(p));
    for (std::int64_t i = 0; i < e; ++i) {
        if (coeffs_[i].is_exact_zero()) continue;
        for (std::int64_t j = 0; j < e; ++j)
            conv[i + j] = conv[i + j] + coeffs_[i] * o.coeffs_[j];
    }
    std::vector<PadicScalar> c(conv.begin(), conv.begin() + e);
    const auto& red = field_->reduction_rows();
    for (std::int64_t k = 0; k + 1 < e; ++k) {
        const PadicScalar& hi = conv[e + k];
        if (hi.is_exact_zero()) continue;
        for (std::int64_t i = 0; i < e; ++i) c[i] = c[i] + hi * red[k][i];
    }
    return KElement(field_, std::move(c));
}

KElement KElement::operator*(const PadicScalar& s) const {
    std::vector<PadicScalar> c;
    c.reserve(coeffs_.size());
    for (const auto& a : coeffs_) c.push_back(a * s);
    return KElement(field_, std::move(c));
}

KElement KElement::inv() const {
    if (is_zero_at_precision() || is_exact_zero())
        throw ZeroDivisor("inverse of a value indistinguishable from zero");
    const std::int64_t e = field_->ramification_index();
    const std::int64_t p = field_->prime();
    if (e == 1) return field_->from_scalar(coeffs_[0].inv());
    // multiplication-by-x matrix over Q_p, column j = coefficients of x*u^j
    std::vector<PadicScalar> m(e * e, PadicScalar::zero(p));
    KElement power = *this;
    for (std::int64_t j = 0; j < e; ++j) {
        for (std::int64_t i = 0; i < e; ++i) m[i * e + j] = power.coeffs()[i];
        if (j + 1 < e) power = power * field_->pi();
    }
    auto chi = berkowitz_charpoly(m, static_cast<std::size_t>(e), PadicScalar::zero(p),
                                  PadicScalar::one(p, field_->precision()));
    // Cayley-Hamilton: x * (x^{e-1} + c_1 x^{e-2} + ... + c_{e-1}) = -c_e
    const PadicScalar& ce = chi[e];
    if (ce.is_zero_at_precision() || ce.is_exact_zero())
        throw ZeroDivisor("norm indistinguishable from zero");
    KElement acc = field_->one();
    for (std::int64_t k = 1; k < e; ++k)
        acc = acc * *this + field_->from_scalar(chi[k]);
    return acc * (-ce.inv());
}

KElement KElement::pow(std::int64_t n) const {
    if (n < 0) return inv().pow(-n);
    KElement r = field_->one();
    KElement base = *this;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

bool KElement::operator==(const KElement& o) const {
    return field_ == o.field_ && coeffs_ == o.coeffs_;
}

std::string KElement::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) os << ", ";
        os << coeffs_[i].str();
    }
    os << "]";
    return os.str();
}

KPoly KPoly::operator+(const KPoly& o) const {
    KPoly r{field, {}};
    std::size_t n = std::max(coeffs.size(), o.coeffs.size());
    r.coeffs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        KElement s = field->zero();
        if (i < coeffs.size()) s = s + coeffs[i];
        if (i < o.coeffs.size()) s = s + o.coeffs[i];
        r.coeffs.push_back(s);
    }
    return r;
}

KPoly KPoly::operator*(const KPoly& o) const {
    KPoly r{field, std::vector<KElement>(coeffs.size() + o.coeffs.size() - 1, field->zero())};
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs.size(); ++j)
            r.coeffs[i + j] = r.coeffs[i + j] + coeffs[i] * o.coeffs[j];
    return r;
}

KElement KPoly::eval(const KElement& x) const {
    KElement acc = field->zero();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

bool KPoly::operator==(const KPoly& o) const {
    return field == o.field && coeffs == o.coeffs;
}

std::string KPoly::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (i) os << " + ";
        os << coeffs[i].str() << "*x^" << i;
    }
    return os.str();
}

std::vector<Frac> NewtonPolygon::root_valuations() const {
    std::vector<Frac> v;
    for (const auto& seg : segments)
        for (std::int64_t k = 0; k < seg.length; ++k) v.push_back(-seg.slope);
    return v;
}

NewtonPolygon newton_polygon(const KPoly& f) {
    struct Pt {
        std::int64_t x;
        Frac y;
        bool definite;
    };
    std::vector<Pt> pts;
    std::int64_t lo = -1;
    for (std::int64_t i = 0; i <= f.degree(); ++i) {
        const KElement& c = f[i];
        if (c.is_exact_zero()) continue;
        bool definite = true;
        Frac v;
        try {
            v = c.valuation();
            if (v.is_infinite()) continue;
        } catch (const PrecisionInsufficient&) {
            definite = false;
            v = c.valuation_lower_bound();
        }
        if (c.is_zero_at_precision()) {
            definite = false;
            v = c.valuation_lower_bound();
        }
        pts.push_back({i, v, definite});
        if (lo < 0 && definite) lo = i;
    }
    if (pts.empty()) throw std::invalid_argument("newton_polygon of the zero polynomial");
    if (!pts.front().definite || !pts.back().definite)
        throw PrecisionInsufficient("end coefficient of the polygon not certified");
    std::int64_t x_order = pts.front().x;

    // lower hull of definite points (monotone chain)
    std::vector<Pt> hull;
    for (const auto& pt : pts) {
        if (!pt.definite) continue;
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull[hull.size() - 1];
            // keep b only if it lies strictly below segment a-pt
            Frac lhs = (b.y - a.y) * Frac(pt.x - a.x);
            Frac rhs = (pt.y - a.y) * Frac(b.x - a.x);
            if (lhs < rhs) break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    // indefinite points must not dip below the hull
    for (const auto& pt : pts) {
        if (pt.definite) continue;
        for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
            if (pt.x <= hull[s].x || pt.x >= hull[s + 1].x) continue;
            Frac hull_y = hull[s].y + (hull[s + 1].y - hull[s].y) * Frac(pt.x - hull[s].x) /
                                          Frac(hull[s + 1].x - hull[s].x);
            if (pt.y < hull_y)
                throw PrecisionInsufficient("hull vertex not certified at tracked precision");
        }
    }

    NewtonPolygon np{x_order, {}};
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        Frac slope = (hull[s + 1].y - hull[s].y) / Frac(hull[s + 1].x - hull[s].x);
        np.segments.push_back({slope, hull[s + 1].x - hull[s].x});
    }
    return np;
}

FpPoly residue_reduce(const KPoly& f) {
    const std::int64_t p = f.field->prime();
    FpPoly r;
    r.reserve(f.coeffs.size());
    for (const auto& c : f.coeffs) {
        Frac b = c.valuation_lower_bound();
        if (!b.is_infinite() && b < Frac(0)) throw NotIntegral("coefficient with negative valuation");
        std::int64_t digit = 0;
        const PadicScalar& a0 = c.coeffs()[0];
        if (!a0.is_zero_at_precision() && a0.valuation() == 0)
            digit = static_cast<std::int64_t>(a0.unit_digits() % p);
        r.push_back(digit);
    }
    return fp_trim(std::move(r));
}

FpPoly fp_trim(FpPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

FpPoly fp_mul(const FpPoly& f, const FpPoly& g, std::int64_t p) {
    if (f.empty() || g.empty()) return {};
    FpPoly r(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            r[i + j] = (r[i + j] + f[i] * g[j]) % p;
    return fp_trim(std::move(r));
}

std::pair<FpPoly, FpPoly> fp_divmod(const FpPoly& f, const FpPoly& g, std::int64_t p) {
    FpPoly rem = f;
    if (g.empty() || g.back() % p == 0) throw ZeroDivisor("fp_divmod: divisor has zero lead");
    std::int64_t lead_inv =
        static_cast<std::int64_t>(mod_inverse(BigInt(g.back()), BigInt(p)));
    const std::int64_t dg = static_cast<std::int64_t>(g.size()) - 1;
    if (static_cast<std::int64_t>(rem.size()) - 1 < dg) return {{}, fp_trim(std::move(rem))};
    FpPoly q(rem.size() - dg, 0);
    for (std::int64_t i = static_cast<std::int64_t>(rem.size()) - 1; i >= dg; --i) {
        std::int64_t c = rem[i] % p * lead_inv % p;
        q[i - dg] = c;
        if (c != 0)
            for (std::int64_t j = 0; j <= dg; ++j)
                rem[i - dg + j] = ((rem[i - dg + j] - c * g[j]) % p + p) % p;
    }
    return {fp_trim(std::move(q)), fp_trim(std::move(rem))};
}

} // namespace prismcalc
