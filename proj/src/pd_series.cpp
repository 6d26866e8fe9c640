#include "prismcalc/pd_series.hpp"

#include <sstream>

#include "prismcalc/errors.hpp"

namespace prismcalc {

static BigInt binom(std::int64_t n, std::int64_t k) {
    BigInt r = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

static BigInt factorial(std::int64_t n) {
    BigInt r = 1;
    for (std::int64_t i = 2; i <= n; ++i) r *= i;
    return r;
}

PDSeries::PDSeries(const LocalField* field, int nvars, std::int64_t degree, std::int64_t dim)
    : field_(field), nvars_(nvars), degree_(degree), dim_(dim) {
    if (nvars != 1 && nvars != 2) throw ShapeMismatch("nvars must be 1 or 2");
    if (degree < 0 || dim < 1) throw ShapeMismatch("bad degree or dimension");
}

PDSeries PDSeries::constant(const KMatrix& c, int nvars, std::int64_t degree) {
    PDSeries s(&c.field(), nvars, degree, c.dim());
    s.set_coeff({0, 0}, c);
    return s;
}

PDSeries PDSeries::variable(const LocalField* field, int nvars, std::int64_t degree, int var) {
    PDSeries s(field, nvars, degree, 1);
    if (var < 0 || var >= nvars) throw ShapeMismatch("variable index out of range");
    PDIndex k{0, 0};
    k[var] = 1;
    s.set_coeff(k, KMatrix(field, 1, {field->one()}));
    return s;
}

PDSeries PDSeries::geom_inv(const KElement& a, int nvars, std::int64_t degree, int var) {
    const LocalField* field = &a.field();
    PDSeries s(field, nvars, degree, 1);
    KElement pw = field->one();
    BigInt fact = 1;
    for (std::int64_t n = 0; n <= degree; ++n) {
        PDIndex k{0, 0};
        k[var] = n;
        s.set_coeff(k, KMatrix(field, 1,
                               {pw * PadicScalar::from_integer(field->prime(), fact,
                                                               field->precision())}));
        pw = pw * a;
        fact *= n + 1;
    }
    return s;
}

KMatrix PDSeries::coeff(const PDIndex& k) const {
    auto it = coeffs_.find(k);
    if (it != coeffs_.end()) return it->second;
    return KMatrix::zeros(field_, dim_);
}

void PDSeries::set_coeff(const PDIndex& k, const KMatrix& c) {
    if (k[0] < 0 || k[1] < 0 || k[0] + k[1] > degree_)
        throw ShapeMismatch("multi-index outside truncation");
    if (nvars_ == 1 && k[1] != 0) throw ShapeMismatch("second variable in a 1-variable series");
    if (c.dim() != dim_) throw ShapeMismatch("coefficient dimension mismatch");
    if (c.is_exact_zero())
        coeffs_.erase(k);
    else
        coeffs_.insert_or_assign(k, c);
}

bool PDSeries::has_zero_constant_term() const {
    auto it = coeffs_.find({0, 0});
    return it == coeffs_.end() || it->second.is_exact_zero();
}

static void check_compat(const PDSeries& a, const PDSeries& b) {
    if (&a.field() != &b.field()) throw FieldMismatch("series over different fields");
    if (a.nvars() != b.nvars() || a.degree() != b.degree())
        throw ShapeMismatch("series shape mismatch");
}

PDSeries PDSeries::operator+(const PDSeries& o) const {
    check_compat(*this, o);
    if (dim_ != o.dim_) throw ShapeMismatch("coefficient dimension mismatch");
    PDSeries r = *this;
    for (const auto& [k, c] : o.coeffs_) r.set_coeff(k, r.coeff(k) + c);
    return r;
}

PDSeries PDSeries::operator-() const {
    PDSeries r(field_, nvars_, degree_, dim_);
    for (const auto& [k, c] : coeffs_) r.set_coeff(k, -c);
    return r;
}

PDSeries PDSeries::operator-(const PDSeries& o) const { return *this + (-o); }

PDSeries PDSeries::operator*(const PDSeries& o) const {
    check_compat(*this, o);
    std::int64_t rdim = dim_;
    if (dim_ != o.dim_) {
        if (dim_ != 1 && o.dim_ != 1) throw ShapeMismatch("coefficient dimensions not composable");
        rdim = std::max(dim_, o.dim_);
    }
    PDSeries r(field_, nvars_, degree_, rdim);
    const std::int64_t p = field_->prime();
    for (const auto& [ka, ca] : coeffs_) {
        for (const auto& [kb, cb] : o.coeffs_) {
            PDIndex k{ka[0] + kb[0], ka[1] + kb[1]};
            if (k[0] + k[1] > degree_) continue;
            BigInt mult = binom(k[0], ka[0]) * binom(k[1], ka[1]);
            KMatrix prod = (dim_ == o.dim_)   ? ca * cb
                           : (dim_ == 1)      ? cb * ca.at(0, 0)
                                              : ca * cb.at(0, 0);
            r.set_coeff(k, r.coeff(k) + prod * PadicScalar::from_integer(p, mult,
                                                                         field_->precision()));
        }
    }
    return r;
}

PDSeries PDSeries::scale(const KElement& s) const {
    PDSeries r(field_, nvars_, degree_, dim_);
    for (const auto& [k, c] : coeffs_) r.set_coeff(k, c * s);
    return r;
}

PDSeries PDSeries::left_mul(const KMatrix& m) const {
    PDSeries r(field_, nvars_, degree_, m.dim());
    for (const auto& [k, c] : coeffs_) {
        if (dim_ == 1)
            r.set_coeff(k, m * c.at(0, 0));
        else
            r.set_coeff(k, m * c);
    }
    return r;
}

std::string PDSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        if (k[0] > 0) os << "*X1^[" << k[0] << "]";
        if (k[1] > 0) os << "*X2^[" << k[1] << "]";
    }
    if (first) os << "0";
    return os.str();
}

PDSeries pd_substitute(const PDSeries& f, const PDSeries& g) {
    if (f.nvars() != 1) throw ShapeMismatch("pd_substitute: f must be one-variable");
    if (g.dim() != 1) throw ShapeMismatch("pd_substitute: g must have scalar coefficients");
    if (!g.has_zero_constant_term())
        throw NonzeroConstantTerm("pd_substitute: g must have zero constant term");
    const LocalField* field = &f.field();
    const std::int64_t D = g.degree();
    const std::int64_t p = field->prime();

    PDSeries result = PDSeries::constant(f.coeff({0, 0}), g.nvars(), D);
    PDSeries pw = PDSeries::constant(KMatrix(field, 1, {field->one()}), g.nvars(), D);
    BigInt fact = 1;
    for (std::int64_t n = 1; n <= f.degree() && n <= D; ++n) {
        pw = pw * g;
        fact *= n;
        KMatrix an = f.coeff({n, 0});
        if (an.is_exact_zero()) continue;
        PadicScalar inv_fact = PadicScalar::from_integer(p, fact, field->precision()).inv();
        result = result + pw.scale(field->from_scalar(inv_fact)).left_mul(an);
    }
    return result;
}

bool eq_tracked(const PDSeries& a, const PDSeries& b) {
    PDSeries d = a - b;
    for (const auto& [k, c] : d.coeffs())
        for (const auto& x : c.entries())
            if (!x.is_zero_at_precision()) return false;
    return true;
}

} // namespace prismcalc
