#include "prismcalc/linalg.hpp"

#include <sstream>

#include "prismcalc/berkowitz.hpp"
#include "prismcalc/errors.hpp"

namespace prismcalc {

KMatrix::KMatrix(const LocalField* field, std::int64_t dim, std::vector<KElement> entries)
    : field_(field), dim_(dim), entries_(std::move(entries)) {
    if (dim_ < 1) throw ShapeMismatch("dimension must be >= 1");
    if (static_cast<std::int64_t>(entries_.size()) != dim_ * dim_)
        throw ShapeMismatch("entry count != dim^2");
    for (const auto& x : entries_)
        if (&x.field() != field_) throw FieldMismatch("entry from wrong field");
}

KMatrix KMatrix::zeros(const LocalField* field, std::int64_t dim) {
    return KMatrix(field, dim, std::vector<KElement>(dim * dim, field->zero()));
}

KMatrix KMatrix::identity(const LocalField* field, std::int64_t dim) {
    KMatrix m = zeros(field, dim);
    for (std::int64_t i = 0; i < dim; ++i) m.entries_[i * dim + i] = field->one();
    return m;
}

KMatrix KMatrix::with_entry(std::int64_t i, std::int64_t j, const KElement& x) const {
    KMatrix m = *this;
    m.entries_[i * dim_ + j] = x;
    return m;
}

static void check_shape(const KMatrix& a, const KMatrix& b) {
    if (&a.field() != &b.field()) throw FieldMismatch("matrices over different fields");
    if (a.dim() != b.dim()) throw ShapeMismatch("dimension mismatch");
}

KMatrix KMatrix::operator+(const KMatrix& o) const {
    check_shape(*this, o);
    std::vector<KElement> e;
    e.reserve(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) e.push_back(entries_[i] + o.entries_[i]);
    return KMatrix(field_, dim_, std::move(e));
}

KMatrix KMatrix::operator-(const KMatrix& o) const { return *this + (-o); }

KMatrix KMatrix::operator-() const {
    std::vector<KElement> e;
    e.reserve(entries_.size());
    for (const auto& x : entries_) e.push_back(-x);
    return KMatrix(field_, dim_, std::move(e));
}

KMatrix KMatrix::operator*(const KMatrix& o) const {
    check_shape(*this, o);
    std::vector<KElement> e(dim_ * dim_, field_->zero());
    for (std::int64_t i = 0; i < dim_; ++i)
        for (std::int64_t k = 0; k < dim_; ++k) {
            const KElement& aik = at(i, k);
            if (aik.is_exact_zero()) continue;
            for (std::int64_t j = 0; j < dim_; ++j)
                e[i * dim_ + j] = e[i * dim_ + j] + aik * o.at(k, j);
        }
    return KMatrix(field_, dim_, std::move(e));
}

KMatrix KMatrix::operator*(const KElement& s) const {
    std::vector<KElement> e;
    e.reserve(entries_.size());
    for (const auto& x : entries_) e.push_back(x * s);
    return KMatrix(field_, dim_, std::move(e));
}

KMatrix KMatrix::operator*(const PadicScalar& s) const {
    std::vector<KElement> e;
    e.reserve(entries_.size());
    for (const auto& x : entries_) e.push_back(x * s);
    return KMatrix(field_, dim_, std::move(e));
}

KMatrix KMatrix::shift(const KElement& s) const {
    KMatrix m = *this;
    for (std::int64_t i = 0; i < dim_; ++i)
        m.entries_[i * dim_ + i] = m.entries_[i * dim_ + i] + s;
    return m;
}

bool KMatrix::operator==(const KMatrix& o) const {
    return field_ == o.field_ && dim_ == o.dim_ && entries_ == o.entries_;
}

bool KMatrix::is_exact_zero() const {
    for (const auto& x : entries_)
        if (!x.is_exact_zero()) return false;
    return true;
}

std::string KMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::int64_t i = 0; i < dim_; ++i) {
        if (i) os << "; ";
        for (std::int64_t j = 0; j < dim_; ++j) {
            if (j) os << ", ";
            os << at(i, j).str();
        }
    }
    os << "]";
    return os.str();
}

KPoly charpoly(const KMatrix& a) {
    const LocalField* f = &a.field();
    auto lead_first = berkowitz_charpoly(a.entries(), static_cast<std::size_t>(a.dim()),
                                         f->zero(), f->one());
    KPoly chi{f, {}};
    chi.coeffs.assign(lead_first.rbegin(), lead_first.rend());
    return chi;
}

Frac min_entry_valuation(const KMatrix& a) {
    Frac m = Frac::infinity();
    for (const auto& x : a.entries()) m = min(m, x.valuation_lower_bound());
    return m;
}

KElement det(const KMatrix& a) {
    KPoly chi = charpoly(a);
    KElement d = chi.coeffs[0];
    if (a.dim() % 2 != 0) d = -d;
    return d;
}

} // namespace prismcalc
