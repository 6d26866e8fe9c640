#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prismcalc/local_field.hpp"

namespace prismcalc {

/// Square matrix over K, row-major.
class KMatrix {
public:
    KMatrix(const LocalField* field, std::int64_t dim, std::vector<KElement> entries);
    static KMatrix zeros(const LocalField* field, std::int64_t dim);
    static KMatrix identity(const LocalField* field, std::int64_t dim);

    const LocalField& field() const { return *field_; }
    std::int64_t dim() const { return dim_; }
    const KElement& at(std::int64_t i, std::int64_t j) const { return entries_[i * dim_ + j]; }
    KMatrix with_entry(std::int64_t i, std::int64_t j, const KElement& x) const;
    const std::vector<KElement>& entries() const { return entries_; }

    KMatrix operator+(const KMatrix& o) const;
    KMatrix operator-(const KMatrix& o) const;
    KMatrix operator-() const;
    KMatrix operator*(const KMatrix& o) const;
    KMatrix operator*(const KElement& s) const;
    KMatrix operator*(const PadicScalar& s) const;

    /// A + s*I
    KMatrix shift(const KElement& s) const;

    bool operator==(const KMatrix& o) const;
    bool is_exact_zero() const;

    std::string str() const;

private:
    const LocalField* field_;
    std::int64_t dim_;
    std::vector<KElement> entries_;
};

/// Monic char poly det(xI - A) via the division-free Berkowitz scheme.
KPoly charpoly(const KMatrix& a);

/// Certified lower bound on min over entries of v_pi; +inf iff every entry
/// is the exact zero.
Frac min_entry_valuation(const KMatrix& a);

KElement det(const KMatrix& a);

inline bool eq_tracked(const KMatrix& a, const KMatrix& b) {
    KMatrix d = a - b;
    for (const auto& x : d.entries())
        if (!x.is_zero_at_precision()) return false;
    return true;
}

} // namespace prismcalc
