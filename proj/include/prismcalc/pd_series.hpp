#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "prismcalc/linalg.hpp"

namespace prismcalc {

using PDIndex = std::array<std::int64_t, 2>;  // second component 0 when nvars == 1

/// Truncated divided-power series  sum_{|k| <= D} C_k X^[k]  in one or two
/// variables, with coefficients square matrices over K (dim 1 for scalars).
/// Multiplication follows X^[a] X^[b] = C(a+b, a) X^[a+b] componentwise;
/// matrix coefficients multiply in the given order, so the product is only
/// commutative in the scalar case.
class PDSeries {
public:
    PDSeries(const LocalField* field, int nvars, std::int64_t degree, std::int64_t dim);

    static PDSeries constant(const KMatrix& c, int nvars, std::int64_t degree);
    /// The scalar series X_var^[1].
    static PDSeries variable(const LocalField* field, int nvars, std::int64_t degree, int var);
    /// sum_{n <= D} a^n n! X_var^[n], the pd inverse of (1 - a X_var).
    static PDSeries geom_inv(const KElement& a, int nvars, std::int64_t degree, int var);

    const LocalField& field() const { return *field_; }
    int nvars() const { return nvars_; }
    std::int64_t degree() const { return degree_; }
    std::int64_t dim() const { return dim_; }

    /// Coefficient of X^[k]; zero matrix when absent.
    KMatrix coeff(const PDIndex& k) const;
    void set_coeff(const PDIndex& k, const KMatrix& c);
    const std::map<PDIndex, KMatrix>& coeffs() const { return coeffs_; }

    bool has_zero_constant_term() const;

    PDSeries operator+(const PDSeries& o) const;
    PDSeries operator-(const PDSeries& o) const;
    PDSeries operator-() const;
    PDSeries operator*(const PDSeries& o) const;  // pd product, truncated
    PDSeries scale(const KElement& s) const;
    /// Left-multiply every coefficient by m (promotes a scalar series to dim(m)).
    PDSeries left_mul(const KMatrix& m) const;

    std::string str() const;

private:
    const LocalField* field_;
    int nvars_;
    std::int64_t degree_;
    std::int64_t dim_;
    std::map<PDIndex, KMatrix> coeffs_;
};

/// F(g) = sum_n A_n g^n / n! for a one-variable matrix series f = sum A_n X^[n]
/// and a scalar series g with zero constant term. The pd power g^n/n! is the
/// plain pd product divided coefficientwise by n! (exact in K, consuming
/// v_p(n!) digits of the precision margin).
PDSeries pd_substitute(const PDSeries& f, const PDSeries& g);

bool eq_tracked(const PDSeries& a, const PDSeries& b);

} // namespace prismcalc
