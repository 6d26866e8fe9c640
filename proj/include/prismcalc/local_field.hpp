#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "prismcalc/fraction.hpp"
#include "prismcalc/padic.hpp"

namespace prismcalc {

class KElement;

/// Totally ramified extension K = Q_p[u]/(E(u)) for an Eisenstein polynomial
/// E(u) = u^e + c_{e-1} u^{e-1} + ... + c_0. Carries the working precision
/// (absolute, in p-adic digits) used for all coefficient arithmetic.
class LocalField {
public:
    /// E_coeffs low-to-high as (num, den) pairs, including the leading 1.
    LocalField(std::int64_t p, const std::vector<std::pair<BigInt, BigInt>>& E_coeffs,
               std::int64_t precision);

    std::int64_t prime() const { return p_; }
    std::int64_t ramification_index() const { return e_; }
    std::int64_t precision() const { return prec_; }

    const std::vector<PadicScalar>& E_coeffs() const { return E_; }
    const PadicScalar& E0() const { return E_[0]; }
    const KElement& Eprime_pi() const { return *Eprime_pi_; }
    Frac vpi_Eprime_pi() const;

    KElement zero() const;
    KElement one() const;
    KElement pi() const;
    KElement from_scalar(const PadicScalar& a) const;
    KElement from_rational(const BigInt& num, const BigInt& den) const;
    KElement from_integer(std::int64_t n) const;
    /// x = sum coeffs[i] * pi^i, coeffs given as rationals in the pi-power basis.
    KElement from_pi_basis(const std::vector<std::pair<BigInt, BigInt>>& coeffs) const;

    // reduction of u^(e+k) mod E, k = 0..e-2, as pi-basis coefficient rows
    const std::vector<std::vector<PadicScalar>>& reduction_rows() const { return red_; }

private:
    std::int64_t p_;
    std::int64_t e_;
    std::int64_t prec_;
    std::vector<PadicScalar> E_;
    std::vector<std::vector<PadicScalar>> red_;
    std::unique_ptr<KElement> Eprime_pi_;
};

/// Element of K in the pi-power basis: x = sum_{i<e} a_i pi^i.
class KElement {
public:
    KElement(const LocalField* field, std::vector<PadicScalar> coeffs);

    const LocalField& field() const { return *field_; }
    const std::vector<PadicScalar>& coeffs() const { return coeffs_; }

    bool is_exact_zero() const;
    bool is_zero_at_precision() const;

    /// Exact pi-normalized valuation (v(pi) = 1, v(p) = e); +inf for exact zero.
    /// Throws PrecisionInsufficient when the minimum cannot be certified.
    Frac valuation() const;
    /// Certified lower bound, valid in every state.
    Frac valuation_lower_bound() const;

    KElement operator+(const KElement& o) const;
    KElement operator-() const;
    KElement operator-(const KElement& o) const;
    KElement operator*(const KElement& o) const;
    KElement operator*(const PadicScalar& s) const;
    KElement inv() const;
    KElement operator/(const KElement& o) const { return *this * o.inv(); }

    KElement pow(std::int64_t n) const;

    bool operator==(const KElement& o) const;

    std::string str() const;

private:
    void check_same_field(const KElement& o) const;

    const LocalField* field_;
    std::vector<PadicScalar> coeffs_;  // size e
};

/// Polynomial over K, coefficients low-to-high.
struct KPoly {
    const LocalField* field;
    std::vector<KElement> coeffs;

    std::int64_t degree() const { return static_cast<std::int64_t>(coeffs.size()) - 1; }
    const KElement& operator[](std::size_t i) const { return coeffs[i]; }

    KPoly operator+(const KPoly& o) const;
    KPoly operator*(const KPoly& o) const;
    KElement eval(const KElement& x) const;
    bool operator==(const KPoly& o) const;
    std::string str() const;
};

struct NewtonSegment {
    Frac slope;
    std::int64_t length;  // horizontal length
    bool operator==(const NewtonSegment&) const = default;
};

/// Lower convex hull of (i, v_pi(f_i)); slopes strictly increasing. Root
/// valuations are the negated slopes with multiplicity = length.
struct NewtonPolygon {
    std::int64_t x_order;  // order of vanishing at 0 (stripped before the hull)
    std::vector<NewtonSegment> segments;

    std::vector<Frac> root_valuations() const;
};

NewtonPolygon newton_polygon(const KPoly& f);

/// Polynomial over F_p, coefficients low-to-high in [0, p).
using FpPoly = std::vector<std::int64_t>;

/// Coefficientwise reduction modulo the maximal ideal (pi -> 0, p -> 0).
/// Requires every coefficient integral (v_pi >= 0).
FpPoly residue_reduce(const KPoly& f);

inline bool eq_tracked(const KElement& a, const KElement& b) {
    return (a - b).is_zero_at_precision();
}

FpPoly fp_trim(FpPoly f);
FpPoly fp_mul(const FpPoly& f, const FpPoly& g, std::int64_t p);
/// Divide f by the monic g; returns {quotient, remainder}.
std::pair<FpPoly, FpPoly> fp_divmod(const FpPoly& f, const FpPoly& g, std::int64_t p);

} // namespace prismcalc
