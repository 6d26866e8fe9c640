#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "prismcalc/errors.hpp"

namespace prismcalc {

using BigInt = boost::multiprecision::cpp_int;

/// An element of Q_p known modulo p^precision (capped absolute precision).
///
/// Three states:
///   - exact zero (valuation +infinity, unlimited precision),
///   - zero at precision: all tracked digits vanish, so only v >= precision is known,
///   - unit form x = p^valuation * unit with unit a unit mod p^(precision - valuation).
///
/// Representations are canonical: equal values at equal precision compare
/// structurally equal. All operations are pure; values are immutable.
class PadicScalar {
public:
    // exact zero
    static PadicScalar zero(std::int64_t p);
    static PadicScalar one(std::int64_t p, std::int64_t precision);

    static PadicScalar from_integer(std::int64_t p, const BigInt& n, std::int64_t precision);
    static PadicScalar from_rational(std::int64_t p, const BigInt& num, const BigInt& den,
                                     std::int64_t precision);
    // p^v * unit, unit given as any integer not divisible by p
    static PadicScalar from_unit(std::int64_t p, std::int64_t valuation, const BigInt& unit,
                                 std::int64_t precision);

    std::int64_t prime() const { return p_; }

    bool is_exact_zero() const { return kind_ == Kind::ExactZero; }
    bool is_zero_at_precision() const { return kind_ != Kind::Unit; }

    /// Valuation; only callable in unit state (exact for units).
    std::int64_t valuation() const;
    /// Certified lower bound on the valuation; valid in every state
    /// (+infinity for the exact zero, reported via is_exact_zero()).
    std::int64_t valuation_lower_bound() const;

    /// Absolute precision N (value known mod p^N). Meaningless for the exact zero.
    std::int64_t precision() const { return prec_; }
    const BigInt& unit_digits() const { return unit_; }

    PadicScalar truncate(std::int64_t new_precision) const;

    PadicScalar operator+(const PadicScalar& o) const;
    PadicScalar operator-() const;
    PadicScalar operator-(const PadicScalar& o) const;
    PadicScalar operator*(const PadicScalar& o) const;
    PadicScalar inv() const;
    PadicScalar operator/(const PadicScalar& o) const { return *this * o.inv(); }

    bool operator==(const PadicScalar& o) const;

    /// Digit expansion "d0 + d1*p + ... + O(p^N)"; negative-valuation digits
    /// print as d*p^v terms.
    std::string str() const;

private:
    enum class Kind { ExactZero, ZeroAtPrecision, Unit };

    PadicScalar(std::int64_t p, Kind k, std::int64_t val, BigInt unit, std::int64_t prec)
        : p_(p), kind_(k), val_(val), unit_(std::move(unit)), prec_(prec) {}

    void check_same_prime(const PadicScalar& o) const;

    std::int64_t p_;
    Kind kind_;
    std::int64_t val_;  // unit state only
    BigInt unit_;       // in [1, p^(prec-val)), not divisible by p
    std::int64_t prec_;
};

BigInt big_pow(std::int64_t p, std::int64_t n);
BigInt mod_inverse(const BigInt& a, const BigInt& m);

/// Equality at the jointly tracked precision: the difference carries no
/// nonzero digit.
inline bool eq_tracked(const PadicScalar& a, const PadicScalar& b) {
    return (a - b).is_zero_at_precision();
}

} // namespace prismcalc
