#include "prismcalc/padic.hpp"

#include <algorithm>
#include <sstream>

namespace prismcalc {

BigInt big_pow(std::int64_t p, std::int64_t n) {
    BigInt r = 1;
    BigInt base = p;
    while (n > 0) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
    // extended Euclid
    BigInt old_r = a % m, r = m;
    if (old_r < 0) old_r += m;
    BigInt old_s = 1, s = 0;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw ZeroDivisor("mod_inverse: not a unit");
    old_s %= m;
    if (old_s < 0) old_s += m;
    return old_s;
}

PadicScalar PadicScalar::zero(std::int64_t p) {
    return PadicScalar(p, Kind::ExactZero, 0, 0, 0);
}

PadicScalar PadicScalar::one(std::int64_t p, std::int64_t precision) {
    return from_integer(p, 1, precision);
}

PadicScalar PadicScalar::from_integer(std::int64_t p, const BigInt& n, std::int64_t precision) {
    if (n == 0) return zero(p);
    BigInt m = big_pow(p, precision);
    BigInt r = n % m;
    if (r < 0) r += m;
    if (r == 0) return PadicScalar(p, Kind::ZeroAtPrecision, 0, 0, precision);
    std::int64_t v = 0;
    while (r % p == 0) {
        r /= p;
        ++v;
    }
    // unit known mod p^(precision - v)
    r %= big_pow(p, precision - v);
    if (r == 0) return PadicScalar(p, Kind::ZeroAtPrecision, 0, 0, precision);
    return PadicScalar(p, Kind::Unit, v, r, precision);
}

PadicScalar PadicScalar::from_unit(std::int64_t p, std::int64_t valuation, const BigInt& unit,
                                   std::int64_t precision) {
    if (unit % p == 0) throw std::invalid_argument("from_unit: unit divisible by p");
    PadicScalar u = from_integer(p, unit, precision - valuation);
    u.val_ += valuation;
    u.prec_ += valuation;
    return u;
}

PadicScalar PadicScalar::from_rational(std::int64_t p, const BigInt& num, const BigInt& den,
                                       std::int64_t precision) {
    if (den == 0) throw std::invalid_argument("from_rational: zero denominator");
    if (num == 0) return zero(p);
    BigInt n = num, d = den;
    std::int64_t v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    while (d % p == 0) {
        d /= p;
        --v;
    }
    // n/d is a unit; digits mod p^(precision - v)
    std::int64_t rel = precision - v;
    if (rel <= 0) return PadicScalar(p, Kind::ZeroAtPrecision, 0, 0, precision);
    BigInt m = big_pow(p, rel);
    BigInt u = (n % m) * mod_inverse(d, m) % m;
    if (u < 0) u += m;
    if (u == 0) return PadicScalar(p, Kind::ZeroAtPrecision, 0, 0, precision);
    return PadicScalar(p, Kind::Unit, v, u, precision);
}

std::int64_t PadicScalar::valuation() const {
    if (kind_ != Kind::Unit)
        throw PrecisionInsufficient("valuation of a (possibly) zero value is only bounded below");
    return val_;
}

std::int64_t PadicScalar::valuation_lower_bound() const {
    switch (kind_) {
        case Kind::ExactZero: return INT64_MAX;
        case Kind::ZeroAtPrecision: return prec_;
        default: return val_;
    }
}

void PadicScalar::check_same_prime(const PadicScalar& o) const {
    if (p_ != o.p_) throw PrimeMismatch("operands have different primes");
}

PadicScalar PadicScalar::truncate(std::int64_t new_precision) const {
    if (kind_ == Kind::ExactZero) return *this;
    if (new_precision >= prec_) return *this;
    if (kind_ == Kind::ZeroAtPrecision || val_ >= new_precision)
        return PadicScalar(p_, Kind::ZeroAtPrecision, 0, 0, new_precision);
    BigInt u = unit_ % big_pow(p_, new_precision - val_);
    if (u == 0) return PadicScalar(p_, Kind::ZeroAtPrecision, 0, 0, new_precision);
    return PadicScalar(p_, Kind::Unit, val_, u, new_precision);
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
    check_same_prime(o);
    if (kind_ == Kind::ExactZero) return o;
    if (o.kind_ == Kind::ExactZero) return *this;
    std::int64_t prec = std::min(prec_, o.prec_);
    std::int64_t m = std::min(valuation_lower_bound(), o.valuation_lower_bound());
    m = std::min(m, prec);
    // both values lie in p^m * Z_p; the scaled sum is known mod p^(prec - m)
    std::int64_t rel = prec - m;
    if (rel <= 0) return PadicScalar(p_, Kind::ZeroAtPrecision, 0, 0, prec);
    BigInt mod = big_pow(p_, rel);
    BigInt s = 0;
    if (kind_ == Kind::Unit) s += unit_ * big_pow(p_, val_ - m);
    if (o.kind_ == Kind::Unit) s += o.unit_ * big_pow(p_, o.val_ - m);
    s %= mod;
    if (s < 0) s += mod;
    if (s == 0) return PadicScalar(p_, Kind::ZeroAtPrecision, 0, 0, prec);
    std::int64_t extra = 0;
    while (s % p_ == 0) {
        s /= p_;
        ++extra;
    }
    return PadicScalar(p_, Kind::Unit, m + extra, s, prec);
}

PadicScalar PadicScalar::operator-() const {
    if (kind_ != Kind::Unit) return *this;
    BigInt m = big_pow(p_, prec_ - val_);
    return PadicScalar(p_, Kind::Unit, val_, m - unit_, prec_);
}

PadicScalar PadicScalar::operator-(const PadicScalar& o) const { return *this + (-o); }

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
    check_same_prime(o);
    if (kind_ == Kind::ExactZero || o.kind_ == Kind::ExactZero) return zero(p_);
    if (kind_ != Kind::Unit || o.kind_ != Kind::Unit) {
        // 0 mod p^N times something of valuation >= w is 0 mod p^(N + w)
        std::int64_t bound = valuation_lower_bound() + o.valuation_lower_bound();
        return PadicScalar(p_, Kind::ZeroAtPrecision, 0, 0, bound);
    }
    std::int64_t rel = std::min(prec_ - val_, o.prec_ - o.val_);
    if (rel <= 0) throw PrecisionExhausted("product retains no tracked digits");
    std::int64_t v = val_ + o.val_;
    BigInt u = unit_ * o.unit_ % big_pow(p_, rel);
    return PadicScalar(p_, Kind::Unit, v, u, v + rel);
}

PadicScalar PadicScalar::inv() const {
    if (kind_ == Kind::ExactZero) throw ZeroDivisor("inverse of exact zero");
    if (kind_ == Kind::ZeroAtPrecision)
        throw ZeroDivisor("inverse of a value indistinguishable from zero at its precision");
    std::int64_t rel = prec_ - val_;
    BigInt u = mod_inverse(unit_, big_pow(p_, rel));
    return PadicScalar(p_, Kind::Unit, -val_, u, -val_ + rel);
}

bool PadicScalar::operator==(const PadicScalar& o) const {
    if (p_ != o.p_ || kind_ != o.kind_) return false;
    if (kind_ == Kind::ExactZero) return true;
    if (kind_ == Kind::ZeroAtPrecision) return prec_ == o.prec_;
    return val_ == o.val_ && prec_ == o.prec_ && unit_ == o.unit_;
}

std::string PadicScalar::str() const {
    if (kind_ == Kind::ExactZero) return "0";
    std::ostringstream os;
    if (kind_ == Kind::ZeroAtPrecision) {
        os << "O(" << p_ << "^" << prec_ << ")";
        return os.str();
    }
    BigInt u = unit_;
    bool first = true;
    for (std::int64_t i = val_; i < prec_ && u != 0; ++i) {
        BigInt d = u % p_;
        u /= p_;
        if (d == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) {
            os << d;
        } else if (i == 1) {
            if (d != 1) os << d << "*";
            os << p_;
        } else {
            if (d != 1) os << d << "*";
            os << p_ << "^" << i;
        }
    }
    if (!first) os << " + ";
    os << "O(" << p_ << "^" << prec_ << ")";
    return os.str();
}

} // namespace prismcalc
