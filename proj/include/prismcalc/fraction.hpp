#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace prismcalc {

// Exact rational with an explicit +infinity, used for pi-normalized valuations
// and Newton polygon slopes. Magnitudes stay tiny, so int64 components suffice.
class Frac {
public:
    constexpr Frac() : num_(0), den_(1), inf_(false) {}
    constexpr Frac(std::int64_t n) : num_(n), den_(1), inf_(false) {}
    Frac(std::int64_t n, std::int64_t d) : num_(n), den_(d), inf_(false) {
        if (d == 0) throw std::invalid_argument("Frac: zero denominator");
        normalize();
    }

    static constexpr Frac infinity() {
        Frac f;
        f.inf_ = true;
        return f;
    }

    bool is_infinite() const { return inf_; }
    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Frac operator+(const Frac& o) const {
        if (inf_ || o.inf_) return infinity();
        return Frac(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Frac operator-(const Frac& o) const {
        if (inf_) return infinity();
        if (o.inf_) throw std::invalid_argument("Frac: infinity subtrahend");
        return Frac(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Frac operator-() const {
        if (inf_) throw std::invalid_argument("Frac: negating infinity");
        return Frac(-num_, den_);
    }
    Frac operator*(const Frac& o) const {
        if (inf_ || o.inf_) return infinity();
        return Frac(num_ * o.num_, den_ * o.den_);
    }
    Frac operator/(const Frac& o) const {
        if (o.inf_ || o.num_ == 0) throw std::invalid_argument("Frac: bad divisor");
        if (inf_) return infinity();
        return Frac(num_ * o.den_, den_ * o.num_);
    }

    bool operator==(const Frac& o) const {
        if (inf_ || o.inf_) return inf_ == o.inf_;
        return num_ == o.num_ && den_ == o.den_;
    }
    std::strong_ordering operator<=>(const Frac& o) const {
        if (inf_ && o.inf_) return std::strong_ordering::equal;
        if (inf_) return std::strong_ordering::greater;
        if (o.inf_) return std::strong_ordering::less;
        return num_ * o.den_ <=> o.num_ * den_;
    }

    std::string str() const {
        if (inf_) return "+inf";
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_;
    std::int64_t den_;
    bool inf_;
};

inline Frac min(const Frac& a, const Frac& b) { return a < b ? a : b; }

} // namespace prismcalc
