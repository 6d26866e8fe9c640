#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prismcalc/ht_crystal.hpp"

namespace prismcalc {

struct RationalLit {
    BigInt num;
    BigInt den = 1;
};

/// Parsed form of the line-oriented `key = value` crystal config.
struct CrystalConfig {
    std::int64_t p = 0;
    std::vector<RationalLit> E;  // low-to-high, including the leading 1
    std::int64_t precision = 12;
    std::int64_t degree = 6;
    std::uint64_t seed = 1;
    std::int64_t count = 50;
    // rows of A1; each entry a pi-basis coefficient list (singleton = plain rational)
    std::vector<std::vector<std::vector<RationalLit>>> a1;
    bool has_a1 = false;
};

CrystalConfig parse_config(const std::string& text);
std::string emit_config(const CrystalConfig& cfg);

/// Field + crystal realized from a config. The field is heap-held so the
/// KElement/KMatrix back-pointers stay valid across moves.
struct CrystalInstance {
    std::shared_ptr<LocalField> field;
    std::optional<HTCrystal> crystal;
};

/// Working precision = cfg.precision + e * v_p(max_degree!) + 2 (the n!
/// division margin).
CrystalInstance build_instance(const CrystalConfig& cfg);

std::int64_t vp_factorial(std::int64_t p, std::int64_t n);

} // namespace prismcalc
