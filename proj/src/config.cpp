#include "prismcalc/config.hpp"

#include <cctype>
#include <sstream>

#include "prismcalc/errors.hpp"

namespace prismcalc {

namespace {

// one parsed value: rational leaf or list
struct Value {
    bool is_list = false;
    RationalLit leaf;
    std::vector<Value> items;
};

class LineParser {
public:
    LineParser(int line, std::string text) : line_(line), s_(std::move(text)), pos_(0) {}

    Value parse_value() {
        skip_ws();
        if (eof()) fail("expected a value");
        if (s_[pos_] == '[') return parse_list();
        return Value{false, parse_rational(), {}};
    }

    void expect_end() {
        skip_ws();
        if (!eof()) fail("trailing characters after value");
    }

private:
    bool eof() const { return pos_ >= s_.size(); }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(line_, static_cast<int>(pos_) + 1, msg);
    }

    Value parse_list() {
        Value v;
        v.is_list = true;
        ++pos_;  // '['
        skip_ws();
        if (!eof() && s_[pos_] == ']') {
            ++pos_;
            return v;
        }
        for (;;) {
            v.items.push_back(parse_value());
            skip_ws();
            if (eof()) fail("unterminated list");
            if (s_[pos_] == ']') {
                ++pos_;
                return v;
            }
            if (s_[pos_] != ',') fail("expected ',' or ']'");
            ++pos_;
        }
    }

    BigInt parse_integer() {
        skip_ws();
        std::size_t start = pos_;
        if (!eof() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        std::size_t digits = pos_;
        while (!eof() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == digits) fail("expected an integer");
        return BigInt(s_.substr(start, pos_ - start));
    }

    RationalLit parse_rational() {
        RationalLit r;
        r.num = parse_integer();
        if (!eof() && s_[pos_] == '/') {
            ++pos_;
            r.den = parse_integer();
            if (r.den == 0) fail("zero denominator");
        }
        return r;
    }

    int line_;
    std::string s_;
    std::size_t pos_;
};

RationalLit as_rational(const Value& v, int line) {
    if (v.is_list) throw ParseError(line, 1, "expected a rational, found a list");
    return v.leaf;
}

std::int64_t as_int(const Value& v, int line) {
    RationalLit r = as_rational(v, line);
    if (r.den != 1) throw ParseError(line, 1, "expected an integer");
    return static_cast<std::int64_t>(r.num);
}

std::vector<RationalLit> as_rational_list(const Value& v, int line) {
    if (!v.is_list) throw ParseError(line, 1, "expected a list");
    std::vector<RationalLit> out;
    for (const auto& item : v.items) out.push_back(as_rational(item, line));
    return out;
}

bool is_small_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

CrystalConfig parse_config(const std::string& text) {
    CrystalConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool saw_p = false, saw_E = false;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(line_no, 1, "expected 'key = value'");
        std::string key = line.substr(a, line.find_last_not_of(" \t", eq - 1) + 1 - a);
        LineParser lp(line_no, line.substr(eq + 1));
        Value v = lp.parse_value();
        lp.expect_end();

        if (key == "p") {
            cfg.p = as_int(v, line_no);
            if (!is_small_prime(cfg.p)) throw ParseError(line_no, 1, "p must be prime");
            saw_p = true;
        } else if (key == "E") {
            cfg.E = as_rational_list(v, line_no);
            saw_E = true;
        } else if (key == "precision") {
            cfg.precision = as_int(v, line_no);
            if (cfg.precision < 1) throw ParseError(line_no, 1, "precision must be >= 1");
        } else if (key == "degree") {
            cfg.degree = as_int(v, line_no);
            if (cfg.degree < 0) throw ParseError(line_no, 1, "degree must be >= 0");
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(as_int(v, line_no));
        } else if (key == "count") {
            cfg.count = as_int(v, line_no);
            if (cfg.count < 1) throw ParseError(line_no, 1, "count must be >= 1");
        } else if (key == "A1") {
            if (!v.is_list) throw ParseError(line_no, 1, "A1 must be a list of rows");
            for (const auto& row : v.items) {
                if (!row.is_list) throw ParseError(line_no, 1, "A1 row must be a list");
                std::vector<std::vector<RationalLit>> parsed_row;
                for (const auto& entry : row.items) {
                    if (entry.is_list)
                        parsed_row.push_back(as_rational_list(entry, line_no));
                    else
                        parsed_row.push_back({as_rational(entry, line_no)});
                }
                cfg.a1.push_back(std::move(parsed_row));
            }
            cfg.has_a1 = true;
        } else {
            throw ParseError(line_no, static_cast<int>(a) + 1, "unknown key '" + key + "'");
        }
    }
    if (!saw_p) throw ParseError(line_no, 1, "missing key 'p'");
    if (!saw_E) throw ParseError(line_no, 1, "missing key 'E'");
    if (cfg.has_a1) {
        std::size_t d = cfg.a1.size();
        for (std::size_t i = 0; i < cfg.a1.size(); ++i)
            if (cfg.a1[i].size() != d)
                throw ParseError(line_no, 1,
                                 "A1 row " + std::to_string(i) + " has " +
                                     std::to_string(cfg.a1[i].size()) + " entries, expected " +
                                     std::to_string(d));
    }
    return cfg;
}

static std::string rational_str(const RationalLit& r) {
    std::ostringstream os;
    os << r.num;
    if (r.den != 1) os << "/" << r.den;
    return os.str();
}

std::string emit_config(const CrystalConfig& cfg) {
    std::ostringstream os;
    os << "p = " << cfg.p << "\n";
    os << "E = [";
    for (std::size_t i = 0; i < cfg.E.size(); ++i)
        os << (i ? ", " : "") << rational_str(cfg.E[i]);
    os << "]\n";
    os << "precision = " << cfg.precision << "\n";
    os << "degree = " << cfg.degree << "\n";
    if (cfg.has_a1) {
        os << "A1 = [";
        for (std::size_t i = 0; i < cfg.a1.size(); ++i) {
            os << (i ? ", " : "") << "[";
            for (std::size_t j = 0; j < cfg.a1[i].size(); ++j) {
                const auto& entry = cfg.a1[i][j];
                os << (j ? ", " : "");
                if (entry.size() == 1) {
                    os << rational_str(entry[0]);
                } else {
                    os << "[";
                    for (std::size_t k = 0; k < entry.size(); ++k)
                        os << (k ? ", " : "") << rational_str(entry[k]);
                    os << "]";
                }
            }
            os << "]";
        }
        os << "]\n";
    }
    return os.str();
}

std::int64_t vp_factorial(std::int64_t p, std::int64_t n) {
    std::int64_t v = 0;
    for (std::int64_t q = p; q <= n; q *= p) v += n / q;
    return v;
}

CrystalInstance build_instance(const CrystalConfig& cfg) {
    std::int64_t dmax = std::max<std::int64_t>(cfg.degree, 8);
    std::int64_t e = static_cast<std::int64_t>(cfg.E.size()) - 1;
    std::int64_t margin = e * vp_factorial(cfg.p, dmax) + 2;
    std::vector<std::pair<BigInt, BigInt>> ecoeffs;
    for (const auto& r : cfg.E) ecoeffs.emplace_back(r.num, r.den);
    auto field = std::make_shared<LocalField>(cfg.p, ecoeffs, cfg.precision + margin);

    CrystalInstance inst{field, std::nullopt};
    if (cfg.has_a1) {
        std::int64_t d = static_cast<std::int64_t>(cfg.a1.size());
        std::vector<KElement> entries;
        entries.reserve(d * d);
        for (const auto& row : cfg.a1)
            for (const auto& entry : row) {
                std::vector<std::pair<BigInt, BigInt>> pib;
                for (const auto& r : entry) pib.emplace_back(r.num, r.den);
                entries.push_back(field->from_pi_basis(pib));
            }
        inst.crystal = HTCrystal{field.get(), d, KMatrix(field.get(), d, std::move(entries))};
    }
    return inst;
}

} // namespace prismcalc
