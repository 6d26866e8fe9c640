#include "prismcalc/report.hpp"

#include <sstream>

#include <json.hpp>

namespace prismcalc {

std::string Report::render_text() const {
    std::ostringstream os;
    for (const auto& line : human_) os << line << "\n";
    os << "---\n";
    for (const auto& [k, v] : kv_) os << k << " = " << v << "\n";
    return os.str();
}

std::string Report::render_json() const {
    nlohmann::ordered_json j;
    for (const auto& [k, v] : kv_) {
        if (j.contains(k)) {
            // repeated keys become arrays, preserving order
            if (!j[k].is_array()) j[k] = nlohmann::ordered_json::array({j[k]});
            j[k].push_back(v);
        } else {
            j[k] = v;
        }
    }
    return j.dump(2) + "\n";
}

} // namespace prismcalc
