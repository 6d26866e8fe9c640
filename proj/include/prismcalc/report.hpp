#pragma once

#include <string>
#include <utility>
#include <vector>

namespace prismcalc {

/// Deterministic command report: a machine-readable key/value section plus a
/// human-readable section. Every reported number carries its guaranteed
/// precision in the value text.
class Report {
public:
    explicit Report(std::string command) : command_(std::move(command)) {
        add("command", command_);
    }

    void add(const std::string& key, const std::string& value) { kv_.emplace_back(key, value); }
    void add(const std::string& key, std::int64_t value) { add(key, std::to_string(value)); }
    void human(const std::string& line) { human_.push_back(line); }

    const std::vector<std::pair<std::string, std::string>>& entries() const { return kv_; }

    std::string render_text() const;
    std::string render_json() const;

private:
    std::string command_;
    std::vector<std::pair<std::string, std::string>> kv_;
    std::vector<std::string> human_;
};

} // namespace prismcalc
