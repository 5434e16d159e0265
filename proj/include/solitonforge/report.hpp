// Machine-readable report document: ordered "key = value" lines.
// Values that are expressions use the same grammar the parser reads, so a
// report can be fed back through parse_expr. Keys are documented in
// docs/report-schema.md.
#pragma once

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace solitonforge {

class Report {
  public:
    void add(const std::string& key, const std::string& value) { kv_.emplace_back(key, value); }
    void add(const std::string& key, const char* value) { kv_.emplace_back(key, value); }
    void add(const std::string& key, int value) { add(key, std::to_string(value)); }
    void add(const std::string& key, size_t value) { add(key, std::to_string(value)); }
    void add(const std::string& key, bool value) { add(key, value ? "true" : "false"); }
    void add(const std::string& key, double value) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12e", value);
        add(key, std::string(buf));
    }

    bool empty() const { return kv_.empty(); }

    std::string to_text() const {
        std::ostringstream os;
        for (const auto& [k, v] : kv_) os << k << " = " << v << "\n";
        return os.str();
    }

  private:
    std::vector<std::pair<std::string, std::string>> kv_;
};

// FNV-1a, stable across runs and platforms; used to fingerprint model text
inline std::string fnv1a_hex(const std::string& data) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace solitonforge
