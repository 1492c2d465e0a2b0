#pragma once

// Flat key=value text: one key per line, '#' comments, blank lines ignored.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

namespace edq {

class KeyValues {
public:
    static KeyValues parse(std::istream& in);
    static KeyValues read_file(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::string get(const std::string& key, const std::string& fallback) const;
    std::string require_string(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

} // namespace edq
