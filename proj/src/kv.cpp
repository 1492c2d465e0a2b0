#include "edq/kv.hpp"
#include "edq/types.hpp"

#include <fstream>
#include <istream>

namespace edq {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

KeyValues KeyValues::parse(std::istream& in) {
    KeyValues kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        require(eq != std::string::npos, "line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(t.substr(0, eq));
        require(!key.empty(), "line " + std::to_string(lineno) + ": empty key");
        require(!kv.has(key), "duplicate key " + key);
        kv.values_[key] = trim(t.substr(eq + 1));
    }
    return kv;
}

KeyValues KeyValues::read_file(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot open " + path);
    return parse(in);
}

std::string KeyValues::get(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::string KeyValues::require_string(const std::string& key) const {
    const auto it = values_.find(key);
    require(it != values_.end(), "missing key " + key);
    return it->second;
}

std::uint64_t KeyValues::get_u64(const std::string& key, std::uint64_t fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const auto v = std::stoull(it->second, &pos);
        require(pos == it->second.size(), "");
        return v;
    } catch (const std::exception&) {
        throw PreconditionError("key " + key + ": expected an unsigned integer");
    }
}

double KeyValues::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        require(pos == it->second.size(), "");
        return v;
    } catch (const std::exception&) {
        throw PreconditionError("key " + key + ": expected a number");
    }
}

bool KeyValues::get_bool(const std::string& key, bool fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "1" || it->second == "true" || it->second == "yes") return true;
    if (it->second == "0" || it->second == "false" || it->second == "no") return false;
    throw PreconditionError("key " + key + ": expected a boolean");
}

} // namespace edq
