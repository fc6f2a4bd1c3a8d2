#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

// Plain-text key=value configuration parsing. A line whose first non-blank
// character is '#' is a comment; '#' elsewhere is literal, so symbol-set
// values like "#$%^&*@!" survive. Values are trimmed verbatim.

namespace tpl::cfg {

using KvMap = std::map<std::string, std::string>;

inline KvMap parse_kv_text(std::string_view text, const std::string& name) {
    KvMap out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++line_no;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                                 line.back() == '\r'))
            line.remove_suffix(1);
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
            line.remove_prefix(1);
        if (line.empty() || line.front() == '#') continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw std::runtime_error(name + ":" + std::to_string(line_no) +
                                     ": expected key=value");
        std::string_view key = line.substr(0, eq);
        std::string_view val = line.substr(eq + 1);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t'))
            key.remove_suffix(1);
        while (!val.empty() && (val.front() == ' ' || val.front() == '\t'))
            val.remove_prefix(1);
        if (key.empty())
            throw std::runtime_error(name + ":" + std::to_string(line_no) +
                                     ": empty key");
        if (out.count(std::string(key)))
            throw std::runtime_error(name + ":" + std::to_string(line_no) +
                                     ": duplicate key '" + std::string(key) + "'");
        out.emplace(std::string(key), std::string(val));
    }
    return out;
}

inline KvMap parse_kv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_kv_text(buf.str(), path);
}

inline int kv_int(const KvMap& kv, const std::string& key, int fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        std::size_t used = 0;
        const int v = std::stoi(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::runtime_error("config key '" + key + "' is not an integer: " +
                                 it->second);
    }
}

inline bool kv_bool(const KvMap& kv, const std::string& key, bool fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw std::runtime_error("config key '" + key + "' is not a boolean: " +
                             it->second);
}

inline std::string kv_string(const KvMap& kv, const std::string& key,
                             std::string fallback) {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

inline double kv_double(const KvMap& kv, const std::string& key,
                        double fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        std::size_t used = 0;
        const double v = std::stod(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::runtime_error("config key '" + key + "' is not a number: " +
                                 it->second);
    }
}

}  // namespace tpl::cfg
