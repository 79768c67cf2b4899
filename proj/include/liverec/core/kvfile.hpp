#pragma once

#include <charconv>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace liverec::core {

// --- number <-> text helpers -------------------------------------------------
//
// All numeric text produced by the project goes through these so that output is
// deterministic byte for byte. Doubles use the shortest representation that
// parses back to the identical value; checkpoints use hexfloat for the same
// guarantee with full precision made explicit.

inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

inline std::string format_double_hex(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::hex);
    if (ec != std::errc()) throw std::runtime_error("format_double_hex failed");
    return std::string(buf, ptr);
}

inline double parse_double(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    return v;
}

// Counterpart of format_double_hex. Kept separate from parse_double: a bare
// hexfloat like "abc" must stay invalid in decimal contexts.
inline double parse_double_hex(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, std::chars_format::hex);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("not a hexfloat: '" + std::string(s) + "'");
    return v;
}

inline std::int64_t parse_int(std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    return v;
}

inline std::uint64_t parse_uint(std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("not an unsigned integer: '" + std::string(s) + "'");
    return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

// --- sectioned key=value documents -------------------------------------------
//
// Format shared by config files, metrics reports and run manifests:
//   [section]
//   key = value
// '#' starts a comment line. Parsing is strict: a key seen twice, or a line
// that is neither a section header nor key=value, is an error.

class KvDoc {
public:
    struct Entry {
        std::string key;
        std::string value;
    };
    struct Section {
        std::string name;
        std::vector<Entry> entries;

        const std::string* find(std::string_view key) const {
            for (const auto& e : entries)
                if (e.key == key) return &e.value;
            return nullptr;
        }
    };

    std::vector<Section> sections;

    Section& add_section(std::string name) {
        sections.push_back({std::move(name), {}});
        return sections.back();
    }

    const Section* find(std::string_view name) const {
        for (const auto& s : sections)
            if (s.name == name) return &s;
        return nullptr;
    }

    static KvDoc parse(std::string_view text) {
        KvDoc doc;
        Section* cur = nullptr;
        std::size_t lineno = 0;
        for (std::string_view line : split(text, '\n')) {
            ++lineno;
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
            while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
            if (line.empty() || line.front() == '#') continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw std::invalid_argument("line " + std::to_string(lineno) + ": malformed section header");
                doc.add_section(std::string(line.substr(1, line.size() - 2)));
                cur = &doc.sections.back();
                continue;
            }
            const std::size_t eq = line.find('=');
            if (eq == std::string_view::npos)
                throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
            if (cur == nullptr)
                throw std::invalid_argument("line " + std::to_string(lineno) + ": key outside any [section]");
            std::string_view key = line.substr(0, eq);
            std::string_view val = line.substr(eq + 1);
            while (!key.empty() && key.back() == ' ') key.remove_suffix(1);
            while (!val.empty() && val.front() == ' ') val.remove_prefix(1);
            if (key.empty())
                throw std::invalid_argument("line " + std::to_string(lineno) + ": empty key");
            if (cur->find(key) != nullptr)
                throw std::invalid_argument("line " + std::to_string(lineno) + ": duplicate key '" +
                                            std::string(key) + "' in [" + cur->name + "]");
            cur->entries.push_back({std::string(key), std::string(val)});
        }
        return doc;
    }

    std::string serialize() const {
        std::string out;
        for (std::size_t i = 0; i < sections.size(); ++i) {
            if (i > 0) out += '\n';
            out += '[';
            out += sections[i].name;
            out += "]\n";
            for (const auto& e : sections[i].entries) {
                out += e.key;
                out += " = ";
                out += e.value;
                out += '\n';
            }
        }
        return out;
    }
};

// Strict section reader: every key must be consumed exactly once, and nothing
// unknown may remain. Catches config typos instead of silently ignoring them.
class SectionReader {
public:
    SectionReader(const KvDoc::Section& s) : section_(s), used_(s.entries.size(), false) {}

    bool has(std::string_view key) const { return section_.find(key) != nullptr; }

    std::string_view get(std::string_view key) {
        for (std::size_t i = 0; i < section_.entries.size(); ++i) {
            if (section_.entries[i].key == key) {
                used_[i] = true;
                return section_.entries[i].value;
            }
        }
        throw std::invalid_argument("[" + section_.name + "] missing key '" + std::string(key) + "'");
    }

    std::string get_string(std::string_view key) { return std::string(get(key)); }
    double get_double(std::string_view key) { return parse_double(get(key)); }
    std::int64_t get_int(std::string_view key) { return parse_int(get(key)); }
    std::uint64_t get_uint(std::string_view key) { return parse_uint(get(key)); }
    bool get_bool(std::string_view key) {
        const auto v = get(key);
        if (v == "true") return true;
        if (v == "false") return false;
        throw std::invalid_argument("[" + section_.name + "] key '" + std::string(key) +
                                    "': expected true or false");
    }

    std::vector<double> get_doubles(std::string_view key) {
        std::vector<double> out;
        for (auto part : split(get(key), ','))
            if (!part.empty()) out.push_back(parse_double(part));
        return out;
    }

    std::vector<int> get_ints(std::string_view key) {
        std::vector<int> out;
        for (auto part : split(get(key), ','))
            if (!part.empty()) out.push_back(static_cast<int>(parse_int(part)));
        return out;
    }

    void finish() const {
        for (std::size_t i = 0; i < used_.size(); ++i)
            if (!used_[i])
                throw std::invalid_argument("[" + section_.name + "] unknown key '" +
                                            section_.entries[i].key + "'");
    }

private:
    const KvDoc::Section& section_;
    std::vector<bool> used_;
};

inline std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ',';
        out += format_double(v[i]);
    }
    return out;
}

inline std::string join_ints(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace liverec::core
