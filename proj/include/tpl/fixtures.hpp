#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "tpl/corpus.hpp"
#include "tpl/engine.hpp"
#include "tpl/model.hpp"
#include "tpl/stats.hpp"
#include "tpl/unicode.hpp"

// Fixture suites: golden annotation cases (JSON lines) and precounted report
// tables (CSV), loaded through a checksum manifest that rejects silent edits.

namespace tpl::fix {

struct ExpectedAnnotation {
    Span span;
    TplCategory category = TplCategory::VQ;
    std::optional<TplSubtype> subtype;
    std::string surface;  // slice of the case text; empty for empty spans
};

struct GoldenCase {
    std::string id;
    std::string text;
    Platform platform = Platform::Generic;
    std::string source;  // derivation oracle this case is pinned to
    std::optional<std::vector<ExpectedAnnotation>> expect;
    std::optional<Validity> validity;
    std::optional<std::string> inline_rendering;
};

struct TableFixture {
    std::string name;  // file stem, e.g. "table1"
    std::vector<stats::StatsRow> rows;
    std::uint64_t messages_analyzed = 0;
    std::uint64_t messages_with_tpl = 0;
};

struct FixtureSuite {
    std::vector<GoldenCase> golden;
    std::vector<TableFixture> tables;
};

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open fixture file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

// Locates the nth occurrence (1-based) of `surface` in `text`, both compared
// as Unicode scalar sequences, and returns its scalar span.
inline Span resolve_span(const std::string& text, const std::string& surface,
                         int occurrence, const std::string& where) {
    const auto t = uni::decode_utf8(text);
    const auto s = uni::decode_utf8(surface);
    if (!t.ok || !s.ok)
        throw std::runtime_error(where + ": fixture text is not valid UTF-8");
    if (s.cps.empty() || occurrence < 1)
        throw std::runtime_error(where + ": unresolvable surface reference");
    int seen = 0;
    for (std::size_t i = 0; i + s.cps.size() <= t.cps.size(); ++i) {
        if (!std::equal(s.cps.begin(), s.cps.end(), t.cps.begin() + i)) continue;
        if (++seen == occurrence)
            return Span{i, i + s.cps.size()};
    }
    throw std::runtime_error(where + ": surface '" + surface +
                             "' occurrence " + std::to_string(occurrence) +
                             " not found in case text");
}

inline GoldenCase parse_golden(const std::string& line,
                               const std::string& where) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(where + ": bad JSON: " + e.what());
    }
    const auto req = [&](const char* key) -> std::string {
        const auto it = j.find(key);
        if (it == j.end() || !it->is_string())
            throw std::runtime_error(where + ": missing string field '" +
                                     key + "'");
        return it->get<std::string>();
    };
    GoldenCase c;
    c.id = req("id");
    c.text = req("text");
    c.source = req("source");
    if (c.source.empty())
        throw std::runtime_error(where + ": case '" + c.id +
                                 "' has no source oracle");
    const std::string label = where + " case '" + c.id + "'";
    if (j.contains("platform"))
        c.platform = parse_platform(j["platform"].get<std::string>());
    if (j.contains("validity")) {
        const auto v = parse_validity(j["validity"].get<std::string>());
        if (!v)
            throw std::runtime_error(label + ": unknown validity '" +
                                     j["validity"].get<std::string>() + "'");
        c.validity = *v;
    }
    if (j.contains("inline"))
        c.inline_rendering = j["inline"].get<std::string>();
    if (j.contains("expect")) {
        const auto& arr = j["expect"];
        if (!arr.is_array())
            throw std::runtime_error(label + ": 'expect' must be an array");
        std::vector<ExpectedAnnotation> expected;
        for (const auto& e : arr) {
            ExpectedAnnotation x;
            const auto cat = parse_category(e.at("category").get<std::string>());
            if (!cat)
                throw std::runtime_error(label + ": unknown category '" +
                                         e.at("category").get<std::string>() +
                                         "'");
            x.category = *cat;
            if (e.contains("subtype")) {
                const auto sub = parse_subtype(
                    x.category, e.at("subtype").get<std::string>());
                if (!sub)
                    throw std::runtime_error(
                        label + ": unknown subtype '" +
                        e.at("subtype").get<std::string>() + "'");
                x.subtype = *sub;
            }
            if (e.contains("start") || e.contains("end")) {
                x.span = Span{e.at("start").get<std::size_t>(),
                              e.at("end").get<std::size_t>()};
                const auto t = uni::decode_utf8(c.text);
                if (x.span.end < x.span.start || x.span.end > t.cps.size())
                    throw std::runtime_error(label + ": span out of bounds");
                x.surface =
                    uni::encode_utf8(t.cps, x.span.start, x.span.end);
            } else {
                x.surface = e.at("surface").get<std::string>();
                const int occurrence =
                    e.contains("occurrence") ? e.at("occurrence").get<int>() : 1;
                x.span = resolve_span(c.text, x.surface, occurrence, label);
            }
            expected.push_back(std::move(x));
        }
        std::sort(expected.begin(), expected.end(),
                  [](const ExpectedAnnotation& a, const ExpectedAnnotation& b) {
                      return std::tie(a.span.start, a.category, a.span.end) <
                             std::tie(b.span.start, b.category, b.span.end);
                  });
        c.expect = std::move(expected);
    }
    return c;
}

inline std::vector<GoldenCase> parse_golden_file(const std::string& bytes,
                                                 const std::string& name) {
    std::vector<GoldenCase> out;
    std::istringstream in(bytes);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        out.push_back(
            parse_golden(line, name + ":" + std::to_string(line_no)));
    }
    return out;
}

inline TableFixture parse_table_file(const std::string& bytes,
                                     const std::string& name) {
    TableFixture out;
    out.name = name.substr(0, name.find('.'));
    std::istringstream in(bytes);
    std::string line, csv;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.starts_with("#")) {
            csv += line;
            csv += '\n';
            continue;
        }
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error(name + ": malformed metadata line: " + line);
        const std::string key = line.substr(1, colon - 1);
        const auto value = std::stoull(line.substr(colon + 1));
        if (key.find("messages_analyzed") != std::string::npos)
            out.messages_analyzed = value;
        else if (key.find("messages_with_tpl") != std::string::npos)
            out.messages_with_tpl = value;
        else
            throw std::runtime_error(name + ": unknown metadata key: " + key);
    }
    try {
        out.rows = stats::parse_csv(csv);
    } catch (const std::exception& e) {
        throw std::runtime_error(name + ": " + e.what());
    }
    for (const auto& row : out.rows) {
        std::uint64_t sum = 0;
        for (const auto c : row.instances_by_category) sum += c;
        if (sum != row.instances_total)
            throw std::runtime_error(name + ": category counts for '" +
                                     row.account +
                                     "' do not sum to the instance total");
    }
    return out;
}

}  // namespace detail

// Parses pre-counted table text: '#' metadata lines followed by a stats CSV.
inline TableFixture parse_table(const std::string& bytes,
                                const std::string& name) {
    return detail::parse_table_file(bytes, name);
}

// Loads every file listed in dir/CHECKSUMS, verifying content hashes first.
// JSONL entries become golden cases, CSV entries become table fixtures.
inline FixtureSuite load_fixtures(const std::string& dir) {
    std::ifstream manifest(dir + "/CHECKSUMS", std::ios::binary);
    if (!manifest)
        throw std::runtime_error("cannot open fixture manifest: " + dir +
                                 "/CHECKSUMS");
    FixtureSuite suite;
    std::string line;
    std::size_t entries = 0;
    while (std::getline(manifest, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.starts_with("#")) continue;
        const auto sep = line.find("  ");
        if (sep == std::string::npos || sep != 16)
            throw std::runtime_error("malformed manifest line: " + line);
        const std::string digest = line.substr(0, sep);
        const std::string name = line.substr(sep + 2);
        const std::string bytes = detail::read_file(dir + "/" + name);
        if (detail::hex64(fnv1a64(bytes)) != digest)
            throw std::runtime_error("fixture checksum mismatch: " + name);
        ++entries;
        if (name.ends_with(".jsonl")) {
            auto cases = detail::parse_golden_file(bytes, name);
            suite.golden.insert(suite.golden.end(),
                                std::make_move_iterator(cases.begin()),
                                std::make_move_iterator(cases.end()));
        } else if (name.ends_with(".csv")) {
            suite.tables.push_back(detail::parse_table_file(bytes, name));
        } else {
            throw std::runtime_error("unrecognized fixture type: " + name);
        }
    }
    if (entries == 0)
        throw std::runtime_error("fixture manifest is empty: " + dir +
                                 "/CHECKSUMS");
    return suite;
}

// ---------------------------------------------------------------------------
// Case execution (shared by the test suite and the CLI selftest)

struct CaseOutcome {
    bool passed = true;
    std::string diff;  // empty when passed
};

namespace detail {

inline std::string describe_span(const Span& s, TplCategory c,
                                 std::optional<TplSubtype> sub,
                                 const std::string& surface) {
    std::string out = "[" + std::to_string(s.start) + "," +
                      std::to_string(s.end) + ") " +
                      std::string(to_string(c));
    if (sub) out += "/" + std::string(to_string(*sub));
    out += " '" + surface + "'";
    return out;
}

}  // namespace detail

// Runs one golden case against a loaded engine and validity rule set.
// Annotation comparison is exact: same count, spans, categories, surfaces,
// and (where the case pins one) subtypes.
inline CaseOutcome run_case(const GoldenCase& c, const eng::Engine& engine,
                            const cor::ValidityRules& rules) {
    std::ostringstream diff;
    Message m;
    m.id = c.id;
    m.text = c.text;
    m.platform = c.platform;

    if (c.validity) {
        const Validity got = cor::classify_validity(m, rules);
        if (got != *c.validity)
            diff << "  validity: expected " << to_string(*c.validity)
                 << ", got " << to_string(got) << '\n';
    }
    if (c.expect || c.inline_rendering) {
        const auto annotated = eng::annotate(engine, m);
        if (c.expect) {
            const auto& want = *c.expect;
            const auto& got = annotated.annotations;
            bool equal = want.size() == got.size();
            for (std::size_t i = 0; equal && i < want.size(); ++i) {
                equal = want[i].span == got[i].span &&
                        want[i].category == got[i].category &&
                        want[i].surface == got[i].surface &&
                        (!want[i].subtype || *want[i].subtype == got[i].subtype);
            }
            if (!equal) {
                diff << "  expected " << want.size() << " annotation(s):\n";
                for (const auto& e : want)
                    diff << "    " +
                                detail::describe_span(e.span, e.category,
                                                      e.subtype, e.surface)
                         << '\n';
                diff << "  got " << got.size() << ":\n";
                for (const auto& a : got)
                    diff << "    " +
                                detail::describe_span(a.span, a.category,
                                                      a.subtype, a.surface)
                         << " (" << a.rule_id << ")\n";
            }
        }
        if (c.inline_rendering) {
            const auto rendered =
                res::render_inline(annotated.analysis, annotated.annotations);
            if (rendered != *c.inline_rendering)
                diff << "  inline: expected \"" << *c.inline_rendering
                     << "\", got \"" << rendered << "\"\n";
        }
    }

    CaseOutcome out;
    out.diff = std::move(diff).str();
    out.passed = out.diff.empty();
    return out;
}

}  // namespace tpl::fix
