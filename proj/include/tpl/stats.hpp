#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "tpl/model.hpp"

// Aggregation: per-account instance counts, category share lines per account
// kind and overall, and message-level prevalence, with text/CSV table output.

namespace tpl::stats {

inline constexpr std::size_t kCategories = 5;

inline constexpr std::size_t category_index(TplCategory c) {
    return static_cast<std::size_t>(c);
}

// Display rounding: half-up at one decimal. Counts stay exact internally.
inline double round1(double x) {
    return std::floor(x * 10.0 + 0.5) / 10.0;
}

struct StatsRow {
    std::string account;
    AccountKind account_kind = AccountKind::Unknown;
    std::uint64_t messages_analyzed = 0;
    std::uint64_t messages_with_tpl = 0;
    std::uint64_t instances_total = 0;
    std::array<std::uint64_t, kCategories> instances_by_category{};

    bool operator==(const StatsRow&) const = default;
};

struct ShareLine {
    std::uint64_t instances_total = 0;
    std::array<double, kCategories> pct{};  // rounded to one decimal

    bool operator==(const ShareLine&) const = default;
};

inline ShareLine share_line(std::uint64_t total,
                            const std::array<std::uint64_t, kCategories>& by) {
    ShareLine line;
    line.instances_total = total;
    for (std::size_t i = 0; i < kCategories; ++i)
        line.pct[i] = total == 0
                          ? 0.0
                          : round1(100.0 * static_cast<double>(by[i]) /
                                   static_cast<double>(total));
    return line;
}

struct StatsReport {
    std::vector<StatsRow> rows;  // sorted by (account_kind, account)
    std::map<AccountKind, ShareLine> group_shares;  // zero-total groups absent
    std::optional<ShareLine> overall_shares;        // absent when no instances
    std::uint64_t messages_analyzed = 0;
    std::uint64_t messages_with_tpl = 0;

    double prevalence() const {
        return messages_analyzed == 0
                   ? 0.0
                   : static_cast<double>(messages_with_tpl) /
                         static_cast<double>(messages_analyzed);
    }
};

// Rebuilds the derived share lines from the rows (counts are untouched).
inline void recompute_shares(StatsReport& r) {
    r.group_shares.clear();
    r.overall_shares.reset();
    std::map<AccountKind, std::pair<std::uint64_t,
                                    std::array<std::uint64_t, kCategories>>>
        groups;
    std::uint64_t total = 0;
    std::array<std::uint64_t, kCategories> by{};
    for (const auto& row : r.rows) {
        auto& g = groups[row.account_kind];
        g.first += row.instances_total;
        total += row.instances_total;
        for (std::size_t i = 0; i < kCategories; ++i) {
            g.second[i] += row.instances_by_category[i];
            by[i] += row.instances_by_category[i];
        }
    }
    for (const auto& [kind, g] : groups)
        if (g.first > 0) r.group_shares[kind] = share_line(g.first, g.second);
    if (total > 0) r.overall_shares = share_line(total, by);
}

// ---------------------------------------------------------------------------
// Accumulation

class Accumulator {
  public:
    // Messages that are not Valid are ignored entirely.
    void add(const Message& m, Validity validity,
             const std::vector<Annotation>& annotations) {
        if (validity != Validity::Valid) return;
        auto& row = rows_[{m.account_kind, m.account}];
        row.account = m.account;
        row.account_kind = m.account_kind;
        ++row.messages_analyzed;
        ++analyzed_;
        if (!annotations.empty()) {
            ++row.messages_with_tpl;
            ++with_tpl_;
        }
        for (const auto& a : annotations) {
            ++row.instances_total;
            ++row.instances_by_category[category_index(a.category)];
        }
    }

    StatsReport report() const {
        StatsReport r;
        r.rows.reserve(rows_.size());
        for (const auto& [key, row] : rows_) r.rows.push_back(row);
        r.messages_analyzed = analyzed_;
        r.messages_with_tpl = with_tpl_;
        recompute_shares(r);
        return r;
    }

  private:
    std::map<std::pair<AccountKind, std::string>, StatsRow> rows_;
    std::uint64_t analyzed_ = 0;
    std::uint64_t with_tpl_ = 0;
};

// Builds a report straight from precounted rows; message totals default to
// the row sums and may be overwritten when they are known independently.
inline StatsReport report_from_rows(std::vector<StatsRow> rows) {
    StatsReport r;
    r.rows = std::move(rows);
    std::sort(r.rows.begin(), r.rows.end(),
              [](const StatsRow& a, const StatsRow& b) {
                  return std::tie(a.account_kind, a.account) <
                         std::tie(b.account_kind, b.account);
              });
    for (const auto& row : r.rows) {
        r.messages_analyzed += row.messages_analyzed;
        r.messages_with_tpl += row.messages_with_tpl;
    }
    recompute_shares(r);
    return r;
}

// Counts add per (account_kind, account) key; shares are recomputed.
// Forms a commutative monoid with the default-constructed report as identity.
inline StatsReport merge(const StatsReport& a, const StatsReport& b) {
    std::map<std::pair<AccountKind, std::string>, StatsRow> keyed;
    const auto fold = [&](const StatsReport& r) {
        for (const auto& row : r.rows) {
            auto& dst = keyed[{row.account_kind, row.account}];
            dst.account = row.account;
            dst.account_kind = row.account_kind;
            dst.messages_analyzed += row.messages_analyzed;
            dst.messages_with_tpl += row.messages_with_tpl;
            dst.instances_total += row.instances_total;
            for (std::size_t i = 0; i < kCategories; ++i)
                dst.instances_by_category[i] += row.instances_by_category[i];
        }
    };
    fold(a);
    fold(b);
    StatsReport out;
    out.rows.reserve(keyed.size());
    for (const auto& [key, row] : keyed) out.rows.push_back(row);
    out.messages_analyzed = a.messages_analyzed + b.messages_analyzed;
    out.messages_with_tpl = a.messages_with_tpl + b.messages_with_tpl;
    recompute_shares(out);
    return out;
}

// ---------------------------------------------------------------------------
// Output

enum class TableFormat : std::uint8_t { AlignedText, Csv };

namespace detail {

inline std::string pct1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

inline std::string grouped(std::uint64_t n) {
    std::string digits = std::to_string(n);
    std::string out;
    out.reserve(digits.size() + digits.size() / 3);
    const std::size_t lead = digits.size() % 3 == 0 ? 3 : digits.size() % 3;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i != 0 && (i - lead) % 3 == 0 && i >= lead) out += ',';
        out += digits[i];
    }
    return out;
}

inline std::string row_cells(const StatsRow& row) {
    std::string out = std::to_string(row.instances_total);
    for (std::size_t i = 0; i < kCategories; ++i) {
        const std::uint64_t c = row.instances_by_category[i];
        const double pct =
            row.instances_total == 0
                ? 0.0
                : round1(100.0 * static_cast<double>(c) /
                         static_cast<double>(row.instances_total));
        out += "  " + std::to_string(c) + " (" + pct1(pct) + "%)";
    }
    return out;
}

}  // namespace detail

inline constexpr std::array<std::string_view, kCategories> kCategoryHeaders = {
    "Voice Quality", "Vocalization", "Tactile Kinesic", "Visual Kinesic",
    "Artifact"};
inline constexpr std::array<std::string_view, kCategories> kCategoryColumns = {
    "voice_quality", "vocalization", "tactile_kinesic", "visual_kinesic",
    "artifact"};

inline std::string emit_table(const StatsReport& r, TableFormat format) {
    std::ostringstream out;
    if (format == TableFormat::Csv) {
        out << "account,account_kind,messages_analyzed,messages_with_tpl,"
               "instances_total";
        for (const auto col : kCategoryColumns) out << ',' << col;
        out << '\n';
        for (const auto& row : r.rows) {
            std::string account = row.account;
            if (account.find_first_of(",\"\n") != std::string::npos) {
                std::string quoted = "\"";
                for (const char c : account) {
                    if (c == '"') quoted += '"';
                    quoted += c;
                }
                account = quoted + "\"";
            }
            out << account << ',' << to_string(row.account_kind) << ','
                << row.messages_analyzed << ',' << row.messages_with_tpl << ','
                << row.instances_total;
            for (const auto c : row.instances_by_category) out << ',' << c;
            out << '\n';
        }
        return std::move(out).str();
    }

    std::size_t label_w = std::string_view("Account").size();
    for (const auto& row : r.rows) label_w = std::max(label_w, row.account.size());
    for (const auto& [kind, line] : r.group_shares)
        label_w = std::max(label_w, std::string(to_string(kind)).size() + 6);
    const auto pad = [&](std::string_view s) {
        std::string p(s);
        p.resize(std::max(label_w, p.size()), ' ');
        return p;
    };

    out << pad("Account") << "  Instances of TPL";
    for (const auto h : kCategoryHeaders) out << "  " << h;
    out << '\n';
    std::optional<AccountKind> current;
    const auto close_group = [&](AccountKind kind) {
        const auto it = r.group_shares.find(kind);
        if (it == r.group_shares.end()) return;
        out << pad(std::string(to_string(kind)) + " total") << "  "
            << it->second.instances_total;
        for (const double p : it->second.pct)
            out << "  " << detail::pct1(p) << '%';
        out << '\n';
    };
    for (const auto& row : r.rows) {
        if (current && *current != row.account_kind) close_group(*current);
        current = row.account_kind;
        out << pad(row.account) << "  " << detail::row_cells(row) << '\n';
    }
    if (current) close_group(*current);
    if (r.overall_shares) {
        out << pad("overall") << "  " << r.overall_shares->instances_total;
        for (const double p : r.overall_shares->pct)
            out << "  " << detail::pct1(p) << '%';
        out << '\n';
    }
    out << '\n'
        << "Of the " << detail::grouped(r.messages_analyzed)
        << " messages that were analyzed, "
        << detail::grouped(r.messages_with_tpl) << " ("
        << detail::pct1(round1(100.0 * r.prevalence()))
        << "%) contained one or more instances of TPL.\n";
    return std::move(out).str();
}

// Parses emit_table's CSV output back into rows (quoted accounts included).
inline std::vector<StatsRow> parse_csv(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        if (nl > pos) lines.emplace_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    if (lines.empty()) throw std::runtime_error("CSV is empty");

    const auto split = [](const std::string& line) {
        std::vector<std::string> fields;
        std::string cur;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char c = line[i];
            if (quoted) {
                if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else if (c == '"') {
                    quoted = false;
                } else {
                    cur += c;
                }
            } else if (c == '"' && cur.empty()) {
                quoted = true;
            } else if (c == ',') {
                fields.push_back(std::move(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        fields.push_back(std::move(cur));
        return fields;
    };

    std::string expected =
        "account,account_kind,messages_analyzed,messages_with_tpl,"
        "instances_total";
    for (const auto col : kCategoryColumns) {
        expected += ',';
        expected += col;
    }
    if (lines[0] != expected)
        throw std::runtime_error("unrecognized CSV header: " + lines[0]);

    const auto num = [](const std::string& s) -> std::uint64_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw std::runtime_error("bad count in CSV: '" + s + "'");
        return std::stoull(s);
    };

    std::vector<StatsRow> rows;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto f = split(lines[li]);
        if (f.size() != 5 + kCategories)
            throw std::runtime_error("wrong CSV field count on line " +
                                     std::to_string(li + 1));
        StatsRow row;
        row.account = f[0];
        row.account_kind = parse_account_kind(f[1]);
        row.messages_analyzed = num(f[2]);
        row.messages_with_tpl = num(f[3]);
        row.instances_total = num(f[4]);
        for (std::size_t i = 0; i < kCategories; ++i)
            row.instances_by_category[i] = num(f[5 + i]);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace tpl::stats
