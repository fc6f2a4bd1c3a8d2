#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tpl/model.hpp"
#include "tpl/unicode.hpp"

// Data-driven category lexicons and the emoji class map.
//
// Lexicon file format, one entry per line, '#' starts a comment:
//
//     <CATEGORY> <MATCH_MODE>[:<flag>] <canonical...>
//
// CATEGORY is VS, TK or VK. MATCH_MODE is exact, elongatable or multiword.
// The optional flag is "delimited" (the word also matches wrapped in *...*
// or (...)) or "delimited-only" (it matches only in wrapped form).

namespace tpl::lex {

enum class MatchMode : std::uint8_t { Exact, Elongatable, Multiword };

struct LexiconEntry {
    std::string canonical;  // lowercase
    TplCategory category = TplCategory::VS;
    MatchMode mode = MatchMode::Exact;
    bool allow_delimited = false;
    bool delimited_only = false;
};

namespace detail {

inline std::string ascii_lower_copy(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s)
        out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c + 32) : c);
    return out;
}

struct Run {
    char32_t cp;
    std::size_t count;
};

inline std::vector<Run> letter_runs(std::string_view word) {
    std::vector<Run> runs;
    const auto d = uni::decode_utf8(word);
    for (const char32_t raw : d.cps) {
        const char32_t c = uni::ascii_lower(raw);
        if (!runs.empty() && runs.back().cp == c)
            ++runs.back().count;
        else
            runs.push_back({c, 1});
    }
    return runs;
}

// Surface matches an elongatable canonical when its run-letter sequence is
// i >= r repetitions of the canonical's smallest repeating unit (r = reps in
// the canonical itself) and every run is at least as long as the unit's.
// Covers both letter stretching ("ummmm" ~ "umm") and unit repetition
// ("hahaha" ~ "haha").
inline bool elongation_match(const std::vector<Run>& surface,
                             const std::vector<Run>& canonical) {
    const std::size_t m = canonical.size();
    if (m == 0 || surface.empty()) return false;
    std::size_t p = m;
    std::size_t reps = 1;
    for (std::size_t cand = 1; cand < m; ++cand) {
        if (m % cand != 0) continue;
        bool periodic = true;
        for (std::size_t t = cand; t < m; ++t) {
            if (canonical[t].cp != canonical[t % cand].cp ||
                canonical[t].count != canonical[t % cand].count) {
                periodic = false;
                break;
            }
        }
        if (periodic) {
            p = cand;
            reps = m / cand;
            break;
        }
    }
    const std::size_t k = surface.size();
    if (k % p != 0 || k / p < reps) return false;
    for (std::size_t t = 0; t < k; ++t) {
        if (surface[t].cp != canonical[t % p].cp) return false;
        if (surface[t].count < canonical[t % p].count) return false;
    }
    return true;
}

}  // namespace detail

class Lexicon {
  public:
    struct Match {
        const LexiconEntry* entry = nullptr;
        bool elongated = false;
    };

    void add(LexiconEntry e) {
        for (const auto& prev : entries_) {
            if (prev.canonical == e.canonical && prev.category == e.category)
                throw std::runtime_error("duplicate lexicon entry: " + e.canonical);
        }
        const std::size_t idx = entries_.size();
        entries_.push_back(std::move(e));
        const auto& stored = entries_.back();
        if (stored.mode == MatchMode::Multiword) {
            phrases_.emplace(stored.canonical, idx);
            std::size_t words = 1;
            for (const char c : stored.canonical)
                if (c == ' ') ++words;
            if (words > max_phrase_words_) max_phrase_words_ = words;
        } else {
            by_word_.emplace(stored.canonical, idx);
        }
    }

    static Lexicon parse(std::string_view text, const std::string& name) {
        Lexicon out;
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t eol = text.find('\n', pos);
            std::string_view line = text.substr(
                pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
            ++line_no;
            pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

            if (const auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                                     line.back() == '\r'))
                line.remove_suffix(1);
            while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
                line.remove_prefix(1);
            if (line.empty()) continue;

            const auto fail = [&](const std::string& why) -> std::runtime_error {
                return std::runtime_error(name + ":" + std::to_string(line_no) +
                                          ": " + why);
            };

            const std::size_t sp1 = line.find(' ');
            if (sp1 == std::string_view::npos) throw fail("missing match mode");
            const std::size_t sp2 = line.find(' ', sp1 + 1);
            if (sp2 == std::string_view::npos) throw fail("missing canonical");

            const auto cat = parse_category(line.substr(0, sp1));
            if (!cat || *cat == TplCategory::VQ || *cat == TplCategory::A)
                throw fail("bad category");

            std::string_view mode_field = line.substr(sp1 + 1, sp2 - sp1 - 1);
            LexiconEntry e;
            e.category = *cat;
            if (const auto colon = mode_field.find(':');
                colon != std::string_view::npos) {
                const std::string_view flag = mode_field.substr(colon + 1);
                if (flag == "delimited") {
                    e.allow_delimited = true;
                } else if (flag == "delimited-only") {
                    e.allow_delimited = true;
                    e.delimited_only = true;
                } else {
                    throw fail("bad mode flag");
                }
                mode_field = mode_field.substr(0, colon);
            }
            if (mode_field == "exact") {
                e.mode = MatchMode::Exact;
            } else if (mode_field == "elongatable") {
                e.mode = MatchMode::Elongatable;
            } else if (mode_field == "multiword") {
                e.mode = MatchMode::Multiword;
            } else {
                throw fail("bad match mode");
            }
            e.canonical = detail::ascii_lower_copy(line.substr(sp2 + 1));
            if (e.canonical.empty()) throw fail("empty canonical");
            if (e.mode == MatchMode::Multiword &&
                e.canonical.find(' ') == std::string::npos)
                throw fail("multiword entry has a single word");
            if (e.mode != MatchMode::Multiword &&
                e.canonical.find(' ') != std::string::npos)
                throw fail("canonical contains a space");
            out.add(std::move(e));
        }
        return out;
    }

    static Lexicon load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open lexicon: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse(buf.str(), path);
    }

    std::optional<Match> match_word(
        std::string_view word,
        std::optional<TplCategory> category = std::nullopt) const {
        return match_impl(word, /*delimited=*/false, category);
    }

    std::optional<Match> match_delimited(
        std::string_view inner,
        std::optional<TplCategory> category = std::nullopt) const {
        return match_impl(inner, /*delimited=*/true, category);
    }

    // Exact lookup of a lowercased, single-space-joined phrase.
    const LexiconEntry* match_phrase(
        std::string_view phrase,
        std::optional<TplCategory> category = std::nullopt) const {
        const auto [lo, hi] = phrases_.equal_range(detail::ascii_lower_copy(phrase));
        const LexiconEntry* best = nullptr;
        for (auto it = lo; it != hi; ++it) {
            const auto& e = entries_[it->second];
            if (category && e.category != *category) continue;
            if (!best || e.category < best->category) best = &e;
        }
        return best;
    }

    std::size_t max_phrase_words() const { return max_phrase_words_; }
    const std::vector<LexiconEntry>& entries() const { return entries_; }

  private:
    std::optional<Match> match_impl(std::string_view word, bool delimited,
                                    std::optional<TplCategory> category) const {
        const std::string folded = detail::ascii_lower_copy(word);
        const auto eligible = [&](const LexiconEntry& e) {
            if (category && e.category != *category) return false;
            if (e.mode == MatchMode::Multiword) return false;
            if (delimited) return e.allow_delimited;
            return !e.delimited_only;
        };
        const auto [lo, hi] = by_word_.equal_range(folded);
        const LexiconEntry* best = nullptr;
        for (auto it = lo; it != hi; ++it) {
            const auto& e = entries_[it->second];
            if (eligible(e) && (!best || e.category < best->category)) best = &e;
        }
        if (best) return Match{best, false};
        // Elongation scan; the most specific (longest) canonical wins so
        // "ahhh" reports "ahh" rather than "ah".
        const auto runs = detail::letter_runs(folded);
        const auto better = [](const LexiconEntry& e, const LexiconEntry& b) {
            if (e.canonical.size() != b.canonical.size())
                return e.canonical.size() > b.canonical.size();
            if (e.canonical != b.canonical) return e.canonical < b.canonical;
            return e.category < b.category;
        };
        for (const auto& e : entries_) {
            if (e.mode != MatchMode::Elongatable || !eligible(e)) continue;
            if (!detail::elongation_match(runs, detail::letter_runs(e.canonical)))
                continue;
            if (!best || better(e, *best)) best = &e;
        }
        if (best) return Match{best, folded != best->canonical};
        return std::nullopt;
    }

    std::vector<LexiconEntry> entries_;
    std::unordered_multimap<std::string, std::size_t> by_word_;
    std::unordered_multimap<std::string, std::size_t> phrases_;
    std::size_t max_phrase_words_ = 1;
};

// One lowercase word or phrase per line; '#' comments.
inline std::unordered_set<std::string> load_word_list(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open word list: " + path);
    std::unordered_set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                                 line.back() == '\r'))
            line.pop_back();
        std::size_t b = 0;
        while (b < line.size() && (line[b] == ' ' || line[b] == '\t')) ++b;
        if (b < line.size()) out.insert(detail::ascii_lower_copy(line.substr(b)));
    }
    return out;
}

// Emoji cluster -> category. File format: one "<cluster> <CATEGORY>" per
// line. Lookups fall back from the exact cluster to the cluster without
// presentation/skin-tone modifiers, then to the base scalar; unknown
// clusters classify as artifacts.
class EmojiClassMap {
  public:
    static EmojiClassMap parse(std::string_view text, const std::string& name) {
        EmojiClassMap out;
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t eol = text.find('\n', pos);
            std::string_view line = text.substr(
                pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
            ++line_no;
            pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

            if (const auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                                     line.back() == '\r'))
                line.remove_suffix(1);
            while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
                line.remove_prefix(1);
            if (line.empty()) continue;

            const std::size_t sp = line.rfind(' ');
            if (sp == std::string_view::npos)
                throw std::runtime_error(name + ":" + std::to_string(line_no) +
                                         ": missing category");
            const auto cat = parse_category(line.substr(sp + 1));
            if (!cat)
                throw std::runtime_error(name + ":" + std::to_string(line_no) +
                                         ": bad category");
            std::string cluster(line.substr(0, sp));
            if (out.map_.count(cluster))
                throw std::runtime_error(name + ":" + std::to_string(line_no) +
                                         ": duplicate cluster");
            out.map_.emplace(std::move(cluster), *cat);
        }
        return out;
    }

    static EmojiClassMap load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open emoji map: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse(buf.str(), path);
    }

    TplCategory classify(std::string_view cluster) const {
        if (const auto it = map_.find(std::string(cluster)); it != map_.end())
            return it->second;
        const auto d = uni::decode_utf8(cluster);
        std::string stripped;
        for (const char32_t cp : d.cps) {
            if (cp == 0xFE0F || cp == 0xFE0E ||
                (cp >= 0x1F3FB && cp <= 0x1F3FF))
                continue;
            uni::append_utf8(cp, stripped);
        }
        if (stripped != cluster) {
            if (const auto it = map_.find(stripped); it != map_.end())
                return it->second;
        }
        if (!d.cps.empty()) {
            std::string base;
            uni::append_utf8(d.cps[0], base);
            if (const auto it = map_.find(base); it != map_.end())
                return it->second;
        }
        return TplCategory::A;
    }

    bool contains(std::string_view cluster) const {
        return map_.count(std::string(cluster)) > 0;
    }

    std::size_t size() const { return map_.size(); }
    const std::unordered_map<std::string, TplCategory>& entries() const {
        return map_;
    }

  private:
    std::unordered_map<std::string, TplCategory> map_;
};

}  // namespace tpl::lex
