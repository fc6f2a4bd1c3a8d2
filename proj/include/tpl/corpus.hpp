#pragma once

#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "tpl/config.hpp"
#include "tpl/lexicon.hpp"
#include "tpl/model.hpp"
#include "tpl/tokenizer.hpp"
#include "tpl/unicode.hpp"

// Message ingestion: JSON-lines records, validity classification (bot, spam,
// non-English) and the sampling modes that pick which messages are analyzed.

namespace tpl::cor {

using json = nlohmann::json;

enum class SamplingMode : std::uint8_t { BrandPosts, AtRepliesOnly, All };

inline std::optional<SamplingMode> parse_sampling_mode(std::string_view s) {
    if (s == "brand") return SamplingMode::BrandPosts;
    if (s == "at-replies") return SamplingMode::AtRepliesOnly;
    if (s == "all") return SamplingMode::All;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Records

inline Message parse_record(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("bad JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("record is not a JSON object");

    const auto str_field = [&](const char* key, bool required) -> std::string {
        const auto it = j.find(key);
        if (it == j.end()) {
            if (required)
                throw std::runtime_error(std::string("missing field '") + key +
                                         "'");
            return {};
        }
        if (it->is_string()) return it->get<std::string>();
        if (it->is_number_integer() && std::string_view(key) == "id")
            return std::to_string(it->get<long long>());
        throw std::runtime_error(std::string("field '") + key +
                                 "' is not a string");
    };
    const auto bool_field = [&](const char* key) {
        const auto it = j.find(key);
        if (it == j.end()) return false;
        if (!it->is_boolean())
            throw std::runtime_error(std::string("field '") + key +
                                     "' is not a boolean");
        return it->get<bool>();
    };

    Message m;
    m.id = str_field("id", true);
    try {
        m.text = tok::normalize(str_field("text", true));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("bad text: ") + e.what());
    }
    m.platform = parse_platform(str_field("platform", false));
    m.account = str_field("account", false);
    m.account_kind = parse_account_kind(str_field("account_kind", false));
    m.is_reply = bool_field("is_reply") || m.text.starts_with("@");
    m.is_repost = bool_field("is_repost");
    m.lang_hint = str_field("lang", false);
    m.created_at = str_field("created_at", false);
    return m;
}

inline std::string serialize_record(const Message& m,
                                    std::optional<Validity> validity = {}) {
    json j;
    j["id"] = m.id;
    j["text"] = m.text;
    j["platform"] = std::string(to_string(m.platform));
    j["account"] = m.account;
    j["account_kind"] = std::string(to_string(m.account_kind));
    j["is_reply"] = m.is_reply;
    j["is_repost"] = m.is_repost;
    if (!m.lang_hint.empty()) j["lang"] = m.lang_hint;
    if (!m.created_at.empty()) j["created_at"] = m.created_at;
    if (validity) j["validity"] = std::string(to_string(*validity));
    return j.dump();
}

struct RecordError {
    std::size_t line = 0;  // 1-based input line
    std::string message;
};

struct ParsedCorpus {
    std::vector<Message> messages;
    std::vector<RecordError> errors;
    std::size_t lines_read = 0;
};

// Blank lines are skipped; a failed line is recorded and parsing continues.
inline ParsedCorpus read_jsonl(std::istream& in) {
    ParsedCorpus out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        bool blank = true;
        for (const char c : line)
            if (c != ' ' && c != '\t') {
                blank = false;
                break;
            }
        if (blank) continue;
        ++out.lines_read;
        try {
            out.messages.push_back(parse_record(line));
        } catch (const std::exception& e) {
            out.errors.push_back({line_no, e.what()});
        }
    }
    return out;
}

inline ParsedCorpus read_jsonl_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open corpus: " + path);
    return read_jsonl(in);
}

// ---------------------------------------------------------------------------
// Validity

namespace detail {

// Classic '*'-wildcard match over folded text; '*' spans any run.
inline bool wildcard_match(std::string_view pattern, std::string_view text) {
    std::size_t p = 0, t = 0;
    std::size_t star = std::string_view::npos, star_t = 0;
    while (t < text.size()) {
        if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            star_t = t;
        } else if (p < pattern.size() && pattern[p] == text[t]) {
            ++p;
            ++t;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            t = ++star_t;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

inline bool is_word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

// Case-folded substring match whose ends do not split a word.
inline bool contains_term(const std::string& folded_text,
                          const std::string& term) {
    std::size_t pos = 0;
    while ((pos = folded_text.find(term, pos)) != std::string::npos) {
        const bool left_ok =
            pos == 0 || !is_word_char(folded_text[pos - 1]) ||
            !is_word_char(term.front());
        const std::size_t end = pos + term.size();
        const bool right_ok = end == folded_text.size() ||
                              !is_word_char(folded_text[end]) ||
                              !is_word_char(term.back());
        if (left_ok && right_ok) return true;
        ++pos;
    }
    return false;
}

}  // namespace detail

struct ValidityRules {
    std::vector<std::string> bot_patterns;  // folded whole-text wildcards
    std::vector<std::string> spam_terms;    // folded words and phrases
    std::unordered_set<std::string> stopwords;
    int spam_min_hits = 2;
    int nonenglish_min_words = 6;
    int nonenglish_min_stopword_hits = 1;
    double nonenglish_max_nonlatin_ratio = 0.5;
    std::vector<Validity> precedence = {Validity::NonEnglish, Validity::Bot,
                                        Validity::Spam};

    static std::vector<std::string> load_lines(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open list: " + path);
        std::vector<std::string> out;
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::size_t b = line.find_first_not_of(" \t");
            if (b == std::string::npos || line[b] == '#') continue;
            const std::size_t e = line.find_last_not_of(" \t");
            out.push_back(lex::detail::ascii_lower_copy(
                std::string_view(line).substr(b, e - b + 1)));
        }
        return out;
    }

    void apply_kv(const cfg::KvMap& kv) {
        spam_min_hits = cfg::kv_int(kv, "spam_min_hits", spam_min_hits);
        nonenglish_min_words =
            cfg::kv_int(kv, "nonenglish_min_words", nonenglish_min_words);
        nonenglish_min_stopword_hits = cfg::kv_int(
            kv, "nonenglish_min_stopword_hits", nonenglish_min_stopword_hits);
        nonenglish_max_nonlatin_ratio =
            cfg::kv_double(kv, "nonenglish_max_nonlatin_ratio",
                           nonenglish_max_nonlatin_ratio);
        const std::string prec =
            cfg::kv_string(kv, "validity_precedence", "");
        if (!prec.empty()) {
            std::vector<Validity> order;
            std::size_t b = 0;
            while (b <= prec.size()) {
                std::size_t e = prec.find(',', b);
                if (e == std::string::npos) e = prec.size();
                const auto v = parse_validity(prec.substr(b, e - b));
                if (!v || *v == Validity::Valid)
                    throw std::runtime_error(
                        "bad validity_precedence entry: " + prec.substr(b, e - b));
                order.push_back(*v);
                b = e + 1;
            }
            precedence = std::move(order);
        }
    }
};

inline Validity classify_validity(const Message& m, const ValidityRules& rules) {
    const std::string folded = lex::detail::ascii_lower_copy(m.text);

    const auto fires = [&](Validity v) {
        switch (v) {
            case Validity::Bot: {
                // A repost of a bot's message was still written by a person.
                if (m.is_repost || folded.starts_with("rt @")) return false;
                for (const auto& p : rules.bot_patterns)
                    if (detail::wildcard_match(p, folded)) return true;
                return false;
            }
            case Validity::Spam: {
                int hits = 0;
                for (const auto& t : rules.spam_terms)
                    if (detail::contains_term(folded, t) &&
                        ++hits >= rules.spam_min_hits)
                        return true;
                return false;
            }
            case Validity::NonEnglish: {
                if (!m.lang_hint.empty()) {
                    const auto& l = m.lang_hint;
                    return !(l == "en" || l.starts_with("en-") ||
                             l.starts_with("en_"));
                }
                const auto dec = uni::decode_utf8(m.text);
                std::size_t letters = 0, nonlatin = 0;
                for (const char32_t cp : dec.cps) {
                    if (!uni::is_letter(cp)) continue;
                    ++letters;
                    if (!uni::is_latin(cp)) ++nonlatin;
                }
                if (letters >= 4 &&
                    static_cast<double>(nonlatin) >
                        rules.nonenglish_max_nonlatin_ratio *
                            static_cast<double>(letters))
                    return true;
                std::size_t words = 0, hits = 0;
                std::size_t i = 0;
                while (i < folded.size()) {
                    if (!detail::is_word_char(folded[i])) {
                        ++i;
                        continue;
                    }
                    std::size_t j = i;
                    while (j < folded.size() && detail::is_word_char(folded[j]))
                        ++j;
                    ++words;
                    if (rules.stopwords.count(folded.substr(i, j - i))) ++hits;
                    i = j;
                }
                return words >= static_cast<std::size_t>(
                                    rules.nonenglish_min_words) &&
                       hits < static_cast<std::size_t>(
                                  rules.nonenglish_min_stopword_hits);
            }
            case Validity::Valid:
                return false;
        }
        return false;
    };

    for (const Validity v : rules.precedence)
        if (fires(v)) return v;
    return Validity::Valid;
}

// ---------------------------------------------------------------------------
// Sampling

inline bool selected(const Message& m, SamplingMode mode) {
    switch (mode) {
        case SamplingMode::BrandPosts: return !m.is_reply && !m.is_repost;
        case SamplingMode::AtRepliesOnly: return m.is_reply && !m.is_repost;
        case SamplingMode::All: return true;
    }
    return true;
}

inline std::vector<Message> select(std::vector<Message> messages,
                                   SamplingMode mode) {
    std::erase_if(messages,
                  [mode](const Message& m) { return !selected(m, mode); });
    return messages;
}

}  // namespace tpl::cor
