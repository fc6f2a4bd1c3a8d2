#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tpl/model.hpp"
#include "tpl/unicode.hpp"

// Normalization and segmentation. segment() tiles the whole text: token
// spans are disjoint, sorted, and their union covers every scalar value.

namespace tpl::tok {

enum class TokenKind : std::uint8_t {
    Word,
    Number,
    PunctRun,
    EmojiRun,
    Emoticon,
    DelimitedExpr,
    Url,
    Mention,
    Hashtag,
    Whitespace,
    Other,
};

inline std::string_view to_string(TokenKind k) {
    switch (k) {
        case TokenKind::Word: return "Word";
        case TokenKind::Number: return "Number";
        case TokenKind::PunctRun: return "PunctRun";
        case TokenKind::EmojiRun: return "EmojiRun";
        case TokenKind::Emoticon: return "Emoticon";
        case TokenKind::DelimitedExpr: return "DelimitedExpr";
        case TokenKind::Url: return "Url";
        case TokenKind::Mention: return "Mention";
        case TokenKind::Hashtag: return "Hashtag";
        case TokenKind::Whitespace: return "Whitespace";
        case TokenKind::Other: return "Other";
    }
    return "?";
}

struct Token {
    Span span;
    TokenKind kind = TokenKind::Other;
    std::string surface;
};

// Inner string of a *word* / (word) token, without the delimiters.
inline std::string_view delimited_inner(const Token& t) {
    std::string_view s = t.surface;
    if (s.size() < 2) return {};
    return s.substr(1, s.size() - 2);
}

// Closed emoticon inventory. Kept free of forms that collide with prose
// ("8)", "D:"); letter-built faces are matched only at token boundaries.
inline const std::vector<std::string>& default_emoticons() {
    static const std::vector<std::string> kSet = {
        ":)",   ":-)",  "(:",   ":(",   ":-(",  "):",   ";)",   ";-)",
        ":D",   ":-D",  ";D",   ";-D",  ":P",   ":-P",  ":p",   ":-p",
        ":O",   ":-O",  ":o",   ":-o",  ":/",   ":-/",  ":\\",  ":-\\",
        ":|",   ":-|",  ":*",   ":-*",  ":'(",  ":'-(", ":')",  ":'-)",
        "=)",   "=(",   "=D",   "=P",   "=/",   "xD",   "XD",   ":3",
        ">:(",  ">:-(", ">:)",  "^_^",  "^-^",  "^^",   "o.O",  "O.o",
        "o_O",  "O_o",  "-_-",  "T-T",  "T_T",  "T.T",  ";_;",  ";-;",
    };
    return kSet;
}

// Symbol pictograms annotated as artifacts.
inline const std::vector<std::string>& default_pictograms() {
    static const std::vector<std::string> kSet = {"<3", "</3"};
    return kSet;
}

struct TokenizerOptions {
    bool hashtag_bodies_opaque = true;
    std::vector<std::string> emoticons = default_emoticons();
    std::vector<std::string> pictograms = default_pictograms();
};

// Decoded normalized text plus its grapheme boundaries.
struct DecodedText {
    std::vector<char32_t> cps;
    std::vector<bool> breaks;
};

inline DecodedText decode(std::string_view normalized) {
    auto d = uni::decode_utf8(normalized);
    if (!d.ok) throw std::invalid_argument("text is not valid UTF-8");
    DecodedText out;
    out.breaks = uni::grapheme_breaks(d.cps);
    out.cps = std::move(d.cps);
    return out;
}

// NFC + newline folding (CRLF and CR become LF). Throws on invalid UTF-8.
inline std::string normalize(std::string_view raw) {
    auto d = uni::decode_utf8(raw);
    if (!d.ok) throw std::invalid_argument("text is not valid UTF-8");
    std::vector<char32_t> folded;
    folded.reserve(d.cps.size());
    for (std::size_t i = 0; i < d.cps.size(); ++i) {
        if (d.cps[i] == 0x0D) {
            folded.push_back(0x0A);
            if (i + 1 < d.cps.size() && d.cps[i + 1] == 0x0A) ++i;
        } else {
            folded.push_back(d.cps[i]);
        }
    }
    return uni::encode_utf8(uni::nfc(folded));
}

namespace detail {

inline bool is_word_cp(char32_t c) {
    return uni::is_letter(c) || uni::is_digit(c) || uni::is_mark(c);
}

inline bool is_apostrophe(char32_t c) { return c == 0x27 || c == 0x2019; }

inline bool is_ascii_alnum_(char32_t c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
}

struct Scanner {
    const std::vector<char32_t>& cps;
    const std::vector<bool>& breaks;
    const TokenizerOptions& opts;

    char32_t at(std::size_t i) const { return i < cps.size() ? cps[i] : 0; }

    bool starts_with_ascii(std::size_t i, std::string_view pat) const {
        for (std::size_t k = 0; k < pat.size(); ++k) {
            if (uni::ascii_lower(at(i + k)) !=
                static_cast<char32_t>(static_cast<unsigned char>(pat[k])))
                return false;
        }
        return true;
    }

    // Longest entry of `set` matching at i, with a non-alphanumeric follower.
    std::size_t match_inventory(std::size_t i,
                                const std::vector<std::string>& set) const {
        std::size_t best = 0;
        for (const auto& entry : set) {
            const auto d = uni::decode_utf8(entry);
            if (d.cps.size() <= best || d.cps.size() > cps.size() - i) continue;
            bool ok = true;
            for (std::size_t k = 0; k < d.cps.size(); ++k) {
                if (cps[i + k] != d.cps[k]) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            const char32_t next = at(i + d.cps.size());
            if (next != 0 && (uni::is_letter(next) || uni::is_digit(next)))
                continue;
            best = d.cps.size();
        }
        return best;
    }

    static bool known_tld(std::string_view label) {
        static constexpr std::string_view kTlds[] = {
            "com", "net", "org", "edu", "gov", "mil", "io", "co",  "ly",
            "me",  "tv",  "gl",  "fm",  "us",  "uk",  "ca", "de",  "fr",
            "jp",  "au",  "info", "biz",
        };
        for (const auto t : kTlds)
            if (label == t) return true;
        return false;
    }

    // Returns end of a URL starting at i, or 0 when there is none.
    std::size_t try_url(std::size_t i) const {
        std::size_t j = i;
        bool scheme = false;
        if (starts_with_ascii(i, "http://") || starts_with_ascii(i, "https://")) {
            scheme = true;
            j = i + (starts_with_ascii(i, "https://") ? 8 : 7);
            if (j >= cps.size() || uni::is_space(cps[j])) return 0;
        } else {
            // bare domain: labels separated by dots, TLD or path required
            std::size_t k = i;
            std::size_t labels = 0;
            std::string last_label;
            while (k < cps.size()) {
                std::string label;
                std::size_t l = k;
                while (l < cps.size() &&
                       (is_ascii_alnum_(cps[l]) || cps[l] == '-') &&
                       cps[l] != '_') {
                    label.push_back(static_cast<char>(uni::ascii_lower(cps[l])));
                    ++l;
                }
                if (label.empty()) break;
                ++labels;
                last_label = label;
                k = l;
                if (at(k) == '.' && l + 1 < cps.size() &&
                    is_ascii_alnum_(at(k + 1)) && at(k + 1) != '_') {
                    ++k;
                } else {
                    break;
                }
            }
            if (labels < 2) return 0;
            const bool has_path = at(k) == '/';
            if (!known_tld(last_label) && !has_path) return 0;
            if (!known_tld(last_label) && last_label.size() < 2) return 0;
            j = k;
        }
        while (j < cps.size() && !uni::is_space(cps[j])) ++j;
        // trailing sentence punctuation is not part of the address
        while (j > i) {
            const char32_t c = cps[j - 1];
            if (c == '.' || c == ',' || c == ';' || c == ':' || c == '!' ||
                c == '?' || c == ')' || c == ']' || c == '"' || c == '\'' ||
                c == 0x2019 || c == 0x201D || c == 0x2026) {
                --j;
            } else {
                break;
            }
        }
        if (scheme && j <= i + 8) return 0;
        return j > i ? j : 0;
    }

    std::size_t try_mention(std::size_t i) const {
        if (at(i) != '@') return 0;
        std::size_t j = i + 1;
        while (j < cps.size() && is_ascii_alnum_(cps[j])) ++j;
        return j > i + 1 ? j : 0;
    }

    std::size_t try_hashtag(std::size_t i) const {
        if (!opts.hashtag_bodies_opaque || at(i) != '#') return 0;
        std::size_t j = i + 1;
        bool has_letter = false;
        while (j < cps.size() && is_ascii_alnum_(cps[j])) {
            if (uni::is_letter(cps[j])) has_letter = true;
            ++j;
        }
        return (j > i + 1 && has_letter) ? j : 0;
    }

    // *word* or (word): single inner word, same line, nearest closer.
    std::size_t try_delimited(std::size_t i) const {
        const char32_t open = at(i);
        if (open != '*' && open != '(') return 0;
        const char32_t close = open == '*' ? U'*' : U')';
        std::size_t j = i + 1;
        while (j < cps.size() && cps[j] != close && cps[j] != '\n' &&
               cps[j] != open) {
            ++j;
        }
        if (j >= cps.size() || cps[j] != close || j == i + 1) return 0;
        for (std::size_t k = i + 1; k < j; ++k) {
            const char32_t c = cps[k];
            if (!is_word_cp(c) && !is_apostrophe(c) && c != '-') return 0;
        }
        return j + 1;
    }

    std::size_t try_emoji_run(std::size_t i) const {
        std::size_t j = i;
        while (j < cps.size()) {
            const std::size_t e = uni::next_grapheme(cps, breaks, j);
            if (!uni::cluster_is_emoji(cps, j, e)) break;
            j = e;
        }
        return j > i ? j : 0;
    }

    // Any special production at i? Used to end punctuation runs.
    bool special_here(std::size_t i) const {
        const char32_t c = at(i);
        if (uni::is_space(c) || is_word_cp(c)) return true;
        if (try_url(i) || try_mention(i) || try_hashtag(i)) return true;
        if (match_inventory(i, opts.emoticons) ||
            match_inventory(i, opts.pictograms))
            return true;
        if (try_delimited(i) || try_emoji_run(i)) return true;
        return false;
    }
};

}  // namespace detail

inline std::vector<Token> segment(const DecodedText& text,
                                  const TokenizerOptions& opts = {}) {
    const auto& cps = text.cps;
    detail::Scanner sc{cps, text.breaks, opts};
    std::vector<Token> tokens;

    const auto emit = [&](std::size_t b, std::size_t e, TokenKind kind) {
        tokens.push_back(Token{{b, e}, kind, uni::encode_utf8(cps, b, e)});
    };

    std::size_t i = 0;
    const std::size_t n = cps.size();
    while (i < n) {
        const char32_t c = cps[i];

        if (uni::is_space(c)) {
            std::size_t j = i + 1;
            while (j < n && uni::is_space(cps[j])) ++j;
            emit(i, j, TokenKind::Whitespace);
            i = j;
            continue;
        }
        if (const std::size_t j = sc.try_url(i)) {
            emit(i, j, TokenKind::Url);
            i = j;
            continue;
        }
        if (const std::size_t j = sc.try_mention(i)) {
            emit(i, j, TokenKind::Mention);
            i = j;
            continue;
        }
        if (const std::size_t j = sc.try_hashtag(i)) {
            emit(i, j, TokenKind::Hashtag);
            i = j;
            continue;
        }
        if (const std::size_t len = sc.match_inventory(i, opts.emoticons)) {
            emit(i, i + len, TokenKind::Emoticon);
            i += len;
            continue;
        }
        if (const std::size_t len = sc.match_inventory(i, opts.pictograms)) {
            emit(i, i + len, TokenKind::Other);
            i += len;
            continue;
        }
        if (const std::size_t j = sc.try_delimited(i)) {
            emit(i, j, TokenKind::DelimitedExpr);
            i = j;
            continue;
        }
        if (const std::size_t j = sc.try_emoji_run(i)) {
            emit(i, j, TokenKind::EmojiRun);
            i = j;
            continue;
        }
        if (detail::is_word_cp(c)) {
            std::size_t j = i + 1;
            bool has_letter = uni::is_letter(c);
            bool all_digits = uni::is_digit(c);
            while (j < n) {
                const char32_t w = cps[j];
                if (detail::is_word_cp(w)) {
                    has_letter = has_letter || uni::is_letter(w);
                    all_digits = all_digits && uni::is_digit(w);
                    ++j;
                    continue;
                }
                const bool connector =
                    (detail::is_apostrophe(w) || w == '-') &&
                    detail::is_word_cp(sc.at(j + 1));
                const bool digit_sep =
                    (w == '.' || w == ',') && all_digits &&
                    uni::is_digit(sc.at(j + 1));
                if (connector || digit_sep) {
                    if (digit_sep) {
                        ++j;
                        continue;
                    }
                    all_digits = false;
                    ++j;
                    continue;
                }
                break;
            }
            emit(i, j, has_letter ? TokenKind::Word : TokenKind::Number);
            i = j;
            continue;
        }
        if (uni::is_punctuation(c) || uni::is_symbol(c)) {
            std::size_t j = i + 1;
            while (j < n && (uni::is_punctuation(cps[j]) || uni::is_symbol(cps[j])) &&
                   !sc.special_here(j)) {
                ++j;
            }
            emit(i, j, TokenKind::PunctRun);
            i = j;
            continue;
        }
        const std::size_t j = uni::next_grapheme(cps, text.breaks, i);
        emit(i, j, TokenKind::Other);
        i = j;
    }
    return tokens;
}

inline std::vector<Token> segment(std::string_view normalized_text,
                                  const TokenizerOptions& opts = {}) {
    return segment(decode(normalized_text), opts);
}

}  // namespace tpl::tok
