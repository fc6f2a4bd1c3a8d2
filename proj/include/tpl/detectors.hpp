#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "tpl/config.hpp"
#include "tpl/lexicon.hpp"
#include "tpl/model.hpp"
#include "tpl/tokenizer.hpp"
#include "tpl/unicode.hpp"

// Per-category candidate detectors. Every detector is a pure function of
// the normalized message, its tokens, and explicit configuration; output
// spans always fall on grapheme cluster boundaries.

namespace tpl::det {

namespace rule {
inline constexpr const char* kEmphasis = "vq.emphasis";
inline constexpr const char* kStress = "vq.stress";
inline constexpr const char* kPitch = "vq.pitch";
inline constexpr const char* kRhythm = "vq.rhythm";
inline constexpr const char* kTempoElongation = "vq.tempo.elongation";
inline constexpr const char* kTempoEllipsis = "vq.tempo.ellipsis";
inline constexpr const char* kScareQuotes = "vq.scare_quotes";
inline constexpr const char* kSilence = "vq.silence";
inline constexpr const char* kIntensity = "vq.intensity";
inline constexpr const char* kIntonation = "vq.intonation";
inline constexpr const char* kCensorship = "vq.censorship";
inline constexpr const char* kSpelling = "vq.spelling";
inline constexpr const char* kVsLexicon = "vs.lexicon";
inline constexpr const char* kTkLexicon = "tk.lexicon";
inline constexpr const char* kTkEmoji = "tk.emoji";
inline constexpr const char* kVkLexicon = "vk.lexicon";
inline constexpr const char* kVkEmoticon = "vk.emoticon";
inline constexpr const char* kVkEmoji = "vk.emoji";
inline constexpr const char* kAEmoji = "a.emoji";
inline constexpr const char* kASymbol = "a.symbol";
inline constexpr const char* kAFormatting = "a.formatting";
}  // namespace rule

struct DetectorConfig {
    int min_emphasis_run = 2;
    int min_elongation_extra = 2;  // letter runs of 1 + this and longer
    int min_caps_len = 3;
    std::unordered_set<std::string> caps_allowlist = {"cheetos"};  // lowercase
    int rhythm_min_segments = 2;
    bool scare_quotes_enabled = true;
    int scare_quotes_max_words = 3;
    std::string censorship_symbols = "#$%^&*@!";
    int spelling_min_hyphens = 2;

    static DetectorConfig from_kv(const cfg::KvMap& kv) {
        DetectorConfig c;
        c.min_emphasis_run = cfg::kv_int(kv, "min_emphasis_run", c.min_emphasis_run);
        c.min_elongation_extra =
            cfg::kv_int(kv, "min_elongation_extra", c.min_elongation_extra);
        c.min_caps_len = cfg::kv_int(kv, "min_caps_len", c.min_caps_len);
        c.rhythm_min_segments =
            cfg::kv_int(kv, "rhythm_min_segments", c.rhythm_min_segments);
        c.scare_quotes_enabled =
            cfg::kv_bool(kv, "scare_quotes_enabled", c.scare_quotes_enabled);
        c.scare_quotes_max_words =
            cfg::kv_int(kv, "scare_quotes_max_words", c.scare_quotes_max_words);
        c.censorship_symbols =
            cfg::kv_string(kv, "censorship_symbols", c.censorship_symbols);
        c.spelling_min_hyphens =
            cfg::kv_int(kv, "spelling_min_hyphens", c.spelling_min_hyphens);
        return c;
    }
};

// Decoded text plus tokens; the shared input of every detector.
struct Analysis {
    Message message;
    tok::DecodedText text;
    std::vector<tok::Token> tokens;
};

inline Analysis analyze(Message msg, const tok::TokenizerOptions& opts = {}) {
    Analysis a;
    a.text = tok::decode(msg.text);
    a.tokens = tok::segment(a.text, opts);
    a.message = std::move(msg);
    return a;
}

namespace detail {

inline std::string slice(const Analysis& a, std::size_t b, std::size_t e) {
    return uni::encode_utf8(a.text.cps, b, e);
}

inline Annotation mk(const Analysis& a, std::size_t b, std::size_t e,
                     TplSubtype st, const char* rule_id,
                     std::string canonical = {}) {
    return Annotation::make({b, e}, st, slice(a, b, e), rule_id,
                            std::move(canonical));
}

inline bool is_reporting_verb(std::string_view folded) {
    static const std::unordered_set<std::string> kVerbs = {
        "say",    "says",    "said",      "saying",   "ask",     "asks",
        "asked",  "reply",   "replies",   "replied",  "write",   "writes",
        "wrote",  "tweet",   "tweets",    "tweeted",  "post",    "posts",
        "posted", "announce", "announces", "announced", "call",   "calls",
        "called", "name",    "names",     "named",    "title",   "titled",
        "entitled", "state", "states",    "stated",   "quote",   "quotes",
        "quoted", "add",     "adds",      "added",    "note",    "notes",
        "noted",
    };
    return kVerbs.count(std::string(folded)) > 0;
}

inline bool word_is_pure_letters(const Analysis& a, const tok::Token& t) {
    for (std::size_t i = t.span.start; i < t.span.end; ++i)
        if (!uni::is_letter(a.text.cps[i])) return false;
    return true;
}

}  // namespace detail

// --------------------------------------------------------------------------
// Voice quality

inline std::vector<Annotation> detect_voice_quality(
    const Analysis& a, const DetectorConfig& cfg,
    const std::unordered_set<std::string>& manner_words,
    const std::unordered_set<std::string>& marked_misspellings) {
    using detail::mk;
    std::vector<Annotation> out;
    const auto& cps = a.text.cps;

    // Silence: an empty or whitespace-only message is itself the signal.
    bool only_space = true;
    for (const char32_t c : cps) {
        if (!uni::is_space(c)) {
            only_space = false;
            break;
        }
    }
    if (only_space) {
        out.push_back(mk(a, 0, 0, TplSubtype::Silence, rule::kSilence));
        return out;
    }

    bool any_lower = false, any_cased = false;
    for (const char32_t c : cps) {
        if (uni::is_lowercase(c)) any_lower = true;
        if (uni::is_lowercase(c) || uni::is_uppercase(c)) any_cased = true;
    }
    const bool message_all_caps = any_cased && !any_lower;

    for (const auto& t : a.tokens) {
        if (t.kind == tok::TokenKind::PunctRun) {
            // Emphasis: runs of ! and ?; Tempo: ellipsis runs.
            std::size_t i = t.span.start;
            while (i < t.span.end) {
                if (cps[i] == '!' || cps[i] == '?') {
                    std::size_t j = i;
                    while (j < t.span.end && (cps[j] == '!' || cps[j] == '?')) ++j;
                    if (j - i >= static_cast<std::size_t>(cfg.min_emphasis_run))
                        out.push_back(mk(a, i, j, TplSubtype::Emphasis, rule::kEmphasis));
                    i = j;
                } else if (cps[i] == '.' || cps[i] == 0x2026) {
                    std::size_t j = i, dots = 0;
                    while (j < t.span.end && (cps[j] == '.' || cps[j] == 0x2026)) {
                        dots += cps[j] == '.' ? 1 : 3;
                        ++j;
                    }
                    if (dots >= 4)
                        out.push_back(
                            mk(a, i, j, TplSubtype::Tempo, rule::kTempoEllipsis));
                    i = j;
                } else {
                    ++i;
                }
            }
            continue;
        }

        if (t.kind != tok::TokenKind::Word &&
            t.kind != tok::TokenKind::DelimitedExpr)
            continue;

        const bool delim = t.kind == tok::TokenKind::DelimitedExpr;
        const std::size_t wb = delim ? t.span.start + 1 : t.span.start;
        const std::size_t we = delim ? t.span.end - 1 : t.span.end;
        const std::string_view inner =
            delim ? tok::delimited_inner(t) : std::string_view(t.surface);
        const std::string folded = lex::detail::ascii_lower_copy(inner);

        // Tempo: stretched letters.
        std::size_t run = 1;
        for (std::size_t i = wb + 1; i <= we; ++i) {
            if (i < we && cps[i] == cps[i - 1] && uni::is_letter(cps[i])) {
                ++run;
                continue;
            }
            if (run >= static_cast<std::size_t>(1 + cfg.min_elongation_extra)) {
                out.push_back(
                    mk(a, wb, we, TplSubtype::Tempo, rule::kTempoElongation));
                break;
            }
            run = 1;
        }

        if (delim) {
            // Intensity or volume: a *word* naming the manner of speech.
            if (manner_words.count(folded))
                out.push_back(mk(a, t.span.start, t.span.end,
                                 TplSubtype::Intensity, rule::kIntensity));
            continue;
        }

        // Intonation: marked misspellings.
        if (marked_misspellings.count(folded))
            out.push_back(
                mk(a, wb, we, TplSubtype::Intonation, rule::kIntonation));

        // Spelling: single letters chained by hyphens.
        {
            std::size_t letters = 0, hyphens = 0;
            bool shape_ok = true;
            for (std::size_t i = wb; i < we; ++i) {
                const bool odd = (i - wb) % 2 == 1;
                if (odd) {
                    if (cps[i] == '-') {
                        ++hyphens;
                    } else {
                        shape_ok = false;
                        break;
                    }
                } else if (uni::is_letter(cps[i])) {
                    ++letters;
                } else {
                    shape_ok = false;
                    break;
                }
            }
            if (shape_ok && (we - wb) % 2 == 1 &&
                hyphens >= static_cast<std::size_t>(cfg.spelling_min_hyphens)) {
                out.push_back(mk(a, wb, we, TplSubtype::Spelling, rule::kSpelling));
            }
        }

        // Stress: an all-caps word in an otherwise mixed-case message.
        if (!message_all_caps && detail::word_is_pure_letters(a, t) &&
            we - wb >= static_cast<std::size_t>(cfg.min_caps_len)) {
            bool all_upper = true;
            for (std::size_t i = wb; i < we; ++i) {
                if (!uni::is_uppercase(cps[i])) {
                    all_upper = false;
                    break;
                }
            }
            if (all_upper && !cfg.caps_allowlist.count(folded))
                out.push_back(mk(a, wb, we, TplSubtype::Stress, rule::kStress));
        }

        // Pitch: interior capitals flanked by lowercase ("rEAlly").
        {
            std::size_t flanked = 0, best_len = 0;
            std::size_t i = wb;
            while (i < we) {
                if (uni::is_uppercase(cps[i])) {
                    std::size_t j = i;
                    while (j < we && uni::is_uppercase(cps[j])) ++j;
                    const bool before =
                        i > wb && uni::is_lowercase(cps[i - 1]);
                    const bool after = j < we && uni::is_lowercase(cps[j]);
                    if (before && after) {
                        ++flanked;
                        best_len = std::max(best_len, j - i);
                    }
                    i = j;
                } else {
                    ++i;
                }
            }
            if (best_len >= 2 || flanked >= 2)
                out.push_back(mk(a, wb, we, TplSubtype::Pitch, rule::kPitch));
        }
    }

    // Rhythm: consecutive one-word sentences ("Best. Day. Ever.").
    {
        struct Unit {
            std::size_t begin, end;  // word start .. period end
            std::size_t word_idx;
        };
        std::vector<Unit> run;
        bool at_sentence_start = true;
        const auto flush = [&] {
            if (run.size() >= static_cast<std::size_t>(cfg.rhythm_min_segments))
                out.push_back(mk(a, run.front().begin, run.back().end,
                                 TplSubtype::Rhythm, rule::kRhythm));
            run.clear();
        };
        for (std::size_t ti = 0; ti < a.tokens.size(); ++ti) {
            const auto& t = a.tokens[ti];
            if (t.kind == tok::TokenKind::Whitespace) {
                if (t.surface.find('\n') != std::string::npos) {
                    flush();
                    at_sentence_start = true;
                }
                continue;
            }
            const bool unit_head =
                t.kind == tok::TokenKind::Word && at_sentence_start &&
                ti + 1 < a.tokens.size() &&
                a.tokens[ti + 1].kind == tok::TokenKind::PunctRun &&
                a.tokens[ti + 1].surface == ".";
            if (unit_head) {
                run.push_back(Unit{t.span.start, a.tokens[ti + 1].span.end, ti});
                at_sentence_start = true;
                ++ti;  // consume the period
                continue;
            }
            flush();
            if (t.kind == tok::TokenKind::PunctRun) {
                at_sentence_start =
                    t.surface.find_first_of(".!?") != std::string::npos ||
                    t.surface.find("…") != std::string::npos;
            } else {
                at_sentence_start = false;
            }
        }
        flush();
    }

    // Scare quotes: a short quoted span with no reporting verb before it.
    if (cfg.scare_quotes_enabled) {
        std::size_t i = 0;
        const std::size_t n = cps.size();
        while (i < n) {
            const char32_t open = cps[i];
            if (open != '"' && open != 0x201C) {
                ++i;
                continue;
            }
            const char32_t close = open == '"' ? U'"' : U'”';
            std::size_t j = i + 1;
            while (j < n && cps[j] != close && cps[j] != '\n') ++j;
            if (j >= n || cps[j] != close) {
                ++i;
                continue;
            }
            std::size_t words = 0;
            bool clean = true;
            for (const auto& t : a.tokens) {
                if (t.span.end <= i + 1 || t.span.start >= j) continue;
                if (t.span.start <= i || t.span.end > j) {
                    // token straddles a quote mark
                    if (t.kind != tok::TokenKind::PunctRun) clean = false;
                    continue;
                }
                if (t.kind == tok::TokenKind::Word) {
                    ++words;
                } else if (t.kind != tok::TokenKind::Whitespace &&
                           t.kind != tok::TokenKind::Number &&
                           t.kind != tok::TokenKind::PunctRun) {
                    clean = false;
                }
            }
            if (clean && words >= 1 &&
                words <= static_cast<std::size_t>(cfg.scare_quotes_max_words)) {
                // nearest word before the quote, skipping spaces and , :
                std::string prev_word;
                for (auto it = a.tokens.rbegin(); it != a.tokens.rend(); ++it) {
                    if (it->span.end > i) continue;
                    if (it->kind == tok::TokenKind::Whitespace) continue;
                    if (it->kind == tok::TokenKind::PunctRun &&
                        it->surface.find_first_not_of(",:") == std::string::npos)
                        continue;
                    if (it->kind == tok::TokenKind::Word)
                        prev_word = lex::detail::ascii_lower_copy(it->surface);
                    break;
                }
                if (!detail::is_reporting_verb(prev_word))
                    out.push_back(mk(a, i, j + 1, TplSubtype::ScareQuotes,
                                     rule::kScareQuotes));
            }
            i = j + 1;
        }
    }

    // Censorship: whitespace-separated chunks mixing distinct mask symbols.
    {
        std::unordered_set<char32_t> symbol_set;
        for (const char c : cfg.censorship_symbols)
            symbol_set.insert(static_cast<char32_t>(static_cast<unsigned char>(c)));
        const std::size_t n = cps.size();
        std::size_t i = 0;
        while (i < n) {
            if (uni::is_space(cps[i])) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < n && !uni::is_space(cps[j])) ++j;
            std::size_t b = i, e = j;
            const auto allowed = [&](char32_t c) {
                return uni::is_letter(c) || uni::is_digit(c) ||
                       symbol_set.count(c) > 0;
            };
            while (b < e && !allowed(cps[b])) ++b;
            while (e > b && !allowed(cps[e - 1])) --e;
            while (e > b && cps[e - 1] == '!') --e;  // terminal bangs are emphasis
            if (e > b) {
                bool clean = true;
                std::size_t symbols = 0;
                std::unordered_set<char32_t> distinct;
                for (std::size_t k = b; k < e; ++k) {
                    if (symbol_set.count(cps[k])) {
                        ++symbols;
                        distinct.insert(cps[k]);
                    } else if (!uni::is_letter(cps[k]) && !uni::is_digit(cps[k])) {
                        clean = false;
                        break;
                    }
                }
                // handle/tag chains like @user#tag are not masking
                bool handle_chain = true;
                for (std::size_t k = b; k < e && handle_chain; ++k) {
                    if (symbol_set.count(cps[k])) {
                        if (cps[k] != '@' && cps[k] != '#')
                            handle_chain = false;
                        else if (k + 1 >= e || (!uni::is_letter(cps[k + 1]) &&
                                                !uni::is_digit(cps[k + 1])))
                            handle_chain = false;
                    }
                }
                if (clean && symbols >= 2 && distinct.size() >= 2 && !handle_chain)
                    out.push_back(
                        mk(a, b, e, TplSubtype::Censorship, rule::kCensorship));
            }
            i = j;
        }
    }

    return out;
}

// --------------------------------------------------------------------------
// Lexicon-driven categories

namespace detail {

inline TplSubtype lexicon_subtype(TplCategory c) {
    switch (c) {
        case TplCategory::VS: return TplSubtype::VsLexicon;
        case TplCategory::TK: return TplSubtype::TkLexicon;
        case TplCategory::VK: return TplSubtype::VkLexicon;
        default: throw std::logic_error("lexicon category");
    }
}

inline const char* lexicon_rule(TplCategory c) {
    switch (c) {
        case TplCategory::VS: return rule::kVsLexicon;
        case TplCategory::TK: return rule::kTkLexicon;
        case TplCategory::VK: return rule::kVkLexicon;
        default: throw std::logic_error("lexicon category");
    }
}

inline std::vector<Annotation> detect_lexicon(const Analysis& a,
                                              const lex::Lexicon& lexicon,
                                              TplCategory category) {
    std::vector<Annotation> out;
    const TplSubtype st = lexicon_subtype(category);
    const char* rid = lexicon_rule(category);

    for (const auto& t : a.tokens) {
        if (t.kind == tok::TokenKind::Word) {
            if (const auto m = lexicon.match_word(t.surface, category)) {
                out.push_back(mk(a, t.span.start, t.span.end, st, rid,
                                 m->elongated ? m->entry->canonical : ""));
            }
        } else if (t.kind == tok::TokenKind::DelimitedExpr) {
            if (const auto m =
                    lexicon.match_delimited(tok::delimited_inner(t), category)) {
                out.push_back(mk(a, t.span.start, t.span.end, st, rid,
                                 m->elongated ? m->entry->canonical : ""));
            }
        }
    }

    // multiword phrases across single spaces
    const std::size_t max_words = lexicon.max_phrase_words();
    if (max_words >= 2) {
        for (std::size_t i = 0; i < a.tokens.size(); ++i) {
            if (a.tokens[i].kind != tok::TokenKind::Word) continue;
            std::string phrase = a.tokens[i].surface;
            std::size_t last = i;
            for (std::size_t words = 2; words <= max_words; ++words) {
                if (last + 2 >= a.tokens.size()) break;
                const auto& gap = a.tokens[last + 1];
                const auto& next = a.tokens[last + 2];
                if (gap.kind != tok::TokenKind::Whitespace || gap.surface != " " ||
                    next.kind != tok::TokenKind::Word)
                    break;
                phrase += ' ';
                phrase += next.surface;
                last += 2;
                if (lexicon.match_phrase(phrase, category)) {
                    out.push_back(mk(a, a.tokens[i].span.start,
                                     a.tokens[last].span.end, st, rid));
                }
            }
        }
    }
    return out;
}

inline void detect_emoji(const Analysis& a, const lex::EmojiClassMap& map,
                         TplCategory category, TplSubtype st, const char* rid,
                         std::vector<Annotation>& out) {
    for (const auto& t : a.tokens) {
        if (t.kind != tok::TokenKind::EmojiRun) continue;
        std::size_t i = t.span.start;
        while (i < t.span.end) {
            const std::size_t e = uni::next_grapheme(a.text.cps, a.text.breaks, i);
            const std::string cluster = slice(a, i, e);
            if (map.classify(cluster) == category)
                out.push_back(mk(a, i, e, st, rid));
            i = e;
        }
    }
}

}  // namespace detail

inline std::vector<Annotation> detect_vocal(const Analysis& a,
                                            const lex::Lexicon& vs) {
    return detail::detect_lexicon(a, vs, TplCategory::VS);
}

inline std::vector<Annotation> detect_tactile(const Analysis& a,
                                              const lex::Lexicon& tk,
                                              const lex::EmojiClassMap& emoji) {
    auto out = detail::detect_lexicon(a, tk, TplCategory::TK);
    detail::detect_emoji(a, emoji, TplCategory::TK, TplSubtype::TkEmoji,
                         rule::kTkEmoji, out);
    return out;
}

inline std::vector<Annotation> detect_visual(const Analysis& a,
                                             const lex::Lexicon& vk,
                                             const lex::EmojiClassMap& emoji) {
    auto out = detail::detect_lexicon(a, vk, TplCategory::VK);
    for (const auto& t : a.tokens) {
        if (t.kind == tok::TokenKind::Emoticon)
            out.push_back(detail::mk(a, t.span.start, t.span.end,
                                     TplSubtype::VkEmoticon, rule::kVkEmoticon));
    }
    detail::detect_emoji(a, emoji, TplCategory::VK, TplSubtype::VkEmoji,
                         rule::kVkEmoji, out);
    return out;
}

inline std::vector<Annotation> detect_artifact(const Analysis& a,
                                               const lex::EmojiClassMap& emoji,
                                               const tok::TokenizerOptions& opts = {}) {
    std::vector<Annotation> out;
    detail::detect_emoji(a, emoji, TplCategory::A, TplSubtype::AEmoji,
                         rule::kAEmoji, out);
    for (const auto& t : a.tokens) {
        if (t.kind == tok::TokenKind::Other) {
            for (const auto& p : opts.pictograms) {
                if (t.surface == p) {
                    out.push_back(detail::mk(a, t.span.start, t.span.end,
                                             TplSubtype::ASymbol, rule::kASymbol));
                    break;
                }
            }
        } else if (t.kind == tok::TokenKind::PunctRun &&
                   t.span.length() >= 3) {
            // decorative separators: ***, ~*~, ___; plain dash runs are prose
            bool decorative = true;
            bool all_dash = true;
            for (std::size_t i = t.span.start; i < t.span.end; ++i) {
                const char32_t c = a.text.cps[i];
                if (c != '~' && c != '*' && c != '-' && c != '_' && c != '=' &&
                    c != '^' && c != '+') {
                    decorative = false;
                    break;
                }
                if (c != '-') all_dash = false;
            }
            if (decorative && !all_dash)
                out.push_back(detail::mk(a, t.span.start, t.span.end,
                                         TplSubtype::AFormatting,
                                         rule::kAFormatting));
        }
    }
    return out;
}

// --------------------------------------------------------------------------

struct Resources {
    lex::Lexicon vs;
    lex::Lexicon tk;
    lex::Lexicon vk;
    lex::EmojiClassMap emoji;
    std::unordered_set<std::string> manner_words;
    std::unordered_set<std::string> marked_misspellings;
};

inline std::vector<Annotation> detect_all(const Analysis& a,
                                          const DetectorConfig& cfg,
                                          const Resources& res,
                                          const tok::TokenizerOptions& opts = {}) {
    std::vector<Annotation> out =
        detect_voice_quality(a, cfg, res.manner_words, res.marked_misspellings);
    const auto append = [&](std::vector<Annotation> v) {
        out.insert(out.end(), std::make_move_iterator(v.begin()),
                   std::make_move_iterator(v.end()));
    };
    append(detect_vocal(a, res.vs));
    append(detect_tactile(a, res.tk, res.emoji));
    append(detect_visual(a, res.vk, res.emoji));
    append(detect_artifact(a, res.emoji, opts));
    std::sort(out.begin(), out.end(), annotation_order);
    return out;
}

inline std::vector<Annotation> detect_all(const Message& msg,
                                          const DetectorConfig& cfg,
                                          const Resources& res,
                                          const tok::TokenizerOptions& opts = {}) {
    return detect_all(analyze(msg, opts), cfg, res, opts);
}

}  // namespace tpl::det
