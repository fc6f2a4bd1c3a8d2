#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>

// Core value types: annotation categories and subtypes, spans, messages.
// Span offsets count Unicode scalar values of the normalized message text.

namespace tpl {

enum class TplCategory : std::uint8_t { VQ, VS, TK, VK, A };

enum class TplSubtype : std::uint8_t {
    // VQ
    Emphasis,
    Stress,
    Pitch,
    Rhythm,
    Tempo,
    ScareQuotes,
    Silence,
    Intensity,
    Intonation,
    Censorship,
    Spelling,
    // VS
    VsLexicon,
    // TK
    TkLexicon,
    TkEmoji,
    // VK
    VkEmoticon,
    VkEmoji,
    VkLexicon,
    // A
    AEmoji,
    ASymbol,
    AFormatting,
};

inline TplCategory category_of(TplSubtype s) {
    switch (s) {
        case TplSubtype::Emphasis:
        case TplSubtype::Stress:
        case TplSubtype::Pitch:
        case TplSubtype::Rhythm:
        case TplSubtype::Tempo:
        case TplSubtype::ScareQuotes:
        case TplSubtype::Silence:
        case TplSubtype::Intensity:
        case TplSubtype::Intonation:
        case TplSubtype::Censorship:
        case TplSubtype::Spelling:
            return TplCategory::VQ;
        case TplSubtype::VsLexicon:
            return TplCategory::VS;
        case TplSubtype::TkLexicon:
        case TplSubtype::TkEmoji:
            return TplCategory::TK;
        case TplSubtype::VkEmoticon:
        case TplSubtype::VkEmoji:
        case TplSubtype::VkLexicon:
            return TplCategory::VK;
        case TplSubtype::AEmoji:
        case TplSubtype::ASymbol:
        case TplSubtype::AFormatting:
            return TplCategory::A;
    }
    throw std::logic_error("unknown subtype");
}

inline std::string_view to_string(TplCategory c) {
    switch (c) {
        case TplCategory::VQ: return "VQ";
        case TplCategory::VS: return "VS";
        case TplCategory::TK: return "TK";
        case TplCategory::VK: return "VK";
        case TplCategory::A: return "A";
    }
    return "?";
}

inline std::optional<TplCategory> parse_category(std::string_view s) {
    if (s == "VQ") return TplCategory::VQ;
    if (s == "VS") return TplCategory::VS;
    if (s == "TK") return TplCategory::TK;
    if (s == "VK") return TplCategory::VK;
    if (s == "A") return TplCategory::A;
    return std::nullopt;
}

// Subtype names are unique within a category; lexicon and emoji subtypes
// share a display name across categories.
inline std::string_view to_string(TplSubtype s) {
    switch (s) {
        case TplSubtype::Emphasis: return "Emphasis";
        case TplSubtype::Stress: return "Stress";
        case TplSubtype::Pitch: return "Pitch";
        case TplSubtype::Rhythm: return "Rhythm";
        case TplSubtype::Tempo: return "Tempo";
        case TplSubtype::ScareQuotes: return "ScareQuotes";
        case TplSubtype::Silence: return "Silence";
        case TplSubtype::Intensity: return "Intensity";
        case TplSubtype::Intonation: return "Intonation";
        case TplSubtype::Censorship: return "Censorship";
        case TplSubtype::Spelling: return "Spelling";
        case TplSubtype::VsLexicon:
        case TplSubtype::TkLexicon:
        case TplSubtype::VkLexicon: return "LexiconEntry";
        case TplSubtype::TkEmoji:
        case TplSubtype::VkEmoji:
        case TplSubtype::AEmoji: return "Emoji";
        case TplSubtype::VkEmoticon: return "Emoticon";
        case TplSubtype::ASymbol: return "Symbol";
        case TplSubtype::AFormatting: return "Formatting";
    }
    return "?";
}

inline std::optional<TplSubtype> parse_subtype(TplCategory c, std::string_view s) {
    using S = TplSubtype;
    switch (c) {
        case TplCategory::VQ:
            if (s == "Emphasis") return S::Emphasis;
            if (s == "Stress") return S::Stress;
            if (s == "Pitch") return S::Pitch;
            if (s == "Rhythm") return S::Rhythm;
            if (s == "Tempo") return S::Tempo;
            if (s == "ScareQuotes") return S::ScareQuotes;
            if (s == "Silence") return S::Silence;
            if (s == "Intensity") return S::Intensity;
            if (s == "Intonation") return S::Intonation;
            if (s == "Censorship") return S::Censorship;
            if (s == "Spelling") return S::Spelling;
            return std::nullopt;
        case TplCategory::VS:
            if (s == "LexiconEntry") return S::VsLexicon;
            return std::nullopt;
        case TplCategory::TK:
            if (s == "LexiconEntry") return S::TkLexicon;
            if (s == "Emoji") return S::TkEmoji;
            return std::nullopt;
        case TplCategory::VK:
            if (s == "Emoticon") return S::VkEmoticon;
            if (s == "Emoji") return S::VkEmoji;
            if (s == "LexiconEntry") return S::VkLexicon;
            return std::nullopt;
        case TplCategory::A:
            if (s == "Emoji") return S::AEmoji;
            if (s == "Symbol") return S::ASymbol;
            if (s == "Formatting") return S::AFormatting;
            return std::nullopt;
    }
    return std::nullopt;
}

struct Span {
    std::size_t start = 0;
    std::size_t end = 0;  // exclusive

    std::size_t length() const { return end - start; }
    bool operator==(const Span&) const = default;
};

struct Annotation {
    Span span;
    TplCategory category = TplCategory::VQ;
    TplSubtype subtype = TplSubtype::Emphasis;
    std::string surface;    // exact slice of the message text at span
    std::string canonical;  // set only for elongation-normalized lexicon hits
    std::string rule_id;

    static Annotation make(Span span, TplSubtype subtype, std::string surface,
                           std::string rule_id, std::string canonical = {}) {
        if (span.start > span.end)
            throw std::invalid_argument("annotation span is inverted");
        Annotation a;
        a.span = span;
        a.category = category_of(subtype);
        a.subtype = subtype;
        a.surface = std::move(surface);
        a.canonical = std::move(canonical);
        a.rule_id = std::move(rule_id);
        return a;
    }

    std::tuple<std::size_t, TplCategory, std::size_t, TplSubtype,
               const std::string&>
    order_key() const {
        return {span.start, category, span.end, subtype, rule_id};
    }

    bool operator==(const Annotation&) const = default;
};

inline bool annotation_order(const Annotation& a, const Annotation& b) {
    return a.order_key() < b.order_key();
}

enum class Platform : std::uint8_t { Twitter, Facebook, Instagram, Generic };

inline std::string_view to_string(Platform p) {
    switch (p) {
        case Platform::Twitter: return "twitter";
        case Platform::Facebook: return "facebook";
        case Platform::Instagram: return "instagram";
        case Platform::Generic: return "generic";
    }
    return "generic";
}

inline Platform parse_platform(std::string_view s) {
    if (s == "twitter") return Platform::Twitter;
    if (s == "facebook") return Platform::Facebook;
    if (s == "instagram") return Platform::Instagram;
    return Platform::Generic;
}

enum class AccountKind : std::uint8_t { Corporate, Spokescharacter, Consumer, Unknown };

inline std::string_view to_string(AccountKind k) {
    switch (k) {
        case AccountKind::Corporate: return "corporate";
        case AccountKind::Spokescharacter: return "spokescharacter";
        case AccountKind::Consumer: return "consumer";
        case AccountKind::Unknown: return "unknown";
    }
    return "unknown";
}

inline AccountKind parse_account_kind(std::string_view s) {
    if (s == "corporate") return AccountKind::Corporate;
    if (s == "spokescharacter") return AccountKind::Spokescharacter;
    if (s == "consumer") return AccountKind::Consumer;
    return AccountKind::Unknown;
}

enum class Validity : std::uint8_t { Valid, Bot, Spam, NonEnglish };

inline std::string_view to_string(Validity v) {
    switch (v) {
        case Validity::Valid: return "valid";
        case Validity::Bot: return "bot";
        case Validity::Spam: return "spam";
        case Validity::NonEnglish: return "non_english";
    }
    return "valid";
}

inline std::optional<Validity> parse_validity(std::string_view s) {
    if (s == "valid") return Validity::Valid;
    if (s == "bot") return Validity::Bot;
    if (s == "spam") return Validity::Spam;
    if (s == "non_english") return Validity::NonEnglish;
    return std::nullopt;
}

struct Message {
    std::string id;
    std::string text;  // normalized: valid UTF-8, NFC, LF newlines
    Platform platform = Platform::Generic;
    std::string account;
    AccountKind account_kind = AccountKind::Unknown;
    bool is_reply = false;
    bool is_repost = false;
    std::string lang_hint;   // empty when unknown
    std::string created_at;  // opaque timestamp, kept verbatim
};

}  // namespace tpl
