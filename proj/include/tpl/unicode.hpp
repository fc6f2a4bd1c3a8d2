#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tpl/unicode_data.hpp"

// UTF-8 codec, character properties, canonical composition (NFC) and
// grapheme cluster segmentation. Offsets everywhere are Unicode scalar
// values, not bytes.

namespace tpl::uni {

// ---------------------------------------------------------------------------
// UTF-8 codec

struct DecodeResult {
    std::vector<char32_t> cps;
    bool ok = true;
    std::size_t error_byte = 0;  // byte offset of the first bad sequence
};

inline DecodeResult decode_utf8(std::string_view s) {
    DecodeResult r;
    r.cps.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        const unsigned char b0 = static_cast<unsigned char>(s[i]);
        char32_t cp = 0;
        std::size_t n = 0;
        if (b0 < 0x80) {
            cp = b0;
            n = 1;
        } else if ((b0 & 0xE0) == 0xC0) {
            cp = b0 & 0x1F;
            n = 2;
        } else if ((b0 & 0xF0) == 0xE0) {
            cp = b0 & 0x0F;
            n = 3;
        } else if ((b0 & 0xF8) == 0xF0) {
            cp = b0 & 0x07;
            n = 4;
        } else {
            r.ok = false;
            r.error_byte = i;
            return r;
        }
        if (i + n > s.size()) {
            r.ok = false;
            r.error_byte = i;
            return r;
        }
        for (std::size_t k = 1; k < n; ++k) {
            const unsigned char bk = static_cast<unsigned char>(s[i + k]);
            if ((bk & 0xC0) != 0x80) {
                r.ok = false;
                r.error_byte = i;
                return r;
            }
            cp = (cp << 6) | (bk & 0x3F);
        }
        const bool overlong = (n == 2 && cp < 0x80) || (n == 3 && cp < 0x800) ||
                              (n == 4 && cp < 0x10000);
        if (overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            r.ok = false;
            r.error_byte = i;
            return r;
        }
        r.cps.push_back(cp);
        i += n;
    }
    return r;
}

inline void append_utf8(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline std::string encode_utf8(const std::vector<char32_t>& cps,
                               std::size_t from, std::size_t to) {
    std::string out;
    for (std::size_t i = from; i < to && i < cps.size(); ++i) append_utf8(cps[i], out);
    return out;
}

inline std::string encode_utf8(const std::vector<char32_t>& cps) {
    return encode_utf8(cps, 0, cps.size());
}

// ---------------------------------------------------------------------------
// Character properties

namespace detail {

template <typename R, std::size_t N>
const R* range_find(const R (&table)[N], char32_t cp) {
    std::size_t lo = 0, hi = N;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (cp < table[mid].lo) {
            hi = mid;
        } else if (cp > table[mid].hi) {
            lo = mid + 1;
        } else {
            return &table[mid];
        }
    }
    return nullptr;
}

}  // namespace detail

inline udata::Gc general_category(char32_t cp) {
    const auto* r = detail::range_find(udata::kGcRanges, cp);
    return r ? r->gc : udata::Gc::Cn;
}

inline bool is_letter(char32_t cp) {
    const auto g = general_category(cp);
    return g == udata::Gc::Lu || g == udata::Gc::Ll || g == udata::Gc::Lt ||
           g == udata::Gc::Lm || g == udata::Gc::Lo;
}

inline bool is_uppercase(char32_t cp) {
    const auto g = general_category(cp);
    return g == udata::Gc::Lu || g == udata::Gc::Lt;
}

inline bool is_lowercase(char32_t cp) {
    return general_category(cp) == udata::Gc::Ll;
}

inline bool is_digit(char32_t cp) {
    return general_category(cp) == udata::Gc::Nd;
}

inline bool is_mark(char32_t cp) {
    const auto g = general_category(cp);
    return g == udata::Gc::Mn || g == udata::Gc::Mc || g == udata::Gc::Me;
}

inline bool is_space(char32_t cp) {
    if (cp == 0x09 || cp == 0x0A || cp == 0x0B || cp == 0x0C || cp == 0x0D ||
        cp == 0x85)
        return true;
    const auto g = general_category(cp);
    return g == udata::Gc::Zs || g == udata::Gc::Zl || g == udata::Gc::Zp;
}

inline bool is_punctuation(char32_t cp) {
    const auto g = general_category(cp);
    return g >= udata::Gc::Pc && g <= udata::Gc::Po;
}

inline bool is_symbol(char32_t cp) {
    const auto g = general_category(cp);
    return g >= udata::Gc::Sm && g <= udata::Gc::So;
}

inline bool is_latin(char32_t cp) {
    return detail::range_find(udata::kLatinScript, cp) != nullptr;
}

inline std::uint8_t ccc(char32_t cp) {
    const auto* r = detail::range_find(udata::kCccRanges, cp);
    return r ? r->ccc : 0;
}

inline char32_t ascii_lower(char32_t cp) {
    return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
}

// ---------------------------------------------------------------------------
// Canonical composition (NFC)

namespace detail {

constexpr char32_t kHangulSBase = 0xAC00;
constexpr char32_t kHangulLBase = 0x1100;
constexpr char32_t kHangulVBase = 0x1161;
constexpr char32_t kHangulTBase = 0x11A7;
constexpr int kHangulLCount = 19;
constexpr int kHangulVCount = 21;
constexpr int kHangulTCount = 28;
constexpr int kHangulNCount = kHangulVCount * kHangulTCount;
constexpr int kHangulSCount = kHangulLCount * kHangulNCount;

inline void decompose_cp(char32_t cp, std::vector<char32_t>& out) {
    if (cp >= kHangulSBase && cp < kHangulSBase + kHangulSCount) {
        const int s = static_cast<int>(cp - kHangulSBase);
        out.push_back(kHangulLBase + s / kHangulNCount);
        out.push_back(kHangulVBase + (s % kHangulNCount) / kHangulTCount);
        if (s % kHangulTCount != 0) out.push_back(kHangulTBase + s % kHangulTCount);
        return;
    }
    std::size_t lo = 0, hi = std::size(udata::kDecompEntries);
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        const auto& e = udata::kDecompEntries[mid];
        if (cp < e.cp) {
            hi = mid;
        } else if (cp > e.cp) {
            lo = mid + 1;
        } else {
            for (std::uint8_t k = 0; k < e.len; ++k)
                out.push_back(udata::kDecompData[e.off + k]);
            return;
        }
    }
    out.push_back(cp);
}

inline char32_t compose_pair(char32_t a, char32_t b) {
    if (a >= kHangulLBase && a < kHangulLBase + kHangulLCount &&
        b >= kHangulVBase && b < kHangulVBase + kHangulVCount) {
        return kHangulSBase + ((a - kHangulLBase) * kHangulVCount + (b - kHangulVBase)) * kHangulTCount;
    }
    if (a >= kHangulSBase && a < kHangulSBase + kHangulSCount &&
        (a - kHangulSBase) % kHangulTCount == 0 &&
        b > kHangulTBase && b < kHangulTBase + kHangulTCount) {
        return a + (b - kHangulTBase);
    }
    std::size_t lo = 0, hi = std::size(udata::kCompPairs);
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        const auto& p = udata::kCompPairs[mid];
        if (a < p.a || (a == p.a && b < p.b)) {
            hi = mid;
        } else if (a > p.a || b > p.b) {
            lo = mid + 1;
        } else {
            return p.composed;
        }
    }
    return 0;
}

}  // namespace detail

inline std::vector<char32_t> nfc(const std::vector<char32_t>& in) {
    bool plain = true;
    for (const char32_t cp : in) {
        if (cp >= 0x0300) {
            plain = false;
            break;
        }
    }
    if (plain) return in;

    std::vector<char32_t> buf;
    buf.reserve(in.size() + 8);
    for (const char32_t cp : in) detail::decompose_cp(cp, buf);

    // canonical ordering: stable-sort runs of nonzero combining class
    for (std::size_t i = 1; i < buf.size(); ++i) {
        const std::uint8_t c = ccc(buf[i]);
        if (c == 0) continue;
        std::size_t j = i;
        while (j > 0 && ccc(buf[j - 1]) > c) {
            std::swap(buf[j - 1], buf[j]);
            --j;
        }
    }

    std::vector<char32_t> out;
    out.reserve(buf.size());
    std::ptrdiff_t last_starter = -1;
    std::uint8_t last_ccc = 0;
    for (const char32_t cp : buf) {
        const std::uint8_t c = ccc(cp);
        if (last_starter >= 0) {
            const bool adjacent =
                out.size() == static_cast<std::size_t>(last_starter) + 1;
            const bool blocked = !adjacent && last_ccc >= c;
            if (!blocked) {
                if (const char32_t m = detail::compose_pair(out[last_starter], cp)) {
                    out[last_starter] = m;
                    continue;
                }
            }
        }
        if (c == 0) {
            last_starter = static_cast<std::ptrdiff_t>(out.size());
            last_ccc = 0;
        } else {
            last_ccc = c;
        }
        out.push_back(cp);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Grapheme cluster segmentation (UAX #29 extended clusters)

inline udata::Gcb gcb(char32_t cp) {
    const auto* r = detail::range_find(udata::kGcbRanges, cp);
    return r ? r->v : udata::Gcb::Other;
}

inline bool is_incb_consonant(char32_t cp) {
    return detail::range_find(udata::kIncbConsonant, cp) != nullptr;
}

inline bool is_incb_linker(char32_t cp) {
    return detail::range_find(udata::kIncbLinker, cp) != nullptr;
}

inline bool is_incb_extend(char32_t cp) {
    return detail::range_find(udata::kIncbExtend, cp) != nullptr;
}

inline bool is_extended_pictographic(char32_t cp) {
    return detail::range_find(udata::kExtendedPictographic, cp) != nullptr;
}

inline bool is_emoji_presentation(char32_t cp) {
    return detail::range_find(udata::kEmojiPresentation, cp) != nullptr;
}

inline bool is_regional_indicator(char32_t cp) {
    return cp >= 0x1F1E6 && cp <= 0x1F1FF;
}

// breaks[i] == true when a cluster boundary precedes index i; size is n + 1.
inline std::vector<bool> grapheme_breaks(const std::vector<char32_t>& cps) {
    using udata::Gcb;
    const std::size_t n = cps.size();
    std::vector<bool> breaks(n + 1, true);
    if (n == 0) return breaks;

    // pict[j]: cps[0..j] ends with \p{Extended_Pictographic} Extend*
    std::vector<bool> pict(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        if (is_extended_pictographic(cps[j]))
            pict[j] = true;
        else if (j > 0 && pict[j - 1] && gcb(cps[j]) == Gcb::Extend)
            pict[j] = true;
    }

    std::size_t ri_run = is_regional_indicator(cps[0]) ? 1 : 0;
    // Indic conjunct state: the text so far ends with an InCB consonant
    // followed only by InCB extenders/linkers, at least one of them a linker.
    bool conj_base = is_incb_consonant(cps[0]);
    bool conj_linked = false;
    for (std::size_t i = 1; i < n; ++i) {
        const Gcb a = gcb(cps[i - 1]);
        const Gcb b = gcb(cps[i]);
        bool brk = true;
        if (a == Gcb::CR && b == Gcb::LF) {
            brk = false;
        } else if (a == Gcb::Control || a == Gcb::CR || a == Gcb::LF) {
            brk = true;
        } else if (b == Gcb::Control || b == Gcb::CR || b == Gcb::LF) {
            brk = true;
        } else if (a == Gcb::L && (b == Gcb::L || b == Gcb::V || b == Gcb::LV ||
                                   b == Gcb::LVT)) {
            brk = false;
        } else if ((a == Gcb::LV || a == Gcb::V) && (b == Gcb::V || b == Gcb::T)) {
            brk = false;
        } else if ((a == Gcb::LVT || a == Gcb::T) && b == Gcb::T) {
            brk = false;
        } else if (b == Gcb::Extend || b == Gcb::ZWJ) {
            brk = false;
        } else if (b == Gcb::SpacingMark) {
            brk = false;
        } else if (a == Gcb::Prepend) {
            brk = false;
        } else if (a == Gcb::ZWJ && is_extended_pictographic(cps[i]) && i >= 2 &&
                   pict[i - 2]) {
            brk = false;
        } else if (conj_base && conj_linked && is_incb_consonant(cps[i])) {
            brk = false;  // conjunct joins the following consonant (GB9c)
        } else if (a == Gcb::RegionalIndicator && b == Gcb::RegionalIndicator &&
                   ri_run % 2 == 1) {
            brk = false;
        }
        breaks[i] = brk;
        ri_run = is_regional_indicator(cps[i])
                     ? (is_regional_indicator(cps[i - 1]) ? ri_run + 1 : 1)
                     : 0;
        if (is_incb_consonant(cps[i])) {
            conj_base = true;
            conj_linked = false;
        } else if (conj_base && is_incb_linker(cps[i])) {
            conj_linked = true;
        } else if (!(conj_base && is_incb_extend(cps[i]))) {
            conj_base = false;
            conj_linked = false;
        }
    }
    return breaks;
}

inline std::size_t next_grapheme(const std::vector<char32_t>& cps,
                                 const std::vector<bool>& breaks,
                                 std::size_t i) {
    std::size_t j = i + 1;
    while (j < cps.size() && !breaks[j]) ++j;
    return j;
}

// Treats a cluster as emoji when its base is pictographic with default or
// forced emoji presentation, a flag pair, or a keycap. U+2764 counts even
// without a variation selector; in short messages a bare heavy heart is an
// emoji in practice.
inline bool cluster_is_emoji(const std::vector<char32_t>& cps, std::size_t b,
                             std::size_t e) {
    if (b >= e || b >= cps.size()) return false;
    const char32_t base = cps[b];
    if (is_regional_indicator(base)) return true;
    for (std::size_t j = b; j < e; ++j)
        if (cps[j] == 0x20E3) return true;
    if (!is_extended_pictographic(base)) return false;
    if (base >= 0x1F000) return true;
    if (is_emoji_presentation(base)) return true;
    if (base == 0x2764) return true;
    for (std::size_t j = b + 1; j < e; ++j)
        if (cps[j] == 0xFE0F) return true;
    return false;
}

}  // namespace tpl::uni
