#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tpl/detectors.hpp"
#include "tpl/lexicon.hpp"
#include "tpl/model.hpp"
#include "tpl/tokenizer.hpp"
#include "tpl/unicode.hpp"

// Candidate post-processing: suppression of separator/limit ellipses, merging
// of repeated identical elements, same-category overlap resolution, and the
// inline {CODE}...{/CODE} markup view over the standoff annotations.

namespace tpl::res {

struct ResolverOptions {
    bool suppress_url_separator_ellipsis = true;
    bool suppress_char_limit_ellipsis = true;
    std::map<Platform, std::size_t> char_limits = {{Platform::Twitter, 140}};
};

namespace detail {

// True when the text after `from` holds nothing but whitespace, one Url
// token, and optional trailing whitespace.
inline bool only_url_to_end(const det::Analysis& a, std::size_t from) {
    bool saw_url = false;
    for (const auto& t : a.tokens) {
        if (t.span.end <= from) continue;
        if (t.span.start < from) return false;  // token straddles the boundary
        if (t.kind == tok::TokenKind::Whitespace) continue;
        if (t.kind == tok::TokenKind::Url && !saw_url) {
            saw_url = true;
            continue;
        }
        return false;
    }
    return saw_url;
}

inline bool only_space_to_end(const det::Analysis& a, std::size_t from) {
    for (std::size_t i = from; i < a.text.cps.size(); ++i)
        if (!uni::is_space(a.text.cps[i])) return false;
    return true;
}

inline bool suppress_ellipsis(const det::Analysis& a, const Annotation& ann,
                              const ResolverOptions& opts) {
    if (ann.rule_id != det::rule::kTempoEllipsis) return false;
    if (opts.suppress_url_separator_ellipsis && only_url_to_end(a, ann.span.end))
        return true;
    if (opts.suppress_char_limit_ellipsis && only_space_to_end(a, ann.span.end)) {
        const auto it = opts.char_limits.find(a.message.platform);
        if (it != opts.char_limits.end() && a.text.cps.size() >= it->second)
            return true;
    }
    return false;
}

inline std::string merge_key_tail(const Annotation& ann) {
    return ann.canonical.empty() ? lex::detail::ascii_lower_copy(ann.surface)
                                 : ann.canonical;
}

inline bool whitespace_gap(const det::Analysis& a, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i)
        if (!uni::is_space(a.text.cps[i])) return false;
    return true;
}

inline bool can_merge(const det::Analysis& a, const Annotation& prev,
                      const std::string& prev_unit, const Annotation& next,
                      const std::string& next_unit) {
    return prev.category == next.category && prev.subtype == next.subtype &&
           prev.rule_id == next.rule_id && prev.span.end <= next.span.start &&
           prev_unit == next_unit &&
           whitespace_gap(a, prev.span.end, next.span.start);
}

inline bool spans_overlap(const Span& x, const Span& y) {
    return x.start < y.end && y.start < x.end;
}

}  // namespace detail

inline std::vector<Annotation> resolve(const det::Analysis& a,
                                       std::vector<Annotation> candidates,
                                       const ResolverOptions& opts = {}) {
    std::sort(candidates.begin(), candidates.end(), annotation_order);

    // Drop ellipses that only separate content from a trailing link or mark
    // a truncation at the platform's character limit.
    std::vector<Annotation> kept;
    kept.reserve(candidates.size());
    for (auto& ann : candidates)
        if (!detail::suppress_ellipsis(a, ann, opts)) kept.push_back(std::move(ann));

    // Merge runs of the identical element separated by nothing or whitespace
    // (repeated emoji, "hmmm hmmm hmmm") into one annotation per run. The
    // repeated element's key is tracked on the side: the merged surface grows
    // to cover the run, which must not change what the run is a repetition of.
    std::vector<Annotation> merged;
    std::vector<std::string> unit_keys;
    for (auto& ann : kept) {
        const std::string key = detail::merge_key_tail(ann);
        bool absorbed = false;
        // Interleaved same-span annotations of other categories must not
        // block a merge, so scan past non-matching predecessors; the
        // whitespace-gap requirement keeps distant merges impossible.
        for (std::size_t k = merged.size(); k-- > 0;) {
            Annotation& prev = merged[k];
            if (prev.span.end > ann.span.start) continue;
            if (detail::can_merge(a, prev, unit_keys[k], ann, key)) {
                prev.span.end = ann.span.end;
                prev.surface = uni::encode_utf8(a.text.cps, prev.span.start,
                                                prev.span.end);
                if (!prev.canonical.empty() || !ann.canonical.empty())
                    prev.canonical = key;
                absorbed = true;
                break;
            }
        }
        if (!absorbed) {
            merged.push_back(std::move(ann));
            unit_keys.push_back(key);
        }
    }

    // Same-category overlaps: keep the longest span; ties prefer the earlier
    // start, then the smaller subtype and rule id.
    std::vector<char> dropped(merged.size(), 0);
    std::vector<std::size_t> order(merged.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const Annotation& ax = merged[x];
        const Annotation& ay = merged[y];
        const auto lx = ax.span.length(), ly = ay.span.length();
        if (lx != ly) return lx > ly;
        return ax.order_key() < ay.order_key();
    });
    for (std::size_t oi = 0; oi < order.size(); ++oi) {
        const std::size_t i = order[oi];
        if (dropped[i]) continue;
        for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
            const std::size_t j = order[oj];
            if (dropped[j]) continue;
            if (merged[i].category == merged[j].category &&
                detail::spans_overlap(merged[i].span, merged[j].span))
                dropped[j] = 1;
        }
    }
    std::vector<Annotation> out;
    out.reserve(merged.size());
    for (std::size_t i = 0; i < merged.size(); ++i)
        if (!dropped[i]) out.push_back(std::move(merged[i]));

    std::sort(out.begin(), out.end(), annotation_order);
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Annotation& x, const Annotation& y) {
                              return x.span.start == y.span.start &&
                                     x.span.end == y.span.end &&
                                     x.category == y.category &&
                                     x.subtype == y.subtype &&
                                     x.surface == y.surface &&
                                     x.canonical == y.canonical &&
                                     x.rule_id == y.rule_id;
                          }),
              out.end());
    return out;
}

// --------------------------------------------------------------------------
// Inline markup

namespace detail {

struct RenderUnit {
    Span span;
    TplCategory category;
};

// Split partially overlapping units at the boundary so the remaining family
// is laminar (any two units nested or disjoint) and stack-renderable.
inline void make_laminar(std::vector<RenderUnit>& units) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < units.size() && !changed; ++i) {
            for (std::size_t j = 0; j < units.size() && !changed; ++j) {
                const Span& x = units[i].span;
                const Span& y = units[j].span;
                if (x.start < y.start && y.start < x.end && x.end < y.end) {
                    const RenderUnit tail{{x.end, y.end}, units[j].category};
                    units[j].span.end = x.end;
                    units.push_back(tail);
                    changed = true;
                }
            }
        }
    }
}

}  // namespace detail

inline std::string render_inline(const det::Analysis& a,
                                 const std::vector<Annotation>& annotations) {
    std::vector<detail::RenderUnit> units;
    units.reserve(annotations.size());
    for (const auto& ann : annotations)
        units.push_back({ann.span, ann.category});
    detail::make_laminar(units);
    // open order at one position: longer first, then category (VQ outermost)
    std::sort(units.begin(), units.end(),
              [](const detail::RenderUnit& x, const detail::RenderUnit& y) {
                  if (x.span.start != y.span.start)
                      return x.span.start < y.span.start;
                  if (x.span.end != y.span.end) return x.span.end > y.span.end;
                  return x.category < y.category;
              });

    const auto& cps = a.text.cps;
    std::string out;
    std::vector<TplCategory> stack;
    std::vector<std::size_t> stack_end;
    std::size_t next_unit = 0;
    const auto open_tag = [&](TplCategory c) {
        out += '{';
        out += to_string(c);
        out += '}';
    };
    const auto close_tag = [&](TplCategory c) {
        out += "{/";
        out += to_string(c);
        out += '}';
    };
    for (std::size_t p = 0; p <= cps.size(); ++p) {
        while (!stack.empty() && stack_end.back() == p) {
            close_tag(stack.back());
            stack.pop_back();
            stack_end.pop_back();
        }
        while (next_unit < units.size() && units[next_unit].span.start == p) {
            const auto& u = units[next_unit];
            if (u.span.end == p) {  // zero-length
                open_tag(u.category);
                close_tag(u.category);
            } else {
                open_tag(u.category);
                stack.push_back(u.category);
                stack_end.push_back(u.span.end);
            }
            ++next_unit;
        }
        if (p < cps.size()) uni::append_utf8(cps[p], out);
    }
    return out;
}

inline std::string render_inline(const Message& msg,
                                 const std::vector<Annotation>& annotations,
                                 const tok::TokenizerOptions& opts = {}) {
    return render_inline(det::analyze(msg, opts), annotations);
}

struct InlineSpan {
    Span span;
    TplCategory category;

    bool operator==(const InlineSpan&) const = default;
};

struct InlineParse {
    std::string text;
    std::vector<InlineSpan> spans;
};

struct InlineParseError : std::runtime_error {
    std::size_t offset;  // scalar-value offset into the marked-up input

    InlineParseError(const std::string& what, std::size_t off)
        : std::runtime_error(what + " at offset " + std::to_string(off)),
          offset(off) {}
};

inline InlineParse parse_inline(std::string_view marked_up) {
    const auto dec = uni::decode_utf8(marked_up);
    if (!dec.ok)
        throw InlineParseError("invalid UTF-8", dec.cps.size());
    const auto& cps = dec.cps;

    InlineParse result;
    std::vector<char32_t> plain;
    struct Open {
        TplCategory category;
        std::size_t plain_pos;
        std::size_t span_index;
    };
    std::vector<Open> stack;

    std::size_t i = 0;
    while (i < cps.size()) {
        if (cps[i] != '{') {
            plain.push_back(cps[i]);
            ++i;
            continue;
        }
        std::string body;
        std::size_t j = i + 1;
        while (j < cps.size() && cps[j] != '}' && body.size() <= 3) {
            if (cps[j] > 0x7F) break;
            body += static_cast<char>(cps[j]);
            ++j;
        }
        if (j >= cps.size() || cps[j] != '}')
            throw InlineParseError("malformed tag", i);
        const bool closing = !body.empty() && body[0] == '/';
        const auto cat = parse_category(closing ? body.substr(1) : body);
        if (!cat) throw InlineParseError("unknown tag {" + body + "}", i);
        if (closing) {
            if (stack.empty() || stack.back().category != *cat)
                throw InlineParseError("unbalanced tag {" + body + "}", i);
            result.spans[stack.back().span_index].span.end = plain.size();
            stack.pop_back();
        } else {
            stack.push_back({*cat, plain.size(), result.spans.size()});
            result.spans.push_back({{plain.size(), plain.size()}, *cat});
        }
        i = j + 1;
    }
    if (!stack.empty())
        throw InlineParseError(
            "unclosed tag {" + std::string(to_string(stack.back().category)) + "}",
            cps.size());

    result.text = uni::encode_utf8(plain);
    std::sort(result.spans.begin(), result.spans.end(),
              [](const InlineSpan& x, const InlineSpan& y) {
                  if (x.span.start != y.span.start)
                      return x.span.start < y.span.start;
                  if (x.span.end != y.span.end) return x.span.end > y.span.end;
                  return x.category < y.category;
              });
    return result;
}

}  // namespace tpl::res
