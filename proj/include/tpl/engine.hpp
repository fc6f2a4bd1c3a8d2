#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tpl/config.hpp"
#include "tpl/detectors.hpp"
#include "tpl/lexicon.hpp"
#include "tpl/model.hpp"
#include "tpl/resolver.hpp"
#include "tpl/tokenizer.hpp"

// Bundles configuration and data files into one annotation entry point.
// Expected data directory layout:
//
//     lexicons/{vs,tk,vk}.txt  lexicons/emoji_map.txt
//     lexicons/{manner,misspellings,caps_allowlist}.txt
//     config/default.conf      validity/*.txt (used by the corpus layer)

namespace tpl::eng {

struct Engine {
    det::DetectorConfig config;
    det::Resources resources;
    tok::TokenizerOptions tokenizer_options;
    res::ResolverOptions resolver_options;
};

inline res::ResolverOptions resolver_options_from_kv(const cfg::KvMap& kv) {
    res::ResolverOptions o;
    o.suppress_url_separator_ellipsis = cfg::kv_bool(
        kv, "suppress_url_separator_ellipsis", o.suppress_url_separator_ellipsis);
    o.suppress_char_limit_ellipsis = cfg::kv_bool(
        kv, "suppress_char_limit_ellipsis", o.suppress_char_limit_ellipsis);
    const auto limit = [&](const char* key, Platform p) {
        const int v = cfg::kv_int(kv, key, -1);
        if (v > 0)
            o.char_limits[p] = static_cast<std::size_t>(v);
        else if (v == 0)
            o.char_limits.erase(p);
    };
    limit("char_limit_twitter", Platform::Twitter);
    limit("char_limit_facebook", Platform::Facebook);
    limit("char_limit_instagram", Platform::Instagram);
    limit("char_limit_generic", Platform::Generic);
    return o;
}

inline Engine load_engine(const std::string& data_dir,
                          const cfg::KvMap& kv = {}) {
    Engine e;
    e.config = det::DetectorConfig::from_kv(kv);
    e.resolver_options = resolver_options_from_kv(kv);
    const std::string lexdir = data_dir + "/lexicons";
    e.resources.vs = lex::Lexicon::load(lexdir + "/vs.txt");
    e.resources.tk = lex::Lexicon::load(lexdir + "/tk.txt");
    e.resources.vk = lex::Lexicon::load(lexdir + "/vk.txt");
    e.resources.emoji = lex::EmojiClassMap::load(lexdir + "/emoji_map.txt");
    e.resources.manner_words = lex::load_word_list(lexdir + "/manner.txt");
    e.resources.marked_misspellings =
        lex::load_word_list(lexdir + "/misspellings.txt");
    e.config.caps_allowlist = lex::load_word_list(lexdir + "/caps_allowlist.txt");
    return e;
}

struct Annotated {
    det::Analysis analysis;
    std::vector<Annotation> annotations;
};

// Normalizes, tokenizes, detects, and resolves in one step; spans refer to
// the normalized text in analysis.message.text.
inline Annotated annotate(const Engine& e, Message msg) {
    msg.text = tok::normalize(msg.text);
    Annotated out;
    out.analysis = det::analyze(std::move(msg), e.tokenizer_options);
    out.annotations = res::resolve(
        out.analysis,
        det::detect_all(out.analysis, e.config, e.resources, e.tokenizer_options),
        e.resolver_options);
    return out;
}

}  // namespace tpl::eng
