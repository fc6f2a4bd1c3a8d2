// tpl — batch annotator and table builder for textual paralanguage corpora.
//
// Subcommands:
//   annotate   JSONL corpus in, standoff or inline records out
//   stats      JSONL corpus or pre-counted CSV in, share table out
//   selftest   run the shipped fixture suite against the engine
//
// Exit codes: 0 success, 1 per-record errors or fixture failures,
// 2 unreadable input, unwritable output, or malformed configuration.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tpl/config.hpp"
#include "tpl/corpus.hpp"
#include "tpl/engine.hpp"
#include "tpl/fixtures.hpp"
#include "tpl/model.hpp"
#include "tpl/resolver.hpp"
#include "tpl/stats.hpp"

namespace {

using namespace tpl;

struct Runtime {
    eng::Engine engine;
    cor::ValidityRules rules;
};

// Layered configuration: data-dir defaults first, then the user file on top.
cfg::KvMap load_settings(const std::string& data_dir,
                         const std::string& config_path) {
    cfg::KvMap kv;
    const std::string defaults = data_dir + "/config/default.conf";
    if (std::filesystem::exists(defaults)) kv = cfg::parse_kv_file(defaults);
    if (!config_path.empty())
        for (auto& [key, value] : cfg::parse_kv_file(config_path))
            kv.insert_or_assign(key, value);
    return kv;
}

Runtime load_runtime(const std::string& data_dir,
                     const std::string& config_path) {
    const auto kv = load_settings(data_dir, config_path);
    Runtime rt;
    rt.engine = eng::load_engine(data_dir, kv);
    rt.rules.bot_patterns =
        cor::ValidityRules::load_lines(data_dir + "/validity/bot_patterns.txt");
    rt.rules.spam_terms =
        cor::ValidityRules::load_lines(data_dir + "/validity/spam_terms.txt");
    for (auto& w : cor::ValidityRules::load_lines(
             data_dir + "/validity/english_stopwords.txt"))
        rt.rules.stopwords.insert(std::move(w));
    rt.rules.apply_kv(kv);
    return rt;
}

// --in/--out resolution: "-" or empty means the standard stream.
struct InputFile {
    std::ifstream file;
    std::istream* stream = nullptr;
    bool open(const std::string& path) {
        if (path.empty() || path == "-") {
            stream = &std::cin;
            return true;
        }
        file.open(path, std::ios::binary);
        if (!file) return false;
        stream = &file;
        return true;
    }
};

struct OutputFile {
    std::ofstream file;
    std::ostream* stream = nullptr;
    bool open(const std::string& path) {
        if (path.empty() || path == "-") {
            stream = &std::cout;
            return true;
        }
        file.open(path, std::ios::binary | std::ios::trunc);
        if (!file) return false;
        stream = &file;
        return true;
    }
};

std::string standoff_record(const Message& normalized, Validity validity,
                            const std::vector<Annotation>& annotations) {
    nlohmann::json j;
    j["id"] = normalized.id;
    j["text"] = normalized.text;
    j["platform"] = std::string(to_string(normalized.platform));
    j["account"] = normalized.account;
    j["account_kind"] = std::string(to_string(normalized.account_kind));
    j["validity"] = std::string(to_string(validity));
    auto arr = nlohmann::json::array();
    for (const auto& a : annotations) {
        nlohmann::json o;
        o["start"] = a.span.start;
        o["end"] = a.span.end;
        o["category"] = std::string(to_string(a.category));
        o["subtype"] = std::string(to_string(a.subtype));
        o["surface"] = a.surface;
        o["canonical"] = a.canonical;
        o["rule_id"] = a.rule_id;
        arr.push_back(std::move(o));
    }
    j["annotations"] = std::move(arr);
    return j.dump();
}

std::string inline_record(const std::string& id, const eng::Annotated& a) {
    nlohmann::json j;
    j["id"] = id;
    j["text"] = res::render_inline(a.analysis, a.annotations);
    return j.dump();
}

int run_annotate(std::istream& in, std::ostream& out,
                 const std::string& format, const Runtime& rt) {
    const auto parsed = cor::read_jsonl(in);
    for (const auto& e : parsed.errors)
        std::cerr << "line " << e.line << ": " << e.message << "\n";
    for (const auto& m : parsed.messages) {
        const auto validity = cor::classify_validity(m, rt.rules);
        const auto annotated = eng::annotate(rt.engine, m);
        if (format == "inline")
            out << inline_record(m.id, annotated) << "\n";
        else
            out << standoff_record(annotated.analysis.message, validity,
                                   annotated.annotations)
                << "\n";
    }
    out.flush();
    return parsed.errors.empty() ? 0 : 1;
}

stats::StatsReport collapse_by_kind(const stats::StatsReport& r) {
    std::map<AccountKind, stats::StatsRow> by_kind;
    for (const auto& row : r.rows) {
        auto& g = by_kind[row.account_kind];
        g.account = std::string(to_string(row.account_kind));
        g.account_kind = row.account_kind;
        g.messages_analyzed += row.messages_analyzed;
        g.messages_with_tpl += row.messages_with_tpl;
        g.instances_total += row.instances_total;
        for (std::size_t i = 0; i < stats::kCategories; ++i)
            g.instances_by_category[i] += row.instances_by_category[i];
    }
    std::vector<stats::StatsRow> rows;
    rows.reserve(by_kind.size());
    for (auto& [kind, row] : by_kind) rows.push_back(std::move(row));
    auto out = stats::report_from_rows(std::move(rows));
    out.messages_analyzed = r.messages_analyzed;
    out.messages_with_tpl = r.messages_with_tpl;
    return out;
}

int run_stats(std::istream& in, const std::string& in_name, std::ostream& out,
              const std::string& format, cor::SamplingMode mode,
              const std::string& group_by, const Runtime& rt) {
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    // Pre-counted tables open with '#' metadata lines or the CSV header;
    // anything else is treated as a JSONL corpus (bad lines reported
    // per record, never re-routed here).
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    const bool precounted =
        first != std::string::npos &&
        (text[first] == '#' ||
         text.compare(first, 20, "account,account_kind") == 0);

    int exit_code = 0;
    stats::StatsReport report;
    if (!precounted) {
        std::istringstream lines(text);
        auto parsed = cor::read_jsonl(lines);
        for (const auto& e : parsed.errors)
            std::cerr << "line " << e.line << ": " << e.message << "\n";
        if (!parsed.errors.empty()) exit_code = 1;
        const auto selected = cor::select(std::move(parsed.messages), mode);
        stats::Accumulator acc;
        for (const auto& m : selected) {
            const auto validity = cor::classify_validity(m, rt.rules);
            if (validity == Validity::Valid)
                acc.add(m, validity, eng::annotate(rt.engine, m).annotations);
            else
                acc.add(m, validity, {});
        }
        report = acc.report();
    } else {
        const auto table = fix::parse_table(text, in_name);
        report = stats::report_from_rows(table.rows);
        report.messages_analyzed = table.messages_analyzed;
        report.messages_with_tpl = table.messages_with_tpl;
    }
    if (group_by == "kind") report = collapse_by_kind(report);
    out << stats::emit_table(report, format == "csv"
                                         ? stats::TableFormat::Csv
                                         : stats::TableFormat::AlignedText);
    out.flush();
    return exit_code;
}

int run_selftest(std::ostream& out, const std::string& data_dir,
                 const Runtime& rt) {
    const auto suite = fix::load_fixtures(data_dir + "/fixtures");
    std::size_t failed = 0;
    for (const auto& c : suite.golden) {
        const auto outcome = fix::run_case(c, rt.engine, rt.rules);
        out << (outcome.passed ? "PASS " : "FAIL ") << c.id << "\n";
        if (!outcome.passed) {
            ++failed;
            std::cerr << "FAIL " << c.id << "\n" << outcome.diff << "\n";
        }
    }
    for (const auto& t : suite.tables) {
        auto report = stats::report_from_rows(t.rows);
        report.messages_analyzed = t.messages_analyzed;
        report.messages_with_tpl = t.messages_with_tpl;
        bool ok = false;
        std::string why;
        try {
            ok = stats::parse_csv(stats::emit_table(
                     report, stats::TableFormat::Csv)) == report.rows;
            if (!ok) why = "table does not survive a serialize/parse cycle";
        } catch (const std::exception& e) {
            why = e.what();
        }
        out << (ok ? "PASS " : "FAIL ") << "table:" << t.name << "\n";
        if (!ok) {
            ++failed;
            std::cerr << "FAIL table:" << t.name << "\n" << why << "\n";
        }
    }
    const std::size_t total = suite.golden.size() + suite.tables.size();
    out << "selftest: " << (total - failed) << "/" << total
        << " fixtures passed\n";
    out.flush();
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"textual paralanguage annotator"};
    app.require_subcommand(1);

    std::string in_path;
    std::string out_path;
    std::string config_path;
    std::string data_dir = "data";
    std::string format;
    std::string mode_name = "all";
    std::string group_by = "account";

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path,
                        "key=value file layered over the data-dir defaults");
        cmd->add_option("--lexicon-dir", data_dir,
                        "data directory (lexicons/, config/, validity/, "
                        "fixtures/)")
            ->capture_default_str();
    };

    auto* annotate = app.add_subcommand(
        "annotate", "read a JSONL corpus, write one record per message");
    annotate->add_option("--in", in_path, "input corpus (JSONL, - for stdin)");
    annotate->add_option("--out", out_path, "output path (- for stdout)");
    annotate
        ->add_option("--format", format,
                     "standoff (id + annotation array) or inline (marked-up "
                     "text)")
        ->check(CLI::IsMember({"standoff", "inline"}))
        ->default_val("standoff");
    add_common(annotate);

    auto* stats_cmd = app.add_subcommand(
        "stats", "aggregate a corpus or pre-counted table into share lines");
    stats_cmd->add_option("--in", in_path,
                          "JSONL corpus or pre-counted CSV (- for stdin)");
    stats_cmd->add_option("--out", out_path, "output path (- for stdout)");
    stats_cmd->add_option("--format", format, "table (aligned text) or csv")
        ->check(CLI::IsMember({"table", "csv"}))
        ->default_val("table");
    stats_cmd
        ->add_option("--mode", mode_name,
                     "message filter: brand, at-replies, or all")
        ->check(CLI::IsMember({"brand", "at-replies", "all"}))
        ->capture_default_str();
    stats_cmd->add_option("--group-by", group_by, "row granularity")
        ->check(CLI::IsMember({"account", "kind"}))
        ->capture_default_str();
    add_common(stats_cmd);

    auto* selftest = app.add_subcommand(
        "selftest", "run the shipped fixture suite against the engine");
    add_common(selftest);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        const Runtime rt = load_runtime(data_dir, config_path);

        if (selftest->parsed()) return run_selftest(std::cout, data_dir, rt);

        InputFile in;
        if (!in.open(in_path)) {
            std::cerr << "cannot open input: " << in_path << "\n";
            return 2;
        }
        OutputFile out;
        if (!out.open(out_path)) {
            std::cerr << "cannot open output: " << out_path << "\n";
            return 2;
        }
        if (annotate->parsed())
            return run_annotate(*in.stream, *out.stream, format, rt);

        const auto mode = cor::parse_sampling_mode(mode_name);
        if (!mode) {
            std::cerr << "unknown sampling mode: " << mode_name << "\n";
            return 2;
        }
        const std::string in_name =
            in_path.empty() || in_path == "-"
                ? std::string("stdin")
                : std::filesystem::path(in_path).filename().string();
        return run_stats(*in.stream, in_name, *out.stream, format, *mode,
                         group_by, rt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
