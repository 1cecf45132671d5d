// Command-line front end: ingest / map / serve / validate-strategy.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "facmatch/facmatch.hpp"
#include "facmatch/http_encoder.hpp"
#include "facmatch/llm_client.hpp"
#include "facmatch/service.hpp"

namespace fs = std::filesystem;
using namespace facmatch;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path);
    out << content;
}

std::string now_iso_micros() {
    auto now = std::chrono::system_clock::now();
    auto secs = std::chrono::time_point_cast<std::chrono::seconds>(now);
    auto micros =
        std::chrono::duration_cast<std::chrono::microseconds>(now - secs).count();
    MicroTime t{std::chrono::system_clock::to_time_t(secs), static_cast<std::int32_t>(micros)};
    return format_iso_micros(t);
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
}

void print_diagnostics(const Diagnostics& diag, std::ostream& out) {
    for (const auto& d : diag.items()) {
        const char* sev = d.severity == Severity::Error
                              ? "error"
                              : d.severity == Severity::Warning ? "warning" : "info";
        out << sev << " [" << d.context << "] " << d.message << "\n";
    }
}

struct SnapshotArg {
    std::string source;
    std::string path;
};

std::vector<SnapshotArg> parse_snapshot_args(const std::vector<std::string>& raw) {
    std::vector<SnapshotArg> out;
    for (const auto& item : raw) {
        size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
            throw ConfigError("--snapshot expects SOURCE=PATH, got '" + item + "'");
        out.push_back({item.substr(0, eq), item.substr(eq + 1)});
    }
    return out;
}

StopwordSet load_stopwords(const std::vector<std::string>& files) {
    StopwordSet sw;
    for (const auto& f : files) sw.load_file(f);
    return sw;
}

int cmd_ingest(const std::string& source, const std::string& input, const std::string& previous,
               const std::string& patches, std::string now, const std::string& output) {
    Diagnostics diag;
    std::ifstream in(input);
    if (!in) throw ConfigError("cannot open " + input);
    CatalogSnapshot snap = load_snapshot(in, input);
    if (!snap.source.empty() && snap.source != source)
        throw DataError(input + ": records claim source " + snap.source + ", expected " + source);
    snap.source = source;

    if (!patches.empty()) apply_patches(snap, load_json_file(patches), &diag);
    enrich_snapshot(snap);

    if (now.empty()) now = now_iso_micros();
    nlohmann::json delta_json = {{"source", source},
                                 {"records", snap.records.size()},
                                 {"modified", nlohmann::json::array()},
                                 {"added", nlohmann::json::array()},
                                 {"deprecated", nlohmann::json::array()}};
    if (!previous.empty()) {
        std::ifstream prev_in(previous);
        if (!prev_in) throw ConfigError("cannot open " + previous);
        CatalogSnapshot prev = load_snapshot(prev_in, previous);
        prev.source = source;
        VersionDelta delta = diff_snapshots(prev, snap, now);
        delta_json["modified"] = delta.modified;
        delta_json["added"] = delta.added;
        delta_json["deprecated"] = delta.deprecated;
        delta_json["records"] = snap.records.size();
    }

    std::string rendered;
    for (const auto& e : snap.records) rendered += record_line(e) + "\n";
    if (output.empty()) {
        std::cout << rendered;
        print_diagnostics(diag, std::cerr);
        std::cerr << delta_json.dump(2) << "\n";
    } else {
        write_file(output, rendered);
        print_diagnostics(diag, std::cerr);
        std::cout << delta_json.dump(2) << "\n";
    }
    return 0;
}

struct MapArgs {
    std::string strategy_path;
    std::vector<std::string> snapshots;
    std::string patches;
    std::string out_dir = "out";
    std::string validator = "rule";
    std::vector<std::string> stopword_files;
    std::vector<std::string> weight_args;
    std::string base_time = "2026-01-01T00:00:00.000000";
    int stop_after = 20;
    double rule_threshold = 0.85;
    bool keep_going = false;
    std::string st_encoder_url, st_encoder_model;
    std::string emb_encoder_url, emb_encoder_model;
    std::string embedding_cache;
    LlmConfig llm;
};

int cmd_map(const MapArgs& args) {
    Diagnostics diag;

    Catalog catalog;
    std::vector<std::string> priority_order;
    for (const auto& snap_arg : parse_snapshot_args(args.snapshots)) {
        std::ifstream in(snap_arg.path);
        if (!in) throw ConfigError("cannot open " + snap_arg.path);
        CatalogSnapshot snap = load_snapshot(in, snap_arg.path);
        if (!snap.source.empty() && snap.source != snap_arg.source)
            throw DataError(snap_arg.path + ": records claim source " + snap.source +
                            ", expected " + snap_arg.source);
        snap.source = snap_arg.source;
        if (!args.patches.empty()) apply_patches(snap, load_json_file(args.patches), &diag);
        enrich_snapshot(snap);
        for (auto& e : snap.records) catalog.add(std::move(e));
        priority_order.push_back(snap_arg.source);
    }
    if (catalog.empty()) throw ConfigError("no snapshots given (use --snapshot SOURCE=PATH)");

    Strategy strategy = parse_strategy(read_file(args.strategy_path), catalog.sources());

    PipelineOptions opts;
    opts.base_timestamp = args.base_time;
    opts.keep_going = args.keep_going;
    opts.validation.stop_after_consecutive_rejections = args.stop_after;
    opts.validation.rule_threshold = args.rule_threshold;
    for (const auto& w : args.weight_args) {
        size_t eq = w.find('=');
        auto value = eq == std::string::npos ? std::nullopt : parse_double(w.substr(eq + 1));
        if (!value) throw ConfigError("--weight expects NAME=VALUE, got '" + w + "'");
        auto step = resolve_step(w.substr(0, eq));
        if (!step || step->kind != StepKind::Score)
            throw ConfigError("--weight: unknown score '" + w.substr(0, eq) + "'");
        opts.weights.weights[step->name] = *value;
    }

    StopwordSet stopwords = load_stopwords(args.stopword_files);
    ScoringContext ctx;
    ctx.stopwords = &stopwords;

    std::shared_ptr<EmbeddingCache> cache;
    if (!args.embedding_cache.empty())
        cache = std::make_shared<EmbeddingCache>(args.embedding_cache);
    auto make_encoder = [&cache](const std::string& url, const std::string& model,
                                 uint64_t stub_seed) -> std::shared_ptr<EmbeddingEncoder> {
        std::shared_ptr<EmbeddingEncoder> enc;
        if (url.empty()) {
            enc = std::make_shared<StubEncoder>(stub_seed);
        } else {
            EncoderHttpConfig cfg;
            cfg.base_url = url;
            cfg.model = model;
            enc = std::make_shared<HttpEncoder>(cfg);
        }
        if (cache) enc = std::make_shared<CachedEncoder>(enc, cache);
        return enc;
    };
    auto st_encoder = make_encoder(args.st_encoder_url, args.st_encoder_model, 0x5e);
    auto emb_encoder = make_encoder(args.emb_encoder_url, args.emb_encoder_model, 0x11);
    ctx.sentence_encoder = st_encoder.get();
    ctx.llm_encoder = emb_encoder.get();

    std::unique_ptr<Validator> validator;
    if (args.validator == "rule") {
        validator = std::make_unique<RuleValidator>(opts.validation);
    } else if (args.validator == "llm") {
        validator = std::make_unique<LlmValidator>(args.llm, &diag);
    } else {
        throw ConfigError("--validator must be 'rule' or 'llm'");
    }

    SynonymSetRegistry sets(catalog);
    PipelineResult result = run_pipeline(catalog, strategy, sets, *validator, opts, ctx, diag);

    SourcePriority priority(priority_order);
    std::vector<SetEntry> entries = build_set_entries(catalog, sets, priority, &diag);

    fs::create_directories(args.out_dir);
    auto out_path = [&args](const char* name) { return (fs::path(args.out_dir) / name).string(); };
    write_file(out_path("mappings.sssom.txt"), emit_sssom(result.mappings));
    write_file(out_path("mappings.sssom.tsv"), emit_sssom_tsv(result.mappings));
    write_file(out_path("resolver.json"), emit_resolver_json(entries, &diag));
    write_file(out_path("facilities.csv"), emit_ivoa_csv(entries));
    write_file(out_path("linked-catalog.jsonl"), emit_linked_catalog(catalog, sets));
    // Output emitters can add findings; refresh the counts before reporting.
    result.report.diag_warnings = diag.count(Severity::Warning);
    result.report.diag_errors = diag.count(Severity::Error);
    write_file(out_path("run-report.json"), result.report.to_json().dump(2) + "\n");

    print_diagnostics(diag, std::cerr);
    std::cout << result.report.to_json().dump(2) << "\n";
    return 0;
}

int cmd_serve(const std::string& dict_path, const std::string& facilities_path,
              const std::string& host, int port) {
    auto index = std::make_shared<ResolverIndex>();
    index->build(load_json_file(dict_path));
    if (!facilities_path.empty()) index->attach_meronymy(read_file(facilities_path));

    httplib::Server server;
    register_resolver_routes(server, index);
    std::cerr << "resolver listening on " << host << ":" << port << " (" << index->size()
              << " entries)\n";
    if (!server.listen(host, port))
        throw TransportError("cannot listen on " + host + ":" + std::to_string(port));
    return 0;
}

int cmd_validate_strategy(const std::string& strategy_path, const std::string& sources_csv) {
    std::set<std::string> known;
    for (const auto& s : split(sources_csv, ','))
        if (!trim(s).empty()) known.insert(trim(s));

    Strategy strategy = parse_strategy(read_file(strategy_path));
    auto findings = validate_strategy(strategy, known);
    bool has_error = false;
    for (const auto& d : findings) {
        const char* sev = d.severity == Severity::Error
                              ? "error"
                              : d.severity == Severity::Warning ? "warning" : "info";
        has_error |= d.severity == Severity::Error;
        std::cout << sev << ": " << d.message << "\n";
    }
    std::cout << strategy.lines.size() << " line(s), " << findings.size() << " finding(s)\n";
    return has_error ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"facility catalog matcher"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "load, patch, enrich and version one snapshot");
    std::string in_source, in_input, in_previous, in_patches, in_now, in_output;
    ingest->add_option("--source", in_source, "source identifier")->required();
    ingest->add_option("--input", in_input, "snapshot in canonical record format")->required();
    ingest->add_option("--previous", in_previous, "previous canonical snapshot to diff against");
    ingest->add_option("--patches", in_patches, "curation patch file (json)");
    ingest->add_option("--now", in_now, "timestamp for modified/deprecated marks");
    ingest->add_option("--output", in_output, "write canonical records here (default: stdout)");

    // map
    auto* map_cmd = app.add_subcommand("map", "run the full mapping pipeline");
    MapArgs margs;
    map_cmd->add_option("--strategy", margs.strategy_path, "mapping-strategy file")->required();
    map_cmd->add_option("--snapshot", margs.snapshots,
                        "SOURCE=PATH (repeatable; order sets label priority)")->required();
    map_cmd->add_option("--patches", margs.patches, "curation patch file (json)");
    map_cmd->add_option("--out", margs.out_dir, "output directory");
    map_cmd->add_option("--validator", margs.validator, "rule | llm");
    map_cmd->add_option("--stopwords", margs.stopword_files, "stop-word file (repeatable)");
    map_cmd->add_option("--weight", margs.weight_args, "score weight NAME=VALUE (repeatable)");
    map_cmd->add_option("--base-time", margs.base_time, "base timestamp for mapping dates");
    map_cmd->add_option("--stop-after", margs.stop_after, "consecutive rejections before stopping");
    map_cmd->add_option("--rule-threshold", margs.rule_threshold, "rule validator threshold");
    map_cmd->add_flag("--keep-going", margs.keep_going, "continue after a failing strategy line");
    map_cmd->add_option("--st-encoder-url", margs.st_encoder_url,
                        "sentence-transformer encoder endpoint (default: builtin stub)");
    map_cmd->add_option("--st-encoder-model", margs.st_encoder_model, "encoder model id");
    map_cmd->add_option("--emb-encoder-url", margs.emb_encoder_url,
                        "LLM embedding encoder endpoint (default: builtin stub)");
    map_cmd->add_option("--emb-encoder-model", margs.emb_encoder_model, "encoder model id");
    map_cmd->add_option("--embedding-cache", margs.embedding_cache, "embedding cache directory");
    map_cmd->add_option("--llm-url", margs.llm.base_url, "reviewer endpoint base url");
    map_cmd->add_option("--llm-model", margs.llm.model, "reviewer model name");
    map_cmd->add_option("--llm-key", margs.llm.api_key, "reviewer API key");
    map_cmd->add_option("--llm-timeout", margs.llm.timeout_seconds, "reviewer timeout, seconds");
    map_cmd->add_option("--llm-audit-log", margs.llm.audit_log_path,
                        "append reviewer request/response bodies to this JSONL file");

    // serve
    auto* serve = app.add_subcommand("serve", "run the name-resolver HTTP service");
    std::string sv_dict, sv_facilities, sv_host = "127.0.0.1";
    int sv_port = 8080;
    serve->add_option("--dict", sv_dict, "resolver dictionary json")->required();
    serve->add_option("--facilities", sv_facilities, "facility csv for meronymy expansion");
    serve->add_option("--host", sv_host, "bind address");
    serve->add_option("--port", sv_port, "port");

    // validate-strategy
    auto* lint = app.add_subcommand("validate-strategy", "lint a mapping-strategy file");
    std::string vs_strategy, vs_sources;
    lint->add_option("--strategy", vs_strategy, "mapping-strategy file")->required();
    lint->add_option("--sources", vs_sources, "comma-separated known sources");

    try {
        app.parse(argc, argv);
        if (*ingest)
            return cmd_ingest(in_source, in_input, in_previous, in_patches, in_now, in_output);
        if (*map_cmd) return cmd_map(margs);
        if (*serve) return cmd_serve(sv_dict, sv_facilities, sv_host, sv_port);
        if (*lint) return cmd_validate_strategy(vs_strategy, vs_sources);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const TransportError& e) {
        std::cerr << "transport error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
