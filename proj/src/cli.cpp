#include "apisynth/cli.hpp"

#include <iostream>

#include <CLI11.hpp>

#include "apisynth/dsl.hpp"
#include "apisynth/spec_load.hpp"
#include "apisynth/synth.hpp"
#include "apisynth/testgen.hpp"
#include "apisynth/ttn.hpp"

namespace apisynth {

namespace {

struct CommonOpts {
    std::string spec_path;
    std::string witness_path;
    std::string service_witness_path;
    std::string annotation_path;
    uint64_t seed = 1;
    int rounds = 8;
    int samples = 2;
    int max_optional = 2;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_testgen) {
    cmd->add_option("--spec", opts.spec_path, "API spec (JSON)")->required();
    cmd->add_option("--witnesses", opts.witness_path, "recorded calls (JSON array)")
        ->required();
    cmd->add_option("--service-witnesses", opts.service_witness_path,
                    "extra corpus answering generated test calls; enables the "
                    "mine/test loop");
    cmd->add_option("--annotations", opts.annotation_path,
                    "argument type hints for test generation");
    cmd->add_option("--seed", opts.seed, "random seed");
    if (with_testgen) {
        cmd->add_option("--rounds", opts.rounds, "max mine/test rounds");
        cmd->add_option("--samples", opts.samples, "test inputs per call shape");
        cmd->add_option("--max-optional", opts.max_optional,
                        "largest optional-argument subset exercised");
    }
}

struct Loaded {
    Library lib;
    SemanticLibrary sem;
    WitnessStore witnesses;
    int rounds = 0;
    size_t initial_count = 0;
};

Loaded load_and_mine(const CommonOpts& opts) {
    Loaded out;
    LoadReport report;
    out.lib = load_spec_file(opts.spec_path, &report);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
    out.witnesses = load_witnesses_file(opts.witness_path, out.lib);
    out.initial_count = out.witnesses.size();

    Annotations annotations;
    if (!opts.annotation_path.empty())
        annotations = load_annotations_json(
            nlohmann::json::parse(read_file(opts.annotation_path)), out.lib);

    if (!opts.service_witness_path.empty()) {
        WitnessStore corpus = load_witnesses_file(opts.service_witness_path, out.lib);
        // distinct stream from the sampler's, still seed-determined
        SimService service(corpus, opts.seed ^ 0x9e3779b97f4a7c15ull);
        AnalyzeConfig cfg;
        cfg.seed = opts.seed;
        cfg.max_rounds = opts.rounds;
        cfg.gen.samples_per_shape = opts.samples;
        cfg.gen.max_optional_subset = opts.max_optional;
        AnalyzeResult analyzed =
            analyze_api(out.lib, out.witnesses, annotations, service, cfg);
        out.sem = std::move(analyzed.lib);
        out.witnesses = std::move(analyzed.witnesses);
        out.rounds = analyzed.rounds;
    } else {
        out.sem = mine_types(out.lib, out.witnesses);
    }
    return out;
}

void print_summary(const Loaded& loaded) {
    std::cout << "methods: " << loaded.sem.methods.size() << "\n";
    std::cout << "objects: " << loaded.sem.objects.size() << "\n";
    std::cout << "witnesses: " << loaded.initial_count << " -> "
              << loaded.witnesses.size() << " (rounds: " << loaded.rounds << ")\n";
    std::cout << "merged groups: " << loaded.sem.groups.size() << "\n";
    for (const auto& group : loaded.sem.groups) {
        std::cout << "group:";
        for (const auto& loc : group) std::cout << " " << loc.render();
        std::cout << "\n";
    }
    for (const auto& [name, sig] : loaded.sem.methods)
        std::cout << "method " << name << ": " << sig.input->key() << " -> "
                  << sig.output->key() << "\n";
}

int run_analyze(const CommonOpts& opts, const std::string& out_lib,
                const std::string& out_bank, const std::string& out_witnesses) {
    Loaded loaded = load_and_mine(opts);
    print_summary(loaded);
    if (!out_lib.empty())
        write_file(out_lib, semantic_library_to_json(loaded.sem).dump(2) + "\n");
    if (!out_bank.empty())
        write_file(out_bank, value_bank_to_json(loaded.sem).dump(2) + "\n");
    if (!out_witnesses.empty()) save_witnesses_file(out_witnesses, loaded.witnesses);
    return 0;
}

int run_synth(const CommonOpts& opts, const std::string& query_text, double timeout_s,
              int max_len, size_t top, int retro_rounds, bool no_rank) {
    Loaded loaded = load_and_mine(opts);
    Query query = parse_query(query_text, loaded.sem);

    SynthConfig cfg;
    cfg.timeout = std::chrono::milliseconds(static_cast<int64_t>(timeout_s * 1000));
    cfg.max_path_len = max_len;
    cfg.seed = opts.seed;
    cfg.retro_rounds = retro_rounds;
    cfg.rank = !no_rank;
    SynthResult result = synthesize(loaded.sem, query, loaded.witnesses, cfg);

    std::cout << "candidates: " << result.ranked.size() << "\n";
    if (result.search.timed_out) std::cout << "(search budget exhausted)\n";
    size_t shown = std::min(top, result.ranked.size());
    for (size_t i = 0; i < shown; ++i) {
        const Candidate& c = result.ranked[i];
        std::cout << "\n#" << (i + 1);
        if (no_rank) std::cout << " size=" << c.cost.size;
        else std::cout << " cost=" << c.cost.total << " size=" << c.cost.size;
        std::cout << "\n" << render_program(c.display);
    }
    if (result.ranked.empty()) std::cout << "no programs found\n";
    return 0;
}

int run_net_dot(const CommonOpts& opts, const std::string& out_path) {
    Loaded loaded = load_and_mine(opts);
    std::string dot = ttn_to_dot(build_ttn(loaded.sem), loaded.sem);
    if (out_path.empty()) std::cout << dot;
    else write_file(out_path, dot);
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"type-directed synthesis for REST-style APIs from recorded traffic"};
    app.require_subcommand(1);

    CommonOpts analyze_opts, synth_opts, dot_opts;
    std::string out_lib, out_bank, out_witnesses;
    std::string query_text, dot_out;
    double timeout_s = 150.0;
    int max_len = 8;
    size_t top = 5;
    int retro_rounds = 15;
    bool no_rank = false;

    CLI::App* analyze = app.add_subcommand(
        "analyze", "mine semantic types (optionally growing the witness set)");
    add_common(analyze, analyze_opts, true);
    analyze->add_option("--out-lib", out_lib, "write the mined library as JSON");
    analyze->add_option("--out-bank", out_bank, "write the value bank as JSON");
    analyze->add_option("--out-witnesses", out_witnesses,
                        "write the grown witness set as JSON");

    CLI::App* synth = app.add_subcommand("synth", "synthesize programs for a query");
    add_common(synth, synth_opts, true);
    synth->add_option("--query", query_text, "e.g. \"{name: Channel.name} -> [User]\"")
        ->required();
    synth->add_option("--timeout", timeout_s, "search timeout in seconds");
    synth->add_option("--max-len", max_len, "max net path length");
    synth->add_option("--top", top, "programs to print");
    synth->add_option("--retro-rounds", retro_rounds, "replay rounds per candidate");
    synth->add_flag("--no-rank", no_rank, "print candidates in generation order");

    CLI::App* net_dot =
        app.add_subcommand("net-dot", "emit the typed net in graphviz format");
    add_common(net_dot, dot_opts, false);
    net_dot->add_option("--out", dot_out, "output file (stdout if omitted)");

    std::vector<const char*> argv = {"apisynth"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (analyze->parsed())
            return run_analyze(analyze_opts, out_lib, out_bank, out_witnesses);
        if (synth->parsed())
            return run_synth(synth_opts, query_text, timeout_s, max_len, top,
                             retro_rounds, no_rank);
        if (net_dot->parsed()) return run_net_dot(dot_opts, dot_out);
    } catch (const QueryParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (!e.suggestions.empty()) {
            std::cerr << "did you mean:";
            for (const auto& s : e.suggestions) std::cerr << " " << s;
            std::cerr << "\n";
        }
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

} // namespace apisynth
