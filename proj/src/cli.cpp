#include "gaf/cli.hpp"

#include <chrono>
#include <iomanip>
#include <memory>

#include <CLI11.hpp>

#include "gaf/config.hpp"
#include "gaf/evolve.hpp"
#include "gaf/http_engine.hpp"
#include "gaf/lexicon.hpp"
#include "gaf/persistence.hpp"
#include "gaf/report.hpp"
#include "gaf/search.hpp"

namespace gaf {
namespace {

int Fail(std::ostream& err, const std::string& message, int code) {
    err << "error: " << message << "\n";
    return code;
}

struct LexiconFlags {
    std::string lemmas;
    std::string synonyms;
    std::string stopwords;

    void add_to(CLI::App& command) {
        command.add_option("--lemmas", lemmas, "lemma dictionary (surface<TAB>lemma per line)");
        command.add_option("--synonyms", synonyms, "synonym groups (comma separated, one per line)");
        command.add_option("--stopwords", stopwords, "extra stopwords (one per line)");
    }

    Lexicon load() const { return Lexicon::load(LexiconPaths{lemmas, synonyms, stopwords}); }
};

struct EngineFlags {
    std::string corpus_dir;
    std::string adapter_url;

    void add_to(CLI::App& command) {
        command.add_option("--corpus", corpus_dir, "directory of corpus documents (local engine)");
        command.add_option("--adapter-url", adapter_url, "base URL of a remote search adapter");
    }

    bool exactly_one() const { return corpus_dir.empty() != adapter_url.empty(); }
};

// Owns whichever engine the flags picked plus the index backing a local one.
// The index sits behind a unique_ptr so the LocalEngine's reference survives moves.
struct EngineBox {
    std::unique_ptr<LocalIndex> index;
    std::unique_ptr<Engine> engine;
};

EngineBox MakeEngine(const EngineFlags& flags, const Lexicon& lexicon) {
    EngineBox box;
    if (!flags.corpus_dir.empty()) {
        box.index = std::make_unique<LocalIndex>(index_corpus(flags.corpus_dir, lexicon));
        box.engine = std::make_unique<LocalEngine>(*box.index, lexicon);
    } else {
        box.engine = std::make_unique<HttpEngine>(flags.adapter_url);
    }
    return box;
}

void PrintProgress(const RunState& state, std::ostream& err) {
    const Population& population = state.current_population;
    err << "gen " << population.generation_number << "  fitness=" << std::fixed
        << std::setprecision(6) << population.fitness << "  sigma=" << population.sigma_fitness
        << std::defaultfloat;
    if (!state.history.empty()) {
        err << "  best='" << state.history.back().best_query_text << "'";
    }
    err << "\n";
}

void EmitReport(const RunState& state, int top_k, bool as_json,
                std::optional<double> duration_seconds, std::ostream& out) {
    RunReport report = build_report(state, top_k);
    report.duration_seconds = duration_seconds;
    if (as_json) {
        out << report_to_json_text(report);
    } else {
        print_report(report, out);
    }
}

int RunCommand(const std::string& config_path, const std::string& pool_flag,
               const EngineFlags& engine_flags, const LexiconFlags& lexicon_flags,
               bool seed_given, std::uint64_t seed, const std::string& state_out_flag, int top_k,
               bool as_json, std::ostream& out, std::ostream& err) {
    Config config;
    try {
        config = load_config(config_path);
    } catch (const ConfigIoError& error) {
        return Fail(err, error.what(), 1);
    } catch (const ConfigError& error) {
        return Fail(err, error.what(), 2);
    }

    if (seed_given) {
        config.rng_seed = seed;
    }
    if (!engine_flags.exactly_one()) {
        return Fail(err, "exactly one of --corpus or --adapter-url is required", 1);
    }
    config.engine_kind =
        engine_flags.corpus_dir.empty() ? EngineKind::HttpAdapter : EngineKind::Local;

    const std::string pool_path = pool_flag.empty() ? config.keyword_pool_path : pool_flag;
    if (pool_path.empty()) {
        return Fail(err, "no keyword pool: pass --pool or set g4 in the config", 1);
    }
    config.keyword_pool_path = pool_path;

    std::string state_out = state_out_flag;
    if (state_out.empty()) {
        state_out = config.state_path.empty() ? "run.gaf" : config.state_path;
    }
    config.state_path = state_out;

    Lexicon lexicon;
    std::vector<Gene> pool;
    EngineBox engine;
    try {
        lexicon = lexicon_flags.load();
        pool = load_keyword_pool(pool_path, lexicon);
        engine = MakeEngine(engine_flags, lexicon);
    } catch (const std::exception& error) {
        return Fail(err, error.what(), 1);
    }

    const auto on_generation = [&err, &config, &state_out](const RunState& state) {
        PrintProgress(state, err);
        if (config.autosave) {
            save_state(state, state_out);
        }
    };

    const auto started = std::chrono::steady_clock::now();
    RunState state;
    try {
        state = run(config, lexicon, *engine.engine, std::move(pool), on_generation);
    } catch (const std::exception& error) {
        return Fail(err, error.what(), 1);  // setup problems such as a too-small pool
    }
    const double duration =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    try {
        save_state(state, state_out);
    } catch (const PersistenceError& error) {
        return Fail(err, error.what(), 1);
    }
    EmitReport(state, top_k, as_json, duration, out);
    return state.stop_reason == StopReason::Error ? 3 : 0;
}

int ResumeCommand(const std::string& state_path, const EngineFlags& engine_flags,
                  const LexiconFlags& lexicon_flags, int top_k, bool as_json, std::ostream& out,
                  std::ostream& err) {
    RunState state;
    try {
        state = load_state(state_path);
    } catch (const PersistenceError& error) {
        return Fail(err, error.what(), 1);
    }
    if (state.stop_reason != StopReason::Running && state.stop_reason != StopReason::Error) {
        return Fail(err, "state is already terminal (" + to_string(state.stop_reason) + ")", 4);
    }
    if (!engine_flags.exactly_one()) {
        return Fail(err, "exactly one of --corpus or --adapter-url is required", 1);
    }
    state.stop_reason = StopReason::Running;
    state.error_text.clear();

    Lexicon lexicon;
    EngineBox engine;
    try {
        lexicon = lexicon_flags.load();
        engine = MakeEngine(engine_flags, lexicon);
    } catch (const std::exception& error) {
        return Fail(err, error.what(), 1);
    }

    const auto on_generation = [&err, &state_path](const RunState& current) {
        PrintProgress(current, err);
        if (current.config.autosave) {
            save_state(current, state_path);
        }
    };

    const auto started = std::chrono::steady_clock::now();
    advance(state, *engine.engine, lexicon, -1, on_generation);
    const double duration =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    try {
        save_state(state, state_path);
    } catch (const PersistenceError& error) {
        return Fail(err, error.what(), 1);
    }
    EmitReport(state, top_k, as_json, duration, out);
    return state.stop_reason == StopReason::Error ? 3 : 0;
}

int InspectCommand(const std::string& state_path, int top_k, bool as_json, std::ostream& out,
                   std::ostream& err) {
    RunState state;
    try {
        state = load_state(state_path);
    } catch (const PersistenceError& error) {
        return Fail(err, error.what(), 1);
    }
    EmitReport(state, top_k, as_json, std::nullopt, out);
    return 0;
}

int SearchCommand(const std::vector<std::string>& query_words, const EngineFlags& engine_flags,
                  const LexiconFlags& lexicon_flags, int limit, std::ostream& out,
                  std::ostream& err) {
    if (!engine_flags.exactly_one()) {
        return Fail(err, "exactly one of --corpus or --adapter-url is required", 1);
    }
    std::string query;
    for (const std::string& word : query_words) {
        if (!query.empty()) {
            query += ' ';
        }
        query += word;
    }

    Lexicon lexicon;
    try {
        lexicon = lexicon_flags.load();
    } catch (const LexiconError& error) {
        return Fail(err, error.what(), 1);
    }

    try {
        if (!engine_flags.corpus_dir.empty()) {
            const LocalIndex index = index_corpus(engine_flags.corpus_dir, lexicon);
            const auto scored = rank_local_scored(lexicon.lemmatize(query), index, limit);
            for (std::size_t i = 0; i < scored.size(); ++i) {
                out << std::setw(3) << (i + 1) << "  " << std::fixed << std::setprecision(4)
                    << scored[i].score << std::defaultfloat << "  " << scored[i].hit.location
                    << "  \"" << scored[i].hit.title << "\"\n";
            }
            return 0;
        }
        HttpEngine engine(engine_flags.adapter_url);
        const std::vector<SearchHit> hits = execute(query, engine, limit);
        for (const SearchHit& hit : hits) {
            out << std::setw(3) << hit.rank << "  " << std::setw(6) << "-"
                << "  " << hit.location << "  \"" << hit.title << "\"\n";
        }
        return 0;
    } catch (const EngineError& error) {
        return Fail(err, error.what(), 3);
    } catch (const std::exception& error) {
        return Fail(err, error.what(), 1);
    }
}

int LemmaCommand(const std::vector<std::string>& words, const LexiconFlags& lexicon_flags,
                 std::ostream& out, std::ostream& err) {
    std::string text;
    for (const std::string& word : words) {
        if (!text.empty()) {
            text += ' ';
        }
        text += word;
    }
    Lexicon lexicon;
    try {
        lexicon = lexicon_flags.load();
    } catch (const LexiconError& error) {
        return Fail(err, error.what(), 1);
    }
    for (const std::string& token : tokenize(text)) {
        const auto lemma = lexicon.normalize(token);
        out << token << " -> " << (lemma ? *lemma : "(stopword)") << "\n";
    }
    out << "lemmas:";
    for (const std::string& lemma : lexicon.lemmatize(text)) {
        out << " " << lemma;
    }
    out << "\n";
    return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"evolutionary keyword query optimizer"};
    app.name("gaf");
    app.require_subcommand(1);

    // run
    CLI::App* cmd_run = app.add_subcommand("run", "start a fresh optimization run");
    std::string run_config;
    std::string run_pool;
    std::string run_state_out;
    std::uint64_t run_seed = 0;
    int run_top = 10;
    bool run_json = false;
    EngineFlags run_engine;
    LexiconFlags run_lexicon;
    cmd_run->add_option("--config", run_config, "run parameters file")->required();
    cmd_run->add_option("--pool", run_pool, "keyword pool file (overrides g4)");
    cmd_run->add_option("--seed", run_seed, "rng seed (overrides rng_seed)");
    cmd_run->add_option("--state-out", run_state_out, "state file to write (overrides state_path)");
    cmd_run->add_option("--top", run_top, "resources to show in the report");
    cmd_run->add_flag("--json", run_json, "machine-readable report on stdout");
    run_engine.add_to(*cmd_run);
    run_lexicon.add_to(*cmd_run);

    // resume
    CLI::App* cmd_resume = app.add_subcommand("resume", "continue an interrupted run");
    std::string resume_state;
    int resume_top = 10;
    bool resume_json = false;
    EngineFlags resume_engine;
    LexiconFlags resume_lexicon;
    cmd_resume->add_option("state", resume_state, "state file of the interrupted run")->required();
    cmd_resume->add_option("--top", resume_top, "resources to show in the report");
    cmd_resume->add_flag("--json", resume_json, "machine-readable report on stdout");
    resume_engine.add_to(*cmd_resume);
    resume_lexicon.add_to(*cmd_resume);

    // inspect
    CLI::App* cmd_inspect = app.add_subcommand("inspect", "report on a state file without running");
    std::string inspect_state;
    int inspect_top = 10;
    bool inspect_json = false;
    cmd_inspect->add_option("state", inspect_state, "state file to read")->required();
    cmd_inspect->add_option("--top", inspect_top, "resources to show in the report");
    cmd_inspect->add_flag("--json", inspect_json, "machine-readable report on stdout");

    // search
    CLI::App* cmd_search = app.add_subcommand("search", "run one query against an engine");
    std::vector<std::string> search_query;
    int search_limit = 10;
    EngineFlags search_engine;
    LexiconFlags search_lexicon;
    cmd_search->add_option("query", search_query, "query text")->required();
    cmd_search->add_option("--limit", search_limit, "results to request");
    search_engine.add_to(*cmd_search);
    search_lexicon.add_to(*cmd_search);

    // lemma
    CLI::App* cmd_lemma = app.add_subcommand("lemma", "show how text lemmatizes");
    std::vector<std::string> lemma_text;
    LexiconFlags lemma_lexicon;
    cmd_lemma->add_option("text", lemma_text, "text to lemmatize")->required();
    lemma_lexicon.add_to(*cmd_lemma);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& help) {
        app.exit(help, out, err);
        return 0;
    } catch (const CLI::CallForAllHelp& help) {
        app.exit(help, out, err);
        return 0;
    } catch (const CLI::ParseError& error) {
        app.exit(error, out, err);
        return 1;
    }

    if (cmd_run->parsed()) {
        const bool seed_given = cmd_run->count("--seed") > 0;
        return RunCommand(run_config, run_pool, run_engine, run_lexicon, seed_given, run_seed,
                          run_state_out, run_top, run_json, out, err);
    }
    if (cmd_resume->parsed()) {
        return ResumeCommand(resume_state, resume_engine, resume_lexicon, resume_top, resume_json,
                             out, err);
    }
    if (cmd_inspect->parsed()) {
        return InspectCommand(inspect_state, inspect_top, inspect_json, out, err);
    }
    if (cmd_search->parsed()) {
        return SearchCommand(search_query, search_engine, search_lexicon, search_limit, out, err);
    }
    if (cmd_lemma->parsed()) {
        return LemmaCommand(lemma_text, lemma_lexicon, out, err);
    }
    return 1;
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return cli_main(args, std::cout, std::cerr);
}

}  // namespace gaf
