#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gaf/cli.hpp"
#include "gaf/evolve.hpp"
#include "gaf/persistence.hpp"
#include "helpers.hpp"

using namespace gaf;
using gaf::test::TempDir;
using gaf::test::fixtures_dir;
using gaf::test::write_file;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    CliResult result;
    result.code = cli_main(args, out, err);
    result.out = out.str();
    result.err = err.str();
    return result;
}

std::string sample_config_text(const std::string& overrides = "") {
    return "g2 = 6\ng3 = 3\nf1 = 8\ne1 = 4\ne2 = 0.000000000001\ne3 = 10\nrng_seed = 42\n" +
           overrides;
}

std::string corpus_dir() { return fixtures_dir() + "/corpus"; }
std::string pool_file() { return fixtures_dir() + "/keywords_solar.txt"; }

}  // namespace

TEST_CASE("no arguments is a usage error") {
    const CliResult result = run_cli({});
    CHECK(result.code == 1);
    CHECK_FALSE(result.err.empty());
}

TEST_CASE("--help exits zero and prints usage") {
    const CliResult result = run_cli({"--help"});
    CHECK(result.code == 0);
    CHECK(result.out.find("Usage") != std::string::npos);
    CHECK(result.out.find("run") != std::string::npos);
}

TEST_CASE("unknown subcommands fail") {
    CHECK(run_cli({"paint"}).code == 1);
}

TEST_CASE("run requires exactly one engine") {
    TempDir dir;
    write_file(dir.file("run.cfg"), sample_config_text());
    const std::vector<std::string> base = {"run", "--config", dir.file("run.cfg"),
                                           "--pool", pool_file()};
    CHECK(run_cli(base).code == 1);  // neither engine

    std::vector<std::string> both = base;
    both.insert(both.end(),
                {"--corpus", corpus_dir(), "--adapter-url", "http://127.0.0.1:1/s"});
    CHECK(run_cli(both).code == 1);
}

TEST_CASE("run reports missing and invalid configs differently") {
    CHECK(run_cli({"run", "--config", "/does/not/exist.cfg", "--corpus", corpus_dir()}).code == 1);

    TempDir dir;
    write_file(dir.file("bad.cfg"), "g2 = 1\n");  // validation failure
    const CliResult bad =
        run_cli({"run", "--config", dir.file("bad.cfg"), "--corpus", corpus_dir()});
    CHECK(bad.code == 2);
    CHECK_FALSE(bad.err.empty());

    write_file(dir.file("junk.cfg"), "what even\n");  // parse failure
    CHECK(run_cli({"run", "--config", dir.file("junk.cfg"), "--corpus", corpus_dir()}).code == 2);
}

TEST_CASE("run needs a keyword pool from somewhere") {
    TempDir dir;
    write_file(dir.file("run.cfg"), sample_config_text());
    const CliResult result =
        run_cli({"run", "--config", dir.file("run.cfg"), "--corpus", corpus_dir()});
    CHECK(result.code == 1);
    CHECK(result.err.find("pool") != std::string::npos);
}

TEST_CASE("run rejects a pool smaller than the query length") {
    TempDir dir;
    write_file(dir.file("run.cfg"), sample_config_text());
    write_file(dir.file("tiny.txt"), "solar\npanel\n");
    const CliResult result = run_cli({"run", "--config", dir.file("run.cfg"), "--corpus",
                                      corpus_dir(), "--pool", dir.file("tiny.txt")});
    CHECK(result.code == 1);
}

TEST_CASE("run completes on the bundled corpus and writes the state file") {
    TempDir dir;
    write_file(dir.file("run.cfg"), sample_config_text());
    const std::string state_path = dir.file("out.gaf");
    const CliResult result =
        run_cli({"run", "--config", dir.file("run.cfg"), "--corpus", corpus_dir(), "--pool",
                 pool_file(), "--state-out", state_path, "--top", "5"});
    CHECK(result.code == 0);
    CHECK(std::filesystem::exists(state_path));
    // progress went to stderr, one line per generation
    CHECK(result.err.find("gen 0") != std::string::npos);
    // report went to stdout
    CHECK(result.out.find("seed: 42") != std::string::npos);
    CHECK(result.out.find("top resources") != std::string::npos);

    const RunState state = load_state(state_path);
    CHECK(state.stop_reason != StopReason::Running);
    CHECK(state.config.state_path == state_path);

    SUBCASE("inspect renders the saved state") {
        const CliResult inspect = run_cli({"inspect", state_path, "--top", "3"});
        CHECK(inspect.code == 0);
        CHECK(inspect.out.find("seed: 42") != std::string::npos);
    }
    SUBCASE("inspect --json emits parseable JSON") {
        const CliResult inspect = run_cli({"inspect", state_path, "--json"});
        CHECK(inspect.code == 0);
        const auto parsed = nlohmann::json::parse(inspect.out);
        CHECK(parsed.contains("Generations"));
        CHECK(parsed["Seed"].get<std::uint64_t>() == 42);
    }
    SUBCASE("resuming a terminal state is refused") {
        const CliResult resume = run_cli({"resume", state_path, "--corpus", corpus_dir()});
        CHECK(resume.code == 4);
    }
}

TEST_CASE("run --json prints a machine-readable report") {
    TempDir dir;
    write_file(dir.file("run.cfg"), sample_config_text());
    const CliResult result =
        run_cli({"run", "--config", dir.file("run.cfg"), "--corpus", corpus_dir(), "--pool",
                 pool_file(), "--state-out", dir.file("out.gaf"), "--json"});
    CHECK(result.code == 0);
    const auto parsed = nlohmann::json::parse(result.out);
    CHECK(parsed.contains("StopReason"));
    CHECK(parsed.contains("TopResources"));
    CHECK(parsed["DurationSeconds"].is_number());
}

TEST_CASE("--seed overrides the config seed") {
    TempDir dir;
    write_file(dir.file("run.cfg"), sample_config_text());
    const CliResult result =
        run_cli({"run", "--config", dir.file("run.cfg"), "--corpus", corpus_dir(), "--pool",
                 pool_file(), "--state-out", dir.file("out.gaf"), "--seed", "99"});
    CHECK(result.code == 0);
    CHECK(load_state(dir.file("out.gaf")).config.rng_seed == 99);
}

TEST_CASE("resume continues an interrupted run to completion") {
    TempDir dir;
    write_file(dir.file("run.cfg"), sample_config_text());
    // produce an interrupted state: run two breeding steps, then save
    Config config = load_config(dir.file("run.cfg"));
    config.keyword_pool_path = pool_file();
    const Lexicon lexicon = Lexicon::load({});
    const std::vector<Gene> pool = load_keyword_pool(pool_file(), lexicon);
    const LocalIndex index = index_corpus(corpus_dir(), lexicon);
    LocalEngine engine(index, lexicon);
    RunState interrupted = init_run_state(config, pool);
    CHECK(advance(interrupted, engine, lexicon, 2) == StopReason::Running);
    const std::string state_path = dir.file("paused.gaf");
    save_state(interrupted, state_path);

    const CliResult resumed = run_cli({"resume", state_path, "--corpus", corpus_dir()});
    CHECK(resumed.code == 0);
    const RunState final_state = load_state(state_path);
    CHECK(final_state.stop_reason != StopReason::Running);
    CHECK(final_state.current_population.generation_number >= 2);

    CHECK(run_cli({"resume", dir.file("missing.gaf"), "--corpus", corpus_dir()}).code == 1);
    CHECK(run_cli({"resume", state_path}).code == 4);  // now terminal again
}

TEST_CASE("search prints ranked local results") {
    const CliResult result =
        run_cli({"search", "solar", "panel", "--corpus", corpus_dir(), "--limit", "3"});
    CHECK(result.code == 0);
    CHECK(result.out.find("solar") != std::string::npos);
    CHECK(result.out.find("/doc_") != std::string::npos);
    CHECK(result.out.find("genome") == std::string::npos);
    CHECK(result.out.find("coffee") == std::string::npos);
    // three numbered lines
    CHECK(result.out.find("  1  ") != std::string::npos);
    CHECK(result.out.find("  3  ") != std::string::npos);

    CHECK(run_cli({"search", "solar"}).code == 1);  // engine missing
}

TEST_CASE("search against an unreachable adapter exits 3") {
    const CliResult result =
        run_cli({"search", "solar", "--adapter-url", "http://127.0.0.1:9/none"});
    CHECK(result.code == 3);
}

TEST_CASE("lemma shows the normalization of each token") {
    const CliResult result = run_cli({"lemma", "The", "solar", "panels"});
    CHECK(result.code == 0);
    CHECK(result.out.find("the -> (stopword)") != std::string::npos);
    CHECK(result.out.find("panels -> panel") != std::string::npos);
    CHECK(result.out.find("lemmas: solar panel") != std::string::npos);
}

TEST_CASE("lexicon flags reach the lemma pipeline") {
    TempDir dir;
    write_file(dir.file("lemmas.tsv"), "grinded\tgrind\n");
    const CliResult result =
        run_cli({"lemma", "grinded", "--lemmas", dir.file("lemmas.tsv")});
    CHECK(result.code == 0);
    CHECK(result.out.find("grinded -> grind") != std::string::npos);

    CHECK(run_cli({"lemma", "x", "--lemmas", dir.file("missing.tsv")}).code == 1);
}

TEST_CASE("autosave writes checkpoints during the run") {
    TempDir dir;
    write_file(dir.file("run.cfg"), sample_config_text("autosave = true\n"));
    const std::string state_path = dir.file("auto.gaf");
    const CliResult result =
        run_cli({"run", "--config", dir.file("run.cfg"), "--corpus", corpus_dir(), "--pool",
                 pool_file(), "--state-out", state_path});
    CHECK(result.code == 0);
    CHECK(std::filesystem::exists(state_path));
}
