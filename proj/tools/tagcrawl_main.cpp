#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tagcrawl/baseline.hpp"
#include "tagcrawl/corpus.hpp"
#include "tagcrawl/engine.hpp"
#include "tagcrawl/evaluate.hpp"
#include "tagcrawl/report.hpp"
#include "tagcrawl/transport.hpp"

namespace fs = std::filesystem;
using namespace tagcrawl;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitTransport = 3;

struct CrawlOptions {
    std::vector<std::string> seeds;
    std::string query;
    std::string corpus_dir;
    std::string arm = "pdd";
    std::string match_mode = "phrase";
    int max_pages = 100;
    int max_depth = 8;
    int max_pages_per_host = 200;
    int max_path_segments = 16;
    int workers = 1;
    int weight_m = 5;
    int weight_u = 4;
    int weight_t = 3;
    int weight_h = 2;
    int weight_b = 1;
    int threshold = 3;
    uint64_t max_body_bytes = 2 * 1024 * 1024;
    int timeout_ms = 10000;
    int redirect_limit = 5;
    int delay_ms = 500;
    std::string user_agent = "tagcrawl/1.0";
    bool no_robots_txt = false;
    bool no_meta_robots = false;
    std::string out_json;
    std::string out_csv;
};

void add_shared_flags(CLI::App* cmd, CrawlOptions& opt) {
    cmd->fallthrough();  // lets --config after the subcommand reach the app
    cmd->add_option("--max-pages", opt.max_pages, "Dequeue budget for the crawl")
        ->envname("TAGCRAWL_MAX_PAGES");
    cmd->add_option("--max-depth", opt.max_depth, "Maximum hops from a seed")
        ->envname("TAGCRAWL_MAX_DEPTH");
    cmd->add_option("--max-pages-per-host", opt.max_pages_per_host, "Per-host admission budget")
        ->envname("TAGCRAWL_MAX_PAGES_PER_HOST");
    cmd->add_option("--max-path-segments", opt.max_path_segments, "Trap guard on URL path depth")
        ->envname("TAGCRAWL_MAX_PATH_SEGMENTS");
    cmd->add_option("--workers", opt.workers, "Concurrent fetch workers")
        ->envname("TAGCRAWL_WORKERS");
    cmd->add_option("--weight-m", opt.weight_m, "Meta tag weight")->envname("TAGCRAWL_WEIGHT_M");
    cmd->add_option("--weight-u", opt.weight_u, "URL weight")->envname("TAGCRAWL_WEIGHT_U");
    cmd->add_option("--weight-t", opt.weight_t, "Title weight")->envname("TAGCRAWL_WEIGHT_T");
    cmd->add_option("--weight-h", opt.weight_h, "Heading weight")->envname("TAGCRAWL_WEIGHT_H");
    cmd->add_option("--weight-b", opt.weight_b, "Body weight")->envname("TAGCRAWL_WEIGHT_B");
    cmd->add_option("--threshold", opt.threshold, "Relevance threshold (pages with t <= threshold are dropped)")
        ->envname("TAGCRAWL_THRESHOLD");
    cmd->add_option("--match-mode", opt.match_mode, "Query matching: phrase | any-term")
        ->check(CLI::IsMember({"phrase", "any-term"}))
        ->envname("TAGCRAWL_MATCH_MODE");
    cmd->add_option("--max-body-bytes", opt.max_body_bytes, "Fetch size cap")
        ->envname("TAGCRAWL_MAX_BODY_BYTES");
    cmd->add_option("--timeout-ms", opt.timeout_ms, "Per-request timeout")
        ->envname("TAGCRAWL_TIMEOUT_MS");
    cmd->add_option("--redirect-limit", opt.redirect_limit, "Redirect hops per fetch")
        ->envname("TAGCRAWL_REDIRECT_LIMIT");
    cmd->add_option("--delay-ms", opt.delay_ms, "Politeness gap between same-host requests")
        ->envname("TAGCRAWL_DELAY_MS");
    cmd->add_option("--user-agent", opt.user_agent, "User agent string")
        ->envname("TAGCRAWL_USER_AGENT");
    cmd->add_flag("--no-robots-txt", opt.no_robots_txt, "Skip robots.txt checks")
        ->envname("TAGCRAWL_NO_ROBOTS_TXT");
    cmd->add_flag("--no-meta-robots", opt.no_meta_robots, "Ignore meta robots directives")
        ->envname("TAGCRAWL_NO_META_ROBOTS");
}

// flags -> engine config; seeds/query were already validated
void apply_options(const CrawlOptions& opt, bool delay_given, CrawlConfig& config) {
    config.weights = WeightConfig{opt.weight_m, opt.weight_u, opt.weight_t,
                                  opt.weight_h, opt.weight_b, opt.threshold};
    config.match_mode = opt.match_mode == "any-term" ? MatchMode::AnyTerm : MatchMode::Phrase;
    config.max_pages = opt.max_pages;
    config.guards.max_depth = opt.max_depth;
    config.guards.max_pages_per_host = opt.max_pages_per_host;
    config.guards.max_path_segments = opt.max_path_segments;
    config.worker_count = opt.workers;
    config.limits.max_body_bytes = static_cast<size_t>(opt.max_body_bytes);
    config.limits.timeout = std::chrono::milliseconds(opt.timeout_ms);
    config.limits.max_redirects = opt.redirect_limit;
    config.limits.user_agent = opt.user_agent;
    config.limits.respect_robots_txt = !opt.no_robots_txt;
    config.respect_meta_robots = !opt.no_meta_robots;
    // offline corpora need no politeness unless one was asked for
    if (!opt.corpus_dir.empty() && !delay_given) {
        config.limits.min_delay = std::chrono::milliseconds(0);
    } else {
        config.limits.min_delay = std::chrono::milliseconds(opt.delay_ms);
    }
}

bool write_text(const std::string& path, const std::string& content, std::string* error) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        *error = "cannot write " + path;
        return false;
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    return out.good();
}

int run_crawl_command(const CrawlOptions& opt, bool delay_given) {
    ValidationError verr;
    auto validated = validate_inputs(opt.seeds, opt.query, &verr);
    if (!validated) {
        std::cerr << "error: " << verr.message << "\n";
        return kExitValidation;
    }
    CrawlConfig config = *validated;
    apply_options(opt, delay_given, config);

    std::unique_ptr<Transport> transport;
    if (!opt.corpus_dir.empty()) {
        std::string error;
        auto manifest = load_corpus(opt.corpus_dir, &error);
        if (!manifest) {
            std::cerr << "error: " << error << "\n";
            return kExitTransport;
        }
        transport = std::make_unique<CorpusTransport>(std::move(*manifest));
    } else {
        transport = std::make_unique<HttpTransport>(config.limits.timeout, config.limits.user_agent);
    }

    CrawlOutcome outcome = opt.arm == "baseline" ? baseline_crawl(config, *transport)
                                                 : crawl(config, *transport);

    std::cout << ranked_table(outcome.results);
    std::cout << "\n" << stats_summary(outcome.stats);

    std::string error;
    if (!opt.out_json.empty()) {
        std::string json = crawl_json(config, outcome, opt.arm).dump(2) + "\n";
        if (!write_text(opt.out_json, json, &error)) {
            std::cerr << "error: " << error << "\n";
            return kExitTransport;
        }
    }
    if (!opt.out_csv.empty()) {
        if (!write_text(opt.out_csv, ranked_csv(outcome.results), &error)) {
            std::cerr << "error: " << error << "\n";
            return kExitTransport;
        }
    }
    return kExitOk;
}

int run_compare_command(const CrawlOptions& opt, const std::string& suite_path,
                        const std::string& out_report) {
    std::ifstream in(suite_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open suite file " << suite_path << "\n";
        return kExitValidation;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    nlohmann::json suite = nlohmann::json::parse(buffer.str(), nullptr, false);
    if (suite.is_discarded() || !suite.is_object() || !suite.contains("rows") ||
        !suite["rows"].is_array() || suite["rows"].empty()) {
        std::cerr << "error: suite file must contain a non-empty \"rows\" array\n";
        return kExitValidation;
    }

    fs::path suite_dir = fs::path(suite_path).parent_path();
    std::vector<CorpusManifest> manifests;
    std::vector<CompareTask> tasks;
    manifests.reserve(suite["rows"].size());

    for (const auto& row : suite["rows"]) {
        if (!row.contains("corpus") || !row.contains("seeds") || !row.contains("query")) {
            std::cerr << "error: each row needs corpus, seeds and query\n";
            return kExitValidation;
        }
        fs::path corpus_path = suite_dir / row["corpus"].get<std::string>();
        std::string error;
        auto manifest = load_corpus(corpus_path, &error);
        if (!manifest) {
            std::cerr << "error: " << error << "\n";
            return kExitTransport;
        }
        manifests.push_back(std::move(*manifest));

        ValidationError verr;
        auto validated = validate_inputs(row["seeds"].get<std::vector<std::string>>(),
                                         row["query"].get<std::string>(), &verr);
        if (!validated) {
            std::cerr << "error: " << verr.message << "\n";
            return kExitValidation;
        }
        CrawlConfig config = *validated;
        apply_options(opt, false, config);
        config.limits.min_delay = std::chrono::milliseconds(0);  // suites are offline

        CompareTask task;
        task.name = row.value("name", row["query"].get<std::string>());
        task.config = std::move(config);
        tasks.push_back(std::move(task));
    }
    for (size_t i = 0; i < tasks.size(); ++i) {
        tasks[i].manifest = &manifests[i];
    }

    std::string error;
    auto comparison = compare(tasks, &error);
    if (!comparison) {
        std::cerr << "error: " << error << "\n";
        return kExitTransport;
    }

    std::cout << comparison_report(*comparison);
    if (!opt.out_csv.empty() && !write_text(opt.out_csv, comparison_csv(*comparison), &error)) {
        std::cerr << "error: " << error << "\n";
        return kExitTransport;
    }
    if (!out_report.empty() && !write_text(out_report, comparison_report(*comparison), &error)) {
        std::cerr << "error: " << error << "\n";
        return kExitTransport;
    }
    return kExitOk;
}

struct GencorpusOptions {
    std::string out_dir;
    GeneratorSpec spec;
    std::vector<double> placement;
};

int run_gencorpus_command(GencorpusOptions& opt) {
    if (!opt.placement.empty()) {
        opt.spec.placement = opt.placement;
    }
    std::string error;
    auto manifest = generate_corpus(opt.spec, opt.out_dir, &error);
    if (!manifest) {
        std::cerr << "error: " << error << "\n";
        return kExitValidation;
    }
    std::cout << "wrote " << manifest->entries.size() << " entries to " << opt.out_dir << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Focused web crawler that ranks pages by tag-weighted query occurrences"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "Read options from an INI/TOML config file ([crawl]/[compare] sections)")
        ->envname("TAGCRAWL_CONFIG");

    CrawlOptions opt;

    CLI::App* crawl_cmd = app.add_subcommand("crawl", "Run a crawl and rank what it keeps");
    crawl_cmd->add_option("--seed", opt.seeds, "Seed URL (repeatable)")
        ->envname("TAGCRAWL_SEED");
    crawl_cmd->add_option("--query", opt.query, "Search string")->envname("TAGCRAWL_QUERY");
    crawl_cmd->add_option("--corpus", opt.corpus_dir, "Offline corpus directory (live HTTP otherwise)")
        ->envname("TAGCRAWL_CORPUS");
    crawl_cmd->add_option("--arm", opt.arm, "Scoring arm: pdd | baseline")
        ->check(CLI::IsMember({"pdd", "baseline"}))
        ->envname("TAGCRAWL_ARM");
    crawl_cmd->add_option("--out-json", opt.out_json, "Write machine-readable results here")
        ->envname("TAGCRAWL_OUT_JSON");
    crawl_cmd->add_option("--out-csv", opt.out_csv, "Write ranked CSV here")
        ->envname("TAGCRAWL_OUT_CSV");
    add_shared_flags(crawl_cmd, opt);

    std::string suite_path;
    std::string out_report;
    CLI::App* compare_cmd =
        app.add_subcommand("compare", "Run PDD and baseline arms over corpora and compare precision");
    compare_cmd->add_option("--suite", suite_path, "Suite file listing corpus/seeds/query rows")
        ->required()
        ->envname("TAGCRAWL_SUITE");
    compare_cmd->add_option("--out-csv", opt.out_csv, "Write comparison CSV here");
    compare_cmd->add_option("--out-report", out_report, "Write comparison text report here");
    add_shared_flags(compare_cmd, opt);

    GencorpusOptions gen;
    CLI::App* gen_cmd = app.add_subcommand("gencorpus", "Generate a deterministic synthetic corpus");
    gen_cmd->fallthrough();
    gen_cmd->add_option("--out", gen.out_dir, "Output directory")->required();
    gen_cmd->add_option("--query", gen.spec.query, "Query the corpus is labeled for")->required();
    gen_cmd->add_option("--seed", gen.spec.seed, "Generator seed");
    gen_cmd->add_option("--sites", gen.spec.site_count, "Number of sites");
    gen_cmd->add_option("--pages", gen.spec.pages_per_site, "Pages per site");
    gen_cmd->add_option("--fanout", gen.spec.link_fanout, "Extra links per page");
    gen_cmd->add_option("--relevant-fraction", gen.spec.relevant_fraction, "Share of relevant pages");
    gen_cmd->add_option("--url-noise", gen.spec.url_noise_fraction,
                        "Share of irrelevant pages with the query in their URL");
    gen_cmd->add_option("--content-noise", gen.spec.content_noise_fraction,
                        "Share of irrelevant pages mentioning the query");
    gen_cmd->add_option("--host-prefix", gen.spec.host_prefix, "Host name prefix");
    gen_cmd->add_option("--placement", gen.placement,
                        "Region draw weights: meta url title heading body")
        ->expected(5);
    gen_cmd->add_flag("--traps", gen.spec.traps, "Plant spider-trap structures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    if (crawl_cmd->parsed()) {
        if (opt.query.empty() || opt.seeds.empty()) {
            std::cerr << "error: --seed and --query are required\n"
                      << crawl_cmd->help() << "\n";
            return kExitValidation;
        }
        return run_crawl_command(opt, crawl_cmd->count("--delay-ms") > 0);
    }
    if (compare_cmd->parsed()) {
        return run_compare_command(opt, suite_path, out_report);
    }
    if (gen_cmd->parsed()) {
        return run_gencorpus_command(gen);
    }
    return kExitValidation;
}
