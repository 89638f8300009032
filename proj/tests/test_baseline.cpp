#include <doctest.h>

#include <set>

#include "support.hpp"
#include "tagcrawl/baseline.hpp"

using namespace tagcrawl;

namespace {

CrawlConfig config_for(const std::string& seed, const std::string& query) {
    auto validated = validate_inputs({seed}, query);
    REQUIRE(validated.has_value());
    CrawlConfig config = *validated;
    config.limits.min_delay = std::chrono::milliseconds(0);
    return config;
}

}  // namespace

TEST_SUITE("baseline") {

TEST_CASE("keeps pages whose url contains the query, nothing else") {
    std::vector<CorpusEntry> entries;
    entries.push_back(tagtest::page_entry(
        "http://s.test/",
        "<body><a href=\"/widget-shop.html\">shop</a><a href=\"/about.html\">about</a></body>"));
    entries.push_back(tagtest::page_entry(
        "http://s.test/widget-shop.html", "<body>nothing relevant in the text</body>"));
    entries.push_back(tagtest::page_entry(
        "http://s.test/about.html",
        "<head><meta name=\"d\" content=\"widget widget\"></head><body>widget central</body>"));
    CorpusTransport transport(CorpusManifest::from_entries(entries));

    CrawlConfig config = config_for("http://s.test/", "widget");
    CrawlOutcome outcome = baseline_crawl(config, transport);

    REQUIRE(outcome.results.entries.size() == 1);
    CHECK(outcome.results.entries[0].url.text() == "http://s.test/widget-shop.html");
    CHECK(outcome.results.entries[0].total_weight == 1);  // anchor hits
    CHECK(outcome.results.entries[0].counts.url == 1);
}

TEST_CASE("multi-word phrases do not match hyphenated url slugs") {
    std::vector<CorpusEntry> entries;
    entries.push_back(tagtest::page_entry("http://s.test/book-show/1", "<body>x</body>"));
    CorpusTransport transport(CorpusManifest::from_entries(entries));

    CrawlConfig config = config_for("http://s.test/book-show/1", "book show");
    CrawlOutcome outcome = baseline_crawl(config, transport);
    CHECK(outcome.results.entries.empty());
    REQUIRE(outcome.records.size() == 1);
    CHECK(outcome.records[0].discarded == DiscardReason::BelowThreshold);
}

TEST_CASE("the worked-example page is baseline-relevant through its url") {
    std::string error;
    auto manifest = load_corpus(tagtest::fixtures_dir() / "paper", &error);
    REQUIRE_MESSAGE(manifest.has_value(), error);
    CorpusTransport transport(*manifest);

    CrawlConfig config = config_for("http://www.myblogindia.com/html/default.asp", "html");
    CrawlOutcome outcome = baseline_crawl(config, transport);
    REQUIRE(outcome.results.entries.size() == 1);
    CHECK(outcome.results.entries[0].total_weight == 1);  // one "html" in the url
}

TEST_CASE("content-only relevance is invisible to the baseline") {
    // every page is about widgets, no url mentions them
    std::vector<CorpusEntry> entries;
    entries.push_back(tagtest::page_entry(
        "http://content.test/",
        "<head><title>widget world</title></head><body>widget<a href=\"/p1.html\">next</a></body>"));
    entries.push_back(tagtest::page_entry(
        "http://content.test/p1.html",
        "<head><meta name=\"d\" content=\"widget\"></head><body>more widget text</body>"));
    CorpusTransport transport(CorpusManifest::from_entries(entries));

    CrawlConfig config = config_for("http://content.test/", "widget");
    CrawlOutcome pdd = crawl(config, transport);
    CrawlOutcome base = baseline_crawl(config, transport);

    CHECK(pdd.results.entries.size() == 2);
    CHECK(base.results.entries.empty());
}

TEST_CASE("both arms traverse exactly the same url set") {
    std::string error;
    auto manifest = load_corpus(tagtest::fixtures_dir() / "robots", &error);
    REQUIRE_MESSAGE(manifest.has_value(), error);

    CrawlConfig config = config_for("http://robots.test/", "gadget");
    CorpusTransport t1(*manifest);
    CorpusTransport t2(*manifest);
    CrawlOutcome pdd = crawl(config, t1);
    CrawlOutcome base = baseline_crawl(config, t2);

    auto visited = [](const CrawlOutcome& o) {
        std::set<std::string> urls;
        for (const auto& rec : o.records) urls.insert(rec.url.text());
        return urls;
    };
    CHECK(visited(pdd) == visited(base));
}

TEST_CASE("baseline retention is a subset of url-contains-query pages") {
    std::string error;
    auto manifest = load_corpus(tagtest::fixtures_dir() / "chain", &error);
    REQUIRE_MESSAGE(manifest.has_value(), error);
    CorpusTransport transport(*manifest);

    CrawlConfig config = config_for("http://chain.test/", "widget");
    CrawlOutcome outcome = baseline_crawl(config, transport);
    for (const auto& e : outcome.results.entries) {
        std::string folded = ascii_fold(e.url.text());
        CHECK(folded.find("widget") != std::string::npos);
    }
    REQUIRE(outcome.results.entries.size() == 1);
    CHECK(outcome.results.entries[0].url.text() == "http://chain.test/widget/b.html");
}

}  // TEST_SUITE
