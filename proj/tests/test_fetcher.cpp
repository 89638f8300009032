#include <doctest.h>

#include <thread>

#include "support.hpp"
#include "tagcrawl/fetcher.hpp"

using namespace tagcrawl;

namespace {

CanonicalUrl url_of(const std::string& text) {
    auto url = canonicalize(text);
    REQUIRE(url);
    return *url;
}

CorpusManifest redirects_manifest() {
    std::string error;
    auto manifest = load_corpus(tagtest::fixtures_dir() / "redirects", &error);
    REQUIRE_MESSAGE(manifest.has_value(), error);
    return *manifest;
}

FetchLimits quiet_limits() {
    FetchLimits limits;
    limits.min_delay = std::chrono::milliseconds(0);
    return limits;
}

}  // namespace

TEST_SUITE("fetcher") {

TEST_CASE("corpus round trip returns the exact fixture bytes") {
    std::string error;
    auto manifest = load_corpus(tagtest::fixtures_dir() / "paper", &error);
    REQUIRE_MESSAGE(manifest.has_value(), error);
    std::string expected = tagtest::read_file(tagtest::fixtures_dir() / "paper/pages/default.asp");

    CorpusTransport transport(*manifest);
    Fetcher fetcher(transport, quiet_limits());
    FetchResult result = fetcher.fetch(url_of("http://www.myblogindia.com/html/default.asp"));
    CHECK(result.status == FetchStatus::Ok);
    REQUIRE(result.body.has_value());
    CHECK(*result.body == expected);
    CHECK(result.content_type == "text/html");
    CHECK(result.http_status == 200);
}

TEST_CASE("urls missing from the corpus fail like unreachable hosts") {
    CorpusTransport transport(CorpusManifest::from_entries({}));
    Fetcher fetcher(transport, quiet_limits());
    CHECK(fetcher.fetch(url_of("http://nowhere.test/")).status == FetchStatus::TransportError);
}

TEST_CASE("robots.txt denial happens before any transport request") {
    auto robots = tagtest::page_entry("http://h.test/robots.txt",
                                      "User-agent: *\nDisallow: /private\n");
    robots.content_type = "text/plain";
    auto page = tagtest::page_entry("http://h.test/private/x", "<body>hidden</body>");
    CorpusTransport corpus(CorpusManifest::from_entries({robots, page}));
    tagtest::SpyTransport spy(corpus);

    Fetcher fetcher(spy, quiet_limits());
    FetchResult result = fetcher.fetch(url_of("http://h.test/private/x"));
    CHECK(result.status == FetchStatus::RobotsDenied);
    CHECK(spy.requested("http://h.test/robots.txt"));
    CHECK_FALSE(spy.requested("http://h.test/private/x"));
}

TEST_CASE("robots.txt is fetched once per host and cached") {
    auto robots = tagtest::page_entry("http://h.test/robots.txt", "User-agent: *\nDisallow:\n");
    robots.content_type = "text/plain";
    auto a = tagtest::page_entry("http://h.test/a", "<body>a</body>");
    auto b = tagtest::page_entry("http://h.test/b", "<body>b</body>");
    CorpusTransport corpus(CorpusManifest::from_entries({robots, a, b}));
    tagtest::SpyTransport spy(corpus);

    Fetcher fetcher(spy, quiet_limits());
    CHECK(fetcher.fetch(url_of("http://h.test/a")).status == FetchStatus::Ok);
    CHECK(fetcher.fetch(url_of("http://h.test/b")).status == FetchStatus::Ok);
    int robots_requests = 0;
    for (const auto& r : spy.requests()) {
        if (r == "http://h.test/robots.txt") ++robots_requests;
    }
    CHECK(robots_requests == 1);
}

TEST_CASE("missing robots.txt degrades to allow-all") {
    auto page = tagtest::page_entry("http://h.test/x", "<body>x</body>");
    CorpusTransport corpus(CorpusManifest::from_entries({page}));
    Fetcher fetcher(corpus, quiet_limits());
    CHECK(fetcher.fetch(url_of("http://h.test/x")).status == FetchStatus::Ok);

    RobotsPolicy policy = fetcher.consult_robots(url_of("http://h.test/x"));
    CHECK_FALSE(policy.fetched);
    CHECK(policy.allows("/anything"));
}

TEST_CASE("robots parsing: disallow everything") {
    RobotsPolicy policy = parse_robots_txt("User-agent: *\nDisallow: /\n", "tagcrawl/1.0", "h.test:80");
    CHECK_FALSE(policy.allows("/"));
    CHECK_FALSE(policy.allows("/any/path"));
}

TEST_CASE("robots parsing: only the matching agent section applies") {
    const char* body =
        "# mixed sections\n"
        "User-agent: othercrawler\n"
        "Disallow: /\n"
        "\n"
        "User-agent: tagcrawl\n"
        "Disallow: /private\n"
        "Disallow: /tmp/\n"
        "\n"
        "User-agent: *\n"
        "Disallow: /secret\n";

    RobotsPolicy mine = parse_robots_txt(body, "tagcrawl/1.0", "h.test:80");
    CHECK_FALSE(mine.allows("/private/x"));
    CHECK_FALSE(mine.allows("/tmp/y"));
    CHECK(mine.allows("/secret/z"));  // the * section yields to the specific one
    CHECK(mine.allows("/open"));

    RobotsPolicy other = parse_robots_txt(body, "somebot/2.0", "h.test:80");
    CHECK_FALSE(other.allows("/secret/z"));
    CHECK(other.allows("/private/x"));

    RobotsPolicy blocked = parse_robots_txt(body, "othercrawler/1.0", "h.test:80");
    CHECK_FALSE(blocked.allows("/anything"));
}

TEST_CASE("robots parsing: empty disallow allows everything, grouped agents share rules") {
    RobotsPolicy open = parse_robots_txt("User-agent: *\nDisallow:\n", "tagcrawl/1.0", "h");
    CHECK(open.allows("/x"));

    RobotsPolicy grouped = parse_robots_txt(
        "User-agent: alpha\nUser-agent: tagcrawl\nDisallow: /shared\n", "tagcrawl/1.0", "h");
    CHECK_FALSE(grouped.allows("/shared/x"));
}

TEST_CASE("redirect chains are followed and re-canonicalized") {
    CorpusTransport transport(redirects_manifest());
    Fetcher fetcher(transport, quiet_limits());

    FetchResult result = fetcher.fetch(url_of("http://redirects.test/short1"));
    CHECK(result.status == FetchStatus::Ok);
    CHECK(result.url.text() == "http://redirects.test/landing");
    REQUIRE(result.body.has_value());
    CHECK(result.body->find("beacon content") != std::string::npos);
}

TEST_CASE("redirect chains beyond the limit fail") {
    CorpusTransport transport(redirects_manifest());
    Fetcher fetcher(transport, quiet_limits());
    // six hops to reach /hop7; the default limit of five gives up first
    CHECK(fetcher.fetch(url_of("http://redirects.test/hop1")).status == FetchStatus::TransportError);

    FetchLimits generous = quiet_limits();
    generous.max_redirects = 6;
    Fetcher patient(transport, generous);
    CHECK(patient.fetch(url_of("http://redirects.test/hop1")).status == FetchStatus::Ok);
}

TEST_CASE("redirect cycles exhaust the limit and fail") {
    CorpusTransport transport(redirects_manifest());
    tagtest::SpyTransport spy(transport);
    Fetcher fetcher(spy, quiet_limits());
    CHECK(fetcher.fetch(url_of("http://redirects.test/loop-a")).status == FetchStatus::TransportError);
    CHECK(spy.requests().size() <= 7);  // bounded by the redirect limit
}

TEST_CASE("oversized bodies yield TooLarge and keep no partial body") {
    auto big = tagtest::page_entry("http://h.test/big", std::string(300, 'x'));
    CorpusTransport corpus(CorpusManifest::from_entries({big}));
    FetchLimits limits = quiet_limits();
    limits.max_body_bytes = 100;
    Fetcher fetcher(corpus, limits);

    FetchResult result = fetcher.fetch(url_of("http://h.test/big"));
    CHECK(result.status == FetchStatus::TooLarge);
    CHECK_FALSE(result.body.has_value());
}

TEST_CASE("http errors and simulated transport failures are reported") {
    auto missing = tagtest::page_entry("http://h.test/gone", "");
    missing.status = 404;
    auto flaky = tagtest::page_entry("http://h.test/flaky", "");
    flaky.simulate = "error";
    auto slow = tagtest::page_entry("http://h.test/slow", "");
    slow.simulate = "timeout";
    CorpusTransport corpus(CorpusManifest::from_entries({missing, flaky, slow}));
    Fetcher fetcher(corpus, quiet_limits());

    FetchResult gone = fetcher.fetch(url_of("http://h.test/gone"));
    CHECK(gone.status == FetchStatus::HttpError);
    CHECK(gone.http_status == 404);
    CHECK_FALSE(gone.body.has_value());

    CHECK(fetcher.fetch(url_of("http://h.test/flaky")).status == FetchStatus::TransportError);
    CHECK(fetcher.fetch(url_of("http://h.test/slow")).status == FetchStatus::Timeout);
}

TEST_CASE("politeness: same-host requests are spaced by min_delay") {
    tagtest::FakeClock clock;
    CorpusTransport corpus(CorpusManifest::from_entries({}));
    FetchLimits limits;
    limits.min_delay = std::chrono::milliseconds(100);
    Fetcher fetcher(corpus, limits, &clock);

    auto first = fetcher.politeness_wait("h.test:80");
    CHECK(first.count() == 0);
    auto second = fetcher.politeness_wait("h.test:80");
    CHECK(second.count() >= 100);

    // ten requests take at least nine gaps of virtual time
    tagtest::FakeClock clock2;
    Fetcher fetcher2(corpus, limits, &clock2);
    for (int i = 0; i < 10; ++i) fetcher2.politeness_wait("h.test:80");
    CHECK(clock2.now().count() >= 900);
}

TEST_CASE("politeness: distinct hosts are unconstrained") {
    tagtest::FakeClock clock;
    CorpusTransport corpus(CorpusManifest::from_entries({}));
    FetchLimits limits;
    limits.min_delay = std::chrono::milliseconds(500);
    Fetcher fetcher(corpus, limits, &clock);

    fetcher.politeness_wait("a.test:80");
    auto other = fetcher.politeness_wait("b.test:80");
    CHECK(other.count() == 0);
    CHECK(clock.now().count() == 0);
}

TEST_CASE("politeness: concurrent same-host workers keep the gap") {
    tagtest::FakeClock clock;
    CorpusTransport corpus(CorpusManifest::from_entries({}));
    FetchLimits limits;
    limits.min_delay = std::chrono::milliseconds(50);
    Fetcher fetcher(corpus, limits, &clock);

    std::vector<std::thread> threads;
    for (int i = 0; i < 8; ++i) {
        threads.emplace_back([&] { fetcher.politeness_wait("h.test:80"); });
    }
    for (auto& t : threads) t.join();
    // eight reservations, seven enforced gaps
    CHECK(clock.now().count() >= 7 * 50);
}

}  // TEST_SUITE
