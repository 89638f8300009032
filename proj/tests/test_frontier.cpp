#include <doctest.h>

#include <atomic>
#include <deque>
#include <random>
#include <set>
#include <thread>

#include "tagcrawl/frontier.hpp"

using namespace tagcrawl;

namespace {

FrontierEntry entry(const std::string& url, int depth = 0) {
    auto canonical = canonicalize(url);
    REQUIRE(canonical);
    return FrontierEntry{*canonical, depth, std::nullopt};
}

}  // namespace

TEST_SUITE("frontier") {

TEST_CASE("strict FIFO order") {
    Frontier frontier;
    CHECK(frontier.enqueue(entry("http://h.test/a")) == AdmitResult::Admitted);
    CHECK(frontier.enqueue(entry("http://h.test/b")) == AdmitResult::Admitted);
    CHECK(frontier.enqueue(entry("http://h.test/c")) == AdmitResult::Admitted);
    CHECK(frontier.dequeue()->url.text() == "http://h.test/a");
    CHECK(frontier.dequeue()->url.text() == "http://h.test/b");
    CHECK(frontier.dequeue()->url.text() == "http://h.test/c");
    CHECK_FALSE(frontier.dequeue().has_value());
}

TEST_CASE("duplicates are rejected at admission, even while still queued") {
    Frontier frontier;
    CHECK(frontier.enqueue(entry("http://h.test/a")) == AdmitResult::Admitted);
    CHECK(frontier.enqueue(entry("http://h.test/a")) == AdmitResult::Duplicate);
    // canonical-form duplicates too
    CHECK(frontier.enqueue(entry("HTTP://H.TEST:80/a#x")) == AdmitResult::Duplicate);
    CHECK(frontier.dequeue().has_value());
    // once dequeued it stays seen
    CHECK(frontier.enqueue(entry("http://h.test/a")) == AdmitResult::Duplicate);
}

TEST_CASE("depth guard") {
    Frontier frontier(TrapGuardConfig{.max_depth = 2, .max_pages_per_host = 100, .max_path_segments = 20});
    CHECK(frontier.enqueue(entry("http://h.test/ok", 2)) == AdmitResult::Admitted);
    CHECK(frontier.enqueue(entry("http://h.test/deep", 3)) == AdmitResult::DepthExceeded);
}

TEST_CASE("per-host budget") {
    Frontier frontier(TrapGuardConfig{.max_depth = 10, .max_pages_per_host = 2, .max_path_segments = 20});
    CHECK(frontier.enqueue(entry("http://h.test/1")) == AdmitResult::Admitted);
    CHECK(frontier.enqueue(entry("http://h.test/2")) == AdmitResult::Admitted);
    CHECK(frontier.enqueue(entry("http://h.test/3")) == AdmitResult::HostBudgetExhausted);
    // another host is unaffected
    CHECK(frontier.enqueue(entry("http://other.test/1")) == AdmitResult::Admitted);
    // different port counts as a different server
    CHECK(frontier.enqueue(entry("http://h.test:8080/1")) == AdmitResult::Admitted);
}

TEST_CASE("path segment guard catches synthetic trap chains") {
    TrapGuardConfig guards{.max_depth = 100, .max_pages_per_host = 1000, .max_path_segments = 20};
    Frontier frontier(guards);

    // oracle: a bounded exhaustive walk of /a, /a/a, ... shows which chain
    // entries a compliant frontier may ever admit
    int admissible = 0;
    for (int depth_in_path = 1; depth_in_path <= 25; ++depth_in_path) {
        if (depth_in_path <= guards.max_path_segments) ++admissible;
    }

    int admitted = 0;
    std::string path;
    for (int i = 1; i <= 25; ++i) {
        path += "/a";
        AdmitResult res = frontier.enqueue(entry("http://trap.test" + path));
        if (res == AdmitResult::Admitted) {
            ++admitted;
        } else {
            CHECK(res == AdmitResult::PathTooDeep);
        }
    }
    CHECK(admitted == admissible);
    CHECK(frontier.enqueue(entry("http://trap.test" + path)) == AdmitResult::PathTooDeep);
}

TEST_CASE("property: dequeue order equals admission order") {
    std::mt19937 gen(11);
    for (int round = 0; round < 50; ++round) {
        Frontier frontier(TrapGuardConfig{.max_depth = 50, .max_pages_per_host = 10000,
                                          .max_path_segments = 64});
        std::deque<std::string> model;
        int ops = 1 + static_cast<int>(gen() % 60);
        for (int i = 0; i < ops; ++i) {
            bool push = model.empty() || (gen() % 3) != 0;
            if (push) {
                std::string url = "http://h" + std::to_string(gen() % 5) + ".test/p" +
                                  std::to_string(gen() % 40);
                if (frontier.enqueue(entry(url)) == AdmitResult::Admitted) {
                    model.push_back(canonicalize(url)->text());
                }
            } else {
                auto got = frontier.dequeue();
                REQUIRE(got.has_value());
                CHECK(got->url.text() == model.front());
                model.pop_front();
            }
        }
        while (!model.empty()) {
            auto got = frontier.dequeue();
            REQUIRE(got.has_value());
            CHECK(got->url.text() == model.front());
            model.pop_front();
        }
        CHECK_FALSE(frontier.dequeue().has_value());
    }
}

TEST_CASE("concurrent enqueue/dequeue loses nothing and duplicates nothing") {
    Frontier frontier(TrapGuardConfig{.max_depth = 10, .max_pages_per_host = 1000000,
                                      .max_path_segments = 64});
    constexpr int kThreads = 4;
    constexpr int kPerThread = 500;

    std::vector<std::thread> producers;
    for (int t = 0; t < kThreads; ++t) {
        producers.emplace_back([&frontier, t] {
            for (int i = 0; i < kPerThread; ++i) {
                // half the URLs are shared between threads, half unique
                std::string url = (i % 2 == 0)
                                      ? "http://shared.test/p" + std::to_string(i)
                                      : "http://t" + std::to_string(t) + ".test/p" + std::to_string(i);
                frontier.enqueue(entry(url));
            }
        });
    }

    std::mutex mu;
    std::vector<std::string> drained;
    std::vector<std::thread> consumers;
    std::atomic<bool> done{false};
    for (int t = 0; t < 2; ++t) {
        consumers.emplace_back([&] {
            for (;;) {
                auto got = frontier.dequeue();
                if (got) {
                    std::lock_guard<std::mutex> lock(mu);
                    drained.push_back(got->url.text());
                } else if (done.load()) {
                    return;
                } else {
                    std::this_thread::yield();
                }
            }
        });
    }
    for (auto& p : producers) p.join();
    done.store(true);
    for (auto& c : consumers) c.join();
    while (auto got = frontier.dequeue()) drained.push_back(got->url.text());

    // unique urls: 250 shared (even i) + 4 threads x 250 unique (odd i)
    const size_t expected = 250 + 4 * 250;
    CHECK(drained.size() == expected);
    std::set<std::string> unique(drained.begin(), drained.end());
    CHECK(unique.size() == expected);  // nothing dequeued twice
}

TEST_CASE("property: no URL is dequeued twice; dequeued is a subset of admitted") {
    std::mt19937 gen(13);
    Frontier frontier;
    std::set<std::string> admitted;
    std::set<std::string> dequeued;
    for (int i = 0; i < 500; ++i) {
        if (gen() % 2 == 0) {
            std::string url = "http://h.test/p" + std::to_string(gen() % 120);
            if (frontier.enqueue(entry(url)) == AdmitResult::Admitted) {
                admitted.insert(canonicalize(url)->text());
            }
        } else if (auto got = frontier.dequeue()) {
            CHECK(dequeued.insert(got->url.text()).second);  // never twice
        }
    }
    while (auto got = frontier.dequeue()) {
        CHECK(dequeued.insert(got->url.text()).second);
    }
    for (const auto& url : dequeued) {
        CHECK(admitted.count(url) == 1);
    }
}

}  // TEST_SUITE
