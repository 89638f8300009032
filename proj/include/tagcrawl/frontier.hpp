#pragma once

#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "tagcrawl/url.hpp"

namespace tagcrawl {

struct FrontierEntry {
    CanonicalUrl url;
    int depth = 0;  // hops from seed; seeds are 0
    std::optional<CanonicalUrl> parent;
};

// Spider-trap guards: three independent limits. The values are configurable;
// the defaults bound any crawl regardless of server behavior.
struct TrapGuardConfig {
    int max_depth = 8;
    int max_pages_per_host = 200;
    int max_path_segments = 16;
};

enum class AdmitResult {
    Admitted,
    Duplicate,
    DepthExceeded,
    HostBudgetExhausted,
    PathTooDeep,
};

const char* admit_result_name(AdmitResult r);

// FIFO frontier of unvisited URLs. Admission marks a URL seen (so a URL can
// never sit in the queue twice), tracks per-host budgets, and rejects
// trap-shaped entries. Safe for concurrent enqueue/dequeue.
class Frontier {
public:
    Frontier() = default;
    explicit Frontier(TrapGuardConfig guards) : guards_(guards) {}

    AdmitResult enqueue(FrontierEntry entry);
    std::optional<FrontierEntry> dequeue();

    bool empty() const;
    size_t size() const;
    size_t admitted_count() const;

private:
    mutable std::mutex mu_;
    TrapGuardConfig guards_;
    std::deque<FrontierEntry> queue_;
    std::unordered_set<std::string> seen_;
    std::unordered_map<std::string, int> host_counts_;
    size_t admitted_ = 0;
};

}  // namespace tagcrawl
