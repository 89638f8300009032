#include "tagcrawl/frontier.hpp"

namespace tagcrawl {

const char* admit_result_name(AdmitResult r) {
    switch (r) {
        case AdmitResult::Admitted: return "admitted";
        case AdmitResult::Duplicate: return "duplicate";
        case AdmitResult::DepthExceeded: return "depth_exceeded";
        case AdmitResult::HostBudgetExhausted: return "host_budget_exhausted";
        case AdmitResult::PathTooDeep: return "path_too_deep";
    }
    return "unknown";
}

AdmitResult Frontier::enqueue(FrontierEntry entry) {
    std::lock_guard<std::mutex> lock(mu_);
    const std::string& key = entry.url.text();
    if (seen_.count(key)) return AdmitResult::Duplicate;
    if (entry.depth > guards_.max_depth) return AdmitResult::DepthExceeded;
    const std::string host_key = entry.url.host_port_key();
    auto it = host_counts_.find(host_key);
    if (it != host_counts_.end() && it->second >= guards_.max_pages_per_host) {
        return AdmitResult::HostBudgetExhausted;
    }
    if (entry.url.path_segment_count() > guards_.max_path_segments) {
        return AdmitResult::PathTooDeep;
    }
    seen_.insert(key);
    host_counts_[host_key] += 1;
    queue_.push_back(std::move(entry));
    ++admitted_;
    return AdmitResult::Admitted;
}

std::optional<FrontierEntry> Frontier::dequeue() {
    std::lock_guard<std::mutex> lock(mu_);
    if (queue_.empty()) return std::nullopt;
    FrontierEntry entry = std::move(queue_.front());
    queue_.pop_front();
    return entry;
}

bool Frontier::empty() const {
    std::lock_guard<std::mutex> lock(mu_);
    return queue_.empty();
}

size_t Frontier::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return queue_.size();
}

size_t Frontier::admitted_count() const {
    std::lock_guard<std::mutex> lock(mu_);
    return admitted_;
}

}  // namespace tagcrawl
