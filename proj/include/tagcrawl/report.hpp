#pragma once

#include <string>

#include <json.hpp>

#include "tagcrawl/engine.hpp"
#include "tagcrawl/evaluate.hpp"

namespace tagcrawl {

// Output formats are versioned and snapshot-tested: field names, ordering
// and number formatting are stable. Volatile values (timestamps, elapsed
// time) never appear in machine-readable output.

// columns: rank,t,Nm,Nu,Nt,Nh,Nb,url
std::string ranked_csv(const RankedResults& results);

std::string ranked_table(const RankedResults& results);

std::string stats_summary(const CrawlStats& stats);

nlohmann::ordered_json crawl_json(const CrawlConfig& config, const CrawlOutcome& outcome,
                                  std::string_view arm);

// columns: query,arm,retained,true_positives,precision
std::string comparison_csv(const Comparison& comparison);

// fixed-width per-query table with one precision column per arm
std::string comparison_report(const Comparison& comparison);

}  // namespace tagcrawl
