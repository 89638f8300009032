#pragma once

#include "tagcrawl/engine.hpp"

namespace tagcrawl {

// Link-only control arm: identical traversal to crawl(), but a page is kept
// iff the query occurs in its URL text; ranking is by that count. Used by
// the evaluator to isolate what tag-weighted content scoring adds.
CrawlOutcome baseline_crawl(const CrawlConfig& config, Transport& transport, Clock* clock = nullptr);

}  // namespace tagcrawl
