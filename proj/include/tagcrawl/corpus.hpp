#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace tagcrawl {

// One page of an offline corpus. `url` is the canonical form and the lookup
// key the offline transport serves by.
struct CorpusEntry {
    std::string url;
    std::string file;  // relative to the corpus directory; empty for bodiless entries
    int status = 200;
    std::string content_type = "text/html";
    std::optional<std::string> redirect;  // Location target (absolute URL)
    std::optional<bool> relevant;         // ground-truth label for the corpus query
    bool external_redirect = false;       // redirect may point outside the manifest
    std::optional<std::string> simulate;  // "timeout" | "error" (test fixtures)
    std::string body;                     // loaded file bytes
};

struct CorpusManifest {
    std::filesystem::path dir;
    std::string query;  // the query the relevance labels were authored for
    std::vector<CorpusEntry> entries;

    const CorpusEntry* find(const std::string& canonical_url_text) const;

    // In-memory manifest (no files behind it); entries carry their bodies.
    static CorpusManifest from_entries(std::vector<CorpusEntry> entries, std::string query = "");

private:
    friend std::optional<CorpusManifest> load_corpus(const std::filesystem::path&, std::string*);
    friend std::optional<CorpusManifest> generate_corpus(const struct GeneratorSpec&,
                                                         const std::filesystem::path&,
                                                         std::string*);
    void build_index();
    std::unordered_map<std::string, size_t> index_;
};

// Deterministic synthetic-corpus generator: identical specs produce
// byte-identical trees. Relevant pages carry the query in regions drawn
// from `placement`; planting assumes the default weights when topping up a
// page to clear the threshold.
struct GeneratorSpec {
    uint64_t seed = 1;
    int site_count = 1;
    int pages_per_site = 20;
    int link_fanout = 3;
    double relevant_fraction = 0.3;
    std::string query = "example";
    std::string host_prefix = "site";
    // draw weights over the five regions: meta, url, title, heading, body
    std::vector<double> placement = {0.30, 0.10, 0.20, 0.10, 0.30};
    // fraction of irrelevant pages that carry the query in their URL / text
    double url_noise_fraction = 0.0;
    double content_noise_fraction = 0.0;
    bool traps = false;
};

// Loads and validates <dir>/manifest.json plus every referenced file.
// Returns nullopt with a diagnostic in `error` when the manifest is invalid
// (duplicate URL, missing file, unresolvable redirect, ...).
std::optional<CorpusManifest> load_corpus(const std::filesystem::path& dir, std::string* error = nullptr);

std::optional<CorpusManifest> generate_corpus(const GeneratorSpec& spec,
                                              const std::filesystem::path& out_dir,
                                              std::string* error = nullptr);

}  // namespace tagcrawl
