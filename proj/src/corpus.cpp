#include "tagcrawl/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tagcrawl/relevance.hpp"
#include "tagcrawl/text.hpp"
#include "tagcrawl/url.hpp"

namespace tagcrawl {

namespace {

using ordered_json = nlohmann::ordered_json;

// All draws go through raw mt19937_64 output so identical seeds give
// identical corpora on every platform (std::uniform_* distributions are
// implementation-defined).
struct Rng {
    std::mt19937_64 gen;

    explicit Rng(uint64_t seed) : gen(seed) {}

    uint64_t next() { return gen(); }
    int below(int n) { return n <= 1 ? 0 : static_cast<int>(next() % static_cast<uint64_t>(n)); }
    double unit() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }
    bool chance(double p) { return unit() < p; }
};

const std::vector<std::string>& base_lexicon() {
    static const std::vector<std::string> words = {
        "lorem",  "ipsum",   "dolor",   "amet",    "consectetur", "adipiscing",
        "elit",   "sed",     "tempor",  "incididunt", "labore",   "dolore",
        "magna",  "aliqua",  "veniam",  "quis",    "nostrud",     "ullamco",
        "laboris", "nisi",   "aliquip", "commodo", "consequat",   "duis",
        "aute",   "irure",   "velit",   "esse",    "cillum",      "fugiat",
        "nulla",  "pariatur", "sint",   "occaecat", "cupidatat",  "proident",
        "culpa",  "officia", "deserunt", "mollit",
    };
    return words;
}

enum Region { kMeta = 0, kUrl = 1, kTitle = 2, kHeading = 3, kBody = 4 };

struct PagePlan {
    std::string host;
    std::string path;
    bool relevant = false;
    bool url_hit = false;
    int meta_n = 0;
    int title_n = 0;
    int heading_n = 0;
    int body_n = 0;
    int depth = 0;
    std::vector<size_t> out;  // indices into the global page list

    // composed content
    std::vector<std::string> meta_contents;
    std::string title;
    std::vector<std::string> headings;
    std::vector<std::string> paragraphs;

    std::string url_text() const { return "http://" + host + path; }
};

std::string slugify(const std::string& query) {
    std::string slug;
    for (char c : ascii_fold(query)) {
        slug.push_back(c == ' ' ? '-' : c);
    }
    return slug;
}

int draw_region(Rng& rng, const std::vector<double>& weights) {
    double total = 0;
    for (double w : weights) total += w;
    double x = rng.unit() * total;
    for (size_t i = 0; i < weights.size(); ++i) {
        x -= weights[i];
        if (x < 0) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
}

class Composer {
public:
    Composer(Rng& rng, const std::string& query) : rng_(rng), query_(query) {
        std::string folded_query = ascii_fold(query);
        std::vector<std::string> terms;
        size_t start = 0;
        while (start < folded_query.size()) {
            size_t space = folded_query.find(' ', start);
            size_t end = space == std::string::npos ? folded_query.size() : space;
            if (end > start) terms.push_back(folded_query.substr(start, end - start));
            start = end + 1;
        }
        // filler must never collide with the query, or planted counts drift
        for (const auto& word : base_lexicon()) {
            bool collides = false;
            for (const auto& term : terms) {
                if (word.find(term) != std::string::npos || term.find(word) != std::string::npos) {
                    collides = true;
                    break;
                }
            }
            if (!collides) lexicon_.push_back(word);
        }
        if (lexicon_.empty()) {
            // degenerate query (e.g. a single letter): build filler from a
            // letter the query does not contain
            char safe = 'q';
            for (char c = 'a'; c <= 'z'; ++c) {
                if (folded_query.find(c) == std::string::npos) {
                    safe = c;
                    break;
                }
            }
            for (int i = 0; i < 8; ++i) {
                lexicon_.push_back(std::string(static_cast<size_t>(2 + i % 4), safe));
            }
        }
    }

    std::string word() { return lexicon_[static_cast<size_t>(rng_.below(static_cast<int>(lexicon_.size())))]; }

    std::string query_mention() {
        switch (rng_.below(3)) {
            case 0: return query_;
            case 1: return ascii_fold(query_);
            default: {
                std::string upper;
                for (char c : query_) {
                    upper.push_back(c >= 'a' && c <= 'z' ? static_cast<char>(c - 'a' + 'A') : c);
                }
                return upper;
            }
        }
    }

    // `mentions` query occurrences woven into `length` filler words
    std::string sentence(int length, int mentions) {
        std::vector<std::string> parts;
        for (int i = 0; i < length; ++i) parts.push_back(word());
        for (int m = 0; m < mentions; ++m) {
            parts.insert(parts.begin() + rng_.below(static_cast<int>(parts.size()) + 1), query_mention());
        }
        std::string out;
        for (size_t i = 0; i < parts.size(); ++i) {
            if (i) out += " ";
            out += parts[i];
        }
        return out;
    }

private:
    Rng& rng_;
    std::string query_;
    std::vector<std::string> lexicon_;
};

void compose_page(PagePlan& page, Composer& words, Rng& rng) {
    int meta_first = (page.meta_n + 1) / 2;
    page.meta_contents.push_back(words.sentence(4 + rng.below(3), meta_first));
    page.meta_contents.push_back(words.sentence(3, page.meta_n - meta_first));

    page.title = words.sentence(2 + rng.below(3), page.title_n);

    if (page.heading_n > 0) {
        page.headings.push_back(words.sentence(2, page.heading_n));
    }
    if (rng.chance(0.4)) {
        page.headings.push_back(words.sentence(2 + rng.below(2), 0));
    }

    int paragraph_count = 2 + rng.below(3);
    std::vector<int> body_mentions(static_cast<size_t>(paragraph_count), 0);
    for (int m = 0; m < page.body_n; ++m) {
        body_mentions[static_cast<size_t>(rng.below(paragraph_count))] += 1;
    }
    for (int p = 0; p < paragraph_count; ++p) {
        page.paragraphs.push_back(words.sentence(6 + rng.below(8), body_mentions[static_cast<size_t>(p)]));
    }
}

// Counts what the crawler will actually see, so label-true pages are
// guaranteed to clear the default threshold even if a draw collided.
int actual_weight(const PagePlan& page, const std::string& folded_query, const WeightConfig& w) {
    OccurrenceCounts c;
    for (const auto& m : page.meta_contents) c.meta += count_substring(ascii_fold(m), folded_query);
    c.title = count_substring(ascii_fold(page.title), folded_query);
    for (const auto& h : page.headings) c.heading += count_substring(ascii_fold(h), folded_query);
    std::string body;
    for (const auto& p : page.paragraphs) {
        body += p;
        body += " ";
    }
    c.body = count_substring(ascii_fold(body), folded_query);
    c.url = count_substring(ascii_fold(page.url_text()), folded_query);
    return page_weight(c, w);
}

std::string render_html(const PagePlan& page, const std::vector<PagePlan>& all) {
    std::ostringstream html;
    html << "<!DOCTYPE html>\n<html>\n<head>\n";
    html << "<meta name=\"description\" content=\"" << page.meta_contents[0] << "\">\n";
    html << "<meta name=\"keywords\" content=\"" << page.meta_contents[1] << "\">\n";
    html << "<title>" << page.title << "</title>\n";
    html << "</head>\n<body>\n";
    for (const auto& h : page.headings) {
        html << "<h2>" << h << "</h2>\n";
    }
    for (const auto& p : page.paragraphs) {
        html << "<p>" << p << "</p>\n";
    }
    if (!page.out.empty()) {
        html << "<ul>\n";
        for (size_t target : page.out) {
            html << "<li><a href=\"" << all[target].url_text() << "\">more</a></li>\n";
        }
        html << "</ul>\n";
    }
    html << "</body>\n</html>\n";
    return html.str();
}

bool write_file(const std::filesystem::path& path, const std::string& content, std::string* error) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        if (error) *error = "cannot write " + path.string();
        return false;
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    return out.good();
}

std::optional<std::string> validate_spec(const GeneratorSpec& spec) {
    if (spec.site_count < 1) return "site_count must be >= 1";
    if (spec.pages_per_site < 1) return "pages_per_site must be >= 1";
    if (spec.link_fanout < 0) return "link_fanout must be >= 0";
    if (spec.relevant_fraction < 0 || spec.relevant_fraction > 1) return "relevant_fraction must be in [0,1]";
    if (spec.url_noise_fraction < 0 || spec.url_noise_fraction > 1) return "url_noise_fraction must be in [0,1]";
    if (spec.content_noise_fraction < 0 || spec.content_noise_fraction > 1) {
        return "content_noise_fraction must be in [0,1]";
    }
    if (trim(spec.query).empty()) return "query must be non-empty";
    if (spec.placement.size() != 5) return "placement must list 5 region weights";
    double sum = 0;
    for (double w : spec.placement) {
        if (w < 0) return "placement weights must be >= 0";
        sum += w;
    }
    if (sum <= 0) return "placement weights must not all be zero";
    if (spec.host_prefix.empty()) return "host_prefix must be non-empty";
    for (char c : spec.host_prefix) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') {
            return "host_prefix must be alphanumeric";
        }
    }
    // if the query occurs in every URL the labels lose their meaning
    std::string sample_url = "http://" + spec.host_prefix + "0.test/p123.html";
    if (ascii_fold(sample_url).find(ascii_fold(collapse_whitespace(spec.query))) != std::string::npos) {
        return "query \"" + spec.query + "\" would appear in every generated URL";
    }
    return std::nullopt;
}

}  // namespace

const CorpusEntry* CorpusManifest::find(const std::string& canonical_url_text) const {
    auto it = index_.find(canonical_url_text);
    return it == index_.end() ? nullptr : &entries[it->second];
}

CorpusManifest CorpusManifest::from_entries(std::vector<CorpusEntry> entries, std::string query) {
    CorpusManifest manifest;
    manifest.query = std::move(query);
    manifest.entries = std::move(entries);
    manifest.build_index();
    return manifest;
}

void CorpusManifest::build_index() {
    index_.clear();
    for (size_t i = 0; i < entries.size(); ++i) {
        index_.emplace(entries[i].url, i);
    }
}

std::optional<CorpusManifest> load_corpus(const std::filesystem::path& dir, std::string* error) {
    auto fail = [&](const std::string& message) -> std::optional<CorpusManifest> {
        if (error) *error = message;
        return std::nullopt;
    };

    std::filesystem::path manifest_path = dir / "manifest.json";
    std::ifstream in(manifest_path, std::ios::binary);
    if (!in) return fail("manifest not found: " + manifest_path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();

    ordered_json doc = ordered_json::parse(buffer.str(), nullptr, false);
    if (doc.is_discarded()) return fail("manifest is not valid JSON: " + manifest_path.string());
    if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
        return fail("manifest must be an object with an \"entries\" array");
    }
    if (doc.value("version", 0) != 1) return fail("unsupported manifest version");

    CorpusManifest manifest;
    manifest.dir = dir;
    manifest.query = doc.value("query", "");

    std::vector<std::string> problems;
    std::set<std::string> seen;
    for (const auto& item : doc["entries"]) {
        CorpusEntry entry;
        if (!item.is_object() || !item.contains("url") || !item["url"].is_string()) {
            problems.push_back("entry without url");
            continue;
        }
        entry.url = item["url"].get<std::string>();
        auto canonical = canonicalize(entry.url);
        if (!canonical) {
            problems.push_back("unparseable url: " + entry.url);
            continue;
        }
        if (canonical->text() != entry.url) {
            problems.push_back("url not in canonical form: " + entry.url + " (expected " +
                               canonical->text() + ")");
        }
        if (!seen.insert(entry.url).second) {
            problems.push_back("duplicate url: " + entry.url);
        }

        if (item.contains("redirect")) entry.redirect = item["redirect"].get<std::string>();
        entry.status = item.value("status", entry.redirect ? 301 : 200);
        entry.content_type = item.value("content_type", std::string("text/html"));
        if (item.contains("relevant")) entry.relevant = item["relevant"].get<bool>();
        entry.external_redirect = item.value("external", false);
        if (item.contains("simulate")) {
            entry.simulate = item["simulate"].get<std::string>();
            if (*entry.simulate != "timeout" && *entry.simulate != "error") {
                problems.push_back("unknown simulate mode: " + *entry.simulate);
            }
        }
        entry.file = item.value("file", std::string());
        if (!entry.file.empty()) {
            std::ifstream body(dir / entry.file, std::ios::binary);
            if (!body) {
                problems.push_back("missing file: " + entry.file + " (for " + entry.url + ")");
            } else {
                std::stringstream bytes;
                bytes << body.rdbuf();
                entry.body = bytes.str();
            }
        }
        manifest.entries.push_back(std::move(entry));
    }

    for (const auto& entry : manifest.entries) {
        if (!entry.redirect) continue;
        auto target = canonicalize(*entry.redirect);
        if (!target) {
            problems.push_back("unparseable redirect target: " + *entry.redirect);
            continue;
        }
        if (!entry.external_redirect && !seen.count(target->text())) {
            problems.push_back("redirect target outside manifest: " + *entry.redirect +
                               " (from " + entry.url + ")");
        }
    }

    if (!problems.empty()) {
        std::string joined;
        for (size_t i = 0; i < problems.size(); ++i) {
            if (i) joined += "; ";
            joined += problems[i];
        }
        return fail("invalid manifest: " + joined);
    }

    manifest.build_index();
    return manifest;
}

std::optional<CorpusManifest> generate_corpus(const GeneratorSpec& spec,
                                              const std::filesystem::path& out_dir,
                                              std::string* error) {
    if (auto problem = validate_spec(spec)) {
        if (error) *error = "invalid spec: " + *problem;
        return std::nullopt;
    }

    Rng rng(spec.seed);
    std::string query = collapse_whitespace(spec.query);
    std::string folded_query = ascii_fold(query);
    std::string slug = slugify(query);
    Composer words(rng, query);
    WeightConfig default_weights;

    std::vector<PagePlan> pages;
    std::vector<size_t> site_index_page;

    for (int site = 0; site < spec.site_count; ++site) {
        size_t base = pages.size();
        site_index_page.push_back(base);
        int count = spec.pages_per_site;

        // deterministic Fisher-Yates pick of the relevant pages
        std::vector<int> order(static_cast<size_t>(count));
        for (int i = 0; i < count; ++i) order[static_cast<size_t>(i)] = i;
        for (int i = count - 1; i > 0; --i) {
            std::swap(order[static_cast<size_t>(i)], order[static_cast<size_t>(rng.below(i + 1))]);
        }
        int relevant_count = static_cast<int>(std::lround(spec.relevant_fraction * count));
        std::set<int> relevant_pages(order.begin(), order.begin() + relevant_count);

        for (int i = 0; i < count; ++i) {
            PagePlan page;
            page.host = spec.host_prefix + std::to_string(site) + ".test";
            page.relevant = relevant_pages.count(i) > 0;

            if (page.relevant) {
                int plants = 2 + rng.below(3);
                for (int p = 0; p < plants; ++p) {
                    switch (draw_region(rng, spec.placement)) {
                        case kMeta: page.meta_n += 1; break;
                        case kUrl: page.url_hit = true; break;
                        case kTitle: page.title_n += 1; break;
                        case kHeading: page.heading_n += 1; break;
                        default: page.body_n += 1; break;
                    }
                }
            } else if (rng.chance(spec.url_noise_fraction)) {
                page.url_hit = true;
            } else if (rng.chance(spec.content_noise_fraction)) {
                static const std::vector<double> noise_weights = {0.15, 0.0, 0.15, 0.25, 0.45};
                int mentions = 1 + rng.below(2);
                for (int m = 0; m < mentions; ++m) {
                    switch (draw_region(rng, noise_weights)) {
                        case kMeta: page.meta_n += 1; break;
                        case kTitle: page.title_n += 1; break;
                        case kHeading: page.heading_n += 1; break;
                        default: page.body_n += 1; break;
                    }
                }
            }

            if (i == 0) {
                // the site index keeps its bare path; move a URL plant to meta
                if (page.url_hit) {
                    page.url_hit = false;
                    page.meta_n += 1;
                }
                page.path = "/";
            } else if (page.url_hit) {
                page.path = "/" + slug + "-" + std::to_string(i) + ".html";
            } else {
                page.path = "/p" + std::to_string(i) + ".html";
            }
            pages.push_back(std::move(page));
        }

        // spanning links keep every page reachable from the site index at
        // bounded depth
        for (int i = 1; i < count; ++i) {
            std::vector<size_t> shallow;
            for (int j = 0; j < i; ++j) {
                if (pages[base + static_cast<size_t>(j)].depth < 5) {
                    shallow.push_back(base + static_cast<size_t>(j));
                }
            }
            size_t parent = shallow[static_cast<size_t>(rng.below(static_cast<int>(shallow.size())))];
            pages[parent].out.push_back(base + static_cast<size_t>(i));
            pages[base + static_cast<size_t>(i)].depth = pages[parent].depth + 1;
        }
        for (int i = 0; i < count; ++i) {
            int extras = rng.below(spec.link_fanout + 1);
            for (int e = 0; e < extras; ++e) {
                size_t target = base + static_cast<size_t>(rng.below(count));
                if (target != base + static_cast<size_t>(i)) {
                    pages[base + static_cast<size_t>(i)].out.push_back(target);
                }
            }
        }
    }

    // ring between site indexes so one seed reaches the whole corpus
    if (spec.site_count > 1) {
        for (int site = 0; site < spec.site_count; ++site) {
            size_t from = site_index_page[static_cast<size_t>(site)];
            size_t to = site_index_page[static_cast<size_t>((site + 1) % spec.site_count)];
            pages[from].out.push_back(to);
        }
    }

    for (auto& page : pages) {
        compose_page(page, words, rng);
        if (page.relevant) {
            // top up until the page clears the default threshold
            while (actual_weight(page, folded_query, default_weights) <= default_weights.threshold) {
                page.meta_contents[0] += " " + query;
            }
        }
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir / "pages", ec);
    if (ec) {
        if (error) *error = "cannot create " + (out_dir / "pages").string();
        return std::nullopt;
    }

    CorpusManifest manifest;
    manifest.dir = out_dir;
    manifest.query = query;

    ordered_json entries = ordered_json::array();
    size_t file_seq = 0;
    auto add_page = [&](const std::string& url, const std::string& html, bool relevant,
                        std::string* write_error) -> bool {
        std::string file = "pages/p" + std::to_string(file_seq++) + ".html";
        if (!write_file(out_dir / file, html, write_error)) return false;
        ordered_json item;
        item["url"] = url;
        item["file"] = file;
        item["status"] = 200;
        item["content_type"] = "text/html";
        item["relevant"] = relevant;
        entries.push_back(item);

        CorpusEntry entry;
        entry.url = url;
        entry.file = file;
        entry.relevant = relevant;
        entry.body = html;
        manifest.entries.push_back(std::move(entry));
        return true;
    };

    std::string write_error;
    for (const auto& page : pages) {
        if (!add_page(page.url_text(), render_html(page, pages), page.relevant, &write_error)) {
            if (error) *error = write_error;
            return std::nullopt;
        }
    }

    if (spec.traps) {
        const std::string host = spec.host_prefix + "0.test";
        // deep path chain: each page links one level deeper
        const int chain_length = 24;
        for (int d = 1; d <= chain_length; ++d) {
            std::string path = "/trap";
            for (int k = 0; k < d; ++k) path += "/a";
            std::string next = path + "/a";
            std::ostringstream html;
            html << "<html><head><title>deep</title></head><body>"
                 << "<a href=\"http://" << host << next << "\">down</a></body></html>\n";
            if (!add_page("http://" + host + path, html.str(), false, &write_error)) {
                if (error) *error = write_error;
                return std::nullopt;
            }
        }
        // redirect cycle
        auto add_redirect = [&](const std::string& url, const std::string& target) {
            ordered_json item;
            item["url"] = url;
            item["status"] = 301;
            item["redirect"] = target;
            item["relevant"] = false;
            entries.push_back(item);

            CorpusEntry entry;
            entry.url = url;
            entry.status = 301;
            entry.redirect = target;
            entry.relevant = false;
            manifest.entries.push_back(std::move(entry));
        };
        add_redirect("http://" + host + "/loop-a", "http://" + host + "/loop-b");
        add_redirect("http://" + host + "/loop-b", "http://" + host + "/loop-a");

        // hook the traps into the site graph via an extra page linked nowhere
        // else than the index
        std::ostringstream hook;
        hook << "<html><head><title>more</title></head><body>"
             << "<a href=\"http://" << host << "/trap/a\">archive</a>"
             << "<a href=\"http://" << host << "/loop-a\">loop</a></body></html>\n";
        if (!add_page("http://" + host + "/trapdoor.html", hook.str(), false, &write_error)) {
            if (error) *error = write_error;
            return std::nullopt;
        }
        // cannot touch pages[] html anymore (already rendered); link the hook
        // from the manifest side instead: rewrite the site-0 index file with
        // the extra anchor appended
        CorpusEntry& index_entry = manifest.entries[site_index_page[0]];
        std::string patched = index_entry.body;
        const std::string anchor = "<a href=\"http://" + host + "/trapdoor.html\">old</a>\n";
        size_t at = patched.rfind("</body>");
        if (at != std::string::npos) {
            patched.insert(at, anchor);
        } else {
            patched += anchor;
        }
        index_entry.body = patched;
        if (!write_file(out_dir / index_entry.file, patched, &write_error)) {
            if (error) *error = write_error;
            return std::nullopt;
        }
    }

    ordered_json doc;
    doc["version"] = 1;
    doc["query"] = query;
    doc["entries"] = entries;
    if (!write_file(out_dir / "manifest.json", doc.dump(2) + "\n", &write_error)) {
        if (error) *error = write_error;
        return std::nullopt;
    }

    manifest.build_index();
    return manifest;
}

}  // namespace tagcrawl
