#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tagcrawl/html.hpp"
#include "tagcrawl/relevance.hpp"

using namespace tagcrawl;

namespace {

TagDocument paper_doc() {
    auto url = canonicalize("http://www.myblogindia.com/html/default.asp");
    REQUIRE(url);
    auto doc = parse_html(tagtest::read_file(tagtest::fixtures_dir() / "paper/pages/default.asp"), *url);
    REQUIRE(doc);
    return *doc;
}

std::string random_words(std::mt19937& gen, int max_words) {
    static const char* vocab[] = {"alpha", "beta", "gamma", "delta", "aa", "aaa", "ab",
                                  "query", "quer", "ery", "x", "deep learning", "Alpha"};
    std::string out;
    int n = static_cast<int>(gen() % static_cast<unsigned>(max_words + 1));
    for (int i = 0; i < n; ++i) {
        if (i) out += " ";
        out += vocab[gen() % (sizeof(vocab) / sizeof(vocab[0]))];
    }
    return out;
}

}  // namespace

TEST_SUITE("relevance") {

TEST_CASE("worked example: counts and total weight") {
    TagDocument doc = paper_doc();
    OccurrenceCounts counts = count_occurrences(doc, "html");
    CHECK(counts.body == 1);
    CHECK(counts.title == 1);
    CHECK(counts.meta == 2);
    CHECK(counts.heading == 0);
    CHECK(counts.url == 1);

    WeightConfig weights;
    CHECK(page_weight(counts, weights) == 18);
    CHECK(is_relevant(18, weights));
}

TEST_CASE("absent query counts zero everywhere") {
    TagDocument doc = paper_doc();
    OccurrenceCounts counts = count_occurrences(doc, "zeppelin");
    CHECK(counts == OccurrenceCounts{});
    CHECK(page_weight(counts, WeightConfig{}) == 0);
}

TEST_CASE("non-overlapping substring counting") {
    TagDocument doc;
    doc.body_text = "aaaa";
    OccurrenceCounts counts = count_occurrences(doc, "aa");
    CHECK(counts.body == 2);
    CHECK(counts.body == tagtest::naive_count("aaaa", "aa"));

    doc.body_text = "aaa";
    CHECK(count_occurrences(doc, "aa").body == 1);
}

TEST_CASE("threshold boundary is strict") {
    WeightConfig weights;
    CHECK(is_relevant(18, weights));
    CHECK_FALSE(is_relevant(3, weights));
    CHECK(is_relevant(4, weights));
    CHECK_FALSE(is_relevant(0, weights));
}

TEST_CASE("weight formula spot checks") {
    WeightConfig weights;
    CHECK(page_weight({.body = 0, .title = 0, .meta = 0, .heading = 0, .url = 0}, weights) == 0);
    CHECK(page_weight({.body = 0, .title = 0, .meta = 0, .heading = 2, .url = 0}, weights) == 4);
    CHECK(page_weight({.body = 1, .title = 1, .meta = 2, .heading = 0, .url = 1}, weights) == 18);
}

TEST_CASE("case-insensitive: upper-casing a document changes nothing") {
    TagDocument doc = paper_doc();
    TagDocument upper = doc;
    auto upcase = [](std::string& s) {
        for (char& c : s) {
            if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
        }
    };
    upcase(upper.title_text);
    upcase(upper.body_text);
    for (auto& m : upper.meta_texts) upcase(m);
    for (auto& h : upper.heading_texts) upcase(h);
    upcase(upper.url_text);

    CHECK(count_occurrences(doc, "html") == count_occurrences(upper, "html"));
    CHECK(count_occurrences(doc, "HTML") == count_occurrences(doc, "html"));
}

TEST_CASE("multi-word queries match as one normalized phrase") {
    TagDocument doc;
    doc.body_text = "deep learning is deep";
    CHECK(count_occurrences(doc, "  Deep   Learning ").body == 1);
    CHECK(count_occurrences(doc, "deep learning").body == 1);

    doc.url_text = "http://s.test/book-show/1";
    doc.body_text = "";
    CHECK(count_occurrences(doc, "book show").url == 0);  // hyphen is not a space
}

TEST_CASE("any-term mode sums per-term counts") {
    TagDocument doc;
    doc.body_text = "deep water, shallow learning";
    CHECK(count_occurrences(doc, "deep learning", MatchMode::AnyTerm).body == 2);
    CHECK(count_occurrences(doc, "deep learning", MatchMode::Phrase).body == 0);
}

TEST_CASE("blank queries count nothing") {
    TagDocument doc = paper_doc();
    CHECK(normalize_query("   ").empty());
    CHECK(count_occurrences(doc, "   ") == OccurrenceCounts{});
}

TEST_CASE("linearity and monotonicity of the weight formula") {
    std::mt19937 gen(5);
    WeightConfig weights;
    for (int i = 0; i < 200; ++i) {
        OccurrenceCounts c{static_cast<int>(gen() % 10), static_cast<int>(gen() % 10),
                           static_cast<int>(gen() % 10), static_cast<int>(gen() % 10),
                           static_cast<int>(gen() % 10)};
        int t = page_weight(c, weights);

        OccurrenceCounts doubled{c.body * 2, c.title * 2, c.meta * 2, c.heading * 2, c.url * 2};
        CHECK(page_weight(doubled, weights) == 2 * t);

        OccurrenceCounts bumped = c;
        switch (gen() % 5) {
            case 0: bumped.body += 1; break;
            case 1: bumped.title += 1; break;
            case 2: bumped.meta += 1; break;
            case 3: bumped.heading += 1; break;
            default: bumped.url += 1; break;
        }
        CHECK(page_weight(bumped, weights) > t);  // all default weights are positive
    }
}

TEST_CASE("one meta occurrence outweighs one occurrence in any other region") {
    WeightConfig w;
    int meta_only = page_weight({.body = 0, .title = 0, .meta = 1, .heading = 0, .url = 0}, w);
    CHECK(meta_only > page_weight({.body = 1, .title = 0, .meta = 0, .heading = 0, .url = 0}, w));
    CHECK(meta_only > page_weight({.body = 0, .title = 1, .meta = 0, .heading = 0, .url = 0}, w));
    CHECK(meta_only > page_weight({.body = 0, .title = 0, .meta = 0, .heading = 1, .url = 0}, w));
    CHECK(meta_only > page_weight({.body = 0, .title = 0, .meta = 0, .heading = 0, .url = 1}, w));
}

TEST_CASE("scaling all weights preserves pairwise order") {
    std::mt19937 gen(17);
    WeightConfig base;
    for (int i = 0; i < 100; ++i) {
        int k = 1 + static_cast<int>(gen() % 9);
        WeightConfig scaled{base.meta_weight * k, base.url_weight * k, base.title_weight * k,
                            base.heading_weight * k, base.body_weight * k, base.threshold * k};
        OccurrenceCounts a{static_cast<int>(gen() % 6), static_cast<int>(gen() % 6),
                           static_cast<int>(gen() % 6), static_cast<int>(gen() % 6),
                           static_cast<int>(gen() % 6)};
        OccurrenceCounts b{static_cast<int>(gen() % 6), static_cast<int>(gen() % 6),
                           static_cast<int>(gen() % 6), static_cast<int>(gen() % 6),
                           static_cast<int>(gen() % 6)};
        int ta = page_weight(a, base);
        int tb = page_weight(b, base);
        int sa = page_weight(a, scaled);
        int sb = page_weight(b, scaled);
        if (ta < tb) CHECK(sa < sb);
        if (ta == tb) CHECK(sa == sb);
        if (ta > tb) CHECK(sa > sb);
        CHECK(is_relevant(ta, base) == is_relevant(sa, scaled));
    }
}

TEST_CASE("oracle: randomized documents and queries match the naive counter") {
    std::mt19937 gen(99);
    const char* queries[] = {"a", "aa", "alpha", "deep learning", "QUERY", "ery", "x"};
    int cases = 0;
    while (cases < 1200) {
        TagDocument doc;
        doc.body_text = random_words(gen, 20);
        doc.title_text = random_words(gen, 6);
        doc.url_text = "http://h.test/" + random_words(gen, 2);
        int metas = static_cast<int>(gen() % 3);
        for (int m = 0; m < metas; ++m) doc.meta_texts.push_back(random_words(gen, 8));
        int headings = static_cast<int>(gen() % 3);
        for (int h = 0; h < headings; ++h) doc.heading_texts.push_back(random_words(gen, 5));

        std::string query = queries[gen() % (sizeof(queries) / sizeof(queries[0]))];
        OccurrenceCounts counts = count_occurrences(doc, query);

        std::string needle = normalize_query(query);
        int meta_expected = 0;
        for (const auto& m : doc.meta_texts) meta_expected += tagtest::naive_count(m, needle);
        int heading_expected = 0;
        for (const auto& h : doc.heading_texts) heading_expected += tagtest::naive_count(h, needle);

        CHECK(counts.body == tagtest::naive_count(doc.body_text, needle));
        CHECK(counts.title == tagtest::naive_count(doc.title_text, needle));
        CHECK(counts.url == tagtest::naive_count(doc.url_text, needle));
        CHECK(counts.meta == meta_expected);
        CHECK(counts.heading == heading_expected);
        ++cases;
    }
}

}  // TEST_SUITE
