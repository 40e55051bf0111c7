#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <map>

#include "contribmine/evaluation.hpp"
#include "contribmine/hcontrib.hpp"
#include "contribmine/model.hpp"
#include "../support/fixture_gen.hpp"
#include "../support/test_util.hpp"

using namespace contribmine;

namespace {

std::filesystem::path fixture_path(const char* name) {
    return std::filesystem::path(CONTRIBMINE_FIXTURE_DIR) / name;
}

} // namespace

TEST_CASE("bundled fixture files match the generator byte for byte") {
    auto bundle = fixturegen::generate_fixture();
    CHECK(bundle.corpus_jsonl == testutil::read_file(fixture_path("corpus_100.jsonl")));
    CHECK(bundle.gold_jsonl == testutil::read_file(fixture_path("gold_100.jsonl")));
}

TEST_CASE("fixture corpus: 100 records whose byline lengths sum to 665") {
    Corpus corpus = load_corpus(fixture_path("corpus_100.jsonl"));
    CHECK(corpus.records.size() == 100);
    CHECK(corpus.diagnostics.empty());
    long authors = 0;
    for (const auto& r : corpus.records) authors += static_cast<long>(r.byline.size());
    CHECK(authors == 665);
}

TEST_CASE("fixture gold: 505 task labels and 665 match entries") {
    auto gold = load_gold(fixture_path("gold_100.jsonl"));
    CHECK(gold.size() == 100);
    long tasks = 0, matches = 0;
    for (const auto& g : gold) {
        tasks += static_cast<long>(g.gold_tasks.size());
        matches += static_cast<long>(g.gold_matches.size());
        for (const auto& [idx, cat] : g.gold_tasks) CHECK(idx >= 1);
    }
    CHECK(tasks == 505);
    CHECK(matches == 665);
}

TEST_CASE("fixture classification is the modal review-editing corpus") {
    // The golden assignments file is the pinned classifier output; spot-check
    // distributional facts the corpus was built to exhibit.
    auto assignments = read_assignments(fixture_path("golden_assignments.jsonl"));
    REQUIRE(assignments.size() == 1595);

    std::map<CreditCategory, long> counts;
    for (const auto& a : assignments) counts[a.category]++;
    auto modal = std::max_element(counts.begin(), counts.end(), [](const auto& a, const auto& b) {
        return a.second < b.second;
    });
    CHECK(modal->first == CreditCategory::writing_review_editing);
}
