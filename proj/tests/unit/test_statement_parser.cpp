#include <doctest.h>

#include <set>

#include "contribmine/statement_parser.hpp"
#include "../support/test_util.hpp"

using namespace contribmine;

namespace {

std::vector<Clause> parse(const std::string& text, const std::vector<FullName>& byline) {
    return segment(text, resolve_mentions(text, byline));
}

std::vector<FullName> three_authors() {
    return {make_full_name("Alan Bell"), make_full_name("Clara Dorn"), make_full_name("Ed Fox")};
}

} // namespace

TEST_CASE("normalize_clause lowercases, trims punctuation, keeps intra-word hyphens") {
    CHECK(normalize_clause("  Wrote the (initial) DRAFT!  ") == "wrote the initial draft");
    CHECK(normalize_clause("re-analysis of data") == "re-analysis of data");
    CHECK(normalize_clause("- leading and trailing -") == "leading and trailing");
    CHECK(normalize_clause("a,b;c") == "a b c");
    // idempotent on already-normalized text
    std::string once = normalize_clause("Curated THE data-set.");
    CHECK(normalize_clause(once) == once);
}

TEST_CASE("comma-separated author-first clauses split per subject") {
    auto clauses = parse(
        "A.B. performed the data analysis, C.D. conceptualized the study, and E.F. wrote the initial draft.",
        three_authors());
    REQUIRE(clauses.size() == 3);
    CHECK(clauses[0].authors == std::vector<int>{1});
    CHECK(clauses[0].text == "performed the data analysis");
    CHECK(clauses[0].style == ClauseStyle::author_first);
    CHECK(clauses[1].authors == std::vector<int>{2});
    CHECK(clauses[1].text == "conceptualized the study");
    CHECK(clauses[2].authors == std::vector<int>{3});
    CHECK(clauses[2].text == "wrote the initial draft");
}

TEST_CASE("role-first grammar: role phrase, colon, mentions") {
    std::vector<FullName> byline = {make_full_name("John Doe Smith"), make_full_name("Carla Diaz")};
    auto clauses = parse("Conceptualization: J.D.S., C.D.", byline);
    REQUIRE(clauses.size() == 1);
    CHECK(clauses[0].style == ClauseStyle::role_first);
    CHECK(clauses[0].text == "conceptualization");
    CHECK(clauses[0].authors == std::vector<int>{1, 2});
    CHECK_FALSE(clauses[0].unattributed);
}

TEST_CASE("collective subject with coordinated predicates") {
    std::vector<FullName> byline = {make_full_name("Mira Fuchs"), make_full_name("Ilan Arad")};
    auto clauses = parse(
        "Both authors designed and conducted the experiments, and contributed to writing and editing the manuscript.",
        byline);
    REQUIRE(clauses.size() == 2);
    CHECK(clauses[0].authors == std::vector<int>{1, 2});
    CHECK(clauses[0].text == "designed and conducted the experiments");
    CHECK(clauses[0].style == ClauseStyle::collective);
    CHECK(clauses[0].collective_authors);
    CHECK(clauses[1].authors == std::vector<int>{1, 2});
    CHECK(clauses[1].text == "contributed to writing and editing the manuscript");
}

TEST_CASE("shared subject yields one clause per predicate") {
    auto clauses = parse("A.B. performed the experiments and wrote the software.", three_authors());
    REQUIRE(clauses.size() == 2);
    CHECK(clauses[0].authors == std::vector<int>{1});
    CHECK(clauses[0].text == "performed the experiments");
    CHECK(clauses[1].authors == std::vector<int>{1});
    CHECK(clauses[1].text == "wrote the software");
}

TEST_CASE("sentences without resolvable mentions become unattributed clauses") {
    auto clauses = parse("The work was reviewed carefully.", three_authors());
    REQUIRE(clauses.size() == 1);
    CHECK(clauses[0].unattributed);
    CHECK(clauses[0].authors.empty());
    CHECK(clauses[0].text == "the work was reviewed carefully");
}

TEST_CASE("ambiguous subjects are surfaced as unattributed") {
    std::vector<FullName> byline = {make_full_name("John Smith"), make_full_name("Jane Smith")};
    auto clauses = parse("J.S. wrote the draft.", byline);
    REQUIRE(clauses.size() == 1);
    CHECK(clauses[0].unattributed);
    CHECK(clauses[0].authors.empty());
}

TEST_CASE("nested enumeration: mention-colon-role-list segments") {
    std::vector<FullName> byline = {make_full_name("Alan Bell"), make_full_name("Clara Dorn")};
    auto clauses = parse("A.B.: methodology, software; C.D.: supervision.", byline);
    REQUIRE(clauses.size() == 3);
    CHECK(clauses[0].authors == std::vector<int>{1});
    CHECK(clauses[0].text == "methodology");
    CHECK(clauses[0].style == ClauseStyle::author_first);
    CHECK(clauses[1].authors == std::vector<int>{1});
    CHECK(clauses[1].text == "software");
    CHECK(clauses[2].authors == std::vector<int>{2});
    CHECK(clauses[2].text == "supervision");
}

TEST_CASE("other colon nestings are flagged, not guessed") {
    std::vector<FullName> byline = {make_full_name("Alan Bell")};
    auto clauses = parse("Roles: A.B.: everything else.", byline);
    REQUIRE(clauses.size() == 1);
    CHECK(clauses[0].unattributed);
}

TEST_CASE("no split inside resolved mention spans") {
    std::vector<FullName> byline = {make_full_name("John Doe Smith"), make_full_name("Carla Diaz")};
    std::string text = "J.D.S. analyzed the data and C.D. reviewed the manuscript.";
    auto rs = resolve_mentions(text, byline);
    auto clauses = segment(text, rs);
    REQUIRE(clauses.size() == 2);
    CHECK(clauses[0].authors == std::vector<int>{1});
    CHECK(clauses[1].authors == std::vector<int>{2});
}

TEST_CASE("property: no clause boundary inside any resolved span") {
    testutil::XorShift rng(11);
    const char* givens[] = {"Lena", "Marc", "Noor", "Omar"};
    const char* surnames[] = {"Quist", "Reyes", "Sato", "Tamm"};
    const char* verbs[] = {"analyzed the data", "wrote the software", "performed the experiments",
                           "supervised the project"};
    for (int trial = 0; trial < 50; trial++) {
        std::vector<FullName> byline;
        int n = 2 + static_cast<int>(rng.below(3));
        std::set<std::string> used;
        while (static_cast<int>(byline.size()) < n) {
            std::string raw = std::string(givens[rng.below(4)]) + " " + surnames[rng.below(4)];
            if (used.insert(raw).second) byline.push_back(make_full_name(raw));
        }
        std::string text;
        for (int i = 0; i < n; i++) {
            auto cands = generate_acronym_candidates(byline[static_cast<std::size_t>(i)]);
            // prefer a dotted candidate to stress dot handling
            std::string surf = cands[rng.below(cands.size())].surface;
            for (const auto& c : cands) {
                if (c.surface.find('.') != std::string::npos && rng.below(2)) {
                    surf = c.surface;
                    break;
                }
            }
            text += surf + " " + verbs[rng.below(4)];
            text += (i + 1 < n) ? ", " : ".";
        }
        auto rs = resolve_mentions(text, byline);
        auto clauses = segment(text, rs);
        // all authors referenced must come from the byline
        for (const auto& c : clauses) {
            for (int idx : c.authors) {
                CHECK(idx >= 1);
                CHECK(idx <= n);
            }
        }
        // and each single resolution's author must appear in some clause
        // unless the clause text was empty (never for these templates)
        std::set<int> clause_authors;
        for (const auto& c : clauses)
            for (int idx : c.authors) clause_authors.insert(idx);
        for (const auto& r : rs) {
            if (r.method == ResolveMethod::exact && r.indices.size() == 1) {
                INFO("text: " << text);
                CHECK(clause_authors.count(r.indices[0]));
            }
        }
    }
}

TEST_CASE("segmentation is deterministic") {
    auto byline = three_authors();
    std::string text = "A.B. performed the experiments; C.D. wrote the paper. All authors approved.";
    auto a = parse(text, byline);
    auto b = parse(text, byline);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); i++) {
        CHECK(a[i].text == b[i].text);
        CHECK(a[i].authors == b[i].authors);
        CHECK(a[i].style == b[i].style);
    }
}

TEST_CASE("passive preamble folds into the clause text") {
    std::vector<FullName> byline = {make_full_name("Alan Bell")};
    auto clauses = parse("Statistical analysis was performed by A.B.", byline);
    REQUIRE(clauses.size() == 1);
    CHECK(clauses[0].authors == std::vector<int>{1});
    CHECK(clauses[0].text == "statistical analysis was performed by");
}

TEST_CASE("mention-final dot splits before a capitalized sentence") {
    std::vector<FullName> byline = {make_full_name("John Doe Smith"), make_full_name("Carla Diaz")};
    auto clauses = parse("Supervision: J.D.S. All authors reviewed the manuscript.", byline);
    REQUIRE(clauses.size() == 2);
    CHECK(clauses[0].style == ClauseStyle::role_first);
    CHECK(clauses[0].text == "supervision");
    CHECK(clauses[0].authors == std::vector<int>{1});
    CHECK(clauses[1].collective_authors);
    CHECK(clauses[1].authors == std::vector<int>{1, 2});
}
