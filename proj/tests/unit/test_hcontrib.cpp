#include <doctest.h>

#include <cmath>
#include <set>

#include <json.hpp>

#include "contribmine/hcontrib.hpp"
#include "../support/test_util.hpp"

using namespace contribmine;

namespace {

std::filesystem::path default_config() {
    return std::filesystem::path(CONTRIBMINE_DATA_DIR) / "taxonomy.json";
}

const Taxonomy& loaded_taxonomy() {
    static const Taxonomy tax = load_taxonomy(default_config()).taxonomy;
    return tax;
}

const LexicalEmbedder& lexical() {
    static const LexicalEmbedder e;
    return e;
}

const Taxonomy& taxonomy_with_prototypes() {
    static const Taxonomy tax = build_prototypes(loaded_taxonomy(), lexical());
    return tax;
}

Clause clause_of(const std::string& text) {
    Clause c;
    c.text = normalize_clause(text);
    c.authors = {1};
    return c;
}

std::set<CreditCategory> categories_of(const std::vector<std::pair<CreditCategory, std::string>>& hits) {
    std::set<CreditCategory> out;
    for (const auto& [cat, ev] : hits) out.insert(cat);
    return out;
}

} // namespace

TEST_CASE("prototype of a category with identical examples equals the example embedding") {
    Taxonomy tax;
    tax.profiles.resize(kCategoryCount);
    for (CreditCategory c : all_categories()) {
        auto& p = tax.profile(c);
        p.category = c;
        p.keywords = {std::string(category_name(c))};
        p.examples = {"alpha beta", "alpha beta", "alpha beta", "alpha beta", "alpha beta"};
    }
    auto& target = tax.profile(CreditCategory::software);
    target.keywords.clear();
    target.keywords.push_back("alpha beta"); // keywords ∪ examples collapses to one phrase

    Taxonomy built = build_prototypes(tax, lexical());
    EmbeddingVector expected = lexical().embed("alpha beta");
    const auto& proto = *built.profile(CreditCategory::software).prototype;
    REQUIRE(proto.dim() == expected.dim());
    for (std::size_t i = 0; i < expected.values.size(); i++) {
        CHECK(proto.values[i] == doctest::Approx(expected.values[i]).epsilon(1e-12));
    }
}

TEST_CASE("methodology prototype is the normalized mean of keywords and examples") {
    const auto& profile = taxonomy_with_prototypes().profile(CreditCategory::methodology);
    REQUIRE(profile.prototype.has_value());
    CHECK(std::abs(l2_norm(*profile.prototype) - 1.0) < 1e-9);

    // independent recomputation
    std::set<std::string> phrases(profile.examples.begin(), profile.examples.end());
    phrases.insert(profile.keywords.begin(), profile.keywords.end());
    EmbeddingVector sum;
    sum.values.assign(kLexicalDim, 0.0);
    for (const auto& ph : phrases) {
        auto v = lexical().embed(ph);
        for (std::size_t i = 0; i < v.values.size(); i++) sum.values[i] += v.values[i];
    }
    for (double& x : sum.values) x /= static_cast<double>(phrases.size());
    EmbeddingVector expected = normalize(std::move(sum));
    double cs = cosine(expected, *profile.prototype);
    CHECK(cs == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("disjoint vocabularies give orthogonal prototypes") {
    Taxonomy tax;
    tax.profiles.resize(kCategoryCount);
    for (CreditCategory c : all_categories()) {
        auto& p = tax.profile(c);
        p.category = c;
        p.keywords = {"qqqq"};
        p.examples = {"qqqq", "qqqq", "qqqq", "qqqq", "qqqq"};
    }
    tax.profile(CreditCategory::methodology).keywords = {"mmmm"};
    tax.profile(CreditCategory::methodology).examples = {"mmmm", "mmmm", "mmmm", "mmmm", "mmmm"};

    Taxonomy built = build_prototypes(tax, lexical());
    double cs = cosine(*built.profile(CreditCategory::methodology).prototype,
                       *built.profile(CreditCategory::software).prototype);
    CHECK(std::abs(cs) < 1e-12);
}

TEST_CASE("R1: draft assigns writing – original draft") {
    auto hits = apply_rules(clause_of("wrote the initial draft"));
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].first == CreditCategory::writing_original_draft);
    CHECK(hits[0].second == "draft");
}

TEST_CASE("R1 with independent review evidence also emits review editing") {
    auto hits = apply_rules(clause_of("drafted and revised the manuscript"));
    auto cats = categories_of(hits);
    CHECK(cats == std::set<CreditCategory>{CreditCategory::writing_original_draft,
                                           CreditCategory::writing_review_editing});
    for (const auto& [cat, ev] : hits) {
        if (cat == CreditCategory::writing_review_editing) CHECK(ev == "revised");
    }
}

TEST_CASE("rules stay silent without rule vocabulary") {
    CHECK(apply_rules(clause_of("performed the experiments")).empty());
}

TEST_CASE("keyword matching uses boundary-anchored prefix stems") {
    const auto& tax = loaded_taxonomy();

    auto hits = keyword_match(clause_of("performed the data analysis"), tax);
    auto cats = categories_of(hits);
    CHECK(cats == std::set<CreditCategory>{CreditCategory::formal_analysis});

    hits = keyword_match(clause_of("conceptualized the study"), tax);
    cats = categories_of(hits);
    CHECK(cats == std::set<CreditCategory>{CreditCategory::conceptualization});
    CHECK(hits[0].second == "concept");

    hits = keyword_match(clause_of("designed and performed the experiments"), tax);
    cats = categories_of(hits);
    CHECK(cats == std::set<CreditCategory>{CreditCategory::investigation});
    CHECK(hits[0].second == "experiment");
}

TEST_CASE("keyword matching does not fire mid-word") {
    const auto& tax = loaded_taxonomy();
    // "reanalysis" must not match "analysis" (no boundary), but
    // "re-analysis" has a hyphen boundary.
    CHECK(keyword_match(clause_of("performed the reanalysis"), tax).empty());
    auto hits = keyword_match(clause_of("performed the re-analysis"), tax);
    CHECK(categories_of(hits) == std::set<CreditCategory>{CreditCategory::formal_analysis});
}

TEST_CASE("R1 suppression removes generic writing keywords but keeps independents") {
    const auto& tax = loaded_taxonomy();
    // "manuscript" alone would be a review-editing hit; with "draft" in the
    // clause it is suppressed.
    auto hits = keyword_match(clause_of("drafted the manuscript"), tax);
    auto cats = categories_of(hits);
    CHECK(cats == std::set<CreditCategory>{CreditCategory::writing_original_draft});

    // "review" survives R1.
    hits = keyword_match(clause_of("drafted the manuscript and led the review"), tax);
    cats = categories_of(hits);
    CHECK(cats.count(CreditCategory::writing_review_editing) == 1);
}

TEST_CASE("semantic argmax picks the matching category") {
    const auto& tax = taxonomy_with_prototypes();
    // A clause equal to a software example phrase lands on software.
    Clause c = clause_of("wrote the software");
    // exclude the trivially-correct keyword route by going straight to the
    // semantic layer
    auto result = semantic_assign(c, tax, lexical());
    REQUIRE(result.has_value());
    CHECK(result->first == CreditCategory::software);
    CHECK(result->second > 0.5);
}

TEST_CASE("semantic tie breaks to the lower ordinal") {
    Taxonomy tax;
    tax.profiles.resize(kCategoryCount);
    for (CreditCategory c : all_categories()) {
        auto& p = tax.profile(c);
        p.category = c;
        p.keywords = {"zzzz"};
        p.examples = {"zzzz", "zzzz", "zzzz", "zzzz", "zzzz"};
    }
    // two categories share an identical vocabulary; every other category is
    // orthogonal to the probe
    tax.profile(CreditCategory::validation).keywords = {"probe text"};
    tax.profile(CreditCategory::validation).examples = {"probe text", "probe text", "probe text",
                                                        "probe text", "probe text"};
    tax.profile(CreditCategory::resources) = tax.profile(CreditCategory::validation);
    tax.profile(CreditCategory::resources).category = CreditCategory::resources;

    Taxonomy built = build_prototypes(tax, lexical());
    auto result = semantic_assign(clause_of("probe text"), built, lexical());
    REQUIRE(result.has_value());
    // validation (ordinal 9) precedes resources (ordinal 11)
    CHECK(result->first == CreditCategory::validation);
}

TEST_CASE("pinned semantic fixture: keyword-free analysis clause") {
    const auto& tax = taxonomy_with_prototypes();
    Clause c = clause_of("compiled numerical summaries of measurements");
    REQUIRE(keyword_match(c, loaded_taxonomy()).empty());
    REQUIRE(apply_rules(c).empty());
    auto result = semantic_assign(c, tax, lexical());
    REQUIRE(result.has_value());
    CHECK(result->first == CreditCategory::formal_analysis);
}

TEST_CASE("semantic layer reports unavailability instead of guessing") {
    testutil::TempDir dir;
    auto p = dir.file("vecs.json");
    // Provider that knows only the taxonomy phrases, not the clause.
    nlohmann::json obj = nlohmann::json::object();
    // 2-dim dummy vectors for every phrase the prototypes need
    const auto& tax = loaded_taxonomy();
    for (const auto& profile : tax.profiles) {
        for (const auto& kw : profile.keywords) obj[kw] = {1.0, 0.0};
        for (const auto& ex : profile.examples) obj[ex] = {1.0, 0.0};
    }
    testutil::write_file(p, obj.dump());
    auto provider = load_vectors(p);
    Taxonomy built = build_prototypes(tax, *provider);

    auto result = semantic_assign(clause_of("some unknown clause"), built, *provider);
    CHECK_FALSE(result.has_value());
}

TEST_CASE("classify_article reproduces the three-author example") {
    std::vector<FullName> byline = {make_full_name("Alan Bell"), make_full_name("Clara Dorn"),
                                    make_full_name("Ed Fox")};
    ArticleRecord article;
    article.id = "intro";
    article.byline = byline;
    article.contribution_text =
        "A.B. performed the data analysis, C.D. conceptualized the study, and E.F. wrote the initial draft.";

    auto resolutions = resolve_mentions(article.contribution_text, byline);
    auto result = classify_article(article, resolutions, taxonomy_with_prototypes(), lexical());

    REQUIRE(result.assignments.size() == 3);
    CHECK(result.assignments[0].author_index == 1);
    CHECK(result.assignments[0].category == CreditCategory::formal_analysis);
    CHECK(result.assignments[0].layer == Layer::keyword);
    CHECK(result.assignments[1].author_index == 2);
    CHECK(result.assignments[1].category == CreditCategory::conceptualization);
    CHECK(result.assignments[2].author_index == 3);
    CHECK(result.assignments[2].category == CreditCategory::writing_original_draft);
    CHECK(result.assignments[2].layer == Layer::rule);
    CHECK(result.diagnostics.unattributed_clauses == 0);
}

TEST_CASE("collective writing clause assigns review editing to both authors") {
    std::vector<FullName> byline = {make_full_name("Mira Fuchs"), make_full_name("Ilan Arad")};
    ArticleRecord article;
    article.id = "both";
    article.byline = byline;
    article.contribution_text =
        "Both authors designed and conducted the experiments, and contributed to writing and editing the manuscript.";

    auto resolutions = resolve_mentions(article.contribution_text, byline);
    auto result = classify_article(article, resolutions, taxonomy_with_prototypes(), lexical());

    std::set<std::pair<int, int>> pairs;
    for (const auto& a : result.assignments) {
        pairs.insert({a.author_index, static_cast<int>(a.category)});
        CHECK(a.layer == Layer::collective);
    }
    CHECK(pairs.count({1, static_cast<int>(CreditCategory::writing_review_editing)}));
    CHECK(pairs.count({2, static_cast<int>(CreditCategory::writing_review_editing)}));
    CHECK(pairs.count({1, static_cast<int>(CreditCategory::investigation)}));
    CHECK(pairs.count({2, static_cast<int>(CreditCategory::investigation)}));
}

TEST_CASE("articles without keyword vocabulary classify entirely semantically") {
    std::vector<FullName> byline = {make_full_name("Alan Bell")};
    ArticleRecord article;
    article.id = "sem";
    article.byline = byline;
    article.contribution_text = "A.B. compiled numerical summaries of measurements.";

    auto resolutions = resolve_mentions(article.contribution_text, byline);
    auto result = classify_article(article, resolutions, taxonomy_with_prototypes(), lexical());
    REQUIRE_FALSE(result.assignments.empty());
    for (const auto& a : result.assignments) CHECK(a.layer == Layer::semantic);
}

TEST_CASE("layer exclusivity and keyword soundness over random clauses") {
    const auto& tax = taxonomy_with_prototypes();
    testutil::XorShift rng(99);
    std::vector<std::string> vocabulary = {
        "analysis",  "wrote",    "draft",     "experiments", "software", "reviewed", "data",
        "the",       "study",    "designed",  "manuscript",  "numbers",  "results",  "collected",
        "figures",   "project",  "carefully", "supervision", "code",     "pipeline", "summaries",
        "performed", "critical", "measured",  "samples",     "edited",   "verified", "compiled",
    };
    int checked = 0;
    for (int trial = 0; trial < 1200; trial++) {
        std::string text;
        int words = 2 + static_cast<int>(rng.below(7));
        for (int w = 0; w < words; w++) {
            if (w) text += " ";
            text += vocabulary[rng.below(vocabulary.size())];
        }
        Clause c = clause_of(text);
        auto rules = apply_rules(c);
        auto keywords = keyword_match(c, tax);
        auto sem = semantic_assign(c, tax, lexical());

        // layer exclusivity: the semantic layer may only decide when rules
        // and keywords were both empty
        if (!rules.empty() || !keywords.empty()) {
            // composition in classify_article never consults the semantic
            // answer in this case; nothing to check beyond keyword soundness
        } else {
            REQUIRE(sem.has_value());
        }

        for (const auto& [cat, kw] : keywords) {
            // cited keyword occurs at a word boundary
            std::size_t pos = c.text.find(kw);
            bool sound = false;
            while (pos != std::string::npos) {
                bool boundary = pos == 0 || !std::isalnum(static_cast<unsigned char>(c.text[pos - 1]));
                if (boundary) {
                    sound = true;
                    break;
                }
                pos = c.text.find(kw, pos + 1);
            }
            INFO("clause: " << c.text << " keyword: " << kw);
            CHECK(sound);
        }
        checked++;
    }
    CHECK(checked >= 1000);
}

TEST_CASE("classification is deterministic") {
    std::vector<FullName> byline = {make_full_name("Alan Bell"), make_full_name("Clara Dorn")};
    ArticleRecord article;
    article.id = "det";
    article.byline = byline;
    article.contribution_text =
        "A.B. compiled numerical summaries of measurements; C.D. reviewed the manuscript.";
    auto rs = resolve_mentions(article.contribution_text, byline);
    auto r1 = classify_article(article, rs, taxonomy_with_prototypes(), lexical());
    auto r2 = classify_article(article, rs, taxonomy_with_prototypes(), lexical());
    REQUIRE(r1.assignments.size() == r2.assignments.size());
    for (std::size_t i = 0; i < r1.assignments.size(); i++) {
        CHECK(r1.assignments[i].category == r2.assignments[i].category);
        CHECK(r1.assignments[i].evidence == r2.assignments[i].evidence);
        CHECK(r1.assignments[i].layer == r2.assignments[i].layer);
    }
}
