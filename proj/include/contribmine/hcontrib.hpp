#pragma once
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "contribmine/embedder.hpp"
#include "contribmine/model.hpp"
#include "contribmine/statement_parser.hpp"
#include "contribmine/taxonomy.hpp"

namespace contribmine {

// One category decision on a clause, with the layer that produced it.
struct CategoryHit {
    CreditCategory category = CreditCategory::writing_review_editing;
    Layer layer = Layer::keyword;
    std::string evidence;
};

struct ClassifiedClause {
    Clause clause;
    std::vector<CategoryHit> hits; // empty only when unclassified/unattributed
    bool unclassified = false;     // semantic layer unavailable or below --min-sim
};

// Fills each category's prototype with the L2-normalized mean embedding of
// its example phrases and keywords. Provider failures are fatal and list the
// offending phrases.
Taxonomy build_prototypes(Taxonomy taxonomy, const EmbeddingProvider& provider);

// Deterministic rules. R1: a "draft" token assigns writing – original draft
// and suppresses review-editing hits that rest only on generic writing
// keywords; review-editing is still emitted on independent evidence
// (review/edit/revision/proofreading stems).
std::vector<std::pair<CreditCategory, std::string>> apply_rules(const Clause& clause);

// All categories whose keywords occur in the normalized clause, matched as
// contiguous substrings starting at a word boundary (prefix-stem semantics:
// "analyze" matches "analyzed"). Hits suppressed by R1 are removed.
std::vector<std::pair<CreditCategory, std::string>> keyword_match(const Clause& clause,
                                                                  const Taxonomy& taxonomy);

// Cosine argmax over category prototypes; ties break to the lowest category
// ordinal. Returns nullopt when the provider cannot embed the clause.
std::optional<std::pair<CreditCategory, double>> semantic_assign(const Clause& clause,
                                                                 const Taxonomy& taxonomy,
                                                                 const EmbeddingProvider& provider);

struct ClassifyOptions {
    std::optional<double> min_similarity; // off by default: pure argmax
};

struct ArticleDiagnostics {
    std::size_t unattributed_clauses = 0;
    std::size_t unclassified_clauses = 0;
    std::vector<std::string> notes;
};

struct ClassifiedArticle {
    std::vector<TaskAssignment> assignments; // sorted by (author_index, category)
    std::vector<ClassifiedClause> clauses;
    ArticleDiagnostics diagnostics;
};

// The full per-article pipeline: segment, then per clause rules + keywords,
// falling back to the semantic argmax when both are empty; clause author
// sets expand to per-author assignments, deduplicated per (author, category)
// keeping the highest-precedence layer (rule > keyword > semantic;
// collective-attributed assignments rank below individually-attributed ones).
ClassifiedArticle classify_article(const ArticleRecord& article,
                                   const std::vector<MentionResolution>& resolutions,
                                   const Taxonomy& taxonomy, const EmbeddingProvider& provider,
                                   const ClassifyOptions& options = {});

} // namespace contribmine
