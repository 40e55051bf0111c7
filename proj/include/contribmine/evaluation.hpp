#pragma once
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "contribmine/model.hpp"
#include "contribmine/name_resolver.hpp"

namespace contribmine {

// Manual annotations for one article: gold (author, category) task labels
// and gold (mention, author) matches. Either list may be empty, in which
// case the article is excluded from that metric's denominators.
struct GoldRecord {
    std::string article_id;
    std::vector<std::pair<int, CreditCategory>> gold_tasks;
    std::vector<std::pair<std::string, int>> gold_matches;
};

struct PerArticleScore {
    std::string article_id;
    long n = 0;
    long correct = 0;
};

struct EvalReport {
    double global_accuracy = 0.0;  // sum(correct) / sum(n)
    double avg_per_article = 0.0;  // mean of per-article ratios
    std::vector<PerArticleScore> per_article;
    // Supplementary, not part of the paper-style accuracy pair: fraction of
    // predicted labels that are in gold (task metric only; 0 when unused).
    double supplementary_precision = 0.0;
};

// JSONL: {article_id, gold_tasks:[[idx, category]...], gold_matches:[[mention, idx]...]}
std::vector<GoldRecord> load_gold(const std::filesystem::path& path);

// A gold task counts as correct iff the predictions contain the identical
// (author_index, category) pair for that article. Articles missing from the
// predictions count all their gold tasks as incorrect. Extra predictions do
// not penalize accuracy (they show up in supplementary_precision).
EvalReport task_accuracy(const std::vector<GoldRecord>& gold,
                         const std::vector<TaskAssignment>& predicted);

// A gold match counts as correct iff the resolver produced a single-index
// resolution of that mention equal to the gold index; ambiguous and
// unmatched resolutions count as incorrect.
EvalReport author_match_accuracy(const std::vector<GoldRecord>& gold,
                                 const std::vector<MentionResolution>& resolutions);

} // namespace contribmine
