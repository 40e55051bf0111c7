#include "contribmine/hcontrib.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "contribmine/errors.hpp"

namespace contribmine {

namespace {

bool boundary_at(const std::string& text, std::size_t pos) {
    if (pos == 0) return true;
    char prev = text[pos - 1];
    return !(std::isalnum(static_cast<unsigned char>(prev)) != 0);
}

// First boundary-anchored occurrence of `needle` in normalized text; npos if
// absent. Prefix-stem semantics: no boundary requirement at the end.
std::size_t find_keyword(const std::string& text, const std::string& needle) {
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        if (boundary_at(text, pos)) return pos;
        pos++;
    }
    return std::string::npos;
}

bool has_draft_token(const std::string& text) {
    return find_keyword(text, "draft") != std::string::npos;
}

// Review-editing evidence that survives R1: stems covering review/reviewed,
// edit/edited/editing, revision/revised, proofreading.
const std::vector<std::string>& independent_wre_stems() {
    static const std::vector<std::string> stems = {"review", "edit", "revis", "proofread"};
    return stems;
}

// Review-editing keywords that R1 treats as generic writing vocabulary.
bool generic_wre_keyword(const std::string& kw) {
    return kw != "review" && kw != "edit" && kw != "revision" && kw != "proofreading";
}

std::string matched_word_at(const std::string& text, std::size_t pos) {
    std::size_t end = pos;
    while (end < text.size() && text[end] != ' ') end++;
    return text.substr(pos, end - pos);
}

std::string format_score(double score) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", score);
    return buf;
}

} // namespace

Taxonomy build_prototypes(Taxonomy taxonomy, const EmbeddingProvider& provider) {
    for (auto& profile : taxonomy.profiles) {
        std::set<std::string> phrases(profile.examples.begin(), profile.examples.end());
        phrases.insert(profile.keywords.begin(), profile.keywords.end());

        EmbeddingVector sum;
        sum.values.assign(provider.dim(), 0.0);
        std::vector<std::string> failures;
        for (const auto& phrase : phrases) {
            try {
                EmbeddingVector v = provider.embed(phrase);
                for (std::size_t i = 0; i < sum.values.size(); i++) sum.values[i] += v.values[i];
            } catch (const embed_error&) {
                failures.push_back(phrase);
            }
        }
        if (!failures.empty()) {
            std::string msg = "cannot embed phrases for category '" +
                              std::string(category_name(profile.category)) + "':";
            for (const auto& f : failures) msg += " '" + f + "'";
            throw config_error(msg);
        }
        for (double& x : sum.values) x /= static_cast<double>(phrases.size());
        profile.prototype = normalize(std::move(sum));
    }
    return taxonomy;
}

std::vector<std::pair<CreditCategory, std::string>> apply_rules(const Clause& clause) {
    std::vector<std::pair<CreditCategory, std::string>> out;
    const std::string& text = clause.text;
    if (!has_draft_token(text)) return out;

    std::size_t pos = find_keyword(text, "draft");
    out.emplace_back(CreditCategory::writing_original_draft, matched_word_at(text, pos));

    for (const auto& stem : independent_wre_stems()) {
        std::size_t at = find_keyword(text, stem);
        if (at != std::string::npos) {
            out.emplace_back(CreditCategory::writing_review_editing, matched_word_at(text, at));
            break;
        }
    }
    return out;
}

std::vector<std::pair<CreditCategory, std::string>> keyword_match(const Clause& clause,
                                                                  const Taxonomy& taxonomy) {
    std::vector<std::pair<CreditCategory, std::string>> out;
    const std::string& text = clause.text;
    const bool r1 = has_draft_token(text);
    for (const auto& profile : taxonomy.profiles) {
        for (const auto& kw : profile.keywords) {
            if (find_keyword(text, kw) == std::string::npos) continue;
            if (r1 && profile.category == CreditCategory::writing_review_editing && generic_wre_keyword(kw)) {
                continue; // suppressed by R1
            }
            out.emplace_back(profile.category, kw);
        }
    }
    return out;
}

std::optional<std::pair<CreditCategory, double>> semantic_assign(const Clause& clause,
                                                                 const Taxonomy& taxonomy,
                                                                 const EmbeddingProvider& provider) {
    EmbeddingVector v;
    try {
        v = provider.embed(clause.text);
    } catch (const embed_error&) {
        return std::nullopt;
    }
    CreditCategory best = CreditCategory::writing_review_editing;
    double best_score = -2.0;
    for (const auto& profile : taxonomy.profiles) {
        double score = cosine(v, *profile.prototype);
        if (score > best_score) {
            best_score = score;
            best = profile.category;
        }
    }
    return std::make_pair(best, best_score);
}

ClassifiedArticle classify_article(const ArticleRecord& article,
                                   const std::vector<MentionResolution>& resolutions,
                                   const Taxonomy& taxonomy, const EmbeddingProvider& provider,
                                   const ClassifyOptions& options) {
    ClassifiedArticle out;
    std::vector<Clause> clauses = segment(article.contribution_text, resolutions);

    for (Clause& clause : clauses) {
        clause.article_id = article.id;
        ClassifiedClause cc;
        cc.clause = clause;

        if (clause.unattributed || clause.authors.empty()) {
            out.diagnostics.unattributed_clauses++;
            out.diagnostics.notes.push_back("unattributed clause: " + clause.text);
            cc.clause.unattributed = true;
            out.clauses.push_back(std::move(cc));
            continue;
        }

        std::set<CreditCategory> covered;
        for (const auto& [cat, evidence] : apply_rules(clause)) {
            if (covered.insert(cat).second) cc.hits.push_back({cat, Layer::rule, evidence});
        }
        for (const auto& [cat, kw] : keyword_match(clause, taxonomy)) {
            if (covered.insert(cat).second) cc.hits.push_back({cat, Layer::keyword, kw});
        }

        if (cc.hits.empty()) {
            auto sem = semantic_assign(clause, taxonomy, provider);
            if (!sem || (options.min_similarity && sem->second < *options.min_similarity)) {
                cc.unclassified = true;
                out.diagnostics.unclassified_clauses++;
                out.diagnostics.notes.push_back("unclassified clause: " + clause.text);
            } else {
                cc.hits.push_back({sem->first, Layer::semantic, format_score(sem->second)});
            }
        }

        out.clauses.push_back(std::move(cc));
    }

    // Expand clause author sets into per-author assignments; dedup per
    // (author, category) keeping the strongest layer.
    std::map<std::pair<int, int>, TaskAssignment> best;
    for (const auto& cc : out.clauses) {
        if (cc.clause.unattributed || cc.hits.empty()) continue;
        for (int author : cc.clause.authors) {
            for (const auto& hit : cc.hits) {
                TaskAssignment a;
                a.article_id = article.id;
                a.author_index = author;
                a.author_name = article.byline[static_cast<std::size_t>(author - 1)].raw;
                a.category = hit.category;
                a.layer = cc.clause.collective_authors ? Layer::collective : hit.layer;
                a.evidence = hit.evidence;
                auto key = std::make_pair(author, static_cast<int>(hit.category));
                auto it = best.find(key);
                if (it == best.end() || static_cast<int>(a.layer) < static_cast<int>(it->second.layer)) {
                    best[key] = std::move(a);
                }
            }
        }
    }
    out.assignments.reserve(best.size());
    for (auto& [key, a] : best) out.assignments.push_back(std::move(a));
    return out;
}

} // namespace contribmine
