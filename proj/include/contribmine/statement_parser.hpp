#pragma once
#include <string>
#include <vector>

#include "contribmine/name_resolver.hpp"

namespace contribmine {

enum class ClauseStyle { author_first, role_first, collective };

// One attributable unit of a contribution paragraph: a normalized predicate
// or role phrase plus the byline positions it describes. Clauses whose
// subject could not be resolved are flagged unattributed instead of guessed.
struct Clause {
    std::string article_id;
    std::vector<int> authors; // sorted, unique, 1-based
    std::string text;         // lowercased, punctuation-trimmed, whitespace-collapsed
    ClauseStyle style = ClauseStyle::author_first;
    bool unattributed = false;
    bool collective_authors = false; // authors came from a collective phrase
};

std::string_view clause_style_name(ClauseStyle s);

// Lowercases, strips punctuation except intra-word hyphens, collapses
// internal whitespace and trims.
std::string normalize_clause(const std::string& raw);

// Splits a contribution paragraph into clauses. Sentences break at '.' and
// ';' outside resolved mention spans (a mention-final dot also terminates
// when the next token is capitalized). Recognizes author-first and
// role-first grammars; coordinated predicates sharing a subject become one
// clause per predicate; a comma starts a new clause only when followed by a
// resolved mention and a verb.
std::vector<Clause> segment(const std::string& text, const std::vector<MentionResolution>& resolutions);

} // namespace contribmine
