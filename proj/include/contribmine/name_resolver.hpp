#pragma once
#include <cstddef>
#include <string>
#include <vector>

#include "contribmine/model.hpp"

namespace contribmine {

enum class VariantOrdering { given_first, surname_first };
enum class VariantMiddle { included, omitted };
enum class VariantPunct { dots, none, spaced, hyphenated };
enum class VariantCasing { upper, lower, mixed };

// One surface form an author may be referred to by ("J.D.S.", "Smith J.D.",
// "jd smith", ...) together with the variant that produced it.
struct AcronymCandidate {
    std::string surface;
    VariantOrdering ordering = VariantOrdering::given_first;
    VariantMiddle middle = VariantMiddle::included;
    VariantPunct punct = VariantPunct::none;
    VariantCasing casing = VariantCasing::mixed;
};

// All plausible initial/acronym variants of a name: all-initials forms with
// dots, spaces, hyphens or nothing between them; with and without middle
// initials; abbreviated given + full surname; surname-first orderings;
// full-given + abbreviated-surname forms; lowercase variants; plus the full
// printed name. Deterministic and duplicate-free, sorted by surface.
std::vector<AcronymCandidate> generate_acronym_candidates(const FullName& name);

enum class ResolveMethod { exact, fallback, collective, unmatched };
enum class CollectiveMarker { none, all, both, remaining };

// One mention found in contribution text and what it resolved to. `indices`
// holds the 1-based byline positions: exactly one for a unique match, two or
// more for an ambiguity set, the expansion for a collective phrase, and
// nothing for an unmatched mention-like token.
struct MentionResolution {
    std::string article_id;
    std::size_t span_begin = 0;
    std::size_t span_end = 0;
    std::string mention;
    std::vector<int> indices;
    CollectiveMarker collective = CollectiveMarker::none;
    ResolveMethod method = ResolveMethod::unmatched;

    bool is_single() const {
        return indices.size() == 1 && collective == CollectiveMarker::none;
    }
};

std::string_view resolve_method_name(ResolveMethod m);
std::string_view collective_marker_name(CollectiveMarker m);

// Scans text left to right, matching candidate surfaces at word boundaries
// with longest-candidate-first priority; full-name matches outrank initial
// matches at the same position. Collective phrases ("all authors", "both
// authors", "remaining authors") expand over the byline. Mention-like tokens
// matching no author are reported as unmatched, never guessed.
std::vector<MentionResolution> resolve_mentions(const std::string& text,
                                                const std::vector<FullName>& byline);

} // namespace contribmine
