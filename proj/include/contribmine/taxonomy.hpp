#pragma once
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "contribmine/category.hpp"
#include "contribmine/embedder.hpp"

namespace contribmine {

// One CRediT role with its keyword list, few-shot example phrases, and the
// prototype vector the semantic layer compares against (filled by
// build_prototypes, absent straight after load).
struct CategoryProfile {
    CreditCategory category = CreditCategory::writing_review_editing;
    std::vector<std::string> keywords; // lowercase, matched as boundary-anchored substrings
    std::vector<std::string> examples; // 5..15 prototypical statements
    std::optional<EmbeddingVector> prototype;
};

struct Taxonomy {
    std::vector<CategoryProfile> profiles; // canonical category order, always 14 entries

    const CategoryProfile& profile(CreditCategory c) const {
        return profiles[static_cast<std::size_t>(c)];
    }
    CategoryProfile& profile(CreditCategory c) { return profiles[static_cast<std::size_t>(c)]; }
};

struct LoadedTaxonomy {
    Taxonomy taxonomy;
    std::vector<std::string> warnings; // e.g. keywords shared across categories
};

// Loads `{ "<category>": { "keywords": [...], "examples": [...] } }`. All 14
// categories must be present; keywords must be unique within a category;
// example counts must be in [5, 15]. Cross-category keyword overlap is legal
// and reported as a warning.
LoadedTaxonomy load_taxonomy(const std::filesystem::path& path);

} // namespace contribmine
