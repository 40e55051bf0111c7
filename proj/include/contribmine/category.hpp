#pragma once
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace contribmine {

// The 14 CRediT contributor roles, in the fixed order the rest of the pipeline
// relies on. The enum value is the 0-based index; ordinal() is the 1-based rank
// used in reports.
enum class CreditCategory : int {
    writing_review_editing = 0,
    methodology,
    investigation,
    conceptualization,
    formal_analysis,
    data_curation,
    writing_original_draft,
    supervision,
    validation,
    project_administration,
    resources,
    funding_acquisition,
    visualization,
    software,
};

inline constexpr std::size_t kCategoryCount = 14;

const std::array<CreditCategory, kCategoryCount>& all_categories();

// Canonical display name, e.g. "writing – review editing" (en dash).
std::string_view category_name(CreditCategory c);

// 1-based rank in the canonical order.
int category_ordinal(CreditCategory c);

// Exact canonical-name lookup; nullopt for anything else.
std::optional<CreditCategory> category_from_name(std::string_view name);

} // namespace contribmine
