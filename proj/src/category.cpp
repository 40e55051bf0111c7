#include "contribmine/category.hpp"

namespace contribmine {

namespace {

// Canonical names use U+2013 (en dash) with a space on each side.
constexpr std::string_view kNames[kCategoryCount] = {
    "writing – review editing",
    "methodology",
    "investigation",
    "conceptualization",
    "formal analysis",
    "data curation",
    "writing – original draft",
    "supervision",
    "validation",
    "project administration",
    "resources",
    "funding acquisition",
    "visualization",
    "software",
};

} // namespace

const std::array<CreditCategory, kCategoryCount>& all_categories() {
    static const std::array<CreditCategory, kCategoryCount> cats = [] {
        std::array<CreditCategory, kCategoryCount> a{};
        for (std::size_t i = 0; i < kCategoryCount; i++) a[i] = static_cast<CreditCategory>(i);
        return a;
    }();
    return cats;
}

std::string_view category_name(CreditCategory c) {
    return kNames[static_cast<int>(c)];
}

int category_ordinal(CreditCategory c) {
    return static_cast<int>(c) + 1;
}

std::optional<CreditCategory> category_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kCategoryCount; i++) {
        if (kNames[i] == name) return static_cast<CreditCategory>(i);
    }
    return std::nullopt;
}

} // namespace contribmine
