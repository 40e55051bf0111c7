#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "contribmine/model.hpp"

namespace contribmine {

// One article's set of reported roles, as a bitmask over the 14 categories
// (bit i = category with enum value i).
struct Transaction {
    std::string article_id;
    std::uint16_t items = 0;
};

struct FrequentItemset {
    std::uint16_t items = 0;
    long count = 0;
    long total = 0;

    double support() const { return static_cast<double>(count) / static_cast<double>(total); }
    int size() const;
    std::vector<CreditCategory> categories() const;
};

// Directed presentation of a frequent 2-itemset; support is the symmetric
// pair support, not rule confidence.
struct AssociationPair {
    CreditCategory antecedent = CreditCategory::writing_review_editing;
    CreditCategory consequent = CreditCategory::writing_review_editing;
    long count = 0;
    long total = 0;

    double support() const { return static_cast<double>(count) / static_cast<double>(total); }
};

// One transaction per distinct article, items = union of its assigned
// categories. Order follows first appearance in the assignment list.
std::vector<Transaction> build_transactions(const std::vector<TaskAssignment>& assignments);

// Level-wise Apriori with integer counting. Output sorted by (size,
// descending support, items in category order).
std::vector<FrequentItemset> mine(const std::vector<Transaction>& transactions,
                                  double min_support = 0.2);

// Both directed pairs for every frequent 2-itemset, sorted by descending
// support then category order.
std::vector<AssociationPair> top_pairs(const std::vector<FrequentItemset>& itemsets);

} // namespace contribmine
