#include "contribmine/miner.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "contribmine/errors.hpp"

namespace contribmine {

int FrequentItemset::size() const {
    return std::popcount(items);
}

std::vector<CreditCategory> FrequentItemset::categories() const {
    std::vector<CreditCategory> out;
    for (std::size_t i = 0; i < kCategoryCount; i++) {
        if (items & (1u << i)) out.push_back(static_cast<CreditCategory>(i));
    }
    return out;
}

std::vector<Transaction> build_transactions(const std::vector<TaskAssignment>& assignments) {
    std::vector<Transaction> out;
    std::map<std::string, std::size_t> index;
    for (const auto& a : assignments) {
        auto it = index.find(a.article_id);
        if (it == index.end()) {
            index.emplace(a.article_id, out.size());
            Transaction t;
            t.article_id = a.article_id;
            out.push_back(std::move(t));
            it = index.find(a.article_id);
        }
        out[it->second].items |= static_cast<std::uint16_t>(1u << static_cast<int>(a.category));
    }
    return out;
}

namespace {

bool itemset_order(const FrequentItemset& a, const FrequentItemset& b) {
    int sa = a.size(), sb = b.size();
    if (sa != sb) return sa < sb;
    double su_a = a.support(), su_b = b.support();
    if (su_a != su_b) return su_a > su_b;
    return a.categories() < b.categories(); // lexicographic over category order
}

} // namespace

std::vector<FrequentItemset> mine(const std::vector<Transaction>& transactions, double min_support) {
    if (transactions.empty()) throw validation_error("mine: empty-input");
    if (!(min_support > 0.0) || min_support > 1.0) {
        throw validation_error("mine: min_support must be in (0, 1]");
    }
    const long total = static_cast<long>(transactions.size());
    auto frequent = [&](long count) {
        return static_cast<double>(count) / static_cast<double>(total) >= min_support;
    };

    std::vector<FrequentItemset> out;

    // Level 1.
    std::vector<std::uint16_t> level;
    for (std::size_t i = 0; i < kCategoryCount; i++) {
        std::uint16_t mask = static_cast<std::uint16_t>(1u << i);
        long count = 0;
        for (const auto& t : transactions) {
            if ((t.items & mask) == mask) count++;
        }
        if (count > 0 && frequent(count)) {
            out.push_back({mask, count, total});
            level.push_back(mask);
        }
    }

    // Level k from level k-1: join candidates, prune by downward closure,
    // count in one pass.
    std::vector<std::uint16_t> frequent_masks = level;
    while (!level.empty()) {
        std::vector<std::uint16_t> candidates;
        for (std::size_t i = 0; i < level.size(); i++) {
            for (std::size_t j = i + 1; j < level.size(); j++) {
                std::uint16_t joined = static_cast<std::uint16_t>(level[i] | level[j]);
                if (std::popcount(joined) != std::popcount(level[i]) + 1) continue;
                if (std::find(candidates.begin(), candidates.end(), joined) != candidates.end()) continue;
                // downward closure: every (k-1)-subset must be frequent
                bool closed = true;
                for (std::size_t b = 0; b < kCategoryCount && closed; b++) {
                    std::uint16_t bit = static_cast<std::uint16_t>(1u << b);
                    if (!(joined & bit)) continue;
                    std::uint16_t subset = static_cast<std::uint16_t>(joined & ~bit);
                    if (std::find(level.begin(), level.end(), subset) == level.end()) closed = false;
                }
                if (closed) candidates.push_back(joined);
            }
        }
        std::vector<std::uint16_t> next;
        for (std::uint16_t cand : candidates) {
            long count = 0;
            for (const auto& t : transactions) {
                if ((t.items & cand) == cand) count++;
            }
            if (count > 0 && frequent(count)) {
                out.push_back({cand, count, total});
                next.push_back(cand);
            }
        }
        level = std::move(next);
    }

    std::sort(out.begin(), out.end(), itemset_order);
    return out;
}

std::vector<AssociationPair> top_pairs(const std::vector<FrequentItemset>& itemsets) {
    std::vector<AssociationPair> out;
    for (const auto& is : itemsets) {
        if (is.size() != 2) continue;
        auto cats = is.categories();
        out.push_back({cats[0], cats[1], is.count, is.total});
        out.push_back({cats[1], cats[0], is.count, is.total});
    }
    std::sort(out.begin(), out.end(), [](const AssociationPair& a, const AssociationPair& b) {
        double sa = a.support(), sb = b.support();
        if (sa != sb) return sa > sb;
        if (a.antecedent != b.antecedent) return static_cast<int>(a.antecedent) < static_cast<int>(b.antecedent);
        return static_cast<int>(a.consequent) < static_cast<int>(b.consequent);
    });
    return out;
}

} // namespace contribmine
