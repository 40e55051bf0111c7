#include "contribmine/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "contribmine/errors.hpp"

namespace contribmine {

namespace {

int capped(int value) {
    return value > kPositionCap ? kPositionOverflowKey : value;
}

// Per-article task counts by position, in first-appearance order.
struct ArticleCounts {
    std::string article_id;
    std::map<int, long> tasks_by_pos; // raw positions
    int team_size = 0;                // max assigned position
    long total = 0;
};

std::vector<ArticleCounts> per_article_counts(const std::vector<TaskAssignment>& assignments) {
    std::vector<ArticleCounts> out;
    std::map<std::string, std::size_t> index;
    for (const auto& a : assignments) {
        auto it = index.find(a.article_id);
        if (it == index.end()) {
            index.emplace(a.article_id, out.size());
            out.push_back({a.article_id, {}, 0, 0});
            it = index.find(a.article_id);
        }
        ArticleCounts& c = out[it->second];
        c.tasks_by_pos[a.author_index]++;
        c.team_size = std::max(c.team_size, a.author_index);
        c.total++;
    }
    return out;
}

} // namespace

std::map<CreditCategory, double> category_distribution(const std::vector<TaskAssignment>& assignments) {
    if (assignments.empty()) throw validation_error("category_distribution: empty input");
    std::map<CreditCategory, double> out;
    for (CreditCategory c : all_categories()) out[c] = 0.0;
    for (const auto& a : assignments) out[a.category] += 1.0;
    for (auto& [c, v] : out) v /= static_cast<double>(assignments.size());
    return out;
}

std::map<int, double> tasks_by_position(const std::vector<TaskAssignment>& assignments) {
    auto articles = per_article_counts(assignments);
    std::map<int, long> sums;
    std::map<int, long> article_counts;
    for (const auto& art : articles) {
        for (int p = 1; p <= art.team_size; p++) {
            int key = capped(p);
            auto it = art.tasks_by_pos.find(p);
            sums[key] += it == art.tasks_by_pos.end() ? 0 : it->second;
            article_counts[key]++;
        }
    }
    std::map<int, double> out;
    for (const auto& [key, sum] : sums) {
        out[key] = static_cast<double>(sum) / static_cast<double>(article_counts[key]);
    }
    return out;
}

std::vector<PositionShare> share_by_position_teamsize(const std::vector<TaskAssignment>& assignments) {
    auto articles = per_article_counts(assignments);
    // (position, team_size) -> (share sum, n)
    std::map<std::pair<int, int>, std::pair<double, long>> acc;
    for (const auto& art : articles) {
        if (art.total == 0) continue;
        int ts = capped(art.team_size);
        for (int p = 1; p <= art.team_size; p++) {
            auto it = art.tasks_by_pos.find(p);
            long n = it == art.tasks_by_pos.end() ? 0 : it->second;
            double share = static_cast<double>(n) / static_cast<double>(art.total);
            auto& cell = acc[{capped(p), ts}];
            cell.first += share;
            cell.second++;
        }
    }
    std::vector<PositionShare> out;
    out.reserve(acc.size());
    for (const auto& [key, cell] : acc) {
        out.push_back({key.first, key.second, cell.first / static_cast<double>(cell.second), cell.second});
    }
    return out;
}

std::map<CreditCategory, std::map<int, double>> task_position_relation(
    const std::vector<TaskAssignment>& assignments) {
    std::map<int, long> column_totals;
    std::map<CreditCategory, std::map<int, long>> counts;
    for (const auto& a : assignments) {
        int p = capped(a.author_index);
        column_totals[p]++;
        counts[a.category][p]++;
    }
    std::map<CreditCategory, std::map<int, double>> out;
    for (CreditCategory c : all_categories()) {
        for (const auto& [p, total] : column_totals) {
            long n = 0;
            auto cit = counts.find(c);
            if (cit != counts.end()) {
                auto pit = cit->second.find(p);
                if (pit != cit->second.end()) n = pit->second;
            }
            out[c][p] = static_cast<double>(n) / static_cast<double>(total);
        }
    }
    return out;
}

DisparityResult disparity_curve(const std::vector<TaskAssignment>& assignments) {
    auto articles = per_article_counts(assignments);
    DisparityResult result;
    std::map<int, std::pair<double, long>> acc; // team_size -> (ratio sum, n)
    for (const auto& art : articles) {
        if (art.team_size < 2) continue;
        long task_bearing = static_cast<long>(art.tasks_by_pos.size());
        long zero_authors = art.team_size - task_bearing;
        if (zero_authors > 0) {
            result.undefined_ratio_articles++;
            result.zero_task_authors += zero_authors;
        }
        if (task_bearing == 0) continue;
        long max_tasks = 0;
        long min_tasks = 0;
        for (const auto& [p, n] : art.tasks_by_pos) {
            max_tasks = std::max(max_tasks, n);
            min_tasks = min_tasks == 0 ? n : std::min(min_tasks, n);
        }
        double ratio = static_cast<double>(max_tasks) / static_cast<double>(min_tasks);
        auto& cell = acc[capped(art.team_size)];
        cell.first += ratio;
        cell.second++;
    }
    for (const auto& [ts, cell] : acc) {
        result.points.push_back({ts, cell.first / static_cast<double>(cell.second), cell.second});
    }
    return result;
}

RegressionFit fit_linear(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw validation_error("fit_linear: need at least 2 points");
    double mean_x = 0.0, mean_y = 0.0;
    for (const auto& [x, y] : points) {
        mean_x += x;
        mean_y += y;
    }
    mean_x /= static_cast<double>(points.size());
    mean_y /= static_cast<double>(points.size());

    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    if (sxx == 0.0) throw validation_error("fit_linear: degenerate-design (all x equal)");

    RegressionFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;

    double sse = 0.0, sst = 0.0;
    for (const auto& [x, y] : points) {
        double pred = fit.intercept + fit.slope * x;
        sse += (y - pred) * (y - pred);
        sst += (y - mean_y) * (y - mean_y);
    }
    fit.r2 = sst == 0.0 ? 1.0 : 1.0 - sse / sst;
    if (fit.r2 < 0.0) fit.r2 = 0.0;
    if (fit.r2 > 1.0) fit.r2 = 1.0;
    return fit;
}

} // namespace contribmine
