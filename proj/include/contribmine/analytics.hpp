#pragma once
#include <map>
#include <utility>
#include <vector>

#include "contribmine/model.hpp"

namespace contribmine {

// Positional reports cap team sizes and positions at 20; anything larger
// lands in a "20+" bucket keyed as 21.
inline constexpr int kPositionCap = 20;
inline constexpr int kPositionOverflowKey = 21;

struct PositionShare {
    int position = 0;  // 1-based; kPositionOverflowKey = "20+"
    int team_size = 0; // kPositionOverflowKey = "20+"
    double mean_share = 0.0;
    long n_articles = 0;
};

struct DisparityPoint {
    int team_size = 0;
    double mean_ratio = 0.0;
    long n_articles = 0;
};

struct DisparityResult {
    std::vector<DisparityPoint> points; // ascending team size
    long undefined_ratio_articles = 0;  // articles with a zero-task author
    long zero_task_authors = 0;
};

struct RegressionFit {
    double intercept = 0.0;
    double slope = 0.0;
    double r2 = 0.0;
};

// Team size and per-author task counts are derived from the assignment set
// itself: an article's team size is its highest assigned byline position,
// and positions below it with no assignment count as zero-task authors.

// Fraction of all task assignments per category; all 14 categories present,
// fractions sum to 1.
std::map<CreditCategory, double> category_distribution(const std::vector<TaskAssignment>& assignments);

// Mean task count per byline position, averaged over the articles whose team
// size reaches that position.
std::map<int, double> tasks_by_position(const std::vector<TaskAssignment>& assignments);

// Mean share (author tasks / article tasks) per (position, team size).
std::vector<PositionShare> share_by_position_teamsize(const std::vector<TaskAssignment>& assignments);

// table[category][position] = fraction of that position's assignments in the
// category; columns sum to 1, positions with no assignments are omitted.
std::map<CreditCategory, std::map<int, double>> task_position_relation(
    const std::vector<TaskAssignment>& assignments);

// Per-team-size mean of (max author tasks / min author tasks) over authors
// with at least one task; articles with zero-task authors are counted in the
// diagnostics but still contribute the ratio of their task-bearing authors.
DisparityResult disparity_curve(const std::vector<TaskAssignment>& assignments);

// Ordinary least squares in closed form; exact on collinear input. Throws
// validation_error("degenerate-design") when all x coincide.
RegressionFit fit_linear(const std::vector<std::pair<double, double>>& points);

} // namespace contribmine
