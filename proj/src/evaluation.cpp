#include "contribmine/evaluation.hpp"

#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "contribmine/errors.hpp"

namespace contribmine {

std::vector<GoldRecord> load_gold(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open gold file: " + path.string());
    std::vector<GoldRecord> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            throw validation_error("malformed gold JSON at line " + std::to_string(line_no));
        }
        GoldRecord rec;
        rec.article_id = obj.at("article_id").get<std::string>();
        for (const auto& t : obj.value("gold_tasks", nlohmann::json::array())) {
            int idx = t.at(0).get<int>();
            auto cat = category_from_name(t.at(1).get<std::string>());
            if (!cat) {
                throw validation_error("unknown category in gold file line " + std::to_string(line_no) +
                                       ": " + t.at(1).get<std::string>());
            }
            rec.gold_tasks.emplace_back(idx, *cat);
        }
        for (const auto& m : obj.value("gold_matches", nlohmann::json::array())) {
            rec.gold_matches.emplace_back(m.at(0).get<std::string>(), m.at(1).get<int>());
        }
        out.push_back(std::move(rec));
    }
    return out;
}

namespace {

EvalReport finalize(std::vector<PerArticleScore> scores) {
    EvalReport report;
    long total_n = 0, total_correct = 0;
    double ratio_sum = 0.0;
    long articles = 0;
    for (const auto& s : scores) {
        if (s.n == 0) continue;
        total_n += s.n;
        total_correct += s.correct;
        ratio_sum += static_cast<double>(s.correct) / static_cast<double>(s.n);
        articles++;
    }
    report.global_accuracy = total_n == 0 ? 0.0 : static_cast<double>(total_correct) / static_cast<double>(total_n);
    report.avg_per_article = articles == 0 ? 0.0 : ratio_sum / static_cast<double>(articles);
    report.per_article = std::move(scores);
    return report;
}

} // namespace

EvalReport task_accuracy(const std::vector<GoldRecord>& gold,
                         const std::vector<TaskAssignment>& predicted) {
    std::map<std::string, std::set<std::pair<int, int>>> predicted_pairs;
    for (const auto& a : predicted) {
        predicted_pairs[a.article_id].insert({a.author_index, static_cast<int>(a.category)});
    }

    std::vector<PerArticleScore> scores;
    std::set<std::pair<std::string, std::pair<int, int>>> gold_pairs;
    for (const auto& g : gold) {
        PerArticleScore s;
        s.article_id = g.article_id;
        s.n = static_cast<long>(g.gold_tasks.size());
        auto it = predicted_pairs.find(g.article_id);
        for (const auto& [idx, cat] : g.gold_tasks) {
            gold_pairs.insert({g.article_id, {idx, static_cast<int>(cat)}});
            if (it != predicted_pairs.end() && it->second.count({idx, static_cast<int>(cat)})) {
                s.correct++;
            }
        }
        scores.push_back(std::move(s));
    }

    EvalReport report = finalize(std::move(scores));

    long predicted_total = 0, predicted_in_gold = 0;
    for (const auto& a : predicted) {
        predicted_total++;
        if (gold_pairs.count({a.article_id, {a.author_index, static_cast<int>(a.category)}})) {
            predicted_in_gold++;
        }
    }
    report.supplementary_precision =
        predicted_total == 0 ? 0.0 : static_cast<double>(predicted_in_gold) / static_cast<double>(predicted_total);
    return report;
}

EvalReport author_match_accuracy(const std::vector<GoldRecord>& gold,
                                 const std::vector<MentionResolution>& resolutions) {
    // mention surface -> single resolved index (or -1 for ambiguous/unmatched)
    std::map<std::string, std::map<std::string, int>> resolved;
    for (const auto& r : resolutions) {
        if (r.collective != CollectiveMarker::none) continue;
        int value = r.is_single() ? r.indices[0] : -1;
        auto& per_article = resolved[r.article_id];
        auto it = per_article.find(r.mention);
        if (it == per_article.end()) {
            per_article.emplace(r.mention, value);
        } else if (it->second != value) {
            it->second = -1; // conflicting resolutions of the same surface
        }
    }

    std::vector<PerArticleScore> scores;
    for (const auto& g : gold) {
        PerArticleScore s;
        s.article_id = g.article_id;
        s.n = static_cast<long>(g.gold_matches.size());
        auto art = resolved.find(g.article_id);
        for (const auto& [mention, idx] : g.gold_matches) {
            if (art == resolved.end()) continue;
            auto it = art->second.find(mention);
            if (it != art->second.end() && it->second == idx) s.correct++;
        }
        scores.push_back(std::move(s));
    }
    return finalize(std::move(scores));
}

} // namespace contribmine
