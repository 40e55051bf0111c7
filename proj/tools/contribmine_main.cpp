// contribmine: turn free-text "Author Contributions" sections into structured
// per-author CRediT task assignments, then mine and analyze them.
//
// Subcommands: ingest, classify, mine, stats, eval, predict, pipeline.
// All outputs are deterministic: same inputs + flags + seed give identical
// bytes; --threads N must match the N=1 output exactly.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "contribmine/analytics.hpp"
#include "contribmine/errors.hpp"
#include "contribmine/evaluation.hpp"
#include "contribmine/hcontrib.hpp"
#include "contribmine/miner.hpp"
#include "contribmine/model.hpp"
#include "contribmine/name_resolver.hpp"
#include "contribmine/predictor.hpp"
#include "contribmine/taxonomy.hpp"

namespace fs = std::filesystem;
using namespace contribmine;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitFatal = 2;

std::string fmt(double v, const char* spec = "%.6f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string position_label(int key) {
    return key == kPositionOverflowKey ? "20+" : std::to_string(key);
}

fs::path resolve_taxonomy_path(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    const char* env = std::getenv("CONTRIBMINE_TAXONOMY");
    if (env && *env) return env;
    throw config_error("no taxonomy config: pass --taxonomy or set CONTRIBMINE_TAXONOMY");
}

std::unique_ptr<EmbeddingProvider> make_provider(const std::string& selector) {
    if (selector == "lexical") return std::make_unique<LexicalEmbedder>();
    const std::string prefix = "vectors:";
    if (selector.rfind(prefix, 0) == 0) return load_vectors(selector.substr(prefix.size()));
    throw config_error("unknown embedder '" + selector + "' (expected lexical or vectors:<path>)");
}

void print_ingest_diagnostics(const Corpus& corpus) {
    for (const auto& d : corpus.diagnostics) {
        std::cerr << d.line_no << "\t" << d.reason << "\n";
    }
}

nlohmann::ordered_json resolution_json(const MentionResolution& r) {
    nlohmann::ordered_json obj;
    obj["article_id"] = r.article_id;
    obj["span"] = {r.span_begin, r.span_end};
    obj["mention"] = r.mention;
    if (r.collective != CollectiveMarker::none) {
        obj["resolved"] = std::string(collective_marker_name(r.collective));
    } else if (r.indices.size() == 1) {
        obj["resolved"] = r.indices[0];
    } else {
        obj["resolved"] = r.indices;
    }
    obj["method"] = std::string(resolve_method_name(r.method));
    return obj;
}

struct ClassifyOutput {
    std::vector<TaskAssignment> assignments;
    std::vector<MentionResolution> resolutions; // article_id filled
    std::vector<std::string> diagnostic_lines;  // article_id <TAB> reason
    std::vector<ClassifiedClause> clauses;
};

// Classifies the whole corpus. Articles are independent; with threads > 1
// they are processed in slots indexed by corpus order, so the merged output
// is identical to the sequential run.
ClassifyOutput classify_corpus(const std::vector<ArticleRecord>& records, const Taxonomy& taxonomy,
                               const EmbeddingProvider& provider, const ClassifyOptions& options,
                               unsigned threads) {
    struct Slot {
        std::vector<TaskAssignment> assignments;
        std::vector<MentionResolution> resolutions;
        std::vector<std::string> diagnostic_lines;
        std::vector<ClassifiedClause> clauses;
    };
    std::vector<Slot> slots(records.size());

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; i++) {
            const ArticleRecord& rec = records[i];
            auto resolutions = resolve_mentions(rec.contribution_text, rec.byline);
            for (auto& r : resolutions) r.article_id = rec.id;
            auto result = classify_article(rec, resolutions, taxonomy, provider, options);
            Slot& slot = slots[i];
            slot.assignments = std::move(result.assignments);
            slot.resolutions = std::move(resolutions);
            slot.clauses = std::move(result.clauses);
            for (const auto& note : result.diagnostics.notes) {
                slot.diagnostic_lines.push_back(rec.id + "\t" + note);
            }
        }
    };

    if (threads <= 1 || records.size() < 2) {
        work(0, records.size());
    } else {
        unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(records.size()));
        std::vector<std::thread> pool;
        std::size_t chunk = (records.size() + n - 1) / n;
        for (unsigned t = 0; t < n; t++) {
            std::size_t begin = t * chunk;
            std::size_t end = std::min(records.size(), begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(work, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    ClassifyOutput out;
    for (auto& slot : slots) {
        out.assignments.insert(out.assignments.end(), slot.assignments.begin(), slot.assignments.end());
        out.resolutions.insert(out.resolutions.end(), slot.resolutions.begin(), slot.resolutions.end());
        out.diagnostic_lines.insert(out.diagnostic_lines.end(), slot.diagnostic_lines.begin(),
                                    slot.diagnostic_lines.end());
        out.clauses.insert(out.clauses.end(), slot.clauses.begin(), slot.clauses.end());
    }
    return out;
}

void write_lines(const fs::path& path, const std::vector<std::string>& lines) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open output file: " + path.string());
    for (const auto& line : lines) out << line << "\n";
    if (!out) throw io_error("write failed: " + path.string());
}

void write_resolutions(const fs::path& path, const std::vector<MentionResolution>& resolutions) {
    std::vector<std::string> lines;
    lines.reserve(resolutions.size());
    for (const auto& r : resolutions) lines.push_back(resolution_json(r).dump());
    write_lines(path, lines);
}

std::vector<MentionResolution> read_resolutions(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open resolutions file: " + path.string());
    std::vector<MentionResolution> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
        if (obj.is_discarded()) {
            throw validation_error("malformed resolution JSON at line " + std::to_string(line_no));
        }
        MentionResolution r;
        r.article_id = obj.at("article_id").get<std::string>();
        r.span_begin = obj.at("span").at(0).get<std::size_t>();
        r.span_end = obj.at("span").at(1).get<std::size_t>();
        r.mention = obj.at("mention").get<std::string>();
        const auto& resolved = obj.at("resolved");
        if (resolved.is_number_integer()) {
            r.indices = {resolved.get<int>()};
        } else if (resolved.is_array()) {
            r.indices = resolved.get<std::vector<int>>();
        } else if (resolved.is_string()) {
            std::string marker = resolved.get<std::string>();
            if (marker == "all") r.collective = CollectiveMarker::all;
            else if (marker == "both") r.collective = CollectiveMarker::both;
            else if (marker == "remaining") r.collective = CollectiveMarker::remaining;
        }
        std::string method = obj.at("method").get<std::string>();
        if (method == "exact") r.method = ResolveMethod::exact;
        else if (method == "fallback") r.method = ResolveMethod::fallback;
        else if (method == "collective") r.method = ResolveMethod::collective;
        else r.method = ResolveMethod::unmatched;
        out.push_back(std::move(r));
    }
    return out;
}

void write_itemsets_csv(const fs::path& path, const std::vector<FrequentItemset>& itemsets) {
    std::vector<std::string> lines;
    lines.push_back("items,size,support");
    for (const auto& is : itemsets) {
        std::string items;
        for (CreditCategory c : is.categories()) {
            if (!items.empty()) items += "|";
            items += std::string(category_name(c));
        }
        lines.push_back("\"" + items + "\"," + std::to_string(is.size()) + "," +
                        fmt(is.support(), "%.4f"));
    }
    write_lines(path, lines);
}

void write_pairs_csv(const fs::path& path, const std::vector<AssociationPair>& pairs) {
    std::vector<std::string> lines;
    lines.push_back("# support is the symmetric pair support (fraction of transactions containing "
                    "both roles), not rule confidence");
    lines.push_back("antecedent,consequent,support");
    for (const auto& p : pairs) {
        lines.push_back("\"" + std::string(category_name(p.antecedent)) + "\",\"" +
                        std::string(category_name(p.consequent)) + "\"," + fmt(p.support(), "%.4f"));
    }
    write_lines(path, lines);
}

struct StatsBundle {
    std::map<CreditCategory, double> distribution;
    std::map<int, double> tasks_by_pos;
    std::vector<PositionShare> shares;
    std::map<CreditCategory, std::map<int, double>> relation;
    DisparityResult disparity;
    std::optional<RegressionFit> fit;
};

StatsBundle compute_stats(const std::vector<TaskAssignment>& assignments) {
    StatsBundle b;
    b.distribution = category_distribution(assignments);
    b.tasks_by_pos = tasks_by_position(assignments);
    b.shares = share_by_position_teamsize(assignments);
    b.relation = task_position_relation(assignments);
    b.disparity = disparity_curve(assignments);

    // Fit over the within-cap disparity points; the 20+ bucket has no single
    // team size to regress on.
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : b.disparity.points) {
        if (p.team_size <= kPositionCap) pts.emplace_back(p.team_size, p.mean_ratio);
    }
    std::set<double> xs;
    for (const auto& [x, y] : pts) xs.insert(x);
    if (pts.size() >= 2 && xs.size() >= 2) b.fit = fit_linear(pts);
    return b;
}

void write_stats_csv(const fs::path& dir, const StatsBundle& b) {
    {
        std::vector<std::string> lines = {"category,fraction"};
        for (const auto& [cat, v] : b.distribution) {
            lines.push_back("\"" + std::string(category_name(cat)) + "\"," + fmt(v));
        }
        write_lines(dir / "distribution.csv", lines);
    }
    {
        std::vector<std::string> lines = {"position,mean_tasks"};
        for (const auto& [pos, v] : b.tasks_by_pos) {
            lines.push_back(position_label(pos) + "," + fmt(v));
        }
        write_lines(dir / "tasks_by_position.csv", lines);
    }
    {
        std::vector<std::string> lines = {"position,team_size,mean_share,n_articles"};
        for (const auto& s : b.shares) {
            lines.push_back(position_label(s.position) + "," + position_label(s.team_size) + "," +
                            fmt(s.mean_share) + "," + std::to_string(s.n_articles));
        }
        write_lines(dir / "share_by_position.csv", lines);
    }
    {
        std::vector<std::string> lines = {"category,position,frequency"};
        for (const auto& [cat, row] : b.relation) {
            for (const auto& [pos, v] : row) {
                lines.push_back("\"" + std::string(category_name(cat)) + "\"," + position_label(pos) +
                                "," + fmt(v));
            }
        }
        write_lines(dir / "task_position_relation.csv", lines);
    }
    {
        std::vector<std::string> lines = {"team_size,mean_ratio,n_articles"};
        for (const auto& p : b.disparity.points) {
            lines.push_back(position_label(p.team_size) + "," + fmt(p.mean_ratio) + "," +
                            std::to_string(p.n_articles));
        }
        write_lines(dir / "disparity.csv", lines);
    }
    {
        nlohmann::ordered_json obj;
        if (b.fit) {
            obj["intercept"] = b.fit->intercept;
            obj["slope"] = b.fit->slope;
            obj["r2"] = b.fit->r2;
        } else {
            obj["intercept"] = nullptr;
            obj["slope"] = nullptr;
            obj["r2"] = nullptr;
        }
        std::ofstream out(dir / "fit.json", std::ios::binary);
        if (!out) throw io_error("cannot write fit.json");
        out << obj.dump(2) << "\n";
    }
    if (b.disparity.undefined_ratio_articles > 0) {
        std::cerr << "disparity: " << b.disparity.undefined_ratio_articles << " articles with "
                  << b.disparity.zero_task_authors
                  << " zero-task authors excluded from the ratio minimum\n";
    }
}

void write_stats_json(const fs::path& dir, const StatsBundle& b) {
    nlohmann::ordered_json obj;
    for (const auto& [cat, v] : b.distribution) {
        obj["distribution"][std::string(category_name(cat))] = v;
    }
    for (const auto& [pos, v] : b.tasks_by_pos) obj["tasks_by_position"][position_label(pos)] = v;
    obj["share_by_position"] = nlohmann::ordered_json::array();
    for (const auto& s : b.shares) {
        obj["share_by_position"].push_back({{"position", position_label(s.position)},
                                            {"team_size", position_label(s.team_size)},
                                            {"mean_share", s.mean_share},
                                            {"n_articles", s.n_articles}});
    }
    for (const auto& [cat, row] : b.relation) {
        for (const auto& [pos, v] : row) {
            obj["task_position_relation"][std::string(category_name(cat))][position_label(pos)] = v;
        }
    }
    obj["disparity"] = nlohmann::ordered_json::array();
    for (const auto& p : b.disparity.points) {
        obj["disparity"].push_back({{"team_size", position_label(p.team_size)},
                                    {"mean_ratio", p.mean_ratio},
                                    {"n_articles", p.n_articles}});
    }
    obj["disparity_diagnostics"] = {{"undefined_ratio_articles", b.disparity.undefined_ratio_articles},
                                    {"zero_task_authors", b.disparity.zero_task_authors}};
    if (b.fit) {
        obj["fit"] = {{"intercept", b.fit->intercept}, {"slope", b.fit->slope}, {"r2", b.fit->r2}};
    } else {
        obj["fit"] = nullptr;
    }
    std::ofstream out(dir / "stats.json", std::ios::binary);
    if (!out) throw io_error("cannot write stats.json");
    out << obj.dump(2) << "\n";
}

// ---------------- predict rows files ----------------

void write_rows(const fs::path& path, const std::vector<LabeledRow>& rows) {
    std::vector<std::string> lines;
    lines.reserve(rows.size());
    for (const auto& r : rows) {
        nlohmann::ordered_json obj;
        obj["article_id"] = r.article_id;
        obj["position"] = r.features.position;
        obj["n_tasks_author"] = r.features.n_tasks_author;
        obj["team_size"] = r.features.team_size;
        obj["total_tasks_article"] = r.features.total_tasks_article;
        obj["share"] = r.features.share;
        obj["labels"] = r.labels;
        lines.push_back(obj.dump());
    }
    write_lines(path, lines);
}

std::vector<LabeledRow> read_rows(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open rows file: " + path.string());
    std::vector<LabeledRow> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
        if (obj.is_discarded()) {
            throw validation_error("malformed row JSON at line " + std::to_string(line_no));
        }
        LabeledRow r;
        r.article_id = obj.at("article_id").get<std::string>();
        r.features.position = obj.at("position").get<int>();
        r.features.n_tasks_author = obj.at("n_tasks_author").get<int>();
        r.features.team_size = obj.at("team_size").get<int>();
        r.features.total_tasks_article = obj.at("total_tasks_article").get<int>();
        r.features.share = obj.at("share").get<double>();
        auto labels = obj.at("labels").get<std::vector<int>>();
        if (labels.size() != kCategoryCount) {
            throw validation_error("row labels must have 14 entries (line " + std::to_string(line_no) +
                                   ")");
        }
        for (std::size_t i = 0; i < kCategoryCount; i++) r.labels[i] = static_cast<std::uint8_t>(labels[i]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_model_eval_csv(const fs::path& path, const ModelEvalTable& table) {
    std::vector<std::string> lines = {"category,dummy,logistic,boosted_trees"};
    for (std::size_t c = 0; c < kCategoryCount; c++) {
        lines.push_back("\"" + std::string(category_name(static_cast<CreditCategory>(c))) + "\"," +
                        fmt(table.accuracy_dummy[c]) + "," + fmt(table.accuracy_logistic[c]) + "," +
                        fmt(table.accuracy_boosted[c]));
    }
    lines.push_back("mean," + fmt(table.mean_dummy) + "," + fmt(table.mean_logistic) + "," +
                    fmt(table.mean_boosted));
    write_lines(path, lines);
}

ModelKind model_kind_from_name(const std::string& name) {
    if (name == "dummy") return ModelKind::dummy;
    if (name == "logistic") return ModelKind::logistic;
    if (name == "boosted_trees") return ModelKind::boosted_trees;
    throw config_error("unknown model '" + name + "' (expected dummy, logistic, boosted_trees)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"contribmine: structured CRediT task assignments from author contribution text"};
    app.require_subcommand(1);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "print stage progress to standard error");

    // ---- ingest ----
    auto* ingest = app.add_subcommand("ingest", "validate a JSONL corpus and report diagnostics");
    std::string ingest_corpus, ingest_out;
    ingest->add_option("--corpus", ingest_corpus, "corpus JSONL path")->required();
    ingest->add_option("--out", ingest_out, "re-emit usable records as canonical JSONL");

    // ---- classify ----
    auto* classify = app.add_subcommand("classify", "resolve authors and classify contributions");
    std::string cl_corpus, cl_taxonomy, cl_embedder = "lexical", cl_out, cl_diag, cl_resolutions,
                cl_clauses;
    double cl_min_sim = -1.0;
    unsigned cl_threads = 1;
    classify->add_option("--corpus", cl_corpus, "corpus JSONL path")->required();
    classify->add_option("--taxonomy", cl_taxonomy, "taxonomy config (or CONTRIBMINE_TAXONOMY)");
    classify->add_option("--embedder", cl_embedder, "lexical | vectors:<path>");
    classify->add_option("--out", cl_out, "assignments JSONL output")->required();
    classify->add_option("--diagnostics", cl_diag, "diagnostics TSV output");
    classify->add_option("--resolutions", cl_resolutions, "mention-resolution JSONL dump");
    classify->add_option("--clauses", cl_clauses, "clause JSONL dump");
    classify->add_option("--min-sim", cl_min_sim, "minimum semantic similarity (default: off)");
    classify->add_option("--threads", cl_threads, "worker threads (output matches --threads 1)");

    // ---- mine ----
    auto* mine_cmd = app.add_subcommand("mine", "Apriori frequent role itemsets");
    std::string mn_assignments, mn_out, mn_pairs;
    double mn_min_support = 0.2;
    mine_cmd->add_option("--assignments", mn_assignments, "assignments JSONL")->required();
    mine_cmd->add_option("--min-support", mn_min_support, "minimum support in (0,1], default 0.2");
    mine_cmd->add_option("--out", mn_out, "itemsets CSV output")->required();
    mine_cmd->add_option("--pairs", mn_pairs, "directed pair CSV output");

    // ---- stats ----
    auto* stats_cmd = app.add_subcommand("stats", "positional and disparity statistics");
    std::string st_assignments, st_dir, st_format = "csv";
    stats_cmd->add_option("--assignments", st_assignments, "assignments JSONL")->required();
    stats_cmd->add_option("--out-dir", st_dir, "output directory")->required();
    stats_cmd->add_option("--format", st_format, "csv | json (default csv)");

    // ---- eval ----
    auto* eval_cmd = app.add_subcommand("eval", "score predictions against gold annotations");
    std::string ev_gold, ev_pred, ev_resolutions, ev_out;
    eval_cmd->add_option("--gold", ev_gold, "gold JSONL")->required();
    eval_cmd->add_option("--pred", ev_pred, "predicted assignments JSONL")->required();
    eval_cmd->add_option("--resolutions", ev_resolutions, "resolution dump JSONL (author matching)");
    eval_cmd->add_option("--out", ev_out, "report JSON output")->required();

    // ---- predict ----
    auto* predict = app.add_subcommand("predict", "metadata-based contribution prediction");
    predict->require_subcommand(1);
    auto* rows_cmd = predict->add_subcommand("rows", "build feature rows from assignments + corpus");
    std::string pr_assignments, pr_corpus, pr_out;
    rows_cmd->add_option("--assignments", pr_assignments, "assignments JSONL")->required();
    rows_cmd->add_option("--corpus", pr_corpus, "corpus JSONL")->required();
    rows_cmd->add_option("--out", pr_out, "rows JSONL output")->required();

    auto* train_cmd = predict->add_subcommand("train", "train one model kind");
    std::string tr_rows, tr_model = "boosted_trees", tr_out;
    std::uint64_t tr_seed = 42;
    train_cmd->add_option("--rows", tr_rows, "rows JSONL")->required();
    train_cmd->add_option("--model", tr_model, "dummy | logistic | boosted_trees");
    train_cmd->add_option("--seed", tr_seed, "split/training seed (default 42)");
    train_cmd->add_option("--out", tr_out, "model binary output")->required();

    auto* peval_cmd = predict->add_subcommand("eval", "compare the three model kinds");
    std::string pe_rows, pe_out;
    std::uint64_t pe_seed = 42;
    peval_cmd->add_option("--rows", pe_rows, "rows JSONL")->required();
    peval_cmd->add_option("--seed", pe_seed, "split seed (default 42)");
    peval_cmd->add_option("--out", pe_out, "accuracy table CSV output")->required();

    // ---- pipeline ----
    auto* pipe = app.add_subcommand("pipeline", "ingest -> resolve -> classify -> mine -> stats");
    std::string pl_corpus, pl_taxonomy, pl_embedder = "lexical", pl_dir, pl_format = "csv";
    double pl_min_support = 0.2, pl_min_sim = -1.0;
    std::uint64_t pl_seed = 42;
    unsigned pl_threads = 1;
    pipe->add_option("--corpus", pl_corpus, "corpus JSONL path")->required();
    pipe->add_option("--taxonomy", pl_taxonomy, "taxonomy config (or CONTRIBMINE_TAXONOMY)");
    pipe->add_option("--embedder", pl_embedder, "lexical | vectors:<path>");
    pipe->add_option("--out-dir", pl_dir, "output directory")->required();
    pipe->add_option("--min-support", pl_min_support, "Apriori minimum support (default 0.2)");
    pipe->add_option("--min-sim", pl_min_sim, "minimum semantic similarity (default: off)");
    pipe->add_option("--seed", pl_seed, "seed for downstream consumers (default 42)");
    pipe->add_option("--threads", pl_threads, "worker threads");
    pipe->add_option("--format", pl_format, "stats format: csv | json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << app.help() << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return kExitFatal;
    }

    try {
        if (*ingest) {
            Corpus corpus = load_corpus(ingest_corpus);
            print_ingest_diagnostics(corpus);
            long authors = 0;
            for (const auto& r : corpus.records) authors += static_cast<long>(r.byline.size());
            std::cout << "raw_records\t" << corpus.raw_line_count << "\n"
                      << "usable_records\t" << corpus.records.size() << "\n"
                      << "rejected_records\t" << corpus.diagnostics.size() << "\n"
                      << "author_entries\t" << authors << "\n";
            if (!ingest_out.empty()) {
                std::vector<std::string> lines;
                for (const auto& r : corpus.records) {
                    nlohmann::ordered_json obj;
                    obj["id"] = r.id;
                    obj["title"] = r.title;
                    obj["venue"] = r.venue;
                    obj["year"] = r.year;
                    nlohmann::ordered_json authors_json = nlohmann::ordered_json::array();
                    for (const auto& a : r.byline) authors_json.push_back(a.raw);
                    obj["authors"] = authors_json;
                    obj["contribution_text"] = r.contribution_text;
                    lines.push_back(obj.dump());
                }
                write_lines(ingest_out, lines);
            }
            return kExitOk;
        }

        if (*classify) {
            Corpus corpus = load_corpus(cl_corpus);
            print_ingest_diagnostics(corpus);
            auto loaded = load_taxonomy(resolve_taxonomy_path(cl_taxonomy));
            for (const auto& w : loaded.warnings) std::cerr << "taxonomy\t" << w << "\n";
            auto provider = make_provider(cl_embedder);
            Taxonomy taxonomy = build_prototypes(loaded.taxonomy, *provider);
            ClassifyOptions options;
            if (cl_min_sim >= 0.0) options.min_similarity = cl_min_sim;

            auto result = classify_corpus(corpus.records, taxonomy, *provider, options, cl_threads);
            if (verbose) std::cerr << "stage\tclassify\t" << result.assignments.size() << " assignments\n";
            write_assignments(result.assignments, cl_out);
            if (!cl_diag.empty()) write_lines(cl_diag, result.diagnostic_lines);
            if (!cl_resolutions.empty()) write_resolutions(cl_resolutions, result.resolutions);
            if (!cl_clauses.empty()) {
                std::vector<std::string> lines;
                for (const auto& cc : result.clauses) {
                    nlohmann::ordered_json obj;
                    obj["article_id"] = cc.clause.article_id;
                    obj["authors"] = cc.clause.authors;
                    obj["style"] = std::string(clause_style_name(cc.clause.style));
                    obj["text"] = cc.clause.text;
                    lines.push_back(obj.dump());
                }
                write_lines(cl_clauses, lines);
            }
            std::cout << "articles\t" << corpus.records.size() << "\n"
                      << "assignments\t" << result.assignments.size() << "\n";
            return kExitOk;
        }

        if (*mine_cmd) {
            auto assignments = read_assignments(mn_assignments);
            auto transactions = build_transactions(assignments);
            auto itemsets = mine(transactions, mn_min_support);
            write_itemsets_csv(mn_out, itemsets);
            if (!mn_pairs.empty()) write_pairs_csv(mn_pairs, top_pairs(itemsets));
            std::cout << "transactions\t" << transactions.size() << "\n"
                      << "frequent_itemsets\t" << itemsets.size() << "\n";
            return kExitOk;
        }

        if (*stats_cmd) {
            auto assignments = read_assignments(st_assignments);
            fs::create_directories(st_dir);
            StatsBundle bundle = compute_stats(assignments);
            if (st_format == "json") {
                write_stats_json(st_dir, bundle);
            } else if (st_format == "csv") {
                write_stats_csv(st_dir, bundle);
            } else {
                throw config_error("unknown --format '" + st_format + "'");
            }
            return kExitOk;
        }

        if (*eval_cmd) {
            auto gold = load_gold(ev_gold);
            auto predicted = read_assignments(ev_pred);
            EvalReport tasks = task_accuracy(gold, predicted);

            nlohmann::ordered_json obj;
            obj["task"] = {{"global_accuracy", tasks.global_accuracy},
                           {"avg_per_article", tasks.avg_per_article},
                           {"supplementary_precision", tasks.supplementary_precision}};
            nlohmann::ordered_json task_articles = nlohmann::ordered_json::array();
            for (const auto& s : tasks.per_article) {
                task_articles.push_back({{"article_id", s.article_id}, {"n", s.n}, {"correct", s.correct}});
            }
            obj["task"]["per_article"] = task_articles;

            if (!ev_resolutions.empty()) {
                auto resolutions = read_resolutions(ev_resolutions);
                EvalReport match = author_match_accuracy(gold, resolutions);
                obj["author_match"] = {{"global_accuracy", match.global_accuracy},
                                       {"avg_per_article", match.avg_per_article}};
                nlohmann::ordered_json match_articles = nlohmann::ordered_json::array();
                for (const auto& s : match.per_article) {
                    match_articles.push_back(
                        {{"article_id", s.article_id}, {"n", s.n}, {"correct", s.correct}});
                }
                obj["author_match"]["per_article"] = match_articles;
            }

            std::ofstream out(ev_out, std::ios::binary);
            if (!out) throw io_error("cannot write report: " + ev_out);
            out << obj.dump(2) << "\n";
            std::cout << "task_global\t" << fmt(tasks.global_accuracy, "%.4f") << "\n"
                      << "task_avg\t" << fmt(tasks.avg_per_article, "%.4f") << "\n";
            return kExitOk;
        }

        if (*rows_cmd) {
            auto assignments = read_assignments(pr_assignments);
            Corpus corpus = load_corpus(pr_corpus);
            auto result = extract_features(assignments, corpus.records);
            write_rows(pr_out, result.rows);
            std::cout << "rows\t" << result.rows.size() << "\n"
                      << "skipped_zero_assignment_authors\t" << result.skipped_zero_assignment_authors
                      << "\n";
            return kExitOk;
        }

        if (*train_cmd) {
            auto rows = read_rows(tr_rows);
            TrainDiagnostics diag;
            Model model = train(rows, model_kind_from_name(tr_model), tr_seed, &diag);
            for (const auto& w : diag.warnings) std::cerr << "train\t" << w << "\n";
            model.save(tr_out);
            std::cout << "trained\t" << tr_model << "\trows\t" << rows.size() << "\n";
            return kExitOk;
        }

        if (*peval_cmd) {
            auto rows = read_rows(pe_rows);
            ModelEvalTable table = evaluate_models(rows, pe_seed);
            write_model_eval_csv(pe_out, table);
            std::cout << "mean_dummy\t" << fmt(table.mean_dummy, "%.4f") << "\n"
                      << "mean_logistic\t" << fmt(table.mean_logistic, "%.4f") << "\n"
                      << "mean_boosted\t" << fmt(table.mean_boosted, "%.4f") << "\n";
            return kExitOk;
        }

        if (*pipe) {
            Corpus corpus = load_corpus(pl_corpus);
            print_ingest_diagnostics(corpus);
            if (verbose) std::cerr << "stage\tingest\t" << corpus.records.size() << " records\n";
            auto loaded = load_taxonomy(resolve_taxonomy_path(pl_taxonomy));
            auto provider = make_provider(pl_embedder);
            Taxonomy taxonomy = build_prototypes(loaded.taxonomy, *provider);
            ClassifyOptions options;
            if (pl_min_sim >= 0.0) options.min_similarity = pl_min_sim;

            fs::create_directories(pl_dir);
            fs::path dir(pl_dir);

            auto result = classify_corpus(corpus.records, taxonomy, *provider, options, pl_threads);
            if (verbose) std::cerr << "stage\tclassify\t" << result.assignments.size() << " assignments\n";
            write_assignments(result.assignments, dir / "assignments.jsonl");
            write_resolutions(dir / "resolutions.jsonl", result.resolutions);
            write_lines(dir / "diagnostics.tsv", result.diagnostic_lines);

            auto sorted = read_assignments(dir / "assignments.jsonl");
            auto transactions = build_transactions(sorted);
            auto itemsets = mine(transactions, pl_min_support);
            if (verbose) std::cerr << "stage\tmine\t" << itemsets.size() << " itemsets\n";
            write_itemsets_csv(dir / "itemsets.csv", itemsets);
            write_pairs_csv(dir / "pairs.csv", top_pairs(itemsets));

            StatsBundle bundle = compute_stats(sorted);
            if (verbose) std::cerr << "stage\tstats\tdone\n";
            if (pl_format == "json") {
                write_stats_json(dir, bundle);
            } else {
                write_stats_csv(dir, bundle);
            }

            std::cout << "articles\t" << corpus.records.size() << "\n"
                      << "assignments\t" << result.assignments.size() << "\n"
                      << "frequent_itemsets\t" << itemsets.size() << "\n";
            return kExitOk;
        }
    } catch (const validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFatal;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFatal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFatal;
    }
    return kExitOk;
}
