#include "contribmine/model.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include <json.hpp>

#include "contribmine/errors.hpp"

namespace contribmine {

namespace {

std::string trim_copy(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::optional<CreditCategory> parse_layer_category(const std::string& name, std::size_t line_no,
                                                   std::vector<IngestDiagnostic>* diags) {
    auto cat = category_from_name(name);
    if (!cat && diags) diags->push_back({line_no, "unknown category '" + name + "'"});
    return cat;
}

Layer layer_from_name(const std::string& s) {
    if (s == "rule") return Layer::rule;
    if (s == "keyword") return Layer::keyword;
    if (s == "semantic") return Layer::semantic;
    if (s == "collective") return Layer::collective;
    throw validation_error("unknown layer '" + s + "'");
}

} // namespace

std::string_view layer_name(Layer l) {
    switch (l) {
        case Layer::rule: return "rule";
        case Layer::keyword: return "keyword";
        case Layer::semantic: return "semantic";
        case Layer::collective: return "collective";
    }
    return "keyword";
}

FullName make_full_name(const std::string& raw) {
    FullName name;
    name.raw = raw;
    std::string cur;
    bool pending_hyphen = false;
    auto flush = [&](bool hyphen_next) {
        if (cur.empty()) return;
        name.tokens.push_back(cur);
        name.hyphen_after.push_back(hyphen_next);
        cur.clear();
    };
    for (char c : raw) {
        if (c == ' ' || c == '\t') {
            flush(false);
            pending_hyphen = false;
        } else if (c == '-') {
            flush(true);
        } else {
            cur.push_back(c);
        }
    }
    (void)pending_hyphen;
    flush(false);
    if (!name.tokens.empty()) {
        name.hyphen_after.back() = false;
        name.surname_begin = name.tokens.size() - 1;
    }
    return name;
}

Corpus load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open corpus file: " + path.string());

    Corpus corpus;
    std::unordered_map<std::string, std::size_t> seen_ids; // id -> line number
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (trim_copy(line).empty()) continue;
        corpus.raw_line_count++;

        nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            corpus.diagnostics.push_back({line_no, "malformed JSON"});
            continue;
        }

        ArticleRecord rec;
        if (!obj.contains("id") || !obj["id"].is_string()) {
            corpus.diagnostics.push_back({line_no, "missing or non-string 'id'"});
            continue;
        }
        rec.id = obj["id"].get<std::string>();

        auto dup = seen_ids.find(rec.id);
        if (dup != seen_ids.end()) {
            throw validation_error("duplicate article id '" + rec.id + "' at lines " +
                                   std::to_string(dup->second) + " and " + std::to_string(line_no));
        }
        seen_ids.emplace(rec.id, line_no);

        rec.title = obj.value("title", std::string{});
        rec.venue = obj.value("venue", std::string{});
        if (obj.contains("year") && obj["year"].is_number_integer()) {
            rec.year = obj["year"].get<int>();
        }

        if (!obj.contains("authors") || !obj["authors"].is_array() || obj["authors"].empty()) {
            corpus.diagnostics.push_back({line_no, "empty byline"});
            continue;
        }
        bool bad_author = false;
        for (const auto& a : obj["authors"]) {
            if (!a.is_string() || trim_copy(a.get<std::string>()).empty()) {
                bad_author = true;
                break;
            }
            rec.byline.push_back(make_full_name(trim_copy(a.get<std::string>())));
        }
        if (bad_author) {
            corpus.diagnostics.push_back({line_no, "non-string or blank author entry"});
            continue;
        }

        if (!obj.contains("contribution_text") || !obj["contribution_text"].is_string() ||
            trim_copy(obj["contribution_text"].get<std::string>()).empty()) {
            corpus.diagnostics.push_back({line_no, "empty contribution_text"});
            continue;
        }
        rec.contribution_text = obj["contribution_text"].get<std::string>();

        corpus.records.push_back(std::move(rec));
    }
    return corpus;
}

void write_assignments(std::vector<TaskAssignment> assignments, const std::filesystem::path& path) {
    std::sort(assignments.begin(), assignments.end(), [](const TaskAssignment& a, const TaskAssignment& b) {
        if (a.article_id != b.article_id) return a.article_id < b.article_id;
        if (a.author_index != b.author_index) return a.author_index < b.author_index;
        return static_cast<int>(a.category) < static_cast<int>(b.category);
    });

    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open output file: " + path.string());
    for (const auto& a : assignments) {
        nlohmann::ordered_json obj;
        obj["article_id"] = a.article_id;
        obj["author_index"] = a.author_index;
        obj["author_name"] = a.author_name;
        obj["category"] = std::string(category_name(a.category));
        obj["layer"] = std::string(layer_name(a.layer));
        obj["evidence"] = a.evidence;
        out << obj.dump() << "\n";
    }
    if (!out) throw io_error("write failed: " + path.string());
}

std::vector<TaskAssignment> read_assignments(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open assignments file: " + path.string());
    std::vector<TaskAssignment> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (trim_copy(line).empty()) continue;
        nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            throw validation_error("malformed assignment JSON at line " + std::to_string(line_no));
        }
        TaskAssignment a;
        a.article_id = obj.at("article_id").get<std::string>();
        a.author_index = obj.at("author_index").get<int>();
        a.author_name = obj.value("author_name", std::string{});
        auto cat = parse_layer_category(obj.at("category").get<std::string>(), line_no, nullptr);
        if (!cat) {
            throw validation_error("unknown category at line " + std::to_string(line_no) + ": " +
                                   obj.at("category").get<std::string>());
        }
        a.category = *cat;
        a.layer = layer_from_name(obj.at("layer").get<std::string>());
        a.evidence = obj.value("evidence", std::string{});
        out.push_back(std::move(a));
    }
    return out;
}

} // namespace contribmine
