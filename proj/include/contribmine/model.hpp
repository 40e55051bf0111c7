#pragma once
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "contribmine/category.hpp"

namespace contribmine {

// An author name as printed in the byline, pre-tokenized at ingest.
// Tokens are split on whitespace and hyphens; hyphen_after[i] records that
// token i was joined to token i+1 by a hyphen in the printed form.
// The surname is the suffix of tokens starting at surname_begin (default:
// the final token only).
struct FullName {
    std::string raw;
    std::vector<std::string> tokens;
    std::vector<bool> hyphen_after;
    std::size_t surname_begin = 0;

    std::size_t surname_token_count() const { return tokens.size() - surname_begin; }
};

// Builds a FullName from the printed string. surname_begin defaults to the
// last token; multi-token surnames are a resolver concern, not an ingest one.
FullName make_full_name(const std::string& raw);

struct ArticleRecord {
    std::string id;
    std::string title;
    std::string venue;
    int year = 0;
    std::vector<FullName> byline; // position 1 = byline[0]
    std::string contribution_text;
};

// Evidence layer of a task assignment. `collective` marks assignments whose
// author attribution came from a collective phrase ("all authors", ...).
enum class Layer : int { rule = 0, keyword = 1, semantic = 2, collective = 3 };

std::string_view layer_name(Layer l);

// The atomic pipeline output: one (article, author, role) cell with the
// evidence that produced it.
struct TaskAssignment {
    std::string article_id;
    int author_index = 0; // 1-based byline position
    std::string author_name;
    CreditCategory category = CreditCategory::writing_review_editing;
    Layer layer = Layer::keyword;
    std::string evidence;
};

struct IngestDiagnostic {
    std::size_t line_no = 0;
    std::string reason;
};

struct Corpus {
    std::vector<ArticleRecord> records; // file order, usable records only
    std::vector<IngestDiagnostic> diagnostics;
    std::size_t raw_line_count = 0; // all non-blank input lines, usable or not
};

// Reads a JSONL corpus (`{id,title,venue,year,authors,contribution_text}` per
// line). Rejected records become diagnostics and are skipped; a duplicate id
// aborts with a validation_error naming both line numbers.
Corpus load_corpus(const std::filesystem::path& path);

// Writes assignments as JSONL sorted by (article_id, author_index, category
// order). Output bytes are a pure function of the input set.
void write_assignments(std::vector<TaskAssignment> assignments, const std::filesystem::path& path);

std::vector<TaskAssignment> read_assignments(const std::filesystem::path& path);

} // namespace contribmine
