#include "contribmine/statement_parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_set>

namespace contribmine {

namespace {

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 ||
           static_cast<unsigned char>(c) >= 0x80;
}

// Finite-verb heuristic for clause boundaries: regular "-ed" past forms plus
// the irregulars that show up in contribution statements.
bool verb_like(const std::string& w) {
    static const std::unordered_set<std::string> irregular = {
        "wrote", "led", "oversaw", "built", "made", "took", "gave", "drew",
        "did", "ran", "undertook", "held", "kept", "was", "were",
    };
    if (irregular.count(w)) return true;
    return w.size() >= 4 && w.compare(w.size() - 2, 2, "ed") == 0;
}

struct Token {
    bool is_mention = false;
    std::size_t resolution = 0; // index into resolutions when is_mention
    std::string word;           // normalized when !is_mention
    bool comma_before = false;
};

struct SentenceRange {
    std::size_t begin;
    std::size_t end;
};

} // namespace

std::string_view clause_style_name(ClauseStyle s) {
    switch (s) {
        case ClauseStyle::author_first: return "author-first";
        case ClauseStyle::role_first: return "role-first";
        case ClauseStyle::collective: return "collective";
    }
    return "author-first";
}

std::string normalize_clause(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (std::size_t i = 0; i < raw.size(); i++) {
        char c = raw[i];
        unsigned char uc = static_cast<unsigned char>(c);
        bool keep;
        if (uc >= 0x80) {
            keep = true;
        } else if (std::isalnum(uc)) {
            c = static_cast<char>(std::tolower(uc));
            keep = true;
        } else if (c == '-') {
            // intra-word hyphens survive normalization
            keep = i > 0 && i + 1 < raw.size() && is_word_char(raw[i - 1]) && is_word_char(raw[i + 1]);
        } else {
            keep = false;
        }
        if (keep) {
            if (pending_space && !out.empty()) out.push_back(' ');
            pending_space = false;
            out.push_back(c);
        } else {
            pending_space = true;
        }
    }
    return out;
}

namespace {

std::vector<SentenceRange> split_sentences(const std::string& text,
                                           const std::vector<MentionResolution>& resolutions) {
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    spans.reserve(resolutions.size());
    for (const auto& r : resolutions) spans.emplace_back(r.span_begin, r.span_end);
    std::sort(spans.begin(), spans.end());

    auto inside_span = [&](std::size_t p) {
        for (const auto& [b, e] : spans) {
            if (b > p) break;
            if (p >= b && p < e) return true;
        }
        return false;
    };
    auto span_final_dot = [&](std::size_t p) {
        for (const auto& [b, e] : spans) {
            if (b > p) break;
            if (p + 1 == e) return true;
        }
        return false;
    };
    auto next_token_capitalized = [&](std::size_t p) {
        std::size_t i = p + 1;
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n')) i++;
        return i == text.size() || std::isupper(static_cast<unsigned char>(text[i])) != 0;
    };

    std::vector<SentenceRange> out;
    std::size_t begin = 0;
    for (std::size_t p = 0; p < text.size(); p++) {
        char c = text[p];
        if (c == ';' && !inside_span(p)) {
            if (p > begin) out.push_back({begin, p});
            begin = p + 1;
        } else if (c == '.') {
            if (!inside_span(p)) {
                if (p > begin) out.push_back({begin, p});
                begin = p + 1;
            } else if (span_final_dot(p) && next_token_capitalized(p)) {
                // The mention's own dot doubles as the sentence terminator;
                // it stays inside the sentence so the span is not cut.
                out.push_back({begin, p + 1});
                begin = p + 1;
            }
        }
    }
    if (begin < text.size()) out.push_back({begin, text.size()});
    return out;
}

std::vector<Token> tokenize_sentence(const std::string& text, std::size_t sb, std::size_t se,
                                     const std::vector<MentionResolution>& resolutions,
                                     std::vector<std::size_t>* sentence_resolutions) {
    std::vector<Token> tokens;
    bool comma_pending = false;
    std::size_t p = sb;
    while (p < se) {
        bool is_res = false;
        for (std::size_t ri = 0; ri < resolutions.size(); ri++) {
            if (resolutions[ri].span_begin == p && resolutions[ri].span_end <= se) {
                Token t;
                t.is_mention = true;
                t.resolution = ri;
                t.comma_before = comma_pending;
                comma_pending = false;
                tokens.push_back(t);
                if (sentence_resolutions) sentence_resolutions->push_back(ri);
                p = resolutions[ri].span_end;
                is_res = true;
                break;
            }
        }
        if (is_res) continue;
        char c = text[p];
        if (c == ',') {
            comma_pending = true;
            p++;
            continue;
        }
        if (!is_word_char(c)) {
            p++;
            continue;
        }
        std::size_t q = p;
        while (q < se && (is_word_char(text[q]) || (text[q] == '-' && q + 1 < se && is_word_char(text[q + 1])))) q++;
        Token t;
        t.word = normalize_clause(text.substr(p, q - p));
        t.comma_before = comma_pending;
        comma_pending = false;
        if (!t.word.empty()) tokens.push_back(t);
        p = q;
    }
    return tokens;
}

// Authors a mention contributes to a clause subject: single resolutions and
// collective expansions; ambiguity sets are surfaced, not guessed.
void collect_authors(const MentionResolution& r, std::set<int>* authors, bool* any_collective,
                     bool* any_individual) {
    if (r.collective != CollectiveMarker::none) {
        for (int i : r.indices) authors->insert(i);
        *any_collective = true;
        return;
    }
    if (r.indices.size() == 1) {
        authors->insert(r.indices[0]);
        *any_individual = true;
    }
}

std::string join_words(const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) {
        if (!out.empty()) out.push_back(' ');
        out += w;
    }
    return out;
}

bool connector_word(const Token& t) {
    return !t.is_mention && (t.word == "and" || t.word == "the");
}

} // namespace

std::vector<Clause> segment(const std::string& text, const std::vector<MentionResolution>& resolutions) {
    std::vector<Clause> clauses;

    for (const auto& sent : split_sentences(text, resolutions)) {
        std::vector<std::size_t> sent_res;
        std::vector<Token> tokens = tokenize_sentence(text, sent.begin, sent.end, resolutions, &sent_res);
        if (tokens.empty()) continue;

        bool has_usable_mention = false;
        for (std::size_t ri : sent_res) {
            const auto& r = resolutions[ri];
            if (r.collective != CollectiveMarker::none || !r.indices.empty()) has_usable_mention = true;
        }

        std::string sentence_raw = text.substr(sent.begin, sent.end - sent.begin);
        if (!has_usable_mention) {
            Clause c;
            c.text = normalize_clause(sentence_raw);
            c.unattributed = true;
            if (!c.text.empty()) clauses.push_back(std::move(c));
            continue;
        }

        // Colon grammars: role-first ("Conceptualization: J.D.S., C.D.") and
        // the nested form ("A.B.: methodology, software").
        std::size_t colon = std::string::npos;
        int colon_count = 0;
        for (std::size_t p = sent.begin; p < sent.end; p++) {
            if (text[p] != ':') continue;
            bool inside = false;
            for (const auto& r : resolutions) {
                if (p >= r.span_begin && p < r.span_end) {
                    inside = true;
                    break;
                }
            }
            if (!inside) {
                colon_count++;
                if (colon == std::string::npos) colon = p;
            }
        }
        if (colon_count >= 2) {
            // doubly-nested enumerations are reported, never guessed
            Clause c;
            c.text = normalize_clause(sentence_raw);
            c.unattributed = true;
            if (!c.text.empty()) clauses.push_back(std::move(c));
            continue;
        }

        if (colon != std::string::npos) {
            bool mention_before = false;
            bool mention_after = false;
            for (std::size_t ri : sent_res) {
                if (resolutions[ri].span_begin < colon) mention_before = true;
                if (resolutions[ri].span_begin > colon) mention_after = true;
            }

            if (!mention_before && mention_after) {
                Clause c;
                c.text = normalize_clause(text.substr(sent.begin, colon - sent.begin));
                c.style = ClauseStyle::role_first;
                std::set<int> authors;
                bool any_collective = false, any_individual = false;
                for (std::size_t ri : sent_res) {
                    if (resolutions[ri].span_begin > colon) {
                        collect_authors(resolutions[ri], &authors, &any_collective, &any_individual);
                    }
                }
                c.authors.assign(authors.begin(), authors.end());
                c.collective_authors = any_collective && !any_individual;
                c.unattributed = c.authors.empty();
                if (!c.text.empty()) clauses.push_back(std::move(c));
                continue;
            }

            // "<mentions>: <role list>" requires nothing but mentions and
            // connectors before the colon.
            bool only_mentions_before = mention_before;
            std::set<int> authors;
            bool any_collective = false, any_individual = false;
            for (std::size_t ri : sent_res) {
                const auto& r = resolutions[ri];
                if (r.span_begin < colon) collect_authors(r, &authors, &any_collective, &any_individual);
            }
            {
                std::size_t p = sent.begin;
                while (p < colon && only_mentions_before) {
                    bool in_res = false;
                    for (const auto& r : resolutions) {
                        if (r.span_begin == p && r.span_end <= colon) {
                            p = r.span_end;
                            in_res = true;
                            break;
                        }
                    }
                    if (in_res) continue;
                    char ch = text[p];
                    if (ch == ' ' || ch == ',' || ch == '\t') {
                        p++;
                        continue;
                    }
                    if (std::isalpha(static_cast<unsigned char>(ch))) {
                        std::size_t q = p;
                        while (q < colon && is_word_char(text[q])) q++;
                        std::string w = normalize_clause(text.substr(p, q - p));
                        if (w == "and" || w == "the") {
                            p = q;
                            continue;
                        }
                    }
                    only_mentions_before = false;
                }
            }

            if (only_mentions_before && !authors.empty()) {
                std::string tail = text.substr(colon + 1, sent.end - colon - 1);
                std::vector<std::string> phrases;
                std::string cur;
                std::size_t p = 0;
                while (p < tail.size()) {
                    if (tail[p] == ',') {
                        phrases.push_back(cur);
                        cur.clear();
                        p++;
                        continue;
                    }
                    if (tail.compare(p, 5, " and ") == 0) {
                        phrases.push_back(cur);
                        cur.clear();
                        p += 5;
                        continue;
                    }
                    cur.push_back(tail[p]);
                    p++;
                }
                phrases.push_back(cur);
                for (auto& phrase : phrases) {
                    Clause c;
                    c.text = normalize_clause(phrase);
                    if (c.text.empty()) continue;
                    c.style = ClauseStyle::author_first;
                    c.authors.assign(authors.begin(), authors.end());
                    c.collective_authors = any_collective && !any_individual;
                    clauses.push_back(std::move(c));
                }
                continue;
            }

            // Any other colon nesting: reported, never guessed.
            Clause c;
            c.text = normalize_clause(sentence_raw);
            c.unattributed = true;
            if (!c.text.empty()) clauses.push_back(std::move(c));
            continue;
        }

        // Author-first scanning: units of (subject mention group, predicates).
        struct Unit {
            std::set<int> authors;
            bool any_collective = false;
            bool any_individual = false;
            std::vector<std::vector<std::string>> predicates;
        };
        std::vector<Unit> units;
        std::vector<std::string> preamble;

        const std::size_t ntok = tokens.size();

        // True when the tokens from `from` start an independent
        // subject-predicate pair: optional connectors, a mention group, then
        // a verb.
        auto lookahead_new_unit = [&](std::size_t from) {
            std::size_t i = from;
            while (i < ntok && connector_word(tokens[i])) i++;
            if (i >= ntok || !tokens[i].is_mention) return false;
            while (i < ntok && (tokens[i].is_mention || connector_word(tokens[i]))) i++;
            return i < ntok && !tokens[i].is_mention && verb_like(tokens[i].word);
        };

        std::size_t t = 0;
        while (t < ntok && !tokens[t].is_mention) {
            bool starts_unit = false;
            if (connector_word(tokens[t])) {
                std::size_t i = t;
                while (i < ntok && connector_word(tokens[i])) i++;
                starts_unit = i < ntok && tokens[i].is_mention;
            }
            if (starts_unit) break;
            preamble.push_back(tokens[t].word);
            t++;
        }

        while (t < ntok) {
            while (t < ntok && connector_word(tokens[t])) t++;
            if (t >= ntok) break;
            if (!tokens[t].is_mention) {
                if (!units.empty()) {
                    units.back().predicates.back().push_back(tokens[t].word);
                } else {
                    preamble.push_back(tokens[t].word);
                }
                t++;
                continue;
            }

            Unit u;
            while (t < ntok) {
                if (tokens[t].is_mention) {
                    collect_authors(resolutions[tokens[t].resolution], &u.authors, &u.any_collective,
                                    &u.any_individual);
                    t++;
                } else if (connector_word(tokens[t]) && t + 1 < ntok &&
                           (tokens[t + 1].is_mention ||
                            (connector_word(tokens[t + 1]) && t + 2 < ntok && tokens[t + 2].is_mention))) {
                    t++;
                } else {
                    break;
                }
            }
            u.predicates.emplace_back();
            units.push_back(std::move(u));

            while (t < ntok) {
                const Token& tok = tokens[t];
                if (tok.is_mention) {
                    if (lookahead_new_unit(t)) break;
                    units.back().predicates.back().push_back(
                        normalize_clause(resolutions[tok.resolution].mention));
                    t++;
                    continue;
                }
                if (tok.comma_before || tok.word == "and") {
                    std::size_t from = tok.word == "and" ? t + 1 : t;
                    if (lookahead_new_unit(from)) {
                        if (tok.word == "and") t++;
                        break;
                    }
                    // Coordinated predicates share the subject only under
                    // "and"; a bare comma never splits a predicate.
                    if (tok.word == "and" && from < ntok && !tokens[from].is_mention &&
                        verb_like(tokens[from].word) && units.back().predicates.back().size() >= 2) {
                        units.back().predicates.emplace_back();
                        t++;
                        continue;
                    }
                }
                units.back().predicates.back().push_back(tok.word);
                t++;
            }
        }

        for (auto& u : units) {
            for (auto& pred : u.predicates) {
                Clause c;
                std::string body = join_words(pred);
                if (body.empty()) {
                    body = join_words(preamble);
                } else if (!preamble.empty() && &u == &units.front() && &pred == &u.predicates.front()) {
                    body = join_words(preamble) + " " + body;
                }
                c.text = body;
                if (c.text.empty()) continue;
                c.authors.assign(u.authors.begin(), u.authors.end());
                c.collective_authors = u.any_collective && !u.any_individual;
                c.style = c.collective_authors ? ClauseStyle::collective : ClauseStyle::author_first;
                c.unattributed = c.authors.empty();
                clauses.push_back(std::move(c));
            }
        }
        if (units.empty() && !preamble.empty()) {
            Clause c;
            c.text = join_words(preamble);
            c.unattributed = true;
            clauses.push_back(std::move(c));
        }
    }
    return clauses;
}

} // namespace contribmine
