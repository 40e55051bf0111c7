#include "contribmine/name_resolver.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace contribmine {

namespace {

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

std::string to_lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string to_upper(std::string s) {
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

// Lowercase undotted pure-initial surfaces that collide with common words are
// never emitted as candidates; matching them would attribute ordinary prose
// to an author.
const std::unordered_set<std::string>& initials_stopwords() {
    static const std::unordered_set<std::string> words = {
        "and", "the", "for", "was", "were", "are", "not", "all", "both", "who",
        "has", "had", "did", "its", "one", "two", "six", "ten", "but", "our",
        "per", "via", "due", "use", "led", "ran", "data", "code", "work", "team",
        "from", "this", "that", "with", "also", "made", "used", "each", "into",
    };
    return words;
}

struct Builder {
    std::map<std::string, AcronymCandidate> out;

    void add(std::string surface, VariantOrdering o, VariantMiddle m, VariantPunct p, VariantCasing c) {
        if (surface.empty()) return;
        out.emplace(std::move(surface), AcronymCandidate{"", o, m, p, c});
    }
};

VariantPunct classify_punct(const std::string& s) {
    if (s.find('.') != std::string::npos) return VariantPunct::dots;
    if (s.find('-') != std::string::npos) return VariantPunct::hyphenated;
    if (s.find(' ') != std::string::npos) return VariantPunct::spaced;
    return VariantPunct::none;
}

// Renders an initial sequence with one separator choice per gap plus an
// optional terminal dot: "J.D.S.", "JDS", "J D-S", ...
void render_initials_product(const std::vector<char>& initials, Builder& b, VariantOrdering ord,
                             VariantMiddle mid) {
    static const std::array<std::string, 5> seps = {"", ".", ". ", " ", "-"};
    const std::size_t gaps = initials.size() - 1;

    // Full per-gap product for short sequences, uniform separators otherwise.
    std::vector<std::vector<std::size_t>> gap_choices;
    if (gaps == 0) {
        gap_choices.push_back({});
    } else if (gaps <= 4) {
        std::vector<std::size_t> cur(gaps, 0);
        while (true) {
            gap_choices.push_back(cur);
            std::size_t i = 0;
            while (i < gaps && ++cur[i] == seps.size()) cur[i++] = 0;
            if (i == gaps) break;
        }
    } else {
        for (std::size_t s = 0; s < seps.size(); s++) gap_choices.emplace_back(gaps, s);
    }

    for (const auto& choice : gap_choices) {
        for (int terminal = 0; terminal < 2; terminal++) {
            std::string surf;
            for (std::size_t i = 0; i < initials.size(); i++) {
                surf.push_back(initials[i]);
                if (i + 1 < initials.size()) surf += seps[choice[i]];
            }
            if (terminal) surf.push_back('.');
            VariantPunct p = classify_punct(surf);
            b.add(surf, ord, mid, p, VariantCasing::mixed);
            b.add(to_upper(surf), ord, mid, p, VariantCasing::upper);
            std::string low = to_lower(surf);
            // Undotted lowercase initials shorter than three letters, or that
            // spell a common word, stay out of the candidate set.
            bool undotted = surf.find('.') == std::string::npos && surf.find('-') == std::string::npos &&
                            surf.find(' ') == std::string::npos;
            if (undotted && (low.size() < 3 || initials_stopwords().count(low))) continue;
            if (!undotted && initials_stopwords().count(low)) continue;
            b.add(low, ord, mid, p, VariantCasing::lower);
        }
    }
}

// Uniform-separator renderings of an initial sequence ("J.D.", "JD", "J. D.",
// "J D", "J-D", each with and without the terminal dot).
std::vector<std::string> render_initials_uniform(const std::vector<char>& initials) {
    static const std::array<std::string, 5> seps = {"", ".", ". ", " ", "-"};
    std::set<std::string> out;
    for (const auto& sep : seps) {
        for (int terminal = 0; terminal < 2; terminal++) {
            std::string surf;
            for (std::size_t i = 0; i < initials.size(); i++) {
                surf.push_back(initials[i]);
                if (i + 1 < initials.size()) surf += sep;
            }
            if (terminal) surf.push_back('.');
            out.insert(surf);
        }
    }
    return {out.begin(), out.end()};
}

std::string join_tokens(const FullName& name, std::size_t begin, std::size_t end) {
    std::string out;
    for (std::size_t i = begin; i < end; i++) {
        out += name.tokens[i];
        if (i + 1 < end) out += name.hyphen_after[i] ? "-" : " ";
    }
    return out;
}

} // namespace

std::vector<AcronymCandidate> generate_acronym_candidates(const FullName& name) {
    Builder b;
    if (name.tokens.empty()) return {};

    const std::size_t sb = name.surname_begin;
    std::vector<char> given_initials, middle_initials, surname_initials;
    for (std::size_t i = 0; i < sb; i++) {
        (i == 0 ? given_initials : middle_initials).push_back(name.tokens[i][0]);
    }
    for (std::size_t i = sb; i < name.tokens.size(); i++) surname_initials.push_back(name.tokens[i][0]);
    const char surname_last_initial = name.tokens.back()[0];

    const std::string surname_full = join_tokens(name, sb, name.tokens.size());
    const std::string surname_last = name.tokens.back();
    std::set<std::string> surname_forms = {surname_full, surname_last};

    const bool has_given = !given_initials.empty();
    const bool has_middle = !middle_initials.empty();

    // Initial sequences: with/without middles, full surname initials or the
    // last surname token's initial only.
    std::set<std::vector<char>> initial_seqs;
    auto add_seq = [&](bool with_middle, bool compact_surname) {
        std::vector<char> seq;
        if (has_given) seq.push_back(given_initials[0]);
        if (with_middle) seq.insert(seq.end(), middle_initials.begin(), middle_initials.end());
        if (compact_surname) {
            seq.push_back(surname_last_initial);
        } else {
            seq.insert(seq.end(), surname_initials.begin(), surname_initials.end());
        }
        initial_seqs.insert(std::move(seq));
    };
    add_seq(true, false);
    add_seq(true, true);
    if (has_middle) {
        add_seq(false, false);
        add_seq(false, true);
    }

    // A. Pure-initial acronyms, given-first.
    for (const auto& seq : initial_seqs) {
        bool with_middle = has_middle && seq.size() > (has_given ? 1u : 0u) + 1u &&
                           std::equal(middle_initials.begin(), middle_initials.end(), seq.begin() + 1);
        render_initials_product(seq, b, VariantOrdering::given_first,
                                with_middle ? VariantMiddle::included : VariantMiddle::omitted);
    }

    if (has_given) {
        // Given-part sub-sequences: first initial alone and first+middles.
        std::set<std::vector<char>> given_seqs;
        given_seqs.insert({given_initials[0]});
        if (has_middle) {
            std::vector<char> with_mid = {given_initials[0]};
            with_mid.insert(with_mid.end(), middle_initials.begin(), middle_initials.end());
            given_seqs.insert(std::move(with_mid));
        }

        // Full-given forms: "John" and "John D." style.
        std::set<std::string> given_full_forms = {name.tokens[0]};
        if (has_middle) {
            for (const auto& mid : render_initials_uniform(middle_initials)) {
                given_full_forms.insert(name.tokens[0] + " " + mid);
            }
        }

        for (const auto& gseq : given_seqs) {
            VariantMiddle mid = gseq.size() > 1 ? VariantMiddle::included : VariantMiddle::omitted;
            for (const auto& grender : render_initials_uniform(gseq)) {
                // B. Abbreviated given + full surname: "J. D. Smith", "JD Smith", "jd.smith".
                for (const auto& sform : surname_forms) {
                    for (const char* join : {" ", "."}) {
                        if (join[0] == '.' && !grender.empty() && grender.back() == '.') continue;
                        std::string surf = grender + join + sform;
                        VariantPunct p = classify_punct(surf);
                        b.add(surf, VariantOrdering::given_first, mid, p, VariantCasing::mixed);
                        b.add(to_lower(surf), VariantOrdering::given_first, mid, p, VariantCasing::lower);
                    }
                }
                // D. Surname-first with abbreviated given: "Smith J.D.", "Smith, J.D.", "smith.j.d".
                for (const auto& sform : surname_forms) {
                    for (const char* join : {" ", ", ", "."}) {
                        std::string surf = sform + join + grender;
                        VariantPunct p = classify_punct(surf);
                        b.add(surf, VariantOrdering::surname_first, mid, p, VariantCasing::mixed);
                        b.add(to_lower(surf), VariantOrdering::surname_first, mid, p, VariantCasing::lower);
                    }
                }
            }
        }

        // C. Full given + abbreviated surname: "John S.", "John D. S.".
        {
            std::set<std::vector<char>> tail_seqs = {{surname_last_initial}};
            if (surname_initials.size() > 1) tail_seqs.insert(surname_initials);
            std::set<std::vector<char>> mid_plus_tail;
            for (const auto& tail : tail_seqs) {
                mid_plus_tail.insert(tail);
                if (has_middle) {
                    std::vector<char> seq = middle_initials;
                    seq.insert(seq.end(), tail.begin(), tail.end());
                    mid_plus_tail.insert(std::move(seq));
                }
            }
            for (const auto& seq : mid_plus_tail) {
                VariantMiddle mid = (has_middle && seq.size() > surname_initials.size())
                                        ? VariantMiddle::included
                                        : VariantMiddle::omitted;
                for (const auto& render : render_initials_uniform(seq)) {
                    std::string surf = name.tokens[0] + " " + render;
                    VariantPunct p = classify_punct(surf);
                    b.add(surf, VariantOrdering::given_first, mid, p, VariantCasing::mixed);
                    b.add(to_lower(surf), VariantOrdering::given_first, mid, p, VariantCasing::lower);
                }
            }
        }

        // D'. Surname-first with full given: "Smith John D", "smith john d".
        for (const auto& sform : surname_forms) {
            for (const auto& gform : given_full_forms) {
                for (const char* join : {" ", ", "}) {
                    std::string surf = sform + join + gform;
                    VariantPunct p = classify_punct(surf);
                    b.add(surf, VariantOrdering::surname_first,
                          gform.size() > name.tokens[0].size() ? VariantMiddle::included
                                                               : VariantMiddle::omitted,
                          p, VariantCasing::mixed);
                    b.add(to_lower(surf), VariantOrdering::surname_first,
                          gform.size() > name.tokens[0].size() ? VariantMiddle::included
                                                               : VariantMiddle::omitted,
                          p, VariantCasing::lower);
                }
            }
        }
    }

    // Full printed name (and its lowercase form) so whole-name mentions
    // resolve through the same machinery.
    {
        std::string full = join_tokens(name, 0, name.tokens.size());
        VariantPunct p = classify_punct(full);
        b.add(full, VariantOrdering::given_first, VariantMiddle::included, p, VariantCasing::mixed);
        b.add(to_lower(full), VariantOrdering::given_first, VariantMiddle::included, p, VariantCasing::lower);
        if (name.raw != full) {
            b.add(name.raw, VariantOrdering::given_first, VariantMiddle::included,
                  classify_punct(name.raw), VariantCasing::mixed);
        }
    }

    std::vector<AcronymCandidate> out;
    out.reserve(b.out.size());
    for (auto& [surface, cand] : b.out) {
        cand.surface = surface;
        out.push_back(cand);
    }
    return out;
}

std::string_view resolve_method_name(ResolveMethod m) {
    switch (m) {
        case ResolveMethod::exact: return "exact";
        case ResolveMethod::fallback: return "fallback";
        case ResolveMethod::collective: return "collective";
        case ResolveMethod::unmatched: return "unmatched";
    }
    return "unmatched";
}

std::string_view collective_marker_name(CollectiveMarker m) {
    switch (m) {
        case CollectiveMarker::all: return "all";
        case CollectiveMarker::both: return "both";
        case CollectiveMarker::remaining: return "remaining";
        case CollectiveMarker::none: break;
    }
    return "none";
}

namespace {

struct CollectivePhrase {
    std::string phrase; // lowercase
    CollectiveMarker marker;
};

const std::vector<CollectivePhrase>& collective_phrases() {
    static const std::vector<CollectivePhrase> phrases = {
        {"all authors", CollectiveMarker::all},
        {"all the authors", CollectiveMarker::all},
        {"both authors", CollectiveMarker::both},
        {"remaining authors", CollectiveMarker::remaining},
        {"other authors", CollectiveMarker::remaining},
    };
    return phrases;
}

bool matches_at_ci(const std::string& text, std::size_t pos, const std::string& lower_phrase) {
    if (pos + lower_phrase.size() > text.size()) return false;
    for (std::size_t i = 0; i < lower_phrase.size(); i++) {
        if (std::tolower(static_cast<unsigned char>(text[pos + i])) != lower_phrase[i]) return false;
    }
    std::size_t end = pos + lower_phrase.size();
    return end == text.size() || !is_word_char(text[end]);
}

// Strips dots, hyphens, commas and spaces and casefolds; the one documented
// fallback comparison for mentions missing from the exact candidate sets.
std::string normalize_mention(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '.' || c == '-' || c == ',' || c == ' ') continue;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

// Mention-like tokens: single letters joined by dots or hyphens ("Q.Z.",
// "J-Q", "q.z"), at least two letters, at least one separator. Returns the
// end offset or pos when no such token starts here.
std::size_t scan_mention_like(const std::string& text, std::size_t pos) {
    std::size_t i = pos;
    std::size_t letters = 0;
    bool separator_seen = false;
    while (i < text.size()) {
        if (!std::isalpha(static_cast<unsigned char>(text[i]))) break;
        if (i + 1 < text.size() && is_word_char(text[i + 1])) break; // multi-char token
        letters++;
        i++;
        if (i < text.size() && (text[i] == '.' || text[i] == '-')) {
            if (i + 1 < text.size() && std::isalpha(static_cast<unsigned char>(text[i + 1])) &&
                !(i + 2 < text.size() && is_word_char(text[i + 2]))) {
                separator_seen = true;
                i++;
                continue;
            }
            if (text[i] == '.') {
                i++; // trailing dot
                if (letters >= 2 || separator_seen) break;
            }
            break;
        }
        break;
    }
    if (letters < 2 || !separator_seen) return pos;
    return i;
}

const std::unordered_set<std::string>& mention_like_exclusions() {
    static const std::unordered_set<std::string> ex = {"eg", "ie", "cf", "vs", "al"};
    return ex;
}

} // namespace

std::vector<MentionResolution> resolve_mentions(const std::string& text,
                                                const std::vector<FullName>& byline) {
    struct Entry {
        std::set<int> authors;
        bool full_name = false;
    };
    // Surfaces bucketed by first character, longest first, for the scan.
    std::unordered_map<std::string, Entry> surfaces;
    std::unordered_map<std::string, std::set<int>> normalized;

    for (std::size_t a = 0; a < byline.size(); a++) {
        int idx = static_cast<int>(a) + 1;
        const FullName& name = byline[a];
        std::string joined;
        for (std::size_t i = 0; i < name.tokens.size(); i++) {
            joined += name.tokens[i];
            if (i + 1 < name.tokens.size()) joined += name.hyphen_after[i] ? "-" : " ";
        }
        std::set<std::string> full_surfaces = {name.raw, to_lower(name.raw), joined, to_lower(joined)};
        for (const auto& cand : generate_acronym_candidates(name)) {
            Entry& e = surfaces[cand.surface];
            e.authors.insert(idx);
            if (full_surfaces.count(cand.surface)) e.full_name = true;
            normalized[normalize_mention(cand.surface)].insert(idx);
        }
    }

    std::map<char, std::vector<const std::pair<const std::string, Entry>*>> by_first;
    for (const auto& kv : surfaces) by_first[kv.first[0]].push_back(&kv);
    for (auto& [c, vec] : by_first) {
        std::sort(vec.begin(), vec.end(), [](const auto* a, const auto* b) {
            if (a->first.size() != b->first.size()) return a->first.size() > b->first.size();
            return a->first < b->first;
        });
    }

    std::vector<MentionResolution> out;
    std::set<int> resolved_in_sentence;
    const int n = static_cast<int>(byline.size());

    // A mention-final dot doubles as a sentence terminator when the next
    // token starts with an uppercase letter ("...by J.D.S. All authors...").
    auto ends_sentence_after = [&](std::size_t end) {
        if (end == 0 || text[end - 1] != '.') return false;
        std::size_t i = end;
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n')) i++;
        return i == text.size() || std::isupper(static_cast<unsigned char>(text[i])) != 0;
    };

    std::size_t pos = 0;
    while (pos < text.size()) {
        char c = text[pos];
        if (c == '.' || c == ';') {
            resolved_in_sentence.clear();
            pos++;
            continue;
        }
        bool boundary = pos == 0 || !is_word_char(text[pos - 1]);
        if (!boundary || !is_word_char(c)) {
            pos++;
            continue;
        }

        // Collective phrases first.
        bool matched = false;
        for (const auto& cp : collective_phrases()) {
            if (!matches_at_ci(text, pos, cp.phrase)) continue;
            MentionResolution r;
            r.span_begin = pos;
            r.span_end = pos + cp.phrase.size();
            r.mention = text.substr(pos, cp.phrase.size());
            r.collective = cp.marker;
            r.method = ResolveMethod::collective;
            if (cp.marker == CollectiveMarker::remaining) {
                for (int i = 1; i <= n; i++) {
                    if (!resolved_in_sentence.count(i)) r.indices.push_back(i);
                }
            } else {
                for (int i = 1; i <= n; i++) r.indices.push_back(i);
            }
            for (int i : r.indices) resolved_in_sentence.insert(i);
            pos = r.span_end;
            if (ends_sentence_after(pos)) resolved_in_sentence.clear();
            out.push_back(std::move(r));
            matched = true;
            break;
        }
        if (matched) continue;

        // Exact candidate surfaces, longest first; full-name matches win.
        auto bucket = by_first.find(c);
        const std::pair<const std::string, Entry>* best = nullptr;
        const std::pair<const std::string, Entry>* best_full = nullptr;
        if (bucket != by_first.end()) {
            for (const auto* kv : bucket->second) {
                const std::string& surf = kv->first;
                if (pos + surf.size() > text.size()) continue;
                if (text.compare(pos, surf.size(), surf) != 0) continue;
                std::size_t end = pos + surf.size();
                if (end < text.size() && is_word_char(text[end])) continue;
                if (kv->second.full_name && !best_full) best_full = kv;
                if (!best) best = kv;
                if (best_full) break;
            }
        }
        const auto* hit = best_full ? best_full : best;
        if (hit) {
            MentionResolution r;
            r.span_begin = pos;
            r.span_end = pos + hit->first.size();
            r.mention = hit->first;
            r.indices.assign(hit->second.authors.begin(), hit->second.authors.end());
            r.method = ResolveMethod::exact;
            for (int i : r.indices) resolved_in_sentence.insert(i);
            pos = r.span_end;
            if (ends_sentence_after(pos)) resolved_in_sentence.clear();
            out.push_back(std::move(r));
            continue;
        }

        // Mention-like token with no exact match: try the fallback comparison,
        // otherwise report it unmatched.
        std::size_t like_end = scan_mention_like(text, pos);
        if (like_end > pos) {
            std::string surf = text.substr(pos, like_end - pos);
            std::string norm = normalize_mention(surf);
            if (mention_like_exclusions().count(norm)) {
                pos = like_end;
                continue;
            }
            MentionResolution r;
            r.span_begin = pos;
            r.span_end = like_end;
            r.mention = surf;
            auto fb = normalized.find(norm);
            if (fb != normalized.end() && !fb->second.empty()) {
                r.indices.assign(fb->second.begin(), fb->second.end());
                r.method = ResolveMethod::fallback;
                for (int i : r.indices) resolved_in_sentence.insert(i);
            } else {
                r.method = ResolveMethod::unmatched;
            }
            pos = like_end;
            if (ends_sentence_after(pos)) resolved_in_sentence.clear();
            out.push_back(std::move(r));
            continue;
        }

        // Ordinary word; skip it whole.
        while (pos < text.size() && is_word_char(text[pos])) pos++;
    }
    return out;
}

} // namespace contribmine
