#pragma once
#include <string>

namespace fixturegen {

// Deterministically generated 100-article evaluation fixture: 665 author
// entries, 505 gold task labels. Construction:
//  - team sizes are drawn from a fixed list summing to 665;
//  - every author is individually mentioned once, in a rotating surface
//    style (dotted/undotted initials, abbreviated given + surname,
//    surname-first, full name);
//  - 15 articles carry an ambiguous pair: two authors sharing an initials
//    surface that the text uses for both mentions (2 matching errors and 2
//    task errors each);
//  - 5 articles reference one author through a typo'd initial pair starting
//    with the reserved letter Q (1 matching error and 1 task error each);
//  - every other clause uses keyword-certain phrasing so the classifier's
//    output is fully determined;
//  - every article ends with a collective review sentence.
// Expected scores: author matching 630/665 globally, task accuracy 470/505.
struct FixtureBundle {
    std::string corpus_jsonl;
    std::string gold_jsonl;
    int articles = 0;
    long author_entries = 0;
    long gold_task_labels = 0;
    long gold_match_entries = 0;
    int ambiguous_articles = 0;
    int typo_articles = 0;
};

FixtureBundle generate_fixture();

} // namespace fixturegen
