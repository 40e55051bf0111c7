#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "../support/test_util.hpp"

namespace {

const std::string kBin = CONTRIBMINE_BIN;
const std::string kFixtures = CONTRIBMINE_FIXTURE_DIR;
const std::string kTaxonomy = std::string(CONTRIBMINE_DATA_DIR) + "/taxonomy.json";

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::string& args) {
    testutil::TempDir dir;
    auto out_path = dir.file("stdout.txt");
    auto err_path = dir.file("stderr.txt");
    std::string cmd = kBin + " " + args + " >" + out_path.string() + " 2>" + err_path.string();
    int status = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = testutil::read_file(out_path);
    result.err = testutil::read_file(err_path);
    return result;
}

std::string small_corpus() {
    return R"({"id":"a1","title":"T1","venue":"V","year":2020,"authors":["Alan Bell","Clara Dorn"],"contribution_text":"A.B. analyzed the data. C.D. wrote the initial draft. All authors reviewed the manuscript."})"
           "\n"
           R"({"id":"a2","title":"T2","venue":"V","year":2021,"authors":["Mira Fuchs","Ilan Arad","Nora Quist"],"contribution_text":"M.F. developed the methodology. I.A. performed the experiments. Supervision: N.Q."})"
           "\n";
}

} // namespace

TEST_CASE("missing required flag exits 2 with usage") {
    auto r = run_cli("pipeline");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("--corpus") != std::string::npos);
}

TEST_CASE("unknown flag exits 2 with usage") {
    auto r = run_cli("mine --bogus 1");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("Usage") != std::string::npos);
}

TEST_CASE("unknown subcommand exits 2") {
    auto r = run_cli("frobnicate");
    CHECK(r.exit_code == 2);
}

TEST_CASE("ingest reports counts and diagnostics") {
    testutil::TempDir dir;
    auto corpus = dir.file("c.jsonl");
    testutil::write_file(corpus, small_corpus() +
                                     R"({"id":"bad","authors":[],"contribution_text":"x"})"
                                     "\n");
    auto r = run_cli("ingest --corpus " + corpus.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("usable_records\t2") != std::string::npos);
    CHECK(r.out.find("rejected_records\t1") != std::string::npos);
    CHECK(r.err.find("3\tempty byline") != std::string::npos);
}

TEST_CASE("duplicate ids are a validation error: exit 1") {
    testutil::TempDir dir;
    auto corpus = dir.file("dup.jsonl");
    std::string line =
        R"({"id":"a1","authors":["Alan Bell"],"contribution_text":"A.B. analyzed the data."})";
    testutil::write_file(corpus, line + "\n" + line + "\n");
    auto r = run_cli("ingest --corpus " + corpus.string());
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("duplicate") != std::string::npos);
}

TEST_CASE("classify + eval CLI round trip") {
    testutil::TempDir dir;
    auto corpus = dir.file("c.jsonl");
    testutil::write_file(corpus, small_corpus());
    auto assignments = dir.file("a.jsonl");
    auto resolutions = dir.file("r.jsonl");
    auto diagnostics = dir.file("d.tsv");

    auto r = run_cli("classify --corpus " + corpus.string() + " --taxonomy " + kTaxonomy +
                     " --out " + assignments.string() + " --resolutions " + resolutions.string() +
                     " --diagnostics " + diagnostics.string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("articles\t2") != std::string::npos);

    // both dumps exist and parse
    std::string res_text = testutil::read_file(resolutions);
    CHECK(res_text.find("\"method\":\"exact\"") != std::string::npos);

    auto gold = dir.file("gold.jsonl");
    testutil::write_file(
        gold,
        R"({"article_id":"a1","gold_tasks":[[1,"formal analysis"],[2,"writing – original draft"]],"gold_matches":[["A.B.",1],["C.D.",2]]})"
        "\n"
        R"({"article_id":"a2","gold_tasks":[[1,"methodology"],[2,"investigation"],[3,"supervision"]],"gold_matches":[["M.F.",1],["I.A.",2],["N.Q.",3]]})"
        "\n");
    auto report = dir.file("report.json");
    auto r2 = run_cli("eval --gold " + gold.string() + " --pred " + assignments.string() +
                      " --resolutions " + resolutions.string() + " --out " + report.string());
    REQUIRE(r2.exit_code == 0);
    nlohmann::json rep = nlohmann::json::parse(testutil::read_file(report));
    CHECK(rep["task"]["global_accuracy"].get<double>() == 1.0);
    CHECK(rep["author_match"]["global_accuracy"].get<double>() == 1.0);
}

TEST_CASE("mine CLI writes the pinned CSV for a tiny input") {
    testutil::TempDir dir;
    auto assignments = dir.file("a.jsonl");
    testutil::write_file(
        assignments,
        R"({"article_id":"x1","author_index":1,"author_name":"A","category":"software","layer":"keyword","evidence":"code"})"
        "\n"
        R"({"article_id":"x1","author_index":2,"author_name":"B","category":"methodology","layer":"keyword","evidence":"model"})"
        "\n"
        R"({"article_id":"x2","author_index":1,"author_name":"C","category":"software","layer":"keyword","evidence":"code"})"
        "\n");
    auto itemsets = dir.file("items.csv");
    auto pairs = dir.file("pairs.csv");
    auto r = run_cli("mine --assignments " + assignments.string() + " --min-support 0.5 --out " +
                     itemsets.string() + " --pairs " + pairs.string());
    REQUIRE(r.exit_code == 0);
    std::string csv = testutil::read_file(itemsets);
    CHECK(csv == "items,size,support\n\"software\",1,1.0000\n\"methodology\",1,0.5000\n"
                 "\"methodology|software\",2,0.5000\n");
    std::string pairs_csv = testutil::read_file(pairs);
    CHECK(pairs_csv.find("# support is the symmetric pair support") != std::string::npos);
    CHECK(pairs_csv.find("\"methodology\",\"software\",0.5000") != std::string::npos);
    CHECK(pairs_csv.find("\"software\",\"methodology\",0.5000") != std::string::npos);
}

TEST_CASE("stats --format json writes stats.json") {
    testutil::TempDir dir;
    auto assignments = dir.file("a.jsonl");
    testutil::write_file(
        assignments,
        R"({"article_id":"x1","author_index":1,"author_name":"A","category":"software","layer":"keyword","evidence":"code"})"
        "\n"
        R"({"article_id":"x1","author_index":2,"author_name":"B","category":"supervision","layer":"keyword","evidence":"supervision"})"
        "\n");
    auto out_dir = dir.file("stats");
    auto r = run_cli("stats --assignments " + assignments.string() + " --out-dir " +
                     out_dir.string() + " --format json");
    REQUIRE(r.exit_code == 0);
    nlohmann::json obj = nlohmann::json::parse(testutil::read_file(out_dir / "stats.json"));
    CHECK(obj["distribution"]["software"].get<double>() == 0.5);
}

TEST_CASE("predict rows/train/eval CLI round trip on the fixture") {
    testutil::TempDir dir;
    auto rows = dir.file("rows.jsonl");
    auto r1 = run_cli("predict rows --assignments " +
                      (std::filesystem::path(kFixtures) / "golden_assignments.jsonl").string() +
                      " --corpus " + (std::filesystem::path(kFixtures) / "corpus_100.jsonl").string() +
                      " --out " + rows.string());
    REQUIRE(r1.exit_code == 0);

    auto model = dir.file("model.bin");
    auto r2 = run_cli("predict train --rows " + rows.string() + " --model dummy --seed 42 --out " +
                      model.string());
    REQUIRE(r2.exit_code == 0);
    std::string magic = testutil::read_file(model).substr(0, 8);
    CHECK(magic == "CTRBMDL1");

    auto table = dir.file("table.csv");
    auto r3 = run_cli("predict eval --rows " + rows.string() + " --seed 42 --out " + table.string());
    REQUIRE(r3.exit_code == 0);
    std::string csv = testutil::read_file(table);
    CHECK(csv.find("category,dummy,logistic,boosted_trees") != std::string::npos);
    CHECK(csv.find("mean,") != std::string::npos);

    // identical invocation gives identical bytes
    auto table2 = dir.file("table2.csv");
    auto r4 = run_cli("predict eval --rows " + rows.string() + " --seed 42 --out " + table2.string());
    REQUIRE(r4.exit_code == 0);
    CHECK(testutil::read_file(table) == testutil::read_file(table2));
}

TEST_CASE("pipeline produces the documented output tree") {
    testutil::TempDir dir;
    auto corpus = dir.file("c.jsonl");
    testutil::write_file(corpus, small_corpus());
    auto out_dir = dir.file("out");
    auto r = run_cli("pipeline --corpus " + corpus.string() + " --taxonomy " + kTaxonomy +
                     " --out-dir " + out_dir.string());
    REQUIRE(r.exit_code == 0);
    for (const char* f : {"assignments.jsonl", "itemsets.csv", "distribution.csv",
                          "tasks_by_position.csv", "share_by_position.csv",
                          "task_position_relation.csv", "disparity.csv", "fit.json"}) {
        INFO("missing " << f);
        CHECK(std::filesystem::exists(out_dir / f));
    }
}

TEST_CASE("CONTRIBMINE_TAXONOMY provides the default taxonomy path") {
    testutil::TempDir dir;
    auto corpus = dir.file("c.jsonl");
    testutil::write_file(corpus, small_corpus());
    auto assignments = dir.file("a.jsonl");

    // without any taxonomy: exit 2
    auto cleared = run_cli("classify --corpus " + corpus.string() + " --out " + assignments.string());
    CHECK(cleared.exit_code == 2);

    setenv("CONTRIBMINE_TAXONOMY", kTaxonomy.c_str(), 1);
    auto r = run_cli("classify --corpus " + corpus.string() + " --out " + assignments.string());
    unsetenv("CONTRIBMINE_TAXONOMY");
    CHECK(r.exit_code == 0);
}

TEST_CASE("vector-file embedder selector plugs into classify") {
    testutil::TempDir dir;
    auto corpus = dir.file("c.jsonl");
    // one semantic-only clause so the provider is actually consulted
    testutil::write_file(
        corpus,
        R"({"id":"v1","title":"T","venue":"V","year":2020,"authors":["Alan Bell"],"contribution_text":"A.B. compiled numerical summaries of measurements."})"
        "\n");

    // a vector file covering every taxonomy phrase plus the clause
    nlohmann::json vecs = nlohmann::json::object();
    nlohmann::json taxonomy = nlohmann::json::parse(testutil::read_file(kTaxonomy));
    int i = 0;
    for (auto it = taxonomy.begin(); it != taxonomy.end(); ++it, ++i) {
        for (const auto& kw : it.value()["keywords"]) {
            vecs[kw.get<std::string>()] = {1.0 * i, 1.0, 0.0};
        }
        for (const auto& ex : it.value()["examples"]) {
            vecs[ex.get<std::string>()] = {1.0 * i, 0.0, 1.0};
        }
    }
    vecs["compiled numerical summaries of measurements"] = {0.0, 1.0, 1.0};
    auto vec_path = dir.file("vectors.json");
    testutil::write_file(vec_path, vecs.dump());

    auto assignments = dir.file("a.jsonl");
    auto r = run_cli("classify --corpus " + corpus.string() + " --taxonomy " + kTaxonomy +
                     " --embedder vectors:" + vec_path.string() + " --out " + assignments.string());
    REQUIRE(r.exit_code == 0);
    std::string out = testutil::read_file(assignments);
    CHECK(out.find("\"layer\":\"semantic\"") != std::string::npos);
}
