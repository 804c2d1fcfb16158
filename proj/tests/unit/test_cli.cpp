#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tweetsense/cli.hpp"
#include "tweetsense/util.hpp"

using namespace tweetsense;
namespace fs = std::filesystem;

namespace {

const fs::path kRoot = TWEETSENSE_SOURCE_DIR;

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const char* name) {
        path = fs::temp_directory_path() / name;
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str(const char* child) const { return (path / child).string(); }
};

void write(const fs::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary);
    f << content;
}

// two-word lexicon and a four-tweet corpus, enough for every stage
void make_stage_inputs(const TempDir& dir) {
    write(dir.path / "lex.tsv", "good\t2.0\nbad\t-2.0\n");
    write(dir.path / "emo.tsv",
          "panic\tfear\t1\npanic\tsadness\t0\ncalm\ttrust\t1\n");
    write(dir.path / "cities.csv",
          "name,country,subcountry,geonameid\n"
          "Paris,France,Ile-de-France,1\n"
          "Toronto,Canada,Ontario,2\n");
    write(dir.path / "raw.csv",
          "id,text,date,user_location\n"
          "1,this is good good,2020-03-01,Paris\n"
          "2,very bad panic,2020-03-02,Toronto\n"
          "3,nothing here,2020-03-02,\n"
          "4,calm and good,2020-04-05,Atlantis\n");
}

} // namespace

TEST_CASE("cli rejects unknown subcommands and reports usage") {
    RunResult r = run_cli({"frobnicate"});
    CHECK(r.code == cli::kUsageError);
    CHECK(r.err.find("Usage") != std::string::npos);

    RunResult empty = run_cli({});
    CHECK(empty.code == cli::kUsageError);

    RunResult help = run_cli({"--help"});
    CHECK(help.code == cli::kOk);
    CHECK(help.out.find("pipeline") != std::string::npos);

    RunResult sub_help = run_cli({"label", "--help"});
    CHECK(sub_help.code == cli::kOk);
    CHECK(sub_help.out.find("--lexicon") != std::string::npos);

    RunResult missing_flag = run_cli({"label", "--in", "x.jsonl"});
    CHECK(missing_flag.code == cli::kUsageError);
}

TEST_CASE("cli maps missing files to the data-error exit code") {
    TempDir dir("tws_cli_missing");
    RunResult r = run_cli({"label", "--in", dir.str("absent.jsonl"),
                           "--lexicon", dir.str("absent.tsv"), "--out",
                           dir.str("out.jsonl")});
    CHECK(r.code == cli::kDataError);
    CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("stage subcommands chain through files") {
    TempDir dir("tws_cli_stages");
    make_stage_inputs(dir);

    RunResult ingest = run_cli({"ingest", "--in", dir.str("raw.csv"),
                                "--format", "csv", "--out",
                                dir.str("corpus.jsonl")});
    REQUIRE(ingest.code == cli::kOk);
    CHECK(ingest.out.find("ingested 4 records") != std::string::npos);

    RunResult label = run_cli({"label", "--in", dir.str("corpus.jsonl"),
                               "--lexicon", dir.str("lex.tsv"), "--out",
                               dir.str("labeled.jsonl")});
    REQUIRE(label.code == cli::kOk);
    CHECK(label.out.find("2 positive") != std::string::npos);
    CHECK(label.out.find("1 neutral") != std::string::npos);
    CHECK(label.out.find("1 negative") != std::string::npos);

    RunResult resolve = run_cli({"resolve", "--in", dir.str("labeled.jsonl"),
                                 "--cities", dir.str("cities.csv"), "--out",
                                 dir.str("resolved.jsonl")});
    REQUIRE(resolve.code == cli::kOk);
    CHECK(resolve.out.find("resolved 2 locations") != std::string::npos);
    CHECK(resolve.out.find("1 unresolved") != std::string::npos);
    CHECK(resolve.out.find("1 without location") != std::string::npos);

    RunResult emotions = run_cli({"emotions", "--in", dir.str("resolved.jsonl"),
                                  "--emotion-lexicon", dir.str("emo.tsv"),
                                  "--out", dir.str("scored.jsonl")});
    REQUIRE(emotions.code == cli::kOk);
    CHECK(emotions.out.find("2 carry at least one") != std::string::npos);

    RunResult agg = run_cli({"aggregate", "--in", dir.str("scored.jsonl"),
                             "--out", dir.str("series.csv"), "--granularity",
                             "month"});
    REQUIRE(agg.code == cli::kOk);
    std::string series = read_file(dir.str("series.csv"));
    CHECK(series.find("period,country,label,count,percentage\n") == 0);
    CHECK(series.find("2020-03,ALL,Positive,1,33.333333") != std::string::npos);
    CHECK(series.find("2020-04,ALL,Positive,1,100.000000") != std::string::npos);

    RunResult extremes = run_cli({"extremes", "--in", dir.str("scored.jsonl"),
                                  "--out", dir.str("rank.csv"), "--metric",
                                  "pos_share", "--min-tweets", "1"});
    REQUIRE(extremes.code == cli::kOk);
    std::string rank = read_file(dir.str("rank.csv"));
    CHECK(rank.find("country,n_tweets,metric,value\n") == 0);
    CHECK(rank.find("France,1,pos_share,1.000000") != std::string::npos);
    CHECK(rank.find("Canada,1,pos_share,0.000000") != std::string::npos);
}

TEST_CASE("cases subcommand aggregates and validates the country") {
    TempDir dir("tws_cli_cases");
    write(dir.path / "cases.csv",
          "date,country,confirmed,deaths,recovered\n"
          "2020-03-01,Xland,5,0,0\n"
          "2020-03-02,Xland,7,0,0\n"
          "2020-04-01,Xland,10,0,0\n");

    RunResult r = run_cli({"cases", "--in", dir.str("cases.csv"), "--out",
                           dir.str("series.csv"), "--mode", "daily-new",
                           "--granularity", "month"});
    REQUIRE(r.code == cli::kOk);
    std::string series = read_file(dir.str("series.csv"));
    CHECK(series.find("2020-03,ALL,confirmed,7,\n") != std::string::npos);
    CHECK(series.find("2020-04,ALL,confirmed,3,\n") != std::string::npos);

    RunResult bad = run_cli({"cases", "--in", dir.str("cases.csv"), "--out",
                             dir.str("series.csv"), "--country", "Yland"});
    CHECK(bad.code == cli::kDataError);
    CHECK(bad.err.find("Yland") != std::string::npos);
}

TEST_CASE("train and evaluate round-trip through a checkpoint file") {
    TempDir dir("tws_cli_train");
    std::string corpus;
    const char* texts[3] = {"awful dreadful mess", "table by the window",
                            "lovely superb day"};
    const char* labels[3] = {"Negative", "Neutral", "Positive"};
    int id = 1;
    for (int rep = 0; rep < 8; ++rep) {
        for (int c = 0; c < 3; ++c) {
            corpus += "{\"id\":\"t" + std::to_string(id++) + "\",\"text\":\""
                      + texts[c] + "\",\"date\":\"2020-03-0"
                      + std::to_string(1 + rep % 9) + "\",\"polarity\":\""
                      + labels[c] + "\",\"compound\":0.0}\n";
        }
    }
    write(dir.path / "labeled.jsonl", corpus);

    RunResult train = run_cli({"train", "--in", dir.str("labeled.jsonl"),
                               "--model", "mlp", "--epochs", "20", "--vocab",
                               "30", "--hidden", "8", "--out",
                               dir.str("model.bin"), "--history",
                               dir.str("history.csv")});
    REQUIRE(train.code == cli::kOk);
    CHECK(train.out.find("trained mlp on 24 labeled records")
          != std::string::npos);
    CHECK(fs::exists(dir.path / "model.bin"));
    std::string history = read_file(dir.str("history.csv"));
    CHECK(history.find("epoch,train_loss,train_acc,val_acc\n") == 0);

    RunResult eval = run_cli({"evaluate", "--in", dir.str("labeled.jsonl"),
                              "--model", dir.str("model.bin"), "--out",
                              dir.str("metrics.json")});
    REQUIRE(eval.code == cli::kOk);
    CHECK(eval.out.find("mlp accuracy 1.0000 on 24 records")
          != std::string::npos);
    std::string metrics = read_file(dir.str("metrics.json"));
    CHECK(metrics.find("\"accuracy\": 1.0") != std::string::npos);

    // a checkpoint is not a corpus; feeding it back is a data error
    RunResult confused = run_cli({"evaluate", "--in", dir.str("model.bin"),
                                  "--model", dir.str("model.bin")});
    CHECK(confused.code == cli::kDataError);
}

TEST_CASE("pipeline output is byte-identical across runs") {
    TempDir a("tws_cli_pipe_a");
    TempDir b("tws_cli_pipe_b");
    std::vector<std::string> base = {
        "pipeline",
        "--in", (kRoot / "data/sample_tweets.jsonl").string(),
        "--lexicon", (kRoot / "data/vader_lexicon.tsv").string(),
        "--emotion-lexicon", (kRoot / "data/emotion_lexicon.tsv").string(),
        "--cities", (kRoot / "data/world_cities.csv").string(),
        "--cases", (kRoot / "data/sample_cases.csv").string(),
    };
    auto with_out = [&](const TempDir& dir) {
        std::vector<std::string> args = base;
        args.push_back("--out");
        args.push_back(dir.path.string());
        return args;
    };
    RunResult first = run_cli(with_out(a));
    REQUIRE(first.code == cli::kOk);
    RunResult second = run_cli(with_out(b));
    REQUIRE(second.code == cli::kOk);

    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(a.path)) {
        std::string name = entry.path().filename().string();
        CAPTURE(name);
        REQUIRE(fs::exists(b.path / name));
        CHECK(read_file(entry.path().string())
              == read_file((b.path / name).string()));
        ++compared;
    }
    CHECK(compared == 13);
    CHECK(read_file((a.path / "summary.json").string())
              .find("\"tweets\": 500") != std::string::npos);
}
