#include "tweetsense/corpus.hpp"

#include <cstdio>
#include <fstream>

#include <doctest.h>

#include "tweetsense/errors.hpp"

using namespace tweetsense;

namespace {

std::string src_path(const std::string& rel) {
    return std::string(TWEETSENSE_SOURCE_DIR) + "/" + rel;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << body;
}

} // namespace

TEST_CASE("jsonl ingest reads the bundled sample corpus") {
    IngestStats stats;
    auto corpus = ingest_tweets(src_path("data/sample_tweets.jsonl"), "jsonl",
                                IngestOptions{}, &stats);
    CHECK(corpus.size() == 500);
    CHECK(stats.kept == 500);
    CHECK(stats.skipped_malformed == 0);
    CHECK(stats.dropped_duplicates == 0);
    CHECK(corpus[0].id == "t00001");
    CHECK(corpus[0].text == "feeling totally strong zoom lockdown!");
    CHECK(corpus[0].date == Date{2020, 3, 3});
    CHECK(corpus[0].raw_location == "Toronto, Canada");
    CHECK_FALSE(corpus[0].polarity.has_value());
    CHECK_FALSE(corpus[0].country.has_value());
}

TEST_CASE("jsonl ingest skips malformed rows with line-numbered warnings") {
    const char* path = "tmp_corpus_bad.jsonl";
    write_file(path,
               "{\"id\":\"a\",\"text\":\"fine\",\"date\":\"2020-01-02\"}\n"
               "not json at all\n"
               "{\"id\":\"b\",\"text\":\"\",\"date\":\"2020-01-02\"}\n"
               "{\"id\":\"c\",\"text\":\"no date\"}\n"
               "{\"id\":\"d\",\"text\":\"old\",\"date\":\"2018-01-01\"}\n"
               "{\"id\":\"a\",\"text\":\"dup id\",\"date\":\"2020-01-03\"}\n"
               "\n"
               "{\"id\":\"e\",\"text\":\"ok too\",\"date\":\"3/14/20\","
               "\"user_location\":\"  \"}\n");

    IngestStats stats;
    auto corpus = ingest_tweets(path, "jsonl", IngestOptions{}, &stats);
    REQUIRE(corpus.size() == 2);
    CHECK(corpus[0].id == "a");
    CHECK(corpus[1].id == "e");
    CHECK(corpus[1].date == Date{2020, 3, 14});
    CHECK_FALSE(corpus[1].raw_location.has_value()); // blank location dropped
    CHECK(stats.kept == 2);
    CHECK(stats.dropped_duplicates == 1);
    CHECK(stats.skipped_malformed == 4);
    REQUIRE(stats.warnings.size() == 4);
    CHECK(stats.warnings[0].find(":2:") != std::string::npos);

    IngestOptions strict;
    strict.strict = true;
    CHECK_THROWS_AS(ingest_tweets(path, "jsonl", strict), DataError);
    std::remove(path);
}

TEST_CASE("csv ingest requires the exact header and four fields") {
    const char* path = "tmp_corpus.csv";
    write_file(path,
               "id,text,date,user_location\n"
               "1,\"hello, quoted\",2020-02-01,Paris\n"
               "2,plain,2020-02-02,\n"
               "3,\"multi\nline\",2020-02-03,Rome\n");
    IngestStats stats;
    auto corpus = ingest_tweets(path, "csv", IngestOptions{}, &stats);
    REQUIRE(corpus.size() == 3);
    CHECK(corpus[0].text == "hello, quoted");
    CHECK(corpus[0].raw_location == "Paris");
    CHECK_FALSE(corpus[1].raw_location.has_value());
    CHECK(corpus[2].text == "multi\nline");
    CHECK(stats.kept == 3);

    write_file(path, "wrong,header,entirely,x\n1,t,2020-01-01,\n");
    CHECK_THROWS_AS(ingest_tweets(path, "csv", IngestOptions{}), DataError);
    std::remove(path);

    CHECK_THROWS_AS(ingest_tweets("no_such.jsonl", "jsonl", IngestOptions{}),
                    DataError);
    CHECK_THROWS_AS(ingest_tweets("x.tsv", "tsv", IngestOptions{}), DataError);
}

TEST_CASE("corpus export is byte-deterministic and round-trips") {
    std::vector<TweetRecord> corpus(2);
    corpus[0].id = "1";
    corpus[0].text = "good day";
    corpus[0].date = Date{2020, 4, 1};
    corpus[0].raw_location = "Berlin";
    corpus[0].country = "Germany";
    corpus[0].polarity = Polarity::Positive;
    corpus[0].compound = 0.4404;
    EmotionProfile em;
    em.raw[static_cast<std::size_t>(Emotion::Joy)] = 2;
    em.raw[static_cast<std::size_t>(Emotion::Trust)] = 1;
    corpus[0].emotion = profile_from_raw(em.raw);

    corpus[1].id = "2";
    corpus[1].text = "unlabeled \"quote\" text";
    corpus[1].date = Date{2020, 4, 2};
    corpus[1].country_ambiguous = true;

    std::string dump = corpus_to_jsonl(corpus);
    CHECK(dump == corpus_to_jsonl(corpus));
    CHECK(dump.find("\"counts\":{\"trust\":1,\"joy\":2}") != std::string::npos);
    CHECK(dump.find("\"predominant\":\"joy\"") != std::string::npos);
    CHECK(dump.find("\"score\"") == std::string::npos); // derived values stay out

    const char* path = "tmp_corpus_roundtrip.jsonl";
    export_corpus_jsonl(corpus, path);
    auto back = ingest_tweets(path, "jsonl", IngestOptions{});
    REQUIRE(back.size() == 2);
    CHECK(back[0] == corpus[0]);
    CHECK(back[1] == corpus[1]);
    CHECK(corpus_to_jsonl(back) == dump);
    std::remove(path);
}

TEST_CASE("cases ingest validates, sorts, and rejects duplicates") {
    IngestStats stats;
    auto cases = ingest_cases(src_path("data/sample_cases.csv"), &stats);
    CHECK(cases.size() == 300);
    CHECK(stats.kept == 300);
    for (std::size_t i = 1; i < cases.size(); ++i) {
        bool ordered = cases[i - 1].country < cases[i].country
                       || (cases[i - 1].country == cases[i].country
                           && cases[i - 1].date < cases[i].date);
        CHECK(ordered);
    }

    const char* path = "tmp_cases.csv";
    write_file(path,
               "date,country,confirmed,deaths,recovered\n"
               "2020-03-02,Italy,10,1,0\n"
               "2020-03-01,Italy,-5,0,0\n"
               "2020-03-01,France,3,0,0\n");
    auto small = ingest_cases(path, &stats);
    REQUIRE(small.size() == 2); // negative row skipped
    CHECK(stats.skipped_malformed == 1);
    CHECK(small[0].country == "France");
    CHECK(small[1].country == "Italy");
    CHECK(small[1].confirmed == 10);

    write_file(path,
               "date,country,confirmed,deaths,recovered\n"
               "2020-03-01,Italy,10,1,0\n"
               "2020-03-01,Italy,11,1,0\n");
    CHECK_THROWS_AS(ingest_cases(path), DataError);

    write_file(path, "date,country,confirmed\n2020-03-01,Italy,10\n");
    CHECK_THROWS_AS(ingest_cases(path), DataError);
    std::remove(path);
}

TEST_CASE("daily_new differences clamp negative dips to zero") {
    std::size_t clamped = 0;
    CHECK(daily_new({5, 7, 7, 10}, &clamped)
          == std::vector<long long>{5, 2, 0, 3});
    CHECK(clamped == 0);
    CHECK(daily_new({5, 3, 4}, &clamped) == std::vector<long long>{5, 0, 1});
    CHECK(clamped == 1);
    CHECK(daily_new({}, &clamped).empty());
    CHECK(clamped == 0);
}
