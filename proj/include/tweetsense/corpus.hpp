#ifndef TWEETSENSE_CORPUS_HPP
#define TWEETSENSE_CORPUS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tweetsense/emotion.hpp"
#include "tweetsense/sentiment.hpp"
#include "tweetsense/util.hpp"

namespace tweetsense {

struct TweetRecord {
    std::string id;
    std::string text;
    Date date;
    std::optional<std::string> raw_location;
    std::optional<std::string> country;
    bool country_ambiguous = false;
    std::optional<Polarity> polarity;
    std::optional<double> compound;
    std::optional<EmotionProfile> emotion;

    bool operator==(const TweetRecord&) const = default;
};

struct CaseRecord {
    Date date;
    std::string country;
    long long confirmed = 0;
    long long deaths = 0;
    long long recovered = 0;

    bool operator==(const CaseRecord&) const = default;
};

struct IngestOptions {
    bool strict = false;
    // records dated outside [min_date, max_date] count as malformed rows
    Date min_date{2019, 12, 1};
    Date max_date{2020, 12, 31};
};

struct IngestStats {
    std::size_t kept = 0;
    std::size_t dropped_duplicates = 0;
    std::size_t skipped_malformed = 0;
    std::vector<std::string> warnings;
};

// format is "jsonl" or "csv". Malformed rows are skipped with a line-numbered
// warning, or abort with DataError under strict. Duplicate ids keep the first
// occurrence.
std::vector<TweetRecord> ingest_tweets(const std::string& path,
                                       std::string_view format,
                                       const IngestOptions& options = {},
                                       IngestStats* stats = nullptr);

// header date,country,confirmed,deaths,recovered; output sorted by
// (country, date). Negative counts reject the row; duplicate (date, country)
// is an error.
std::vector<CaseRecord> ingest_cases(const std::string& path,
                                     IngestStats* stats = nullptr);

// One JSON object per line, keys in fixed order; derived emotion scores are
// not persisted, only raw counts. Byte-deterministic.
void export_corpus_jsonl(const std::vector<TweetRecord>& corpus,
                         const std::string& path);
std::string corpus_to_jsonl(const std::vector<TweetRecord>& corpus);

// out[0] = c[0], out[i] = max(0, c[i] - c[i-1]); clamped count reported.
std::vector<long long> daily_new(const std::vector<long long>& cumulative,
                                 std::size_t* clamped = nullptr);

} // namespace tweetsense

#endif
