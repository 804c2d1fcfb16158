#ifndef TWEETSENSE_ANALYTICS_HPP
#define TWEETSENSE_ANALYTICS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tweetsense/corpus.hpp"

namespace tweetsense {

enum class Granularity { Day, Month };
enum class Denominator { All, PosNegOnly };
enum class CasesMode { Cumulative, DailyNew };
enum class ExtremeMetric { PosShare, NegShare, FearScore, TrustScore };

// One period of one series. labels/counts/percentages are parallel arrays in
// a fixed label order; percentages is empty for count-only series (cases).
struct SeriesPoint {
    std::string period;  // ISO date or YYYY-MM
    std::string country; // "ALL" for the whole corpus / world
    std::vector<std::string> labels;
    std::vector<long long> counts;
    std::vector<double> percentages;
    long long denominator = 0;

    bool operator==(const SeriesPoint&) const = default;
};

struct CountrySummary {
    std::string country;
    long long n_tweets = 0;
    double pos_share = 0.0;
    double neg_share = 0.0;
    double normalized_pos = 0.0;
    double normalized_neg = 0.0;
};

struct CountryScore {
    std::string country;
    long long n_tweets = 0;
    double value = 0.0;
};

// Label order Positive, Neutral, Negative (Neutral omitted under
// PosNegOnly). Periods with no tweets are omitted; chronological order.
std::vector<SeriesPoint> aggregate_sentiment(
    const std::vector<TweetRecord>& corpus, Granularity granularity,
    const std::optional<std::string>& country_filter = std::nullopt,
    Denominator denominator = Denominator::All);

// Label order fear, trust: percentage of period tweets whose predominant
// emotion is fear (resp. trust), over all tweets of the period.
std::vector<SeriesPoint> aggregate_emotion(
    const std::vector<TweetRecord>& corpus, Granularity granularity,
    const std::optional<std::string>& country_filter = std::nullopt);

// Per-country polarity shares over that country's labeled tweets; unresolved
// tweets excluded. With minmax, normalized_* are min-max scaled counts
// across countries instead of within-country shares.
std::vector<CountrySummary> country_summaries(
    const std::vector<TweetRecord>& corpus, bool minmax = false);

// Countries with n_tweets >= min_tweets ranked descending by the metric,
// ties alphabetical, truncated to k. Fear/trust value = mean per-tweet
// normalized emotion score.
std::vector<CountryScore> country_extremes(
    const std::vector<TweetRecord>& corpus, ExtremeMetric metric,
    std::size_t k, long long min_tweets = 30);

// Confirmed cases per period, label "confirmed", percentages empty.
// Cumulative mode reports the period-end value (world rows carry forward the
// latest value of every country); daily-new differences are clamped at 0.
// Unknown country_filter is an error.
std::vector<SeriesPoint> cases_series(
    const std::vector<CaseRecord>& table,
    const std::optional<std::string>& country_filter, Granularity granularity,
    CasesMode mode);

// Recomputes percentages after summing counts of matching
// (period, country, labels) points. Merging aggregates of a partition equals
// aggregating the whole corpus.
std::vector<SeriesPoint> merge_series(const std::vector<SeriesPoint>& a,
                                      const std::vector<SeriesPoint>& b);

// format "csv" or "json"; columns period,country,label,count,percentage.
// Byte-deterministic for identical input.
void export_report(const std::vector<SeriesPoint>& series,
                   const std::string& path, std::string_view format);
std::string report_to_string(const std::vector<SeriesPoint>& series,
                             std::string_view format);

} // namespace tweetsense

#endif
