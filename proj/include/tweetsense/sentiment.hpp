#ifndef TWEETSENSE_SENTIMENT_HPP
#define TWEETSENSE_SENTIMENT_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tweetsense {

enum class Polarity { Positive, Neutral, Negative };

std::string_view to_string(Polarity p);
std::optional<Polarity> polarity_from_string(std::string_view s);

struct SentimentScore {
    double pos = 0.0;
    double neu = 0.0;
    double neg = 0.0;
    double compound = 0.0;
};

// Token valences loaded from a TSV file plus the fixed rule tables of the
// scoring algorithm (degree boosters, negators, idioms).
class SentimentLexicon {
public:
    SentimentLexicon() = default;

    // TSV: token TAB valence, further columns ignored, blank lines skipped.
    // Throws DataError on malformed lines or valences outside [-4, 4].
    static SentimentLexicon load(const std::string& path);
    static SentimentLexicon from_entries(std::map<std::string, double> entries);

    bool contains(const std::string& lowercase_token) const {
        return entries_.count(lowercase_token) != 0;
    }
    double valence(const std::string& lowercase_token) const;
    std::size_t size() const { return entries_.size(); }
    const std::map<std::string, double>& entries() const { return entries_; }

    // rule tables, shared across instances
    static const std::map<std::string, double>& boosters();
    static const std::set<std::string>& negators();
    static const std::map<std::string, double>& special_idioms();

    static constexpr double kBoosterIncr = 0.293;
    static constexpr double kBoosterDecr = -0.293;
    static constexpr double kCapsIncr = 0.733;
    static constexpr double kNegationScalar = -0.74;
    static constexpr double kAlpha = 15.0;

private:
    std::map<std::string, double> entries_;
};

// Full rule pipeline: idioms, boosters with distance damping, ALL-CAPS
// emphasis, negation lookback, but-clause reweighting, !/? amplification,
// compound normalization. Empty or hit-free text scores all-neutral.
SentimentScore score(std::string_view text, const SentimentLexicon& lex);

struct Thresholds {
    double t_pos = 0.05;
    double t_neg = -0.05;
};

// Positive if compound >= t_pos, Negative if compound <= t_neg, else Neutral.
Polarity classify(double compound, Thresholds t = {});

struct TweetRecord;

struct LabelCounts {
    long long positive = 0;
    long long neutral = 0;
    long long negative = 0;
};

// Fills polarity and compound on every record; overwrites existing labels.
LabelCounts label_corpus(std::vector<TweetRecord>& corpus,
                         const SentimentLexicon& lex, Thresholds t = {});

} // namespace tweetsense

#endif
