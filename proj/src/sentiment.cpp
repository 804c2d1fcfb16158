#include "tweetsense/sentiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>

#include "tweetsense/corpus.hpp"
#include "tweetsense/errors.hpp"
#include "tweetsense/util.hpp"

namespace tweetsense {

namespace {

// Tokenizer of the scoring rules: whitespace split, ascii punctuation
// stripped from both ends, but the raw chunk is kept whenever the stripped
// core has length <= 2. That keeps emoticons like ":)" alive.
std::vector<std::string> score_tokens(std::string_view text) {
    std::vector<std::string> out;
    for (std::string& chunk : split_whitespace(text)) {
        std::size_t b = 0;
        std::size_t e = chunk.size();
        while (b < e && is_ascii_punct(chunk[b])) ++b;
        while (e > b && is_ascii_punct(chunk[e - 1])) --e;
        if (e - b <= 2) {
            out.push_back(std::move(chunk));
        } else {
            out.push_back(chunk.substr(b, e - b));
        }
    }
    return out;
}

bool negated_word(const std::string& lower_word) {
    if (SentimentLexicon::negators().count(lower_word) != 0) return true;
    return lower_word.find("n't") != std::string::npos;
}

double normalize_compound(double score) {
    double norm = score / std::sqrt(score * score + SentimentLexicon::kAlpha);
    if (norm < -1.0) return -1.0;
    if (norm > 1.0) return 1.0;
    return norm;
}

bool allcap_differential(const std::vector<std::string>& words) {
    std::size_t allcap = 0;
    for (const std::string& w : words) {
        if (is_upper_token(w)) ++allcap;
    }
    std::size_t diff = words.size() - allcap;
    return diff > 0 && diff < words.size();
}

double scalar_inc_dec(const std::string& word, const std::string& word_lower,
                      double valence, bool is_cap_diff) {
    const auto& boosters = SentimentLexicon::boosters();
    auto it = boosters.find(word_lower);
    if (it == boosters.end()) return 0.0;
    double scalar = it->second;
    if (valence < 0) scalar = -scalar;
    if (is_upper_token(word) && is_cap_diff) {
        if (valence > 0) {
            scalar += SentimentLexicon::kCapsIncr;
        } else {
            scalar -= SentimentLexicon::kCapsIncr;
        }
    }
    return scalar;
}

double negation_check(double valence, const std::vector<std::string>& lower,
                      int start_i, std::size_t i) {
    if (start_i == 0) {
        if (negated_word(lower[i - 1])) {
            valence *= SentimentLexicon::kNegationScalar;
        }
    }
    if (start_i == 1) {
        if (lower[i - 2] == "never"
            && (lower[i - 1] == "so" || lower[i - 1] == "this")) {
            valence *= 1.25;
        } else if (lower[i - 2] == "without" && lower[i - 1] == "doubt") {
            // no change
        } else if (negated_word(lower[i - 2])) {
            valence *= SentimentLexicon::kNegationScalar;
        }
    }
    if (start_i == 2) {
        // so/this one word back fires the 1.25 bump on its own, never or not
        if ((lower[i - 3] == "never"
             && (lower[i - 2] == "so" || lower[i - 2] == "this"))
            || (lower[i - 1] == "so" || lower[i - 1] == "this")) {
            valence *= 1.25;
        } else if (lower[i - 3] == "without"
                   && (lower[i - 2] == "doubt" || lower[i - 1] == "doubt")) {
            // no change
        } else if (negated_word(lower[i - 3])) {
            valence *= SentimentLexicon::kNegationScalar;
        }
    }
    return valence;
}

double special_idioms_check(double valence, const std::vector<std::string>& lower,
                            std::size_t i) {
    const auto& special = SentimentLexicon::special_idioms();
    const auto& boosters = SentimentLexicon::boosters();

    std::string onezero = lower[i - 1] + " " + lower[i];
    std::string twoonezero = lower[i - 2] + " " + lower[i - 1] + " " + lower[i];
    std::string twoone = lower[i - 2] + " " + lower[i - 1];
    std::string threetwoone = lower[i - 3] + " " + lower[i - 2] + " " + lower[i - 1];
    std::string threetwo = lower[i - 3] + " " + lower[i - 2];

    for (const std::string* seq :
         {&onezero, &twoonezero, &twoone, &threetwoone, &threetwo}) {
        auto it = special.find(*seq);
        if (it != special.end()) {
            valence = it->second;
            break;
        }
    }
    if (lower.size() - 1 > i) {
        std::string zeroone = lower[i] + " " + lower[i + 1];
        auto it = special.find(zeroone);
        if (it != special.end()) valence = it->second;
    }
    if (lower.size() - 1 > i + 1) {
        std::string zeroonetwo = lower[i] + " " + lower[i + 1] + " " + lower[i + 2];
        auto it = special.find(zeroonetwo);
        if (it != special.end()) valence = it->second;
    }
    for (const std::string* ng : {&threetwoone, &threetwo, &twoone}) {
        auto it = boosters.find(*ng);
        if (it != boosters.end()) valence += it->second;
    }
    return valence;
}

double least_check(const SentimentLexicon& lex, double valence,
                   const std::vector<std::string>& lower, std::size_t i) {
    if (i > 1 && !lex.contains(lower[i - 1]) && lower[i - 1] == "least") {
        if (lower[i - 2] != "at" && lower[i - 2] != "very") {
            valence *= SentimentLexicon::kNegationScalar;
        }
    } else if (i > 0 && !lex.contains(lower[i - 1]) && lower[i - 1] == "least") {
        valence *= SentimentLexicon::kNegationScalar;
    }
    return valence;
}

// Rescales clauses around "but". Each original value is located again by
// first-match equality before scaling, as the published scorer does.
void but_check(const std::vector<std::string>& lower,
               std::vector<double>& sentiments) {
    auto but = std::find(lower.begin(), lower.end(), "but");
    if (but == lower.end()) return;
    std::size_t bi = static_cast<std::size_t>(but - lower.begin());
    const std::vector<double> original = sentiments;
    for (double v : original) {
        auto pos = std::find(sentiments.begin(), sentiments.end(), v);
        std::size_t si = static_cast<std::size_t>(pos - sentiments.begin());
        if (si < bi) {
            sentiments[si] = v * 0.5;
        } else if (si > bi) {
            sentiments[si] = v * 1.5;
        }
    }
}

double sentiment_valence(const SentimentLexicon& lex,
                         const std::vector<std::string>& words,
                         const std::vector<std::string>& lower, std::size_t i,
                         bool is_cap_diff) {
    const std::string& item_lower = lower[i];
    if (!lex.contains(item_lower)) return 0.0;
    double valence = lex.valence(item_lower);

    if (item_lower == "no" && i + 1 < words.size() && lex.contains(lower[i + 1])) {
        valence = 0.0;
    }
    if ((i > 0 && lower[i - 1] == "no") || (i > 1 && lower[i - 2] == "no")
        || (i > 2 && lower[i - 3] == "no"
            && (lower[i - 1] == "or" || lower[i - 1] == "nor"))) {
        valence = lex.valence(item_lower) * SentimentLexicon::kNegationScalar;
    }

    if (is_upper_token(words[i]) && is_cap_diff) {
        if (valence > 0) {
            valence += SentimentLexicon::kCapsIncr;
        } else {
            valence -= SentimentLexicon::kCapsIncr;
        }
    }

    for (int start_i = 0; start_i < 3; ++start_i) {
        std::size_t back = static_cast<std::size_t>(start_i) + 1;
        if (i > static_cast<std::size_t>(start_i) && !lex.contains(lower[i - back])) {
            double s = scalar_inc_dec(words[i - back], lower[i - back], valence,
                                      is_cap_diff);
            if (start_i == 1 && s != 0.0) s *= 0.95;
            if (start_i == 2 && s != 0.0) s *= 0.9;
            valence += s;
            valence = negation_check(valence, lower, start_i, i);
            if (start_i == 2) valence = special_idioms_check(valence, lower, i);
        }
    }

    return least_check(lex, valence, lower, i);
}

double amplify_exclamation(std::string_view text) {
    auto n = std::count(text.begin(), text.end(), '!');
    if (n > 4) n = 4;
    return static_cast<double>(n) * 0.292;
}

double amplify_question(std::string_view text) {
    auto n = std::count(text.begin(), text.end(), '?');
    if (n > 1) {
        if (n <= 3) return static_cast<double>(n) * 0.18;
        return 0.96;
    }
    return 0.0;
}

} // namespace

std::string_view to_string(Polarity p) {
    switch (p) {
    case Polarity::Positive: return "Positive";
    case Polarity::Neutral: return "Neutral";
    case Polarity::Negative: return "Negative";
    }
    return "Neutral";
}

std::optional<Polarity> polarity_from_string(std::string_view s) {
    if (s == "Positive") return Polarity::Positive;
    if (s == "Neutral") return Polarity::Neutral;
    if (s == "Negative") return Polarity::Negative;
    return std::nullopt;
}

SentimentLexicon SentimentLexicon::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open sentiment lexicon: " + path);
    std::map<std::string, double> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split_on(line, '\t');
        auto fail = [&](const std::string& what) {
            throw DataError(path + ":" + std::to_string(line_no) + ": " + what);
        };
        if (fields.size() < 2 || fields[0].empty()) {
            fail("expected token TAB valence");
        }
        const std::string& raw = fields[1];
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
        if (ec != std::errc{} || ptr != raw.data() + raw.size()) {
            fail("bad valence '" + raw + "'");
        }
        if (!(v >= -4.0 && v <= 4.0)) {
            fail("valence out of range [-4, 4]: " + raw);
        }
        entries[fields[0]] = v;
    }
    return from_entries(std::move(entries));
}

SentimentLexicon SentimentLexicon::from_entries(std::map<std::string, double> entries) {
    for (const auto& [word, v] : entries) {
        if (!(v >= -4.0 && v <= 4.0)) {
            throw DataError("valence out of range [-4, 4] for '" + word + "'");
        }
    }
    SentimentLexicon lex;
    lex.entries_ = std::move(entries);
    return lex;
}

double SentimentLexicon::valence(const std::string& lowercase_token) const {
    return entries_.at(lowercase_token);
}

const std::map<std::string, double>& SentimentLexicon::boosters() {
    static const std::map<std::string, double> table = [] {
        std::map<std::string, double> m;
        for (const char* w :
             {"absolutely", "amazingly", "awfully", "completely", "considerable",
              "considerably", "decidedly", "deeply", "effing", "enormous",
              "enormously", "entirely", "especially", "exceptional",
              "exceptionally", "extreme", "extremely", "fabulously", "flipping",
              "flippin", "frackin", "fracking", "fricking", "frickin",
              "frigging", "friggin", "fully", "fuckin", "fucking", "fuggin",
              "fugging", "greatly", "hella", "highly", "hugely", "incredible",
              "incredibly", "intensely", "major", "majorly", "more", "most",
              "particularly", "purely", "quite", "really", "remarkably", "so",
              "substantially", "thoroughly", "total", "totally", "tremendous",
              "tremendously", "uber", "unbelievably", "unusually", "utter",
              "utterly", "very"}) {
            m[w] = kBoosterIncr;
        }
        for (const char* w :
             {"almost", "barely", "hardly", "just enough", "kind of", "kinda",
              "kindof", "kind-of", "less", "little", "marginal", "marginally",
              "occasional", "occasionally", "partly", "scarce", "scarcely",
              "slight", "slightly", "somewhat", "sort of", "sorta", "sortof",
              "sort-of"}) {
            m[w] = kBoosterDecr;
        }
        return m;
    }();
    return table;
}

const std::set<std::string>& SentimentLexicon::negators() {
    static const std::set<std::string> table = {
        "aint", "arent", "cannot", "cant", "couldnt", "darent", "didnt",
        "doesnt", "ain't", "aren't", "can't", "couldn't", "daren't", "didn't",
        "doesn't", "dont", "hadnt", "hasnt", "havent", "isnt", "mightnt",
        "mustnt", "neither", "don't", "hadn't", "hasn't", "haven't", "isn't",
        "mightn't", "mustn't", "neednt", "needn't", "never", "none", "nope",
        "nor", "not", "nothing", "nowhere", "oughtnt", "shant", "shouldnt",
        "uhuh", "wasnt", "werent", "oughtn't", "shan't", "shouldn't", "uh-uh",
        "wasn't", "weren't", "without", "wont", "wouldnt", "won't", "wouldn't",
        "rarely", "seldom", "despite",
    };
    return table;
}

const std::map<std::string, double>& SentimentLexicon::special_idioms() {
    static const std::map<std::string, double> table = {
        {"the shit", 3.0},        {"the bomb", 3.0},    {"bad ass", 1.5},
        {"badass", 1.5},          {"bus stop", 0.0},    {"yeah right", -2.0},
        {"kiss of death", -1.5},  {"to die for", 3.0},  {"beating heart", 3.1},
        {"broken heart", -2.9},
    };
    return table;
}

SentimentScore score(std::string_view text, const SentimentLexicon& lex) {
    std::vector<std::string> words = score_tokens(text);
    if (words.empty()) return SentimentScore{0.0, 1.0, 0.0, 0.0};

    std::vector<std::string> lower;
    lower.reserve(words.size());
    for (const std::string& w : words) lower.push_back(to_lower(w));

    bool is_cap_diff = allcap_differential(words);

    std::vector<double> sentiments;
    sentiments.reserve(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (SentimentLexicon::boosters().count(lower[i]) != 0) {
            sentiments.push_back(0.0);
            continue;
        }
        if (i + 1 < words.size() && lower[i] == "kind" && lower[i + 1] == "of") {
            sentiments.push_back(0.0);
            continue;
        }
        sentiments.push_back(sentiment_valence(lex, words, lower, i, is_cap_diff));
    }
    but_check(lower, sentiments);

    double sum_s = std::accumulate(sentiments.begin(), sentiments.end(), 0.0);
    double punct = amplify_exclamation(text) + amplify_question(text);
    if (sum_s > 0) {
        sum_s += punct;
    } else if (sum_s < 0) {
        sum_s -= punct;
    }

    double pos_sum = 0.0;
    double neg_sum = 0.0;
    double neu_count = 0.0;
    for (double v : sentiments) {
        if (v > 0) pos_sum += v + 1.0;
        if (v < 0) neg_sum += v - 1.0;
        if (v == 0) neu_count += 1.0;
    }
    if (pos_sum > std::fabs(neg_sum)) {
        pos_sum += punct;
    } else if (pos_sum < std::fabs(neg_sum)) {
        neg_sum -= punct;
    }
    double total = pos_sum + std::fabs(neg_sum) + neu_count;

    SentimentScore out;
    out.pos = std::fabs(pos_sum / total);
    out.neg = std::fabs(neg_sum / total);
    out.neu = std::fabs(neu_count / total);
    out.compound = normalize_compound(sum_s);
    return out;
}

Polarity classify(double compound, Thresholds t) {
    if (compound >= t.t_pos) return Polarity::Positive;
    if (compound <= t.t_neg) return Polarity::Negative;
    return Polarity::Neutral;
}

LabelCounts label_corpus(std::vector<TweetRecord>& corpus,
                         const SentimentLexicon& lex, Thresholds t) {
    LabelCounts counts;
    for (TweetRecord& rec : corpus) {
        SentimentScore s = score(rec.text, lex);
        rec.compound = s.compound;
        Polarity p = classify(s.compound, t);
        rec.polarity = p;
        switch (p) {
        case Polarity::Positive: ++counts.positive; break;
        case Polarity::Neutral: ++counts.neutral; break;
        case Polarity::Negative: ++counts.negative; break;
        }
    }
    return counts;
}

} // namespace tweetsense
