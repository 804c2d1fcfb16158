#include "tweetsense/analytics.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <tuple>

#include <json.hpp>

#include "tweetsense/errors.hpp"

namespace tweetsense {

namespace {

std::string period_key(const Date& d, Granularity g) {
    return g == Granularity::Day ? d.iso() : d.month_key();
}

bool matches(const TweetRecord& rec, const std::optional<std::string>& filter) {
    if (!filter) return true;
    return rec.country.has_value() && *rec.country == *filter;
}

double pct(long long count, long long denom) {
    if (denom <= 0) return 0.0;
    return 100.0 * static_cast<double>(count) / static_cast<double>(denom);
}

void fill_percentages(SeriesPoint& p) {
    p.percentages.clear();
    p.percentages.reserve(p.counts.size());
    for (long long c : p.counts) p.percentages.push_back(pct(c, p.denominator));
}

void check_point(const SeriesPoint& p) {
    if (p.counts.size() != p.labels.size()
        || (!p.percentages.empty() && p.percentages.size() != p.labels.size())) {
        throw DataError("malformed series point for period " + p.period);
    }
}

} // namespace

std::vector<SeriesPoint> aggregate_sentiment(
    const std::vector<TweetRecord>& corpus, Granularity granularity,
    const std::optional<std::string>& country_filter, Denominator denominator) {
    struct Counts {
        long long pos = 0, neu = 0, neg = 0;
    };
    std::map<std::string, Counts> periods;
    for (const TweetRecord& rec : corpus) {
        if (!rec.polarity || !matches(rec, country_filter)) continue;
        Counts& c = periods[period_key(rec.date, granularity)];
        switch (*rec.polarity) {
        case Polarity::Positive: ++c.pos; break;
        case Polarity::Neutral: ++c.neu; break;
        case Polarity::Negative: ++c.neg; break;
        }
    }
    const std::string country = country_filter ? *country_filter : "ALL";
    std::vector<SeriesPoint> out;
    out.reserve(periods.size());
    for (const auto& [period, c] : periods) {
        SeriesPoint p;
        p.period = period;
        p.country = country;
        if (denominator == Denominator::All) {
            p.labels = {"Positive", "Neutral", "Negative"};
            p.counts = {c.pos, c.neu, c.neg};
        } else {
            p.labels = {"Positive", "Negative"};
            p.counts = {c.pos, c.neg};
        }
        for (long long n : p.counts) p.denominator += n;
        fill_percentages(p);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<SeriesPoint> aggregate_emotion(
    const std::vector<TweetRecord>& corpus, Granularity granularity,
    const std::optional<std::string>& country_filter) {
    struct Counts {
        long long fear = 0, trust = 0, total = 0;
    };
    std::map<std::string, Counts> periods;
    for (const TweetRecord& rec : corpus) {
        if (!matches(rec, country_filter)) continue;
        Counts& c = periods[period_key(rec.date, granularity)];
        ++c.total;
        if (rec.emotion && rec.emotion->predominant) {
            if (*rec.emotion->predominant == Emotion::Fear) ++c.fear;
            if (*rec.emotion->predominant == Emotion::Trust) ++c.trust;
        }
    }
    const std::string country = country_filter ? *country_filter : "ALL";
    std::vector<SeriesPoint> out;
    out.reserve(periods.size());
    for (const auto& [period, c] : periods) {
        SeriesPoint p;
        p.period = period;
        p.country = country;
        p.labels = {"fear", "trust"};
        p.counts = {c.fear, c.trust};
        p.denominator = c.total;
        fill_percentages(p);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<CountrySummary> country_summaries(
    const std::vector<TweetRecord>& corpus, bool minmax) {
    struct Acc {
        long long pos = 0, neu = 0, neg = 0;
    };
    std::map<std::string, Acc> by_country;
    for (const TweetRecord& rec : corpus) {
        if (!rec.country || !rec.polarity) continue;
        Acc& a = by_country[*rec.country];
        switch (*rec.polarity) {
        case Polarity::Positive: ++a.pos; break;
        case Polarity::Neutral: ++a.neu; break;
        case Polarity::Negative: ++a.neg; break;
        }
    }
    std::vector<CountrySummary> out;
    out.reserve(by_country.size());
    for (const auto& [country, a] : by_country) {
        CountrySummary s;
        s.country = country;
        s.n_tweets = a.pos + a.neu + a.neg;
        s.pos_share = s.n_tweets > 0
                          ? static_cast<double>(a.pos) / static_cast<double>(s.n_tweets)
                          : 0.0;
        s.neg_share = s.n_tweets > 0
                          ? static_cast<double>(a.neg) / static_cast<double>(s.n_tweets)
                          : 0.0;
        s.normalized_pos = s.pos_share;
        s.normalized_neg = s.neg_share;
        out.push_back(std::move(s));
    }
    if (minmax && !out.empty()) {
        long long min_pos = 0, max_pos = 0, min_neg = 0, max_neg = 0;
        bool first = true;
        for (const auto& [country, a] : by_country) {
            if (first) {
                min_pos = max_pos = a.pos;
                min_neg = max_neg = a.neg;
                first = false;
            } else {
                min_pos = std::min(min_pos, a.pos);
                max_pos = std::max(max_pos, a.pos);
                min_neg = std::min(min_neg, a.neg);
                max_neg = std::max(max_neg, a.neg);
            }
        }
        auto scale = [](long long v, long long lo, long long hi) {
            if (hi == lo) return 0.0;
            return static_cast<double>(v - lo) / static_cast<double>(hi - lo);
        };
        std::size_t i = 0;
        for (const auto& [country, a] : by_country) {
            out[i].normalized_pos = scale(a.pos, min_pos, max_pos);
            out[i].normalized_neg = scale(a.neg, min_neg, max_neg);
            ++i;
        }
    }
    return out;
}

std::vector<CountryScore> country_extremes(
    const std::vector<TweetRecord>& corpus, ExtremeMetric metric, std::size_t k,
    long long min_tweets) {
    struct Acc {
        long long total = 0;
        long long labeled = 0;
        long long pos = 0;
        long long neg = 0;
        long long with_emotion = 0;
        double fear_sum = 0.0;
        double trust_sum = 0.0;
    };
    std::map<std::string, Acc> by_country;
    for (const TweetRecord& rec : corpus) {
        if (!rec.country) continue;
        Acc& a = by_country[*rec.country];
        ++a.total;
        if (rec.polarity) {
            ++a.labeled;
            if (*rec.polarity == Polarity::Positive) ++a.pos;
            if (*rec.polarity == Polarity::Negative) ++a.neg;
        }
        if (rec.emotion) {
            ++a.with_emotion;
            a.fear_sum += rec.emotion->score[static_cast<std::size_t>(Emotion::Fear)];
            a.trust_sum += rec.emotion->score[static_cast<std::size_t>(Emotion::Trust)];
        }
    }
    std::vector<CountryScore> out;
    for (const auto& [country, a] : by_country) {
        if (a.total < min_tweets) continue;
        CountryScore s;
        s.country = country;
        s.n_tweets = a.total;
        switch (metric) {
        case ExtremeMetric::PosShare:
            s.value = a.labeled > 0
                          ? static_cast<double>(a.pos) / static_cast<double>(a.labeled)
                          : 0.0;
            break;
        case ExtremeMetric::NegShare:
            s.value = a.labeled > 0
                          ? static_cast<double>(a.neg) / static_cast<double>(a.labeled)
                          : 0.0;
            break;
        case ExtremeMetric::FearScore:
            s.value = a.with_emotion > 0 ? a.fear_sum / static_cast<double>(a.with_emotion)
                                         : 0.0;
            break;
        case ExtremeMetric::TrustScore:
            s.value = a.with_emotion > 0 ? a.trust_sum / static_cast<double>(a.with_emotion)
                                         : 0.0;
            break;
        }
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const CountryScore& x, const CountryScore& y) {
        if (x.value != y.value) return x.value > y.value;
        return x.country < y.country;
    });
    if (out.size() > k) out.resize(k);
    return out;
}

std::vector<SeriesPoint> cases_series(const std::vector<CaseRecord>& table,
                                      const std::optional<std::string>& country_filter,
                                      Granularity granularity, CasesMode mode) {
    if (country_filter) {
        bool known = std::any_of(table.begin(), table.end(), [&](const CaseRecord& r) {
            return r.country == *country_filter;
        });
        if (!known) throw DataError("unknown country '" + *country_filter + "'");
    }

    // per country: period -> cumulative value at the period's last record
    std::map<std::string, std::map<std::string, long long>> period_end;
    std::map<std::string, std::map<std::string, Date>> period_end_date;
    for (const CaseRecord& r : table) {
        if (country_filter && r.country != *country_filter) continue;
        std::string key = period_key(r.date, granularity);
        auto& slot_date = period_end_date[r.country][key];
        if (slot_date == Date{} || r.date > slot_date) {
            slot_date = r.date;
            period_end[r.country][key] = r.confirmed;
        }
    }

    std::set<std::string> all_periods;
    for (const auto& [country, pmap] : period_end) {
        for (const auto& [p, v] : pmap) all_periods.insert(p);
    }

    // carry the latest known value of every country across the full timeline
    std::map<std::string, long long> summed;
    for (const auto& [country, pmap] : period_end) {
        long long carry = 0;
        auto it = pmap.begin();
        for (const std::string& p : all_periods) {
            while (it != pmap.end() && it->first <= p) {
                carry = it->second;
                ++it;
            }
            summed[p] += carry;
        }
    }

    const std::string country = country_filter ? *country_filter : "ALL";
    std::vector<std::string> periods;
    std::vector<long long> values;
    for (const auto& [p, v] : summed) {
        periods.push_back(p);
        values.push_back(v);
    }
    if (mode == CasesMode::DailyNew) values = daily_new(values);

    std::vector<SeriesPoint> out;
    out.reserve(periods.size());
    for (std::size_t i = 0; i < periods.size(); ++i) {
        SeriesPoint p;
        p.period = periods[i];
        p.country = country;
        p.labels = {"confirmed"};
        p.counts = {values[i]};
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<SeriesPoint> merge_series(const std::vector<SeriesPoint>& a,
                                      const std::vector<SeriesPoint>& b) {
    std::map<std::pair<std::string, std::string>, SeriesPoint> merged;
    std::map<std::pair<std::string, std::string>, bool> has_pct;

    auto add = [&](const SeriesPoint& p) {
        check_point(p);
        auto key = std::make_pair(p.period, p.country);
        auto [it, inserted] = merged.try_emplace(key, p);
        has_pct[key] = has_pct[key] || !p.percentages.empty();
        if (inserted) return;
        SeriesPoint& q = it->second;
        if (q.labels != p.labels) {
            throw DataError("merge_series: label mismatch at " + p.period + "/"
                            + p.country);
        }
        for (std::size_t i = 0; i < q.counts.size(); ++i) q.counts[i] += p.counts[i];
        q.denominator += p.denominator;
    };
    for (const SeriesPoint& p : a) add(p);
    for (const SeriesPoint& p : b) add(p);

    std::vector<SeriesPoint> out;
    out.reserve(merged.size());
    for (auto& [key, p] : merged) {
        if (has_pct[key]) {
            fill_percentages(p);
        } else {
            p.percentages.clear();
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::string report_to_string(const std::vector<SeriesPoint>& series,
                             std::string_view format) {
    for (const SeriesPoint& p : series) check_point(p);

    if (format == "csv") {
        std::string out = "period,country,label,count,percentage\n";
        for (const SeriesPoint& p : series) {
            for (std::size_t i = 0; i < p.labels.size(); ++i) {
                out += csv_escape(p.period);
                out += ',';
                out += csv_escape(p.country);
                out += ',';
                out += csv_escape(p.labels[i]);
                out += ',';
                out += std::to_string(p.counts[i]);
                out += ',';
                if (!p.percentages.empty()) out += format_fixed(p.percentages[i], 6);
                out += '\n';
            }
        }
        return out;
    }
    if (format == "json") {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const SeriesPoint& p : series) {
            for (std::size_t i = 0; i < p.labels.size(); ++i) {
                nlohmann::ordered_json row;
                row["period"] = p.period;
                row["country"] = p.country;
                row["label"] = p.labels[i];
                row["count"] = p.counts[i];
                if (p.percentages.empty()) {
                    row["percentage"] = nullptr;
                } else {
                    row["percentage"] = p.percentages[i];
                }
                rows.push_back(std::move(row));
            }
        }
        return rows.dump(2) + "\n";
    }
    throw DataError("unknown report format '" + std::string(format)
                    + "' (expected csv or json)");
}

void export_report(const std::vector<SeriesPoint>& series, const std::string& path,
                   std::string_view format) {
    std::string body = report_to_string(series, format);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write report: " + path);
    out << body;
    if (!out) throw DataError("failed writing report: " + path);
}

} // namespace tweetsense
