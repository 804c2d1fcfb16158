#include "tweetsense/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <tuple>
#include <utility>

#include <json.hpp>

#include "tweetsense/errors.hpp"

namespace tweetsense {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string id_from_json(const json& j) {
    auto it = j.find("id");
    if (it == j.end()) throw DataError("missing id");
    if (it->is_string()) {
        std::string id = it->get<std::string>();
        if (id.empty()) throw DataError("empty id");
        return id;
    }
    if (it->is_number_unsigned()) {
        return std::to_string(it->get<unsigned long long>());
    }
    if (it->is_number_integer()) {
        return std::to_string(it->get<long long>());
    }
    throw DataError("id must be a string or integer");
}

Date date_from_string(const std::string& s, const IngestOptions& options) {
    std::optional<Date> d = parse_date_lenient(s);
    if (!d) throw DataError("bad date '" + s + "'");
    if (*d < options.min_date || *d > options.max_date) {
        throw DataError("date " + d->iso() + " outside window "
                        + options.min_date.iso() + ".." + options.max_date.iso());
    }
    return *d;
}

std::uint32_t count_from_json(const json& v) {
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
        throw DataError("emotion count must be an integer");
    }
    long long c = v.get<long long>();
    if (c <= 0 || c > 0xffffffffLL) throw DataError("emotion count out of range");
    return static_cast<std::uint32_t>(c);
}

TweetRecord tweet_from_json(const json& j, const IngestOptions& options) {
    if (!j.is_object()) throw DataError("row is not a JSON object");
    TweetRecord r;
    r.id = id_from_json(j);

    auto text = j.find("text");
    if (text == j.end() || !text->is_string()) throw DataError("missing text");
    r.text = text->get<std::string>();
    if (r.text.empty()) throw DataError("empty text");

    auto date = j.find("date");
    if (date == j.end() || !date->is_string()) throw DataError("missing date");
    r.date = date_from_string(date->get<std::string>(), options);

    auto loc = j.find("user_location");
    if (loc != j.end() && !loc->is_null()) {
        if (!loc->is_string()) throw DataError("user_location must be a string");
        std::string raw = loc->get<std::string>();
        if (!trim(raw).empty()) r.raw_location = std::move(raw);
    }

    auto country = j.find("country");
    if (country != j.end() && !country->is_null()) {
        if (!country->is_string()) throw DataError("country must be a string");
        r.country = country->get<std::string>();
    }
    auto ambiguous = j.find("country_ambiguous");
    if (ambiguous != j.end() && !ambiguous->is_null()) {
        if (!ambiguous->is_boolean()) {
            throw DataError("country_ambiguous must be a boolean");
        }
        r.country_ambiguous = ambiguous->get<bool>();
    }

    auto polarity = j.find("polarity");
    if (polarity != j.end() && !polarity->is_null()) {
        if (!polarity->is_string()) throw DataError("polarity must be a string");
        auto p = polarity_from_string(polarity->get<std::string>());
        if (!p) throw DataError("unknown polarity '" + polarity->get<std::string>() + "'");
        r.polarity = *p;
    }
    auto compound = j.find("compound");
    if (compound != j.end() && !compound->is_null()) {
        if (!compound->is_number()) throw DataError("compound must be a number");
        r.compound = compound->get<double>();
    }

    auto emotion = j.find("emotion");
    if (emotion != j.end() && !emotion->is_null()) {
        if (!emotion->is_object()) throw DataError("emotion must be an object");
        auto counts = emotion->find("counts");
        if (counts == emotion->end() || !counts->is_object()) {
            throw DataError("emotion.counts must be an object");
        }
        std::array<std::uint32_t, kEmotionCount> raw{};
        for (const auto& [name, value] : counts->items()) {
            std::optional<Emotion> e = emotion_from_string(name);
            if (!e) throw DataError("unknown emotion '" + name + "'");
            raw[static_cast<std::size_t>(*e)] = count_from_json(value);
        }
        // scores and predominant are derived, so they are rebuilt here
        r.emotion = profile_from_raw(raw);
    }
    return r;
}

TweetRecord tweet_from_csv(const std::vector<std::string>& fields,
                           const IngestOptions& options) {
    if (fields.size() != 4) throw DataError("expected 4 fields");
    TweetRecord r;
    r.id = fields[0];
    if (r.id.empty()) throw DataError("empty id");
    r.text = fields[1];
    if (r.text.empty()) throw DataError("empty text");
    r.date = date_from_string(fields[2], options);
    if (!trim(fields[3]).empty()) r.raw_location = fields[3];
    return r;
}

long long case_count(const std::string& s) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw DataError("bad count '" + s + "'");
    }
    if (v < 0) throw DataError("negative count " + s);
    return v;
}

} // namespace

std::vector<TweetRecord> ingest_tweets(const std::string& path,
                                       std::string_view format,
                                       const IngestOptions& options,
                                       IngestStats* stats) {
    if (format != "jsonl" && format != "csv") {
        throw DataError("unknown tweet format '" + std::string(format)
                        + "' (expected jsonl or csv)");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open tweet file: " + path);

    IngestStats local;
    IngestStats& st = stats ? *stats : local;
    st = IngestStats{};

    std::vector<TweetRecord> out;
    std::set<std::string> seen_ids;

    auto keep = [&](TweetRecord&& rec) {
        if (!seen_ids.insert(rec.id).second) {
            ++st.dropped_duplicates;
            return;
        }
        out.push_back(std::move(rec));
        ++st.kept;
    };
    auto handle_bad_row = [&](const std::string& where, const std::string& what) {
        std::string msg = where + ": " + what;
        if (options.strict) throw DataError(msg);
        ++st.skipped_malformed;
        st.warnings.push_back(std::move(msg));
    };

    if (format == "jsonl") {
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (trim(line).empty()) continue;
            std::string where = path + ":" + std::to_string(line_no);
            try {
                keep(tweet_from_json(json::parse(line), options));
            } catch (const json::exception& e) {
                handle_bad_row(where, e.what());
            } catch (const DataError& e) {
                handle_bad_row(where, e.what());
            }
        }
    } else {
        CsvReader reader(in);
        std::vector<std::string> fields;
        if (!reader.next(fields)) throw DataError(path + ": empty file");
        const std::vector<std::string> header = {"id", "text", "date",
                                                 "user_location"};
        if (fields != header) {
            throw DataError(path + ": expected header id,text,date,user_location");
        }
        while (reader.next(fields)) {
            std::string where = path + ":" + std::to_string(reader.record_line());
            try {
                keep(tweet_from_csv(fields, options));
            } catch (const DataError& e) {
                handle_bad_row(where, e.what());
            }
        }
    }
    return out;
}

std::vector<CaseRecord> ingest_cases(const std::string& path, IngestStats* stats) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open cases file: " + path);

    IngestStats local;
    IngestStats& st = stats ? *stats : local;
    st = IngestStats{};

    CsvReader reader(in);
    std::vector<std::string> fields;
    if (!reader.next(fields)) throw DataError(path + ": empty file");
    const std::vector<std::string> header = {"date", "country", "confirmed",
                                             "deaths", "recovered"};
    if (fields != header) {
        throw DataError(path
                        + ": expected header date,country,confirmed,deaths,recovered");
    }

    std::vector<CaseRecord> out;
    std::set<std::pair<std::string, std::string>> seen;
    while (reader.next(fields)) {
        std::string where = path + ":" + std::to_string(reader.record_line());
        std::optional<CaseRecord> rec;
        try {
            if (fields.size() != 5) throw DataError("expected 5 fields");
            CaseRecord r;
            std::optional<Date> d = parse_date_lenient(fields[0]);
            if (!d) throw DataError("bad date '" + fields[0] + "'");
            r.date = *d;
            r.country = fields[1];
            if (trim(r.country).empty()) throw DataError("empty country");
            r.confirmed = case_count(fields[2]);
            r.deaths = case_count(fields[3]);
            r.recovered = case_count(fields[4]);
            rec = std::move(r);
        } catch (const DataError& e) {
            ++st.skipped_malformed;
            st.warnings.push_back(where + ": " + std::string(e.what()));
            continue;
        }
        if (!seen.insert({rec->country, rec->date.iso()}).second) {
            throw DataError(where + ": duplicate entry for " + rec->country + " "
                            + rec->date.iso());
        }
        out.push_back(std::move(*rec));
        ++st.kept;
    }
    std::sort(out.begin(), out.end(), [](const CaseRecord& a, const CaseRecord& b) {
        return std::tie(a.country, a.date) < std::tie(b.country, b.date);
    });
    return out;
}

std::string corpus_to_jsonl(const std::vector<TweetRecord>& corpus) {
    std::string out;
    for (const TweetRecord& r : corpus) {
        ordered_json j;
        j["id"] = r.id;
        j["text"] = r.text;
        j["date"] = r.date.iso();
        if (r.raw_location) j["user_location"] = *r.raw_location;
        if (r.country) j["country"] = *r.country;
        if (r.country_ambiguous) j["country_ambiguous"] = true;
        if (r.polarity) j["polarity"] = std::string(to_string(*r.polarity));
        if (r.compound) j["compound"] = *r.compound;
        if (r.emotion) {
            ordered_json em;
            ordered_json counts = ordered_json::object();
            for (Emotion e : kAllEmotions) {
                std::uint32_t c = r.emotion->raw[static_cast<std::size_t>(e)];
                if (c > 0) counts[std::string(to_string(e))] = c;
            }
            em["counts"] = std::move(counts);
            if (r.emotion->predominant) {
                em["predominant"] = std::string(to_string(*r.emotion->predominant));
            }
            j["emotion"] = std::move(em);
        }
        out += j.dump();
        out += '\n';
    }
    return out;
}

void export_corpus_jsonl(const std::vector<TweetRecord>& corpus,
                         const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write corpus file: " + path);
    out << corpus_to_jsonl(corpus);
    if (!out) throw DataError("failed writing corpus file: " + path);
}

std::vector<long long> daily_new(const std::vector<long long>& cumulative,
                                 std::size_t* clamped) {
    std::size_t local = 0;
    std::size_t& clamp_count = clamped ? *clamped : local;
    clamp_count = 0;
    std::vector<long long> out;
    out.reserve(cumulative.size());
    long long prev = 0;
    for (std::size_t i = 0; i < cumulative.size(); ++i) {
        long long delta = i == 0 ? cumulative[0] : cumulative[i] - prev;
        if (delta < 0) {
            delta = 0;
            ++clamp_count;
        }
        out.push_back(delta);
        prev = cumulative[i];
    }
    return out;
}

} // namespace tweetsense
