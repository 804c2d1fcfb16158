#include "tweetsense/geo.hpp"

#include <algorithm>
#include <fstream>

#include "tweetsense/corpus.hpp"
#include "tweetsense/errors.hpp"
#include "tweetsense/util.hpp"

namespace tweetsense {

namespace {

constexpr PlaceKind kKindPriority[] = {
    PlaceKind::Country, PlaceKind::Abbreviation, PlaceKind::Subcountry,
    PlaceKind::City, PlaceKind::Geoname,
};

} // namespace

std::string_view to_string(PlaceKind k) {
    switch (k) {
    case PlaceKind::Country: return "country";
    case PlaceKind::Abbreviation: return "abbreviation";
    case PlaceKind::Subcountry: return "subcountry";
    case PlaceKind::City: return "city";
    case PlaceKind::Geoname: return "geoname";
    }
    return "";
}

std::string normalize_place(std::string_view s) {
    std::string flat;
    flat.reserve(s.size());
    for (char c : s) {
        unsigned char u = static_cast<unsigned char>(c);
        if (c == '.' || c == '\'') continue;
        if (u >= 0x80) {
            flat += ' ';
        } else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
            flat += c;
        } else if (c >= 'A' && c <= 'Z') {
            flat += static_cast<char>(c - 'A' + 'a');
        } else {
            flat += ' ';
        }
    }
    std::string out;
    out.reserve(flat.size());
    for (const std::string& piece : split_whitespace(flat)) {
        if (!out.empty()) out += ' ';
        out += piece;
    }
    return out;
}

void PlaceIndex::add(const std::string& key, PlaceKind kind,
                     const std::string& country) {
    if (key.empty()) return;
    std::vector<Candidate>& candidates = index_[key][kind];
    for (Candidate& c : candidates) {
        if (c.country == country) {
            ++c.rows;
            return;
        }
    }
    candidates.push_back(Candidate{country, 1});
}

PlaceIndex PlaceIndex::build(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open gazetteer: " + path);
    CsvReader reader(in);
    std::vector<std::string> fields;
    if (!reader.next(fields)) throw DataError(path + ": empty file");

    const std::vector<std::string> base = {"name", "country", "subcountry",
                                           "geonameid"};
    bool with_abbrev = false;
    if (fields == base) {
        with_abbrev = false;
    } else if (fields.size() == 5
               && std::equal(base.begin(), base.end(), fields.begin())
               && fields[4] == "abbreviation") {
        with_abbrev = true;
    } else {
        throw DataError(path
                        + ": expected header name,country,subcountry,geonameid"
                          "[,abbreviation]");
    }

    PlaceIndex index;
    std::size_t ncols = with_abbrev ? 5 : 4;
    while (reader.next(fields)) {
        std::string where = path + ":" + std::to_string(reader.record_line());
        if (fields.size() != ncols) {
            throw DataError(where + ": expected " + std::to_string(ncols)
                            + " fields");
        }
        const std::string& country = fields[1];
        if (trim(country).empty()) throw DataError(where + ": empty country");
        index.add(normalize_place(fields[0]), PlaceKind::City, country);
        index.add(normalize_place(country), PlaceKind::Country, country);
        index.add(normalize_place(fields[2]), PlaceKind::Subcountry, country);
        // geoname ids are matched verbatim, not normalized
        index.add(fields[3], PlaceKind::Geoname, country);
        if (with_abbrev && !fields[4].empty()) {
            index.add(normalize_place(fields[4]), PlaceKind::Abbreviation, country);
        }
    }
    return index;
}

Resolution PlaceIndex::resolve(std::string_view raw_location) const {
    std::vector<std::string> segments;
    for (const std::string& piece : split_on(raw_location, ',')) {
        std::string key = normalize_place(piece);
        if (!key.empty()) segments.push_back(std::move(key));
    }
    for (PlaceKind kind : kKindPriority) {
        for (auto seg = segments.rbegin(); seg != segments.rend(); ++seg) {
            auto entry = index_.find(*seg);
            if (entry == index_.end()) continue;
            auto by_kind = entry->second.find(kind);
            if (by_kind == entry->second.end() || by_kind->second.empty()) {
                continue;
            }
            const Candidate* best = nullptr;
            for (const Candidate& c : by_kind->second) {
                if (!best || c.rows > best->rows
                    || (c.rows == best->rows && c.country < best->country)) {
                    best = &c;
                }
            }
            Resolution r;
            r.country = best->country;
            r.ambiguous = by_kind->second.size() > 1;
            return r;
        }
    }
    return Resolution{};
}

ResolveStats resolve_corpus(std::vector<TweetRecord>& corpus,
                            const PlaceIndex& index) {
    ResolveStats stats;
    for (TweetRecord& rec : corpus) {
        rec.country.reset();
        rec.country_ambiguous = false;
        if (!rec.raw_location) {
            ++stats.no_location;
            continue;
        }
        Resolution r = index.resolve(*rec.raw_location);
        if (!r.country) {
            ++stats.unresolved;
            continue;
        }
        rec.country = std::move(r.country);
        rec.country_ambiguous = r.ambiguous;
        if (r.ambiguous) {
            ++stats.ambiguous;
        } else {
            ++stats.resolved;
        }
    }
    return stats;
}

} // namespace tweetsense
