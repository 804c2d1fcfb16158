#ifndef TWEETSENSE_GEO_HPP
#define TWEETSENSE_GEO_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tweetsense {

// Match priority, best first.
enum class PlaceKind : std::uint8_t {
    Country = 0,
    Abbreviation,
    Subcountry,
    City,
    Geoname,
};

std::string_view to_string(PlaceKind k);

struct Resolution {
    std::optional<std::string> country;
    bool ambiguous = false;
};

// Lowercased ASCII place key: '.' and apostrophes removed, other punctuation
// and non-ASCII bytes become spaces, whitespace collapsed.
std::string normalize_place(std::string_view s);

class PlaceIndex {
public:
    PlaceIndex() = default;

    // CSV header name,country,subcountry,geonameid with an optional trailing
    // abbreviation column.
    static PlaceIndex build(const std::string& path);

    // Splits on commas, then matches kind-major: every kind in priority
    // order, and within a kind segments right to left. Multi-country hits
    // pick the country with the most rows for that key, then the
    // lexicographically smallest, and set the ambiguous flag.
    Resolution resolve(std::string_view raw_location) const;

    std::size_t key_count() const { return index_.size(); }

private:
    struct Candidate {
        std::string country;
        std::uint32_t rows = 0;
    };
    // key -> per-kind candidate countries with row counts
    std::map<std::string, std::map<PlaceKind, std::vector<Candidate>>> index_;

    void add(const std::string& key, PlaceKind kind, const std::string& country);
};

struct TweetRecord;

struct ResolveStats {
    std::size_t resolved = 0;
    std::size_t ambiguous = 0;
    std::size_t unresolved = 0;
    std::size_t no_location = 0;
};

// Fills country/country_ambiguous for records that have a raw location.
ResolveStats resolve_corpus(std::vector<TweetRecord>& corpus,
                            const PlaceIndex& index);

} // namespace tweetsense

#endif
