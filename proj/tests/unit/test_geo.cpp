#include "tweetsense/geo.hpp"

#include <fstream>

#include <doctest.h>

#include "tweetsense/corpus.hpp"
#include "tweetsense/errors.hpp"
#include "tweetsense/util.hpp"

using namespace tweetsense;

namespace {

std::string src_path(const std::string& rel) {
    return std::string(TWEETSENSE_SOURCE_DIR) + "/" + rel;
}

const PlaceIndex& abbrev_index() {
    static const PlaceIndex index =
        PlaceIndex::build(src_path("tests/fixtures/cities_abbrev.csv"));
    return index;
}

} // namespace

TEST_CASE("place keys are lowercased, de-dotted, and collapsed") {
    CHECK(normalize_place("U.S.A.") == "usa");
    CHECK(normalize_place("  New   York ") == "new york");
    CHECK(normalize_place("St. John's") == "st johns");
    CHECK(normalize_place("SÃO PAULO") == "s o paulo");
    CHECK(normalize_place("foo-bar/baz") == "foo bar baz");
    CHECK(normalize_place("...") == "");
    CHECK(normalize_place("") == "");
}

TEST_CASE("the fixture case table resolves exactly") {
    const PlaceIndex& index = abbrev_index();
    std::ifstream in(src_path("tests/fixtures/geo_cases.csv"));
    REQUIRE(in.good());
    CsvReader reader(in);
    std::vector<std::string> fields;
    REQUIRE(reader.next(fields));
    REQUIRE(fields == std::vector<std::string>{"raw_location", "expected_country",
                                               "expected_status"});
    std::size_t n = 0;
    while (reader.next(fields)) {
        REQUIRE(fields.size() == 3);
        ++n;
        CAPTURE(fields[0]);
        Resolution r = index.resolve(fields[0]);
        if (fields[2] == "unresolved") {
            CHECK_FALSE(r.country.has_value());
            CHECK_FALSE(r.ambiguous);
        } else {
            REQUIRE(r.country.has_value());
            CHECK(*r.country == fields[1]);
            CHECK(r.ambiguous == (fields[2] == "ambiguous"));
        }
    }
    CHECK(n == 50);
}

TEST_CASE("appending the country name pins any location to that country") {
    const PlaceIndex& index = abbrev_index();
    for (const char* raw : {"London", "Springfield", "Paris", "Hyderabad",
                            "nowhere-at-all"}) {
        std::string with_country = std::string(raw) + ", France";
        Resolution r = index.resolve(with_country);
        REQUIRE(r.country.has_value());
        CHECK(*r.country == "France");
        CHECK_FALSE(r.ambiguous);
    }
}

TEST_CASE("kind priority beats segment position") {
    const PlaceIndex& index = abbrev_index();
    // "India" names a country, "London" only a city, so the left segment wins
    Resolution r = index.resolve("India, London");
    REQUIRE(r.country.has_value());
    CHECK(*r.country == "India");

    // within one kind the rightmost segment wins
    r = index.resolve("Mumbai, Toronto");
    REQUIRE(r.country.has_value());
    CHECK(*r.country == "Canada");
}

TEST_CASE("gazetteer without abbreviation column skips abbreviation matches") {
    PlaceIndex index = PlaceIndex::build(src_path("data/world_cities.csv"));
    CHECK(index.key_count() > 0);
    Resolution r = index.resolve("Mumbai");
    REQUIRE(r.country.has_value());
    CHECK(*r.country == "India");
    CHECK_FALSE(index.resolve("ZZ-unknown-place").country.has_value());
}

TEST_CASE("gazetteer loading rejects malformed files") {
    const char* path = "tmp_cities.csv";
    auto write = [&](const std::string& body) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << body;
    };
    write("name,country\nParis,France\n");
    CHECK_THROWS_AS(PlaceIndex::build(path), DataError);
    write("name,country,subcountry,geonameid\nParis,France\n");
    CHECK_THROWS_AS(PlaceIndex::build(path), DataError);
    write("name,country,subcountry,geonameid\nParis,,Ile-de-France,1\n");
    CHECK_THROWS_AS(PlaceIndex::build(path), DataError);
    CHECK_THROWS_AS(PlaceIndex::build("no_such_cities.csv"), DataError);
    std::remove(path);
}

TEST_CASE("resolve_corpus fills countries and tallies outcomes") {
    std::vector<TweetRecord> corpus(4);
    for (auto& r : corpus) {
        r.text = "x";
        r.date = Date{2020, 5, 1};
    }
    corpus[0].raw_location = "Toronto, Canada";
    corpus[1].raw_location = "London"; // city in several countries
    corpus[2].raw_location = "garbage location xyz";
    // corpus[3] has no location; stale values must be cleared
    corpus[3].country = "Atlantis";
    corpus[3].country_ambiguous = true;

    ResolveStats stats = resolve_corpus(corpus, abbrev_index());
    CHECK(stats.resolved == 1);
    CHECK(stats.ambiguous == 1);
    CHECK(stats.unresolved == 1);
    CHECK(stats.no_location == 1);
    CHECK(corpus[0].country == "Canada");
    CHECK_FALSE(corpus[0].country_ambiguous);
    REQUIRE(corpus[1].country.has_value());
    CHECK(corpus[1].country_ambiguous);
    CHECK_FALSE(corpus[2].country.has_value());
    CHECK_FALSE(corpus[3].country.has_value());
    CHECK_FALSE(corpus[3].country_ambiguous);
}
