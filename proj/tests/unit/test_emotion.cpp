#include "tweetsense/emotion.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <doctest.h>

#include "tweetsense/errors.hpp"

using namespace tweetsense;

namespace {

std::string src_path(const std::string& rel) {
    return std::string(TWEETSENSE_SOURCE_DIR) + "/" + rel;
}

const EmotionLexicon& fixture_lexicon() {
    static const EmotionLexicon lex =
        EmotionLexicon::load(src_path("data/emotion_lexicon.tsv"));
    return lex;
}

std::uint8_t bit(Emotion e) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(e));
}

} // namespace

TEST_CASE("emotion names round-trip in declaration order") {
    CHECK(to_string(Emotion::Anger) == "anger");
    CHECK(to_string(Emotion::Disgust) == "disgust");
    for (Emotion e : kAllEmotions) {
        CHECK(emotion_from_string(to_string(e)) == e);
    }
    CHECK_FALSE(emotion_from_string("positive").has_value());
    CHECK_FALSE(emotion_from_string("Joy").has_value());
}

TEST_CASE("lexicon load keeps only flagged emotion rows") {
    const auto& lex = fixture_lexicon();
    CHECK(lex.size() == 137);
    CHECK(lex.associations("hospital") == (bit(Emotion::Fear) | bit(Emotion::Trust)));
    CHECK(lex.associations("happy") == bit(Emotion::Joy));
    CHECK(lex.associations("death") == (bit(Emotion::Fear) | bit(Emotion::Sadness)));
    CHECK(lex.associations("no-such-word") == 0);
}

TEST_CASE("scoring counts once per associated emotion per occurrence") {
    const auto& lex = fixture_lexicon();
    EmotionProfile p = score_emotions("Hospital! hospital death...", lex);
    CHECK(p.raw[static_cast<std::size_t>(Emotion::Fear)] == 3);
    CHECK(p.raw[static_cast<std::size_t>(Emotion::Trust)] == 2);
    CHECK(p.raw[static_cast<std::size_t>(Emotion::Sadness)] == 1);
    CHECK(p.total() == 6);
    CHECK(p.score[static_cast<std::size_t>(Emotion::Fear)] == doctest::Approx(0.5));
    CHECK(p.predominant == Emotion::Fear);

    double sum = 0.0;
    for (double s : p.score) sum += s;
    CHECK(std::fabs(sum - 1.0) < 1e-12);
}

TEST_CASE("text without lexicon hits yields an empty profile") {
    const auto& lex = fixture_lexicon();
    EmotionProfile p = score_emotions("qwerty uiop 12345", lex);
    CHECK(p.total() == 0);
    CHECK_FALSE(p.predominant.has_value());
    for (double s : p.score) CHECK(s == 0.0);
    CHECK(p == EmotionProfile{});
}

TEST_CASE("predominant ties break by declaration order") {
    std::array<std::uint32_t, kEmotionCount> raw{};
    raw[static_cast<std::size_t>(Emotion::Trust)] = 3;
    raw[static_cast<std::size_t>(Emotion::Fear)] = 3;
    raw[static_cast<std::size_t>(Emotion::Joy)] = 1;
    EmotionProfile p = profile_from_raw(raw);
    CHECK(p.predominant == Emotion::Fear);

    raw = {};
    raw[static_cast<std::size_t>(Emotion::Disgust)] = 2;
    raw[static_cast<std::size_t>(Emotion::Anger)] = 2;
    CHECK(profile_from_raw(raw).predominant == Emotion::Anger);
}

TEST_CASE("from_entries builds the same masks as load") {
    auto lex = EmotionLexicon::from_entries({
        {"storm", {Emotion::Fear, Emotion::Surprise}},
        {"calm", {}},
    });
    CHECK(lex.size() == 1);
    CHECK(lex.associations("storm") == (bit(Emotion::Fear) | bit(Emotion::Surprise)));
    CHECK(lex.associations("calm") == 0);
}

TEST_CASE("lexicon load rejects malformed rows") {
    const char* path = "tmp_emotion_test.tsv";
    auto write = [&](const std::string& body) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << body;
    };

    write("storm\tfear\t1\nstorm\tpositive\t1\ncalm\tjoy\t0\n");
    auto lex = EmotionLexicon::load(path);
    CHECK(lex.size() == 1);
    CHECK(lex.associations("storm") == bit(Emotion::Fear));

    write("storm\tdread\t1\n");
    CHECK_THROWS_AS(EmotionLexicon::load(path), DataError);
    write("storm\tfear\t2\n");
    CHECK_THROWS_AS(EmotionLexicon::load(path), DataError);
    write("storm\tfear\n");
    CHECK_THROWS_AS(EmotionLexicon::load(path), DataError);
    CHECK_THROWS_AS(EmotionLexicon::load("no_such_file.tsv"), DataError);

    std::remove(path);
}
