#include "tweetsense/emotion.hpp"

#include <bit>
#include <fstream>

#include "tweetsense/errors.hpp"
#include "tweetsense/text_prep.hpp"
#include "tweetsense/util.hpp"

namespace tweetsense {

std::string_view to_string(Emotion e) {
    switch (e) {
    case Emotion::Anger: return "anger";
    case Emotion::Fear: return "fear";
    case Emotion::Anticipation: return "anticipation";
    case Emotion::Trust: return "trust";
    case Emotion::Surprise: return "surprise";
    case Emotion::Sadness: return "sadness";
    case Emotion::Joy: return "joy";
    case Emotion::Disgust: return "disgust";
    }
    return "";
}

std::optional<Emotion> emotion_from_string(std::string_view s) {
    for (Emotion e : kAllEmotions) {
        if (to_string(e) == s) return e;
    }
    return std::nullopt;
}

EmotionLexicon EmotionLexicon::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open emotion lexicon: " + path);
    EmotionLexicon lex;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::vector<std::string> f = split_on(line, '\t');
        auto fail = [&](const std::string& what) {
            throw DataError(path + ":" + std::to_string(line_no) + ": " + what);
        };
        if (f.size() != 3 || f[0].empty()) {
            fail("expected word TAB affect TAB flag");
        }
        if (f[1] == "positive" || f[1] == "negative") continue;
        std::optional<Emotion> e = emotion_from_string(f[1]);
        if (!e) fail("unknown affect '" + f[1] + "'");
        if (f[2] != "0" && f[2] != "1") fail("flag must be 0 or 1, got '" + f[2] + "'");
        if (f[2] == "1") {
            lex.entries_[f[0]] |=
                static_cast<std::uint8_t>(1u << static_cast<unsigned>(*e));
        }
    }
    return lex;
}

EmotionLexicon EmotionLexicon::from_entries(
    std::map<std::string, std::vector<Emotion>> entries) {
    EmotionLexicon lex;
    for (const auto& [word, emotions] : entries) {
        std::uint8_t mask = 0;
        for (Emotion e : emotions) {
            mask |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(e));
        }
        if (mask != 0) lex.entries_[word] = mask;
    }
    return lex;
}

std::uint8_t EmotionLexicon::associations(const std::string& token) const {
    auto it = entries_.find(token);
    return it == entries_.end() ? 0 : it->second;
}

std::uint32_t EmotionProfile::total() const {
    std::uint32_t sum = 0;
    for (std::uint32_t c : raw) sum += c;
    return sum;
}

std::optional<Emotion> find_predominant(const EmotionProfile& profile) {
    std::uint32_t best = 0;
    std::optional<Emotion> winner;
    for (Emotion e : kAllEmotions) {
        std::uint32_t c = profile.raw[static_cast<std::size_t>(e)];
        if (c > best) {
            best = c;
            winner = e;
        }
    }
    return winner;
}

EmotionProfile profile_from_raw(
    const std::array<std::uint32_t, kEmotionCount>& raw) {
    EmotionProfile p;
    p.raw = raw;
    std::uint32_t total = p.total();
    if (total > 0) {
        for (std::size_t i = 0; i < kEmotionCount; ++i) {
            p.score[i] = static_cast<double>(p.raw[i]) / static_cast<double>(total);
        }
    }
    p.predominant = find_predominant(p);
    return p;
}

EmotionProfile score_emotions(std::string_view text, const EmotionLexicon& lex) {
    std::array<std::uint32_t, kEmotionCount> raw{};
    for (const std::string& token : tokenize_classifier(text)) {
        std::uint8_t mask = lex.associations(token);
        while (mask != 0) {
            int bit = std::countr_zero(mask);
            ++raw[static_cast<std::size_t>(bit)];
            mask = static_cast<std::uint8_t>(mask & (mask - 1));
        }
    }
    return profile_from_raw(raw);
}

} // namespace tweetsense
