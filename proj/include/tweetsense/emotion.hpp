#ifndef TWEETSENSE_EMOTION_HPP
#define TWEETSENSE_EMOTION_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tweetsense {

// Declaration order fixes both the bitmask layout and the argmax tie-break.
enum class Emotion : std::uint8_t {
    Anger = 0,
    Fear,
    Anticipation,
    Trust,
    Surprise,
    Sadness,
    Joy,
    Disgust,
};

inline constexpr std::size_t kEmotionCount = 8;

inline constexpr std::array<Emotion, kEmotionCount> kAllEmotions = {
    Emotion::Anger,     Emotion::Fear, Emotion::Anticipation, Emotion::Trust,
    Emotion::Surprise, Emotion::Sadness, Emotion::Joy, Emotion::Disgust,
};

std::string_view to_string(Emotion e);
std::optional<Emotion> emotion_from_string(std::string_view s);

// word -> set of associated emotions, stored as a bitmask in enum order.
class EmotionLexicon {
public:
    EmotionLexicon() = default;

    // TSV rows: word TAB affect TAB flag(0|1). The valence affects
    // (positive/negative) are skipped; unknown affect names are an error.
    static EmotionLexicon load(const std::string& path);
    static EmotionLexicon from_entries(
        std::map<std::string, std::vector<Emotion>> entries);

    // 0 when the word is unknown or carries no emotion association.
    std::uint8_t associations(const std::string& token) const;
    std::size_t size() const { return entries_.size(); }
    const std::map<std::string, std::uint8_t>& entries() const {
        return entries_;
    }

private:
    std::map<std::string, std::uint8_t> entries_;
};

struct EmotionProfile {
    std::array<std::uint32_t, kEmotionCount> raw{};
    std::array<double, kEmotionCount> score{};
    std::optional<Emotion> predominant;

    std::uint32_t total() const;
    bool operator==(const EmotionProfile&) const = default;
};

// Counts classifier-mode tokens per associated emotion (a token contributes
// once per associated emotion per occurrence), normalizes by the total, and
// picks the predominant emotion.
EmotionProfile score_emotions(std::string_view text, const EmotionLexicon& lex);

// Argmax of score with ties broken by enum order; absent when total is 0.
std::optional<Emotion> find_predominant(const EmotionProfile& profile);

// Rebuilds score and predominant from raw counts.
EmotionProfile profile_from_raw(
    const std::array<std::uint32_t, kEmotionCount>& raw);

} // namespace tweetsense

#endif
