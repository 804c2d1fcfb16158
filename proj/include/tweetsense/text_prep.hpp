#ifndef TWEETSENSE_TEXT_PREP_HPP
#define TWEETSENSE_TEXT_PREP_HPP

#include <string>
#include <string_view>
#include <vector>

namespace tweetsense {

// Sentiment-mode token: case preserved, surrounding punctuation peeled off.
// trailing_punct keeps the !/? characters of the trailing punctuation run so
// emphasis stays attached to the clause.
struct Token {
    std::string surface;
    bool is_allcaps = false; // at least two letters, all uppercase
    std::string trailing_punct;

    bool operator==(const Token&) const = default;
};

// Whitespace split, then leading/trailing punctuation stripped. Tokens with
// no letters and two or more punctuation marks are emoticons and stay whole.
// Tokens whose surface would be empty are dropped.
std::vector<Token> tokenize_sentiment(std::string_view text);

// Lowercased words with punctuation removed. URLs collapse to <url>,
// @-mentions to <user>. Hyphens and apostrophes split words.
std::vector<std::string> tokenize_classifier(std::string_view text);

} // namespace tweetsense

#endif
