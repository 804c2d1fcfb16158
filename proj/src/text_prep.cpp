#include "tweetsense/text_prep.hpp"

#include "tweetsense/util.hpp"

namespace tweetsense {

namespace {

bool is_ascii_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_ascii_alnum(char c) {
    return is_ascii_alpha(c) || (c >= '0' && c <= '9');
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
    if (s.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        char a = s[i];
        if (a >= 'A' && a <= 'Z') a = static_cast<char>(a - 'A' + 'a');
        if (a != prefix[i]) return false;
    }
    return true;
}

} // namespace

std::vector<Token> tokenize_sentiment(std::string_view text) {
    std::vector<Token> out;
    for (std::string& chunk : split_whitespace(text)) {
        std::size_t letters = 0;
        std::size_t puncts = 0;
        for (char c : chunk) {
            if (is_ascii_alpha(c)) ++letters;
            if (is_ascii_punct(c)) ++puncts;
        }
        if (letters == 0 && puncts >= 2) {
            out.push_back(Token{std::move(chunk), false, ""});
            continue;
        }
        std::size_t b = 0;
        std::size_t e = chunk.size();
        while (b < e && is_ascii_punct(chunk[b])) ++b;
        while (e > b && is_ascii_punct(chunk[e - 1])) --e;
        if (b == e) continue;

        Token tok;
        tok.surface = chunk.substr(b, e - b);
        for (std::size_t i = e; i < chunk.size(); ++i) {
            if (chunk[i] == '!' || chunk[i] == '?') tok.trailing_punct += chunk[i];
        }
        std::size_t upper = 0;
        bool any_lower = false;
        for (char c : tok.surface) {
            if (c >= 'A' && c <= 'Z') ++upper;
            if (c >= 'a' && c <= 'z') any_lower = true;
        }
        tok.is_allcaps = upper >= 2 && !any_lower;
        out.push_back(std::move(tok));
    }
    return out;
}

std::vector<std::string> tokenize_classifier(std::string_view text) {
    std::vector<std::string> out;
    for (const std::string& chunk : split_whitespace(text)) {
        if (starts_with_ci(chunk, "http://") || starts_with_ci(chunk, "https://")
            || starts_with_ci(chunk, "www.")) {
            out.emplace_back("<url>");
            continue;
        }
        if (chunk.size() > 1 && chunk[0] == '@' && is_ascii_alnum(chunk[1])) {
            out.emplace_back("<user>");
            continue;
        }
        std::string word;
        for (char c : chunk) {
            if (c >= 'A' && c <= 'Z') {
                word += static_cast<char>(c - 'A' + 'a');
            } else if (is_ascii_alnum(c)) {
                word += c;
            } else if (!word.empty()) {
                out.push_back(std::move(word));
                word.clear();
            }
        }
        if (!word.empty()) out.push_back(std::move(word));
    }
    return out;
}

} // namespace tweetsense
