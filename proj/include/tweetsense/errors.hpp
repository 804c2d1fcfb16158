#ifndef TWEETSENSE_ERRORS_HPP
#define TWEETSENSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tweetsense {

// Bad input data: unreadable files, malformed rows, contract violations.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric failure: non-finite loss or gradient during training.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tweetsense

#endif
