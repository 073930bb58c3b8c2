#pragma once

#include <stdexcept>
#include <string>

namespace simeval {

// Error taxonomy. The CLI maps kinds onto exit codes: validation/data -> 2,
// provider/protocol -> 3.
class Error : public std::runtime_error {
public:
    enum class Kind { validation, data, provider, protocol };

    Error(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(Kind::validation, msg) {}
};

class UnknownLanguageError : public ValidationError {
public:
    explicit UnknownLanguageError(const std::string& code)
        : ValidationError("unknown language code: '" + code + "'") {}
};

class MixedSettingsError : public ValidationError {
public:
    explicit MixedSettingsError(const std::string& msg) : ValidationError(msg) {}
};

class DataError : public Error {
public:
    explicit DataError(const std::string& msg) : Error(Kind::data, msg) {}
};

class LineCountMismatchError : public DataError {
public:
    LineCountMismatchError(const std::string& file, std::size_t expected, std::size_t got)
        : DataError("line count mismatch in " + file + ": expected " +
                    std::to_string(expected) + ", got " + std::to_string(got)),
          expected(expected), got(got) {}

    std::size_t expected;
    std::size_t got;
};

class UnknownSentenceError : public DataError {
public:
    explicit UnknownSentenceError(const std::string& text)
        : DataError("no stored embedding for sentence: \"" + text + "\"") {}
};

class ProviderError : public Error {
public:
    explicit ProviderError(const std::string& msg) : Error(Kind::provider, msg) {}
};

class ProtocolError : public Error {
public:
    explicit ProtocolError(const std::string& msg) : Error(Kind::protocol, msg) {}
};

} // namespace simeval
