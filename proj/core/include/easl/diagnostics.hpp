#ifndef EASL_DIAGNOSTICS_HPP
#define EASL_DIAGNOSTICS_HPP

#include <stdexcept>
#include <string>

namespace easl {

// Base class for everything the runtime can report to a user.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Syntax or validation failure in a source file, with a location.
class parse_error : public error {
public:
    parse_error(std::string file, int line, int column, const std::string& message)
        : error(format(file, line, column, message)),
          file_(std::move(file)), line_(line), column_(column) {}

    const std::string& file() const { return file_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    static std::string format(const std::string& file, int line, int column,
                              const std::string& message) {
        std::string out = file.empty() ? "<input>" : file;
        out += ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message;
        return out;
    }

    std::string file_;
    int line_;
    int column_;
};

// A structurally valid input that cannot be run (incomplete omega matrix,
// unknown agent id, emotion label outside the configured set, ...).
class config_error : public error {
public:
    explicit config_error(const std::string& what) : error(what) {}
};

// Out-of-range values detected past the parse layer.
class validation_error : public error {
public:
    explicit validation_error(const std::string& what) : error(what) {}
};

} // namespace easl

#endif
