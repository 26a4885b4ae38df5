#pragma once

#include <stdexcept>
#include <string>

namespace wnlink {

// Base for everything thrown by this library on bad data or bad arguments.
// The CLI maps these to exit code 1; anything else is an internal bug (exit 2).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input-file problem. Message always carries the path and, when known, the line.
class IoError : public Error {
public:
    IoError(const std::string& path, const std::string& msg)
        : Error(path + ": " + msg), path_(path), line_(0) {}
    IoError(const std::string& path, std::size_t line, const std::string& msg)
        : Error(path + ":" + std::to_string(line) + ": " + msg), path_(path), line_(line) {}

    const std::string& path() const { return path_; }
    std::size_t line() const { return line_; }

private:
    std::string path_;
    std::size_t line_;
};

}  // namespace wnlink
