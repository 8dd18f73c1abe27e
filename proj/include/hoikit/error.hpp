#pragma once

#include <stdexcept>
#include <string>

namespace hoikit {

// Base for everything the toolkit throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// File could not be opened / read / written.
struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

// File opened fine but its content is malformed. `line` is 1-based for text
// formats; `byte_offset` is used for binary payloads. Either may be -1.
struct ParseError : Error {
    long line = -1;
    long byte_offset = -1;
    ParseError(const std::string& msg, long line_, long byte_offset_ = -1)
        : Error(msg), line(line_), byte_offset(byte_offset_) {}
};

// A face (or similar) references a vertex that does not exist.
struct IndexRangeError : ParseError {
    IndexRangeError(const std::string& msg, long line_, long byte_offset_ = -1)
        : ParseError(msg, line_, byte_offset_) {}
};

// Caller violated a documented precondition.
struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

}  // namespace hoikit
