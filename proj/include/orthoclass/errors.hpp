#pragma once

#include <stdexcept>
#include <string>

namespace ortho {

// Base for everything this library throws on purpose.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Unreadable/unwritable files, unexpected EOF on open streams.
class io_error : public error {
public:
    explicit io_error(const std::string& msg) : error(msg) {}
};

// Malformed input data (JSONL lines, XML dumps). Carries a position where known.
class parse_error : public error {
public:
    explicit parse_error(const std::string& msg) : error(msg) {}
};

// Bad user-supplied configuration (ratios, regexes, tag maps, flags).
class config_error : public error {
public:
    explicit config_error(const std::string& msg) : error(msg) {}
};

// Training preconditions violated (single class, negative NB features, ...).
class train_error : public error {
public:
    explicit train_error(const std::string& msg) : error(msg) {}
};

// Model file declares a format this build does not understand.
class version_error : public error {
public:
    explicit version_error(const std::string& msg) : error(msg) {}
};

// Model file is syntactically or structurally broken.
class corrupt_error : public error {
public:
    explicit corrupt_error(const std::string& msg) : error(msg) {}
};

// Model file ends mid-document.
class truncated_error : public error {
public:
    explicit truncated_error(const std::string& msg) : error(msg) {}
};

} // namespace ortho
