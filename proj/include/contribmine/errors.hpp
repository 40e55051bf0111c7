#pragma once
#include <stdexcept>
#include <string>

namespace contribmine {

// I/O failures that abort the current command (unreadable corpus, unwritable output).
struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Broken configuration: missing taxonomy category, bad vector file, unusable flags.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input data violates a contract (duplicate article id, malformed gold file).
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Embedding-provider failures carry a machine-checkable code.
struct embed_error : std::runtime_error {
    enum class code {
        empty_input,
        provider_unavailable,
        dimension_mismatch,
        zero_vector,
    };
    code kind;
    embed_error(code kind, const std::string& msg) : std::runtime_error(msg), kind(kind) {}
};

} // namespace contribmine
