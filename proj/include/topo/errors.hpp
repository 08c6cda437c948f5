#pragma once

#include <stdexcept>
#include <string>

namespace topo {

// Malformed or inconsistent input (bad JSON shape, broken invariant on load).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// JSON that does not parse or is missing a field; message carries the field path.
struct parse_error : input_error {
    explicit parse_error(const std::string& what) : input_error(what) {}
};

// A structural precondition of a contraction step failed.
struct contract_error : std::runtime_error {
    explicit contract_error(const std::string& what) : std::runtime_error(what) {}
};

// An exhaustive search ran past its budget.  Callers must treat this as
// "no answer", never as an approximate answer.
struct timeout_error : std::runtime_error {
    explicit timeout_error(const std::string& what) : std::runtime_error(what) {}
};

// Random generation exhausted its retry budget.
struct generation_error : std::runtime_error {
    explicit generation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace topo
