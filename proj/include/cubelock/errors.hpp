#pragma once

#include <stdexcept>
#include <string>

namespace cubelock {

// Input too large for a context's configured capacity (Barrett shift,
// Montgomery R, table coverage, enumeration limits).
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Parameter outside its documented range (window width, rounds, bit counts).
class ParameterError : public std::runtime_error {
public:
    explicit ParameterError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally invalid data discovered after decryption or decoding.
class IntegrityError : public std::runtime_error {
public:
    explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

// Ciphertext/key fingerprint mismatch.
class WrongKeyError : public std::runtime_error {
public:
    explicit WrongKeyError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed file content; carries a 1-based line number when known.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

} // namespace cubelock
