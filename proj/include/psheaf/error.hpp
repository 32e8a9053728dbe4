#pragma once

#include <stdexcept>
#include <string>

namespace psheaf {

// Malformed or inconsistent input: bad files, unknown elements, non-prime moduli.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A row/column operation that violates the label order of a labeled matrix.
class LegalityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Refusal to start a computation whose size exceeds a configured cap.
class SizeCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace psheaf
