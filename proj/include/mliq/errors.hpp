#pragma once

#include <stdexcept>
#include <string>

namespace mliq {

// File could not be opened/read/written. CLI maps this to exit code 2.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data/config. CLI maps this to exit code 1,
// as it does std::domain_error and std::logic_error from the math modules.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A borrow request exceeds what the counterparty can lend.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mliq
