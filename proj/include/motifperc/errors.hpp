#pragma once

#include <stdexcept>
#include <string>

namespace motifperc {

// Raised for problems in the input data (unreadable files, empty cascades,
// cascades below the window size, ...). The CLI maps these to exit code 2;
// contract violations use std::invalid_argument and exit code 1.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace motifperc
