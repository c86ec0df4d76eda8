#pragma once

#include <stdexcept>

namespace spikecom {

// Invalid arguments or configuration supplied by the caller.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed input data or a numeric fault during processing.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace spikecom
