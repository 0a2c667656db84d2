#pragma once

#include <stdexcept>
#include <string>

namespace mscluster {

// Invalid parameters or malformed configuration. CLI exit code 2.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unusable input data: parse failures, shape mismatches, degenerate inputs.
// CLI exit code 3.
class data_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numerical computation violated its tolerance contract. CLI exit code 4.
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace mscluster
