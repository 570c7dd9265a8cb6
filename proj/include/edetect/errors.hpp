// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace edetect {

// Base class for everything thrown by this library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid parameters or violated preconditions (bad alpha, bad family
// parameters, malformed detector setup).
class config_error : public error {
public:
    using error::error;
};

// Numeric argument outside the admissible domain of a psi-layer map.
class domain_error : public config_error {
public:
    using config_error::config_error;
};

// Observations violating the declared model premise (out-of-range values,
// unparsable stream input).
class data_error : public error {
public:
    using error::error;
};

// Calibration targets that cannot be met (unattainable conjugate values,
// exhausted weight budget, missing root bracket).
class calibration_error : public error {
public:
    using error::error;
};

// Iteration caps exceeded or other numeric breakdowns.
class numeric_error : public error {
public:
    using error::error;
};

// File system failures.
class io_error : public error {
public:
    using error::error;
};

} // namespace edetect
