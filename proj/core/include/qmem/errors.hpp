#pragma once

#include <stdexcept>
#include <string>

namespace qmem {

/// Raised when an integration or evaluation produces a non-finite or
/// physically inadmissible value (negative radicand, energy mismatch, ...).
/// Configuration mistakes use std::invalid_argument instead.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qmem
