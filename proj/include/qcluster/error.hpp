#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcluster {

/// Base of every domain failure raised by the library. `code()` is a stable
/// machine-readable identifier used by the command-line front end.
class error : public std::runtime_error {
public:
    error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class division_by_zero : public error {
public:
    division_by_zero() : error("DivisionByZero", "division by zero") {}
};

class not_divisible : public error {
public:
    explicit not_divisible(const std::string& what = "quotient is not a Laurent element")
        : error("NotDivisible", what) {}
};

class not_symmetrizable : public error {
public:
    explicit not_symmetrizable(const std::string& what)
        : error("NotSymmetrizable", what) {}
};

/// Compatibility failed at row `i` (index in [0,m)) of column `j` (an exchangeable index).
class incompatible : public error {
public:
    incompatible(std::size_t i, std::size_t j, const std::string& what)
        : error("Incompatible", what), row_(i), column_(j) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

class frame_mismatch : public error {
public:
    frame_mismatch() : error("FrameMismatch", "operands live in different quantum tori") {}
};

class dimension_error : public error {
public:
    explicit dimension_error(const std::string& what) : error("DimensionMismatch", what) {}
};

class invalid_direction : public error {
public:
    explicit invalid_direction(std::size_t k)
        : error("InvalidDirection", "index " + std::to_string(k + 1) + " is not exchangeable"), index_(k) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class invalid_seed : public error {
public:
    explicit invalid_seed(const std::string& what) : error("InvalidSeed", what) {}
};

/// Malformed input file or option (as opposed to a mathematical failure).
class input_error : public error {
public:
    explicit input_error(const std::string& what) : error("InvalidInput", what) {}
};

} // namespace qcluster
