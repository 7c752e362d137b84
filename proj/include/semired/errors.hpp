#pragma once

#include <stdexcept>
#include <string>

namespace semired {

// Base class for everything this library throws on purpose.
struct semired_error : std::runtime_error {
    explicit semired_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A constructor or transform was called with parameters that violate its
// stated preconditions (e.g. a scaling factor that is not coprime to the
// relevant modulus, or an arithmetic step that would produce a negative
// remainder element).
struct precondition_error : semired_error {
    explicit precondition_error(const std::string& msg) : semired_error(msg) {}
};

// A generator list does not describe a numerical semigroup under the rules
// of the requested operation (e.g. gcd != 1 where finite Frobenius number
// is required).
struct not_numerical_error : semired_error {
    explicit not_numerical_error(const std::string& msg) : semired_error(msg) {}
};

// A computation would exceed a configured memory or size ceiling.
struct resource_error : semired_error {
    explicit resource_error(const std::string& msg) : semired_error(msg) {}
};

// A graph-level quantity that only exists for total graphs was requested on
// a graph whose balance shows it is not total.
struct not_total_error : semired_error {
    explicit not_total_error(const std::string& msg) : semired_error(msg) {}
};

// An internal cross-check failed: two routes to the same quantity disagree,
// or a certificate (such as a 0/1 product expansion) does not hold.
struct inconsistency_error : semired_error {
    explicit inconsistency_error(const std::string& msg) : semired_error(msg) {}
};

// Script text could not be parsed; carries a 1-based source position.
struct parse_error : semired_error {
    int line = 0;
    int column = 0;
    parse_error(const std::string& msg, int line_, int col_)
        : semired_error(msg + " (line " + std::to_string(line_) + ", column " +
                        std::to_string(col_) + ")"),
          line(line_), column(col_) {}
};

} // namespace semired
