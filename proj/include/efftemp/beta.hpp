#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <string>

namespace efftemp {

/// Inverse temperature on the extended real line, in units of 1/energy
/// (k_B = 1). Both infinities are legal values; NaN is not.
///
/// The natural order on Beta is the "coldness" order: a larger beta is
/// colder, and every negative beta is hotter than every positive one.
class Beta {
public:
    constexpr Beta() = default;
    constexpr explicit Beta(double value) : value_(value) {}

    static constexpr Beta plus_infinity() { return Beta(std::numeric_limits<double>::infinity()); }
    static constexpr Beta minus_infinity() { return Beta(-std::numeric_limits<double>::infinity()); }

    constexpr double value() const { return value_; }
    bool is_finite() const { return std::isfinite(value_); }
    bool is_plus_infinity() const { return std::isinf(value_) && value_ > 0; }
    bool is_minus_infinity() const { return std::isinf(value_) && value_ < 0; }

    /// Temperature 1/beta. beta = 0 maps to +inf and beta = +-inf to +-0.
    double temperature() const { return 1.0 / value_; }

    friend constexpr bool operator==(Beta a, Beta b) { return a.value_ == b.value_; }
    friend constexpr std::partial_ordering operator<=>(Beta a, Beta b) { return a.value_ <=> b.value_; }

private:
    double value_ = 0.0;
};

/// True iff a bath at `first` is strictly hotter than one at `second`.
inline bool hotter_than(Beta first, Beta second) { return first < second; }

/// "inf", "-inf" or the value printed with 12 significant digits.
std::string format_beta(Beta beta);

}  // namespace efftemp
