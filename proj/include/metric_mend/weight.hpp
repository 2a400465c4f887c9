#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace metric_mend {

/// Unbounded nonnegative integer used for shortest-path and cycle counts.
using PathCount = mpz_class;

/// Exact rational edge weight, always kept in canonical (reduced) form.
///
/// Input weights are strictly positive; intermediate weights produced while
/// repairing may touch zero. Negative values are never constructed by the
/// library, but subtraction is allowed for deficit arithmetic.
class Weight {
public:
    Weight() = default;
    Weight(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    explicit Weight(mpq_class value);
    Weight(const mpz_class& numerator, const mpz_class& denominator);

    /// Parses "7", "3/4" or an exact decimal like "1.25". Signs are rejected.
    static std::optional<Weight> parse(std::string_view text);

    [[nodiscard]] const mpq_class& value() const { return value_; }
    [[nodiscard]] mpz_class numerator() const { return value_.get_num(); }
    [[nodiscard]] mpz_class denominator() const { return value_.get_den(); }

    [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
    [[nodiscard]] bool is_positive() const { return sgn(value_) > 0; }
    [[nodiscard]] bool is_negative() const { return sgn(value_) < 0; }
    [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }

    /// "p" for integers, "p/q" otherwise.
    [[nodiscard]] std::string to_string() const;

    Weight& operator+=(const Weight& other);
    Weight& operator-=(const Weight& other);
    Weight& operator*=(const Weight& other);
    Weight& operator/=(const Weight& other);

    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator*(Weight a, const Weight& b) { return a *= b; }
    friend Weight operator/(Weight a, const Weight& b) { return a /= b; }

    friend bool operator==(const Weight& a, const Weight& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Weight& a, const Weight& b);

    friend std::ostream& operator<<(std::ostream& os, const Weight& w) { return os << w.to_string(); }

private:
    mpq_class value_{0};
};

/// A shortest-path distance: either a finite Weight or infinity.
/// Infinity compares greater than every finite value and absorbs addition.
class Distance {
public:
    Distance() = default;  // zero
    Distance(Weight w) : finite_(true), weight_(std::move(w)) {}  // NOLINT(google-explicit-constructor)

    static Distance infinity() {
        Distance d;
        d.finite_ = false;
        return d;
    }

    [[nodiscard]] bool is_finite() const { return finite_; }
    [[nodiscard]] bool is_infinite() const { return !finite_; }
    /// Precondition: is_finite().
    [[nodiscard]] const Weight& weight() const;

    [[nodiscard]] std::string to_string() const { return finite_ ? weight_.to_string() : "inf"; }

    friend Distance operator+(const Distance& a, const Distance& b);
    friend bool operator==(const Distance& a, const Distance& b);
    friend std::strong_ordering operator<=>(const Distance& a, const Distance& b);

    friend std::ostream& operator<<(std::ostream& os, const Distance& d) { return os << d.to_string(); }

private:
    bool finite_ = true;
    Weight weight_;
};

std::string to_string(const PathCount& count);

}  // namespace metric_mend
