#include "metric_mend/weight.hpp"

#include <cassert>
#include <cctype>
#include <stdexcept>

namespace metric_mend {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

mpz_class parse_digits(std::string_view s) { return mpz_class(std::string(s), 10); }

}  // namespace

Weight::Weight(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Weight::Weight(const mpz_class& numerator, const mpz_class& denominator) : value_(numerator, denominator) {
    if (denominator == 0) throw std::invalid_argument("weight denominator must be nonzero");
    value_.canonicalize();
}

std::optional<Weight> Weight::parse(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        mpz_class d = parse_digits(den);
        if (d == 0) return std::nullopt;
        return Weight(parse_digits(num), d);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto whole = text.substr(0, dot);
        auto frac = text.substr(dot + 1);
        if (whole.empty() && frac.empty()) return std::nullopt;
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) return std::nullopt;
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        mpz_class num = whole.empty() ? mpz_class(0) : parse_digits(whole);
        num *= scale;
        if (!frac.empty()) num += parse_digits(frac);
        return Weight(num, scale);
    }
    if (!all_digits(text)) return std::nullopt;
    return Weight(mpq_class(parse_digits(text)));
}

std::string Weight::to_string() const { return value_.get_str(10); }

Weight& Weight::operator+=(const Weight& other) {
    value_ += other.value_;
    return *this;
}

Weight& Weight::operator-=(const Weight& other) {
    value_ -= other.value_;
    return *this;
}

Weight& Weight::operator*=(const Weight& other) {
    value_ *= other.value_;
    return *this;
}

Weight& Weight::operator/=(const Weight& other) {
    if (other.is_zero()) throw std::domain_error("division of weight by zero");
    value_ /= other.value_;
    return *this;
}

std::strong_ordering operator<=>(const Weight& a, const Weight& b) {
    int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

const Weight& Distance::weight() const {
    assert(finite_);
    return weight_;
}

Distance operator+(const Distance& a, const Distance& b) {
    if (!a.finite_ || !b.finite_) return Distance::infinity();
    return Distance(a.weight_ + b.weight_);
}

bool operator==(const Distance& a, const Distance& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.weight_ == b.weight_;
}

std::strong_ordering operator<=>(const Distance& a, const Distance& b) {
    if (!a.finite_ || !b.finite_) {
        if (a.finite_ == b.finite_) return std::strong_ordering::equal;
        return a.finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.weight_ <=> b.weight_;
}

std::string to_string(const PathCount& count) { return count.get_str(10); }

}  // namespace metric_mend
