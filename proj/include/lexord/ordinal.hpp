#pragma once

// Ordinals below w^w in Cantor normal form.

#include <charconv>
#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lexord/error.hpp"

namespace lexord {

struct CnfTerm {
    std::uint32_t exponent = 0;
    std::uint64_t coefficient = 1;

    auto operator<=>(const CnfTerm&) const = default;
};

namespace detail {

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("ordinal coefficient overflow");
    return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("ordinal coefficient overflow");
    return r;
}

inline std::uint32_t checked_add(std::uint32_t a, std::uint32_t b) {
    std::uint32_t r = 0;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("ordinal exponent overflow");
    return r;
}

}  // namespace detail

/// An ordinal w^e1*c1 + ... + w^ek*ck with e1 > ... > ek and every ci >= 1.
/// The empty term list is 0.
class Ordinal {
public:
    Ordinal() = default;

    static Ordinal finite(std::uint64_t n) {
        Ordinal o;
        if (n > 0)
            o.terms_.push_back({0, n});
        return o;
    }

    static Ordinal omega_power(std::uint32_t exponent, std::uint64_t coefficient = 1) {
        Ordinal o;
        if (coefficient > 0)
            o.terms_.push_back({exponent, coefficient});
        return o;
    }

    /// Builds from terms that must already be canonical.
    static Ordinal from_terms(std::vector<CnfTerm> terms) {
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (terms[i].coefficient == 0)
                throw std::invalid_argument("zero coefficient in Cantor normal form");
            if (i > 0 && terms[i - 1].exponent <= terms[i].exponent)
                throw std::invalid_argument("exponents must strictly decrease");
        }
        Ordinal o;
        o.terms_ = std::move(terms);
        return o;
    }

    const std::vector<CnfTerm>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_finite() const noexcept { return terms_.empty() || terms_.front().exponent == 0; }
    bool is_successor() const noexcept { return !terms_.empty() && terms_.back().exponent == 0; }

    std::uint32_t leading_exponent() const noexcept {
        return terms_.empty() ? 0 : terms_.front().exponent;
    }

    friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
        // Lexicographic on (exponent, coefficient) pairs; a proper prefix is smaller.
        return a.terms_ <=> b.terms_;
    }
    friend bool operator==(const Ordinal&, const Ordinal&) = default;

    friend Ordinal operator+(const Ordinal& a, const Ordinal& b) {
        if (b.is_zero())
            return a;
        const std::uint32_t lead = b.terms_.front().exponent;
        Ordinal sum;
        for (const auto& t : a.terms_) {
            if (t.exponent > lead)
                sum.terms_.push_back(t);
            else
                break;
        }
        auto it = b.terms_.begin();
        for (const auto& t : a.terms_) {
            if (t.exponent == lead) {
                sum.terms_.push_back({lead, detail::checked_add(t.coefficient, it->coefficient)});
                ++it;
                break;
            }
        }
        sum.terms_.insert(sum.terms_.end(), it, b.terms_.end());
        return sum;
    }

    friend Ordinal operator*(const Ordinal& a, const Ordinal& b) {
        if (a.is_zero() || b.is_zero())
            return {};
        const std::uint32_t lead = a.terms_.front().exponent;
        Ordinal product;
        for (const auto& t : b.terms_) {
            Ordinal part;
            if (t.exponent == 0) {
                // a * c multiplies only the leading coefficient
                part.terms_ = a.terms_;
                part.terms_.front().coefficient =
                    detail::checked_mul(part.terms_.front().coefficient, t.coefficient);
            } else {
                part.terms_.push_back({detail::checked_add(lead, t.exponent), t.coefficient});
            }
            product = product + part;
        }
        return product;
    }

private:
    std::vector<CnfTerm> terms_;
};

inline std::strong_ordering ord_cmp(const Ordinal& a, const Ordinal& b) { return a <=> b; }
inline Ordinal ord_add(const Ordinal& a, const Ordinal& b) { return a + b; }
inline Ordinal ord_mul(const Ordinal& a, const Ordinal& b) { return a * b; }
inline Ordinal omega_pow(std::uint32_t n) { return Ordinal::omega_power(n); }

/// Compact text form: `w^2 + w*3 + 4`, `w`, `0`.
inline std::string to_string(const Ordinal& o) {
    if (o.is_zero())
        return "0";
    std::string out;
    for (const auto& t : o.terms()) {
        if (!out.empty())
            out += " + ";
        if (t.exponent == 0) {
            out += std::to_string(t.coefficient);
            continue;
        }
        out += "w";
        if (t.exponent != 1)
            out += "^" + std::to_string(t.exponent);
        if (t.coefficient != 1)
            out += "*" + std::to_string(t.coefficient);
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Ordinal& o) { return os << to_string(o); }

namespace detail {

template <typename T>
T parse_nat(std::string_view text, std::string_view whole) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw Error(ErrorKind::Syntax, "bad natural number in ordinal '" + std::string(whole) + "'");
    return value;
}

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace detail

/// Parses `0` | term (`+` term)* with term := `w^` nat [`*` nat] | `w` [`*` nat] | nat.
/// Non-canonical sums are accepted and folded with ordinal addition.
inline Ordinal parse_ordinal(std::string_view text) {
    const std::string_view whole = text;
    Ordinal result;
    bool any = false;
    while (true) {
        const auto plus = text.find('+');
        const std::string_view term = detail::trim(text.substr(0, plus));
        if (term.empty())
            throw Error(ErrorKind::Syntax, "empty term in ordinal '" + std::string(whole) + "'");
        any = true;
        if (term.front() == 'w') {
            std::string_view rest = term.substr(1);
            std::uint32_t exponent = 1;
            std::uint64_t coefficient = 1;
            const auto star = rest.find('*');
            std::string_view power = rest.substr(0, star);
            if (!power.empty()) {
                if (power.front() != '^')
                    throw Error(ErrorKind::Syntax, "expected '^' in ordinal '" + std::string(whole) + "'");
                exponent = detail::parse_nat<std::uint32_t>(power.substr(1), whole);
            }
            if (star != std::string_view::npos)
                coefficient = detail::parse_nat<std::uint64_t>(rest.substr(star + 1), whole);
            result = result + Ordinal::omega_power(exponent, coefficient);
        } else {
            result = result + Ordinal::finite(detail::parse_nat<std::uint64_t>(term, whole));
        }
        if (plus == std::string_view::npos)
            break;
        text = text.substr(plus + 1);
    }
    if (!any)
        throw Error(ErrorKind::Syntax, "empty ordinal");
    return result;
}

}  // namespace lexord
