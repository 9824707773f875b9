#pragma once

// Symbolic countable linear orders: finite sums of atoms (finite orders, w, w*,
// zeta, eta, w^k) and w-indexed sums of parametric schemas, with point
// addresses, the order on points and decidable interval finiteness.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lexord/error.hpp"

namespace lexord {

enum class AtomKind : std::uint8_t { Fin, Omega, OmegaStar, Zeta, Eta, OmegaPow, FinP, OmegaPowP };

/// One summand of a term. `param` is the size of Fin, the exponent of OmegaPow,
/// and the offset c of the parametric atoms (size n+c, exponent n+c).
struct Atom {
    AtomKind kind = AtomKind::Fin;
    std::int64_t param = 0;

    static constexpr Atom fin(std::int64_t k) { return {AtomKind::Fin, k}; }
    static constexpr Atom omega() { return {AtomKind::Omega, 0}; }
    static constexpr Atom omega_star() { return {AtomKind::OmegaStar, 0}; }
    static constexpr Atom zeta() { return {AtomKind::Zeta, 0}; }
    static constexpr Atom eta() { return {AtomKind::Eta, 0}; }
    static constexpr Atom omega_pow(std::int64_t k) { return {AtomKind::OmegaPow, k}; }
    static constexpr Atom fin_p(std::int64_t c) { return {AtomKind::FinP, c}; }
    static constexpr Atom omega_pow_p(std::int64_t c) { return {AtomKind::OmegaPowP, c}; }

    constexpr bool parametric() const { return kind == AtomKind::FinP || kind == AtomKind::OmegaPowP; }

    /// The concrete atom at index n, with w^0 written as Fin(1).
    Atom at(std::uint64_t n) const {
        switch (kind) {
        case AtomKind::FinP:
            return fin(static_cast<std::int64_t>(n) + param);
        case AtomKind::OmegaPowP: {
            const auto e = static_cast<std::int64_t>(n) + param;
            return e == 0 ? fin(1) : omega_pow(e);
        }
        case AtomKind::OmegaPow:
            return param == 0 ? fin(1) : *this;
        default:
            return *this;
        }
    }

    auto operator<=>(const Atom&) const = default;
};

/// sum over n >= start of the schema instantiated at n.
struct OmegaSum {
    std::uint64_t start = 0;
    std::vector<Atom> schema;

    auto operator<=>(const OmegaSum&) const = default;
};

using Item = std::variant<Atom, OmegaSum>;

namespace detail {

inline constexpr std::uint64_t kMaxPeel = 1U << 16;

inline Atom check_concrete(const Atom& a) {
    if (a.parametric())
        throw Error(ErrorKind::InvalidTerm, "parametric atom outside an omega-indexed sum");
    if ((a.kind == AtomKind::Fin || a.kind == AtomKind::OmegaPow) && a.param < 0)
        throw Error(ErrorKind::InvalidTerm, "negative size or exponent");
    return a.at(0);
}

/// Bounds every summand n >= start must satisfy.
inline bool schema_valid_at(const std::vector<Atom>& schema, std::uint64_t n) {
    for (const auto& a : schema) {
        const auto v = static_cast<std::int64_t>(n) + a.param;
        if (a.kind == AtomKind::FinP && v < 1)
            return false;
        if (a.kind == AtomKind::OmegaPowP && v < 0)
            return false;
    }
    return true;
}

}  // namespace detail

class OrderTerm {
public:
    OrderTerm() = default;

    /// Normalizes: drops empty atoms, writes w^0 as Fin(1), and peels initial
    /// summands of each sum until its schema bounds hold.
    explicit OrderTerm(std::vector<Item> items) {
        for (auto& item : items) {
            if (const auto* a = std::get_if<Atom>(&item)) {
                const Atom c = detail::check_concrete(*a);
                if (!(c.kind == AtomKind::Fin && c.param == 0))
                    items_.push_back(c);
                continue;
            }
            OmegaSum sum = std::get<OmegaSum>(std::move(item));
            std::vector<Atom> schema;
            for (const auto& a : sum.schema) {
                if (a.parametric()) {
                    schema.push_back(a);
                    continue;
                }
                const Atom c = detail::check_concrete(a);
                if (!(c.kind == AtomKind::Fin && c.param == 0))
                    schema.push_back(c);
            }
            if (schema.empty())
                continue;
            std::uint64_t peeled = 0;
            while (!detail::schema_valid_at(schema, sum.start)) {
                if (++peeled > detail::kMaxPeel)
                    throw Error(ErrorKind::InvalidTerm, "too many summands to peel");
                for (const auto& a : schema) {
                    const auto v = static_cast<std::int64_t>(sum.start) + a.param;
                    if (a.parametric() && v < 0)
                        throw Error(ErrorKind::InvalidTerm, "schema has a negative size or exponent at n = " +
                                                                std::to_string(sum.start));
                    const Atom c = a.at(sum.start);
                    if (!(c.kind == AtomKind::Fin && c.param == 0))
                        items_.push_back(c);
                }
                ++sum.start;
            }
            sum.schema = std::move(schema);
            items_.push_back(std::move(sum));
        }
    }

    const std::vector<Item>& items() const noexcept { return items_; }
    bool empty() const noexcept { return items_.empty(); }

    friend bool operator==(const OrderTerm&, const OrderTerm&) = default;

private:
    std::vector<Item> items_;
};

// ---------------------------------------------------------------------------
// Text syntax

inline std::string to_string(const Atom& a) {
    switch (a.kind) {
    case AtomKind::Fin: return "(fin " + std::to_string(a.param) + ")";
    case AtomKind::Omega: return "omega";
    case AtomKind::OmegaStar: return "omegastar";
    case AtomKind::Zeta: return "zeta";
    case AtomKind::Eta: return "eta";
    case AtomKind::OmegaPow: return "(w^ " + std::to_string(a.param) + ")";
    case AtomKind::FinP: return "(finp " + std::to_string(a.param) + ")";
    case AtomKind::OmegaPowP: return "(w^p " + std::to_string(a.param) + ")";
    }
    return "?";
}

inline std::string to_string(const Item& item) {
    if (const auto* a = std::get_if<Atom>(&item))
        return to_string(*a);
    const auto& s = std::get<OmegaSum>(item);
    std::string body;
    if (s.schema.size() == 1) {
        body = to_string(s.schema.front());
    } else {
        body = "(+";
        for (const auto& a : s.schema)
            body += " " + to_string(a);
        body += ")";
    }
    return "(omsum " + std::to_string(s.start) + " " + body + ")";
}

inline std::string to_string(const OrderTerm& t) {
    if (t.items().size() == 1)
        return to_string(t.items().front());
    std::string out = "(+";
    for (const auto& item : t.items())
        out += " " + to_string(item);
    return out + ")";
}

inline std::ostream& operator<<(std::ostream& os, const OrderTerm& t) { return os << to_string(t); }

namespace detail {

class TermParser {
public:
    explicit TermParser(std::string_view text) : text_(text) {}

    OrderTerm parse() {
        std::vector<Item> items;
        parse_into(items, false);
        skip_ws();
        if (pos_ != text_.size())
            fail("trailing input");
        return OrderTerm(std::move(items));
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::Syntax, msg + " at offset " + std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    std::string_view token() {
        skip_ws();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        if (text_[pos_] == '(' || text_[pos_] == ')')
            return text_.substr(pos_++, 1);
        const auto begin = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               text_[pos_] != '(' && text_[pos_] != ')')
            ++pos_;
        return text_.substr(begin, pos_ - begin);
    }

    std::string_view peek() {
        const auto saved = pos_;
        auto t = token();
        pos_ = saved;
        return t;
    }

    template <typename T>
    T number() {
        const auto tok = token();
        T value{};
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
            fail("expected a number, got '" + std::string(tok) + "'");
        return value;
    }

    void expect_close() {
        if (token() != ")")
            fail("expected ')'");
    }

    void parse_into(std::vector<Item>& out, bool in_schema) {
        const auto tok = token();
        if (tok == "omega") return out.push_back(Atom::omega());
        if (tok == "omegastar") return out.push_back(Atom::omega_star());
        if (tok == "zeta") return out.push_back(Atom::zeta());
        if (tok == "eta") return out.push_back(Atom::eta());
        if (tok != "(")
            fail("unknown atom '" + std::string(tok) + "'");
        const auto head = token();
        if (head == "+") {
            while (peek() != ")")
                parse_into(out, in_schema);
            expect_close();
        } else if (head == "fin" || head == "w^") {
            const auto k = number<std::int64_t>();
            if (k < 0)
                fail("negative size or exponent");
            out.push_back(head == "fin" ? Atom::fin(k) : Atom::omega_pow(k));
            expect_close();
        } else if (head == "finp" || head == "w^p") {
            if (!in_schema)
                throw Error(ErrorKind::InvalidTerm, "parametric atom outside an omsum");
            const auto c = number<std::int64_t>();
            out.push_back(head == "finp" ? Atom::fin_p(c) : Atom::omega_pow_p(c));
            expect_close();
        } else if (head == "omsum") {
            if (in_schema)
                throw Error(ErrorKind::InvalidTerm, "nested omsum");
            const auto start = number<std::uint64_t>();
            std::vector<Item> schema_items;
            parse_into(schema_items, true);
            expect_close();
            OmegaSum sum{start, {}};
            for (const auto& item : schema_items)
                sum.schema.push_back(std::get<Atom>(item));
            out.push_back(std::move(sum));
        } else {
            fail("unknown form '" + std::string(head) + "'");
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline OrderTerm parse_term(std::string_view text) { return detail::TermParser(text).parse(); }

// ---------------------------------------------------------------------------
// Points

/// numerator / 2^exponent in (0, 1), numerator odd.
struct Dyadic {
    std::uint64_t numerator = 1;
    std::uint32_t exponent = 1;

    static constexpr std::uint32_t kMaxExponent = 62;

    bool valid() const {
        return exponent >= 1 && exponent <= kMaxExponent && (numerator & 1U) == 1 &&
               numerator < (std::uint64_t{1} << exponent);
    }

    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
        const auto e = std::max(a.exponent, b.exponent);
        return (a.numerator << (e - a.exponent)) <=> (b.numerator << (e - b.exponent));
    }
    friend bool operator==(const Dyadic&, const Dyadic&) = default;

    /// Canonical form of num / 2^exp; num must lie strictly between 0 and 2^exp.
    static Dyadic reduced(std::uint64_t num, std::uint32_t exp) {
        while ((num & 1U) == 0) {
            num >>= 1;
            --exp;
        }
        return {num, exp};
    }
};

/// Fin, Omega, OmegaStar: index (OmegaStar index m is position -(m+1));
/// Zeta: integer; Eta: dyadic; OmegaPow(k): k-tuple, most significant first.
using Coord = std::variant<std::uint64_t, std::int64_t, Dyadic, std::vector<std::uint64_t>>;

/// `summand` and `part` are used only for points of an omega-indexed sum and
/// are zero otherwise.
struct PointAddress {
    std::size_t item = 0;
    std::uint64_t summand = 0;
    std::size_t part = 0;
    Coord coord;

    friend bool operator==(const PointAddress&, const PointAddress&) = default;
};

inline std::string to_string(const Coord& c) {
    struct Visitor {
        std::string operator()(std::uint64_t v) const { return std::to_string(v); }
        std::string operator()(std::int64_t v) const { return "z" + std::to_string(v); }
        std::string operator()(const Dyadic& d) const {
            return std::to_string(d.numerator) + "/2^" + std::to_string(d.exponent);
        }
        std::string operator()(const std::vector<std::uint64_t>& v) const {
            std::string s = "<";
            for (std::size_t i = 0; i < v.size(); ++i)
                s += (i ? "," : "") + std::to_string(v[i]);
            return s + ">";
        }
    };
    return std::visit(Visitor{}, c);
}

inline std::string to_string(const PointAddress& x) {
    return "[" + std::to_string(x.item) + " " + std::to_string(x.summand) + " " + std::to_string(x.part) + " " +
           to_string(x.coord) + "]";
}

inline std::ostream& operator<<(std::ostream& os, const PointAddress& x) { return os << to_string(x); }

namespace detail {

inline bool coord_valid(const Atom& a, const Coord& c) {
    switch (a.kind) {
    case AtomKind::Fin: {
        const auto* v = std::get_if<std::uint64_t>(&c);
        return v && *v < static_cast<std::uint64_t>(a.param);
    }
    case AtomKind::Omega:
    case AtomKind::OmegaStar:
        return std::holds_alternative<std::uint64_t>(c);
    case AtomKind::Zeta:
        return std::holds_alternative<std::int64_t>(c);
    case AtomKind::Eta: {
        const auto* d = std::get_if<Dyadic>(&c);
        return d && d->valid();
    }
    case AtomKind::OmegaPow: {
        const auto* v = std::get_if<std::vector<std::uint64_t>>(&c);
        return v && v->size() == static_cast<std::size_t>(a.param);
    }
    default:
        return false;
    }
}

}  // namespace detail

/// The concrete atom holding a point (after instantiating its summand).
inline Atom atom_of(const OrderTerm& t, const PointAddress& x) {
    if (x.item >= t.items().size())
        throw Error(ErrorKind::InvalidAddress, "item index out of range");
    const auto& item = t.items()[x.item];
    if (const auto* a = std::get_if<Atom>(&item)) {
        if (x.summand != 0 || x.part != 0)
            throw Error(ErrorKind::InvalidAddress, "summand/part given for a non-sum item");
        return *a;
    }
    const auto& s = std::get<OmegaSum>(item);
    if (x.summand < s.start || x.part >= s.schema.size())
        throw Error(ErrorKind::InvalidAddress, "summand or part out of range");
    return s.schema[x.part].at(x.summand);
}

inline void validate_address(const OrderTerm& t, const PointAddress& x) {
    if (!detail::coord_valid(atom_of(t, x), x.coord))
        throw Error(ErrorKind::InvalidAddress, "coordinate does not fit its atom: " + to_string(x));
}

namespace detail {

inline std::strong_ordering coord_cmp(const Atom& a, const Coord& x, const Coord& y) {
    switch (a.kind) {
    case AtomKind::Fin:
    case AtomKind::Omega:
        return std::get<std::uint64_t>(x) <=> std::get<std::uint64_t>(y);
    case AtomKind::OmegaStar:
        return std::get<std::uint64_t>(y) <=> std::get<std::uint64_t>(x);
    case AtomKind::Zeta:
        return std::get<std::int64_t>(x) <=> std::get<std::int64_t>(y);
    case AtomKind::Eta:
        return std::get<Dyadic>(x) <=> std::get<Dyadic>(y);
    case AtomKind::OmegaPow:
        return std::get<std::vector<std::uint64_t>>(x) <=> std::get<std::vector<std::uint64_t>>(y);
    default:
        throw std::logic_error("parametric atom has no points");
    }
}

// Attributes of concrete atoms.

inline bool has_min(const Atom& a) {
    return a.kind == AtomKind::Fin || a.kind == AtomKind::Omega || a.kind == AtomKind::OmegaPow;
}

inline bool has_max(const Atom& a) {
    return a.kind == AtomKind::Fin || a.kind == AtomKind::OmegaStar ||
           (a.kind == AtomKind::OmegaPow && a.param == 0);
}

inline bool is_finite(const Atom& a) {
    return a.kind == AtomKind::Fin || (a.kind == AtomKind::OmegaPow && a.param == 0);
}

/// {z in a : z >= x} is finite
inline bool finite_above(const Atom& a, const Coord&) {
    return a.kind == AtomKind::Fin || a.kind == AtomKind::OmegaStar;
}

/// {z in a : z <= x} is finite
inline bool finite_below(const Atom& a, const Coord& c) {
    switch (a.kind) {
    case AtomKind::Fin:
    case AtomKind::Omega:
        return true;
    case AtomKind::OmegaPow: {
        const auto& v = std::get<std::vector<std::uint64_t>>(c);
        return v.size() <= 1 || std::all_of(v.begin(), v.end() - 1, [](std::uint64_t e) { return e == 0; });
    }
    default:
        return false;
    }
}

inline bool atom_interval_finite(const Atom& a, const Coord& x, const Coord& y) {
    switch (a.kind) {
    case AtomKind::Eta:
        return x == y;
    case AtomKind::OmegaPow: {
        const auto& u = std::get<std::vector<std::uint64_t>>(x);
        const auto& v = std::get<std::vector<std::uint64_t>>(y);
        return u.size() <= 1 || std::equal(u.begin(), u.end() - 1, v.begin());
    }
    default:
        return true;
    }
}

inline bool summand_finite(const OmegaSum& s, std::uint64_t n) {
    return std::all_of(s.schema.begin(), s.schema.end(), [&](const Atom& a) { return is_finite(a.at(n)); });
}

/// Summands from..to (inclusive) are all finite. Summands past the first are
/// uniform in this respect.
inline bool summands_finite(const OmegaSum& s, std::uint64_t from, std::uint64_t to) {
    if (from > to)
        return true;
    if (!summand_finite(s, from))
        return false;
    return from == to || summand_finite(s, from + 1);
}

inline bool parts_finite(const OmegaSum& s, std::uint64_t n, std::size_t from, std::size_t to) {
    for (std::size_t j = from; j < to; ++j)
        if (!is_finite(s.schema[j].at(n)))
            return false;
    return true;
}

}  // namespace detail

inline std::strong_ordering point_cmp(const OrderTerm& t, const PointAddress& x, const PointAddress& y) {
    validate_address(t, x);
    validate_address(t, y);
    if (auto c = x.item <=> y.item; c != 0)
        return c;
    if (auto c = x.summand <=> y.summand; c != 0)
        return c;
    if (auto c = x.part <=> y.part; c != 0)
        return c;
    return detail::coord_cmp(atom_of(t, x), x.coord, y.coord);
}

/// The closed interval between x and y (in either order) is finite.
inline bool interval_finite(const OrderTerm& t, const PointAddress& a, const PointAddress& b) {
    const auto order = point_cmp(t, a, b);
    if (order == 0)
        return true;
    const PointAddress& x = order < 0 ? a : b;
    const PointAddress& y = order < 0 ? b : a;
    const Atom ax = atom_of(t, x);
    const Atom ay = atom_of(t, y);
    const auto& items = t.items();

    if (x.item == y.item) {
        if (const auto* s = std::get_if<OmegaSum>(&items[x.item])) {
            if (x.summand == y.summand) {
                if (x.part == y.part)
                    return detail::atom_interval_finite(ax, x.coord, y.coord);
                return detail::finite_above(ax, x.coord) && detail::parts_finite(*s, x.summand, x.part + 1, y.part) &&
                       detail::finite_below(ay, y.coord);
            }
            return detail::finite_above(ax, x.coord) &&
                   detail::parts_finite(*s, x.summand, x.part + 1, s->schema.size()) &&
                   detail::summands_finite(*s, x.summand + 1, y.summand - 1) &&
                   detail::parts_finite(*s, y.summand, 0, y.part) && detail::finite_below(ay, y.coord);
        }
        return detail::atom_interval_finite(ax, x.coord, y.coord);
    }

    // x's item: everything above x must be finite
    if (std::holds_alternative<OmegaSum>(items[x.item]) || !detail::finite_above(ax, x.coord))
        return false;
    for (std::size_t i = x.item + 1; i < y.item; ++i) {
        const auto* a = std::get_if<Atom>(&items[i]);
        if (!a || !detail::is_finite(*a))
            return false;
    }
    if (const auto* s = std::get_if<OmegaSum>(&items[y.item]))
        return (y.summand == s->start || detail::summands_finite(*s, s->start, y.summand - 1)) &&
               detail::parts_finite(*s, y.summand, 0, y.part) && detail::finite_below(ay, y.coord);
    return detail::finite_below(ay, y.coord);
}

// ---------------------------------------------------------------------------
// Sampling

namespace detail {

/// Deterministic across platforms: uses raw mt19937_64 output only.
class PointSampler {
public:
    explicit PointSampler(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

    std::uint64_t small() { return (engine_() & 3U) != 0 ? below(8) : below(64); }

    Coord coord(const Atom& a) {
        switch (a.kind) {
        case AtomKind::Fin:
            return below(static_cast<std::uint64_t>(a.param));
        case AtomKind::Omega:
        case AtomKind::OmegaStar:
            return small();
        case AtomKind::Zeta: {
            const auto v = static_cast<std::int64_t>(small());
            return (engine_() & 1U) ? v : -v;
        }
        case AtomKind::Eta: {
            const auto depth = static_cast<std::uint32_t>(1 + below(24));
            const auto num = 2 * below(std::uint64_t{1} << (depth - 1)) + 1;
            return Dyadic{num, depth};
        }
        case AtomKind::OmegaPow: {
            std::vector<std::uint64_t> v(static_cast<std::size_t>(a.param));
            for (auto& e : v)
                e = small();
            return v;
        }
        default:
            throw std::logic_error("parametric atom has no points");
        }
    }

    PointAddress point(const OrderTerm& t) {
        PointAddress x;
        x.item = below(t.items().size());
        if (const auto* a = std::get_if<Atom>(&t.items()[x.item])) {
            x.coord = coord(*a);
            return x;
        }
        const auto& s = std::get<OmegaSum>(t.items()[x.item]);
        std::uint64_t extra = 0;
        while (extra < 12 && below(3) != 0)
            ++extra;
        x.summand = s.start + extra;
        x.part = below(s.schema.size());
        x.coord = coord(s.schema[x.part].at(x.summand));
        return x;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace detail

/// Deterministic pseudo-random valid points of a nonempty term.
inline std::vector<PointAddress> sample_points(const OrderTerm& t, std::size_t count, std::uint64_t seed) {
    if (t.empty())
        throw Error(ErrorKind::InvalidTerm, "cannot sample points of an empty order");
    detail::PointSampler sampler(seed);
    std::vector<PointAddress> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(sampler.point(t));
    return out;
}

}  // namespace lexord
