#pragma once

// Shared helpers for the unit tests and the acceptance binary: fixture paths,
// point perturbation for pair sampling and a strictly-between point search.

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "lexord/catalog.hpp"
#include "lexord/condensation.hpp"
#include "lexord/order_term.hpp"

namespace lexord::testing {

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(LEXORD_FIXTURE_DIR) / name;
}

inline std::vector<FixtureEntry> catalog() { return load_catalog(fixture("catalog.json")); }

/// Points near x: the same atom with a nudged coordinate, or the first point
/// of a neighbouring part or summand. Falls back to x itself.
inline PointAddress perturb(const OrderTerm& t, const PointAddress& x, std::mt19937_64& rng) {
    PointAddress y = x;
    const Atom a = atom_of(t, x);
    const auto step = static_cast<std::int64_t>(rng() % 3) + 1;
    const bool up = (rng() & 1U) != 0;
    switch (a.kind) {
    case AtomKind::Fin: {
        const auto k = static_cast<std::uint64_t>(a.param);
        y.coord = (std::get<std::uint64_t>(x.coord) + static_cast<std::uint64_t>(step)) % k;
        break;
    }
    case AtomKind::Omega:
    case AtomKind::OmegaStar: {
        const auto c = std::get<std::uint64_t>(x.coord);
        y.coord = up ? c + static_cast<std::uint64_t>(step) : (c >= static_cast<std::uint64_t>(step) ? c - static_cast<std::uint64_t>(step) : 0);
        break;
    }
    case AtomKind::Zeta:
        y.coord = std::get<std::int64_t>(x.coord) + (up ? step : -step);
        break;
    case AtomKind::Eta: {
        const auto d = std::get<Dyadic>(x.coord);
        if (d.exponent < 30) {
            const auto num = (d.numerator << 1) + (up ? 1 : -1);
            y.coord = Dyadic::reduced(num, d.exponent + 1);
        }
        break;
    }
    case AtomKind::OmegaPow: {
        auto v = std::get<std::vector<std::uint64_t>>(x.coord);
        const auto i = rng() % v.size();
        v[i] = up ? v[i] + 1 : (v[i] > 0 ? v[i] - 1 : 0);
        if (rng() & 1U)
            for (auto j = i + 1; j < v.size(); ++j)
                v[j] = rng() % 4;
        y.coord = v;
        break;
    }
    default:
        break;
    }
    // Occasionally hop to the start of the next part of an omega-indexed sum.
    if (const auto* s = std::get_if<OmegaSum>(&t.items()[x.item]); s && rng() % 4 == 0) {
        PointAddress z = x;
        if (x.part + 1 < s->schema.size()) {
            ++z.part;
        } else {
            z.part = 0;
            ++z.summand;
        }
        const Atom b = atom_of(t, z);
        if (b.kind == AtomKind::Fin || b.kind == AtomKind::Omega)
            z.coord = std::uint64_t{0};
        else if (b.kind == AtomKind::OmegaPow)
            z.coord = std::vector<std::uint64_t>(static_cast<std::size_t>(b.param), 0);
        else if (b.kind == AtomKind::OmegaStar)
            z.coord = std::uint64_t{rng() % 3};
        else if (b.kind == AtomKind::Zeta)
            z.coord = std::int64_t{0};
        else
            z.coord = Dyadic{1, 1};
        return z;
    }
    return y;
}

/// Seeded pairs: half independent samples, half a sample and a nearby point.
inline std::vector<std::pair<PointAddress, PointAddress>> sample_pairs(const OrderTerm& t, std::size_t count,
                                                                       std::uint64_t seed) {
    const auto pts = sample_points(t, 2 * count, seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<std::pair<PointAddress, PointAddress>> out;
    for (std::size_t i = 0; i < count; ++i) {
        if (i % 2 == 0)
            out.emplace_back(pts[2 * i], pts[2 * i + 1]);
        else
            out.emplace_back(pts[2 * i], perturb(t, pts[2 * i], rng));
    }
    return out;
}

inline Dyadic dyadic_mid(const Dyadic& a, const Dyadic& b) {
    const auto e = std::max(a.exponent, b.exponent);
    const auto num = (a.numerator << (e - a.exponent)) + (b.numerator << (e - b.exponent));
    return Dyadic::reduced(num, e + 1);
}

/// (1 + d) / 2 and d / 2.
inline Dyadic dyadic_above(const Dyadic& d) { return Dyadic::reduced(d.numerator + (std::uint64_t{1} << d.exponent), d.exponent + 1); }
inline Dyadic dyadic_below(const Dyadic& d) { return Dyadic{d.numerator, d.exponent + 1}; }

/// The position right after x's atom: next part, next summand or next item.
inline std::optional<PointAddress> next_atom_start(const OrderTerm& t, const PointAddress& x) {
    PointAddress z = x;
    if (const auto* s = std::get_if<OmegaSum>(&t.items()[x.item])) {
        if (x.part + 1 < s->schema.size()) {
            ++z.part;
        } else {
            z.part = 0;
            ++z.summand;
        }
    } else {
        if (x.item + 1 >= t.items().size())
            return std::nullopt;
        z = PointAddress{x.item + 1, 0, 0, {}};
        if (const auto* s = std::get_if<OmegaSum>(&t.items()[z.item]))
            z.summand = s->start;
    }
    return z;
}

/// A point strictly between x < y, built from the eta atoms that a dense term
/// must place between any two points.
inline std::optional<PointAddress> find_between(const OrderTerm& t, const PointAddress& x, const PointAddress& y) {
    const Atom ax = atom_of(t, x);
    const Atom ay = atom_of(t, y);
    const bool same_atom = x.item == y.item && x.summand == y.summand && x.part == y.part;
    std::optional<PointAddress> z;
    if (same_atom && ax.kind == AtomKind::Eta) {
        z = x;
        z->coord = dyadic_mid(std::get<Dyadic>(x.coord), std::get<Dyadic>(y.coord));
    } else if (ax.kind == AtomKind::Eta) {
        z = x;
        z->coord = dyadic_above(std::get<Dyadic>(x.coord));
    } else if (ay.kind == AtomKind::Eta) {
        z = y;
        z->coord = dyadic_below(std::get<Dyadic>(y.coord));
    } else if (auto n = next_atom_start(t, x); n && atom_of(t, *n).kind == AtomKind::Eta) {
        z = n;
        z->coord = Dyadic{1, 1};
    }
    if (z && point_cmp(t, x, *z) < 0 && point_cmp(t, *z, y) < 0)
        return z;
    return std::nullopt;
}

/// The summand n of an omega-indexed sum as a term of its own.
inline OrderTerm instance(const OmegaSum& s, std::uint64_t n) {
    std::vector<Item> items;
    for (const auto& a : s.schema)
        items.push_back(a.at(n));
    return OrderTerm(std::move(items));
}

}  // namespace lexord::testing
