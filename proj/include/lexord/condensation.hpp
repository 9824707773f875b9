#pragma once

// Finite condensation of order terms, the transfinite FC-rank and the
// scattered/dense classification.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lexord/error.hpp"
#include "lexord/ordinal.hpp"
#include "lexord/order_term.hpp"

namespace lexord {

namespace detail {

/// Condensation of one atom; parametric atoms stay parametric.
inline Atom condensed(const Atom& a) {
    switch (a.kind) {
    case AtomKind::Eta:
        return a;
    case AtomKind::OmegaPow:
        return a.param <= 1 ? Atom::fin(1) : Atom::omega_pow(a.param - 1);
    case AtomKind::OmegaPowP:
        return Atom::omega_pow_p(a.param - 1);
    default:
        return Atom::fin(1);
    }
}

/// Address, inside the condensed atom, of the class of coordinate c of `inst`.
inline Coord condensed_coord(const Atom& inst, const Coord& c) {
    switch (inst.kind) {
    case AtomKind::Eta:
        return c;
    case AtomKind::OmegaPow: {
        if (inst.param <= 1)
            return std::uint64_t{0};
        auto v = std::get<std::vector<std::uint64_t>>(c);
        v.pop_back();
        return v;
    }
    default:
        return std::uint64_t{0};
    }
}

/// Least point of a concrete atom that has one.
inline Coord first_coord(const Atom& inst) {
    switch (inst.kind) {
    case AtomKind::Fin:
    case AtomKind::Omega:
        return std::uint64_t{0};
    case AtomKind::OmegaPow:
        return std::vector<std::uint64_t>(static_cast<std::size_t>(inst.param), 0);
    default:
        throw std::logic_error("atom has no least point");
    }
}

inline bool item_has_min(const Item& item) {
    if (const auto* a = std::get_if<Atom>(&item))
        return has_min(*a);
    const auto& s = std::get<OmegaSum>(item);
    return has_min(s.schema.front().at(s.start));
}

inline bool item_has_max(const Item& item) {
    const auto* a = std::get_if<Atom>(&item);
    return a && has_max(*a);
}

/// Junction j of a schema (between part j and part j+1, the last one wrapping
/// to the next summand) joins two points at distance one.
inline std::vector<bool> schema_junctions(const OmegaSum& s, std::uint64_t n) {
    const auto k = s.schema.size();
    std::vector<bool> out(k);
    for (std::size_t j = 0; j < k; ++j) {
        const Atom left = s.schema[j].at(n);
        const Atom right = j + 1 < k ? s.schema[j + 1].at(n) : s.schema[0].at(n + 1);
        out[j] = has_max(left) && has_min(right);
    }
    return out;
}

/// Peels one summand of every sum whose OmegaPowP atoms would reach a
/// negative exponent after condensation.
inline bool needs_peel(const OmegaSum& s) {
    for (const auto& a : s.schema)
        if (a.kind == AtomKind::OmegaPowP && static_cast<std::int64_t>(s.start) + a.param < 1)
            return true;
    return false;
}

struct PeelEntry {
    std::size_t first = 0;
    bool is_sum = false;
    std::uint64_t start = 0;
    std::uint64_t peeled = 0;
    std::size_t schema_size = 0;
};

struct ItemPlan {
    bool survives = true;
    std::size_t new_index = 0;
    std::optional<PointAddress> target;  // absorbed atoms
    bool collapsed = false;               // sums reduced to a single point
    std::vector<std::optional<std::size_t>> part_new;
    std::vector<std::size_t> part_target;
    std::vector<bool> part_target_next;
};

struct ProjectionData {
    OrderTerm source;
    std::vector<Item> peeled;
    std::vector<PeelEntry> entries;
    std::vector<ItemPlan> plans;
    OrderTerm result;
};

}  // namespace detail

/// Maps a point of the source term to the address of its ~1 class in the
/// condensed term. Holds immutable shared data only.
class Projection {
public:
    Projection() = default;
    explicit Projection(std::shared_ptr<const detail::ProjectionData> data) : data_(std::move(data)) {}

    PointAddress operator()(const PointAddress& x) const {
        using namespace detail;
        const auto& d = *data_;
        validate_address(d.source, x);
        const PeelEntry& e = d.entries[x.item];
        std::size_t p = e.first;
        std::uint64_t summand = x.summand;
        std::size_t part = x.part;
        if (e.is_sum && x.summand < e.start + e.peeled) {
            p = e.first + static_cast<std::size_t>(x.summand - e.start) * e.schema_size + x.part;
            summand = 0;
            part = 0;
        } else if (e.is_sum) {
            p = e.first + static_cast<std::size_t>(e.peeled) * e.schema_size;
        }
        const Item& item = d.peeled[p];
        const ItemPlan& plan = d.plans[p];
        if (const auto* a = std::get_if<Atom>(&item)) {
            if (!plan.survives)
                return *plan.target;
            return {plan.new_index, 0, 0, condensed_coord(*a, x.coord)};
        }
        const auto& s = std::get<OmegaSum>(item);
        if (plan.collapsed)
            return {plan.new_index, 0, 0, std::uint64_t{0}};
        if (plan.part_new[part])
            return {plan.new_index, summand, *plan.part_new[part], condensed_coord(s.schema[part].at(summand), x.coord)};
        const auto t = plan.part_target[part];
        const auto n = summand + (plan.part_target_next[part] ? 1 : 0);
        return {plan.new_index, n, *plan.part_new[t], first_coord(condensed(s.schema[t]).at(n))};
    }

    const OrderTerm& source() const { return data_->source; }
    const OrderTerm& result() const { return data_->result; }

private:
    std::shared_ptr<const detail::ProjectionData> data_;
};

struct CondenseResult {
    OrderTerm term;
    Projection project;
};

/// One finite condensation step: the quotient by ~1 and the class map.
inline CondenseResult condense_step(const OrderTerm& t) {
    using namespace detail;
    auto data = std::make_shared<ProjectionData>();
    data->source = t;

    for (const auto& item : t.items()) {
        PeelEntry e;
        e.first = data->peeled.size();
        if (const auto* a = std::get_if<Atom>(&item)) {
            data->peeled.push_back(*a);
        } else {
            OmegaSum s = std::get<OmegaSum>(item);
            e.is_sum = true;
            e.start = s.start;
            e.schema_size = s.schema.size();
            if (needs_peel(s)) {
                e.peeled = 1;
                for (const auto& a : s.schema)
                    data->peeled.push_back(a.at(s.start));
                ++s.start;
            }
            data->peeled.push_back(std::move(s));
        }
        data->entries.push_back(e);
    }

    const auto& items = data->peeled;
    const std::size_t m = items.size();
    auto& plans = data->plans;
    plans.resize(m);

    for (std::size_t i = 0; i < m; ++i) {
        const auto* s = std::get_if<OmegaSum>(&items[i]);
        if (s == nullptr) {
            plans[i].survives = !(i + 1 < m && item_has_max(items[i]) && item_has_min(items[i + 1]));
            continue;
        }
        auto& plan = plans[i];
        const auto k = s->schema.size();
        const auto junction = schema_junctions(*s, s->start);
        plan.collapsed = std::all_of(junction.begin(), junction.end(), [](bool b) { return b; });
        if (plan.collapsed)
            continue;
        plan.part_new.assign(k, std::nullopt);
        plan.part_target.assign(k, 0);
        plan.part_target_next.assign(k, false);
        std::size_t next_new = 0;
        for (std::size_t j = 0; j < k; ++j)
            if (!junction[j])
                plan.part_new[j] = next_new++;
        for (std::size_t j = 0; j < k; ++j) {
            if (plan.part_new[j])
                continue;
            std::size_t t2 = j + 1;
            while (t2 < k && !plan.part_new[t2])
                ++t2;
            if (t2 < k) {
                plan.part_target[j] = t2;
            } else {
                t2 = 0;
                while (!plan.part_new[t2])
                    ++t2;
                plan.part_target[j] = t2;
                plan.part_target_next[j] = true;
            }
        }
    }

    std::vector<Item> out;
    std::vector<PointAddress> first_point(m);
    for (std::size_t i = 0; i < m; ++i) {
        auto& plan = plans[i];
        if (!plan.survives)
            continue;
        plan.new_index = out.size();
        if (const auto* a = std::get_if<Atom>(&items[i])) {
            const Atom c = condensed(*a);
            if (has_min(*a))
                first_point[i] = {plan.new_index, 0, 0, first_coord(c)};
            out.push_back(c);
            continue;
        }
        const auto& s = std::get<OmegaSum>(items[i]);
        if (plan.collapsed) {
            first_point[i] = {plan.new_index, 0, 0, std::uint64_t{0}};
            out.push_back(Atom::fin(1));
            continue;
        }
        OmegaSum c{s.start, {}};
        for (std::size_t j = 0; j < s.schema.size(); ++j)
            if (plan.part_new[j])
                c.schema.push_back(condensed(s.schema[j]));
        if (item_has_min(items[i])) {
            std::size_t j0 = 0;
            while (!plan.part_new[j0])
                ++j0;
            first_point[i] = {plan.new_index, s.start, *plan.part_new[j0],
                              first_coord(condensed(s.schema[j0]).at(s.start))};
        }
        out.push_back(std::move(c));
    }
    for (std::size_t i = m; i-- > 0;) {
        if (plans[i].survives)
            continue;
        plans[i].target = plans[i + 1].survives ? first_point[i + 1] : *plans[i + 1].target;
    }

    const auto expected = out.size();
    data->result = OrderTerm(std::move(out));
    if (data->result.items().size() != expected)
        throw std::logic_error("condensed term changed shape under normalization");
    CondenseResult r{data->result, Projection(data)};
    return r;
}

// ---------------------------------------------------------------------------
// Dense predicate and classification

/// 0, 1, or 2 meaning "at least two".
inline int point_count_capped(const OrderTerm& t) {
    if (t.empty())
        return 0;
    if (t.items().size() == 1) {
        const auto* a = std::get_if<Atom>(&t.items().front());
        if (a && a->kind == AtomKind::Fin && a->param == 1)
            return 1;
    }
    return 2;
}

namespace detail {

inline bool has_internal_pair(const Atom& a) {
    switch (a.kind) {
    case AtomKind::Eta:
        return false;
    case AtomKind::Fin:
        return a.param >= 2;
    default:
        return true;
    }
}

}  // namespace detail

/// Some two points of t have nothing strictly between them.
inline bool has_adjacent_pair(const OrderTerm& t) {
    using namespace detail;
    const auto& items = t.items();
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (const auto* a = std::get_if<Atom>(&items[i])) {
            if (has_internal_pair(*a))
                return true;
        } else {
            const auto& s = std::get<OmegaSum>(items[i]);
            for (const auto& a : s.schema)
                if (has_internal_pair(a))
                    return true;
            // Only Fin(1) and Eta remain, so one summand is representative.
            for (bool j : schema_junctions(s, s.start))
                if (j)
                    return true;
        }
        if (i + 1 < items.size() && item_has_max(items[i]) && item_has_min(items[i + 1]))
            return true;
    }
    return false;
}

inline bool is_dense(const OrderTerm& t) { return point_count_capped(t) == 2 && !has_adjacent_pair(t); }

inline bool contains_eta(const OrderTerm& t) {
    for (const auto& item : t.items()) {
        if (const auto* a = std::get_if<Atom>(&item)) {
            if (a->kind == AtomKind::Eta)
                return true;
        } else {
            for (const auto& a : std::get<OmegaSum>(item).schema)
                if (a.kind == AtomKind::Eta)
                    return true;
        }
    }
    return false;
}

inline bool contains_omega_pow_p(const OrderTerm& t) {
    for (const auto& item : t.items())
        if (const auto* s = std::get_if<OmegaSum>(&item))
            for (const auto& a : s->schema)
                if (a.kind == AtomKind::OmegaPowP)
                    return true;
    return false;
}

enum class TermClass { Scattered, Dense, QuasiDenseNotDense, Empty, Singleton };

inline std::string to_string(TermClass c) {
    switch (c) {
    case TermClass::Scattered: return "scattered";
    case TermClass::Dense: return "dense";
    case TermClass::QuasiDenseNotDense: return "quasi-dense-not-dense";
    case TermClass::Empty: return "empty";
    case TermClass::Singleton: return "singleton";
    }
    return "?";
}

inline TermClass parse_term_class(const std::string& s) {
    for (auto c : {TermClass::Scattered, TermClass::Dense, TermClass::QuasiDenseNotDense, TermClass::Empty,
                   TermClass::Singleton})
        if (to_string(c) == s)
            return c;
    throw Error(ErrorKind::Syntax, "unknown class '" + s + "'");
}

inline TermClass classify(const OrderTerm& t) {
    switch (point_count_capped(t)) {
    case 0: return TermClass::Empty;
    case 1: return TermClass::Singleton;
    default: break;
    }
    if (!contains_eta(t))
        return TermClass::Scattered;
    return has_adjacent_pair(t) ? TermClass::QuasiDenseNotDense : TermClass::Dense;
}

// ---------------------------------------------------------------------------
// FC-rank

enum class RankOutcome { Singleton, Dense, Empty };

inline std::string to_string(RankOutcome o) {
    switch (o) {
    case RankOutcome::Singleton: return "singleton";
    case RankOutcome::Dense: return "dense";
    case RankOutcome::Empty: return "empty";
    }
    return "?";
}

struct CondensationTrace {
    std::vector<OrderTerm> steps;
    bool limit_applied = false;
    std::optional<std::size_t> limit_at;  // index in steps of the quotient by ~w
    Ordinal rank;
    RankOutcome outcome = RankOutcome::Empty;
};

namespace detail {

inline constexpr std::size_t kMaxCondenseSteps = 1U << 16;

inline bool is_deep(const Item& item) {
    const auto* s = std::get_if<OmegaSum>(&item);
    return s && std::any_of(s->schema.begin(), s->schema.end(),
                            [](const Atom& a) { return a.kind == AtomKind::OmegaPowP; });
}

inline Atom flatten_atom(const Atom& a) { return a.kind == AtomKind::Eta ? a : Atom::fin(1); }

inline std::vector<Item> condense_to_fixpoint(std::vector<Item> segment) {
    OrderTerm t(std::move(segment));
    for (std::size_t i = 0; i < kMaxCondenseSteps; ++i) {
        OrderTerm next = condense_step(t).term;
        if (next == t)
            return t.items();
        t = std::move(next);
    }
    throw std::logic_error("condensation did not stabilize");
}

}  // namespace detail

/// Quotient by the union of all finite condensations, for a term containing a
/// sum with unbounded exponents. Every non-Eta atom has collapsed to a point by
/// then; runs of points between such sums keep merging, while a sum with
/// unbounded exponents never acquires a greatest element below w.
inline OrderTerm limit_quotient(const OrderTerm& t) {
    using namespace detail;
    std::vector<Item> out;
    std::vector<Item> segment;
    auto flush = [&]() {
        auto fixed = condense_to_fixpoint(std::move(segment));
        out.insert(out.end(), fixed.begin(), fixed.end());
        segment.clear();
    };
    for (const auto& item : t.items()) {
        if (const auto* a = std::get_if<Atom>(&item)) {
            segment.push_back(flatten_atom(*a));
            continue;
        }
        OmegaSum s = std::get<OmegaSum>(item);
        const bool deep = is_deep(item);
        for (auto& a : s.schema)
            a = flatten_atom(a);
        if (!deep) {
            segment.push_back(std::move(s));
            continue;
        }
        flush();
        // The sum has a least point iff its first part does, and a preceding
        // isolated point then joins it.
        const bool sum_min = s.schema.front().kind != AtomKind::Eta;
        if (sum_min && !out.empty()) {
            const auto* last = std::get_if<Atom>(&out.back());
            if (last && has_max(*last))
                out.pop_back();
        }
        auto once = condense_step(OrderTerm({Item{std::move(s)}})).term.items();
        out.insert(out.end(), once.begin(), once.end());
    }
    flush();
    return OrderTerm(std::move(out));
}

inline CondensationTrace fc_rank(const OrderTerm& t) {
    CondensationTrace trace;
    trace.steps.push_back(t);
    Ordinal base;
    std::uint64_t finite = 0;
    for (std::size_t guard = 0; guard < detail::kMaxCondenseSteps; ++guard) {
        const OrderTerm& cur = trace.steps.back();
        const int count = point_count_capped(cur);
        std::optional<RankOutcome> outcome;
        if (count == 0)
            outcome = RankOutcome::Empty;
        else if (count == 1)
            outcome = RankOutcome::Singleton;
        else if (is_dense(cur))
            outcome = RankOutcome::Dense;
        if (outcome) {
            trace.outcome = *outcome;
            trace.rank = base + Ordinal::finite(finite);
            return trace;
        }
        if (!trace.limit_applied && contains_omega_pow_p(cur)) {
            trace.limit_applied = true;
            OrderTerm q = limit_quotient(cur);
            trace.steps.push_back(std::move(q));
            trace.limit_at = trace.steps.size() - 1;
            base = omega_pow(1);
            finite = 0;
            continue;
        }
        OrderTerm next = condense_step(cur).term;
        trace.steps.push_back(std::move(next));
        ++finite;
    }
    throw std::logic_error("condensation did not terminate");
}

}  // namespace lexord
