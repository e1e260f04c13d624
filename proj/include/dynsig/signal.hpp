#pragma once

// Static signals: finite partitions of (states x [0,1)). A cell's probability
// in state theta is the Lebesgue measure of its theta-section. Cells are
// compared modulo null sets; every stored section is a canonical IntervalSet.

#include "dynsig/errors.hpp"
#include "dynsig/interval_set.hpp"
#include "dynsig/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace dynsig {

struct StateSpace {
    std::vector<std::string> labels;

    std::size_t size() const { return labels.size(); }

    std::size_t index_of(const std::string& label) const {
        auto it = std::find(labels.begin(), labels.end(), label);
        if (it == labels.end()) throw LookupError("unknown state \"" + label + "\"");
        return static_cast<std::size_t>(it - labels.begin());
    }

    /// Empty string when valid.
    std::string problem() const {
        if (labels.empty()) return "state space is empty";
        std::set<std::string> seen;
        for (const auto& l : labels) {
            if (l.empty()) return "empty state label";
            if (!seen.insert(l).second) return "duplicate state \"" + l + "\"";
        }
        return {};
    }

    friend bool operator==(const StateSpace&, const StateSpace&) = default;
};

/// Full-support prior, indexed like the state space.
struct Prior {
    std::vector<Rational> weights;

    static Prior uniform(std::size_t n) { return Prior{std::vector<Rational>(n, Rational(1, static_cast<std::int64_t>(n)))}; }

    const Rational& operator[](std::size_t i) const { return weights[i]; }
    std::size_t size() const { return weights.size(); }

    void check(const StateSpace& states) const {
        if (weights.size() != states.size()) throw MismatchError("prior has " + std::to_string(weights.size()) + " weights for " + std::to_string(states.size()) + " states");
        Rational total;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (weights[i].sign() <= 0) throw ValidationError("prior weight of \"" + states.labels[i] + "\" is not positive");
            total += weights[i];
        }
        if (total != Rational(1)) throw ValidationError("prior weights sum to " + total.str() + ", not 1");
    }
};

struct Cell {
    std::string id;
    std::vector<IntervalSet> sections;  // one per state

    bool null() const {
        return std::all_of(sections.begin(), sections.end(), [](const IntervalSet& s) { return s.empty(); });
    }

    /// Number of states with a positive-measure section.
    std::size_t support_size() const {
        return static_cast<std::size_t>(std::count_if(sections.begin(), sections.end(), [](const IntervalSet& s) { return !s.empty(); }));
    }

    bool subset_of(const Cell& o) const {
        for (std::size_t i = 0; i < sections.size(); ++i)
            if (!sections[i].subset_of(o.sections[i])) return false;
        return true;
    }

    bool overlaps(const Cell& o) const {
        for (std::size_t i = 0; i < sections.size(); ++i)
            if (!sections[i].intersect(o.sections[i]).empty()) return true;
        return false;
    }

    bool same_set(const Cell& o) const { return sections == o.sections; }

    friend bool operator==(const Cell&, const Cell&) = default;
};

struct Signal {
    StateSpace states;
    std::vector<Cell> cells;

    std::size_t index_of(const std::string& id) const {
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (cells[i].id == id) return i;
        throw LookupError("unknown cell \"" + id + "\"");
    }
    const Cell& cell(const std::string& id) const { return cells[index_of(id)]; }

    friend bool operator==(const Signal&, const Signal&) = default;
};

inline Signal trivial_signal(const StateSpace& states, std::string id = "*") {
    return Signal{states, {Cell{std::move(id), std::vector<IntervalSet>(states.size(), IntervalSet::full())}}};
}

/// One cell per state; every cell reveals its state.
inline Signal revealing_signal(const StateSpace& states) {
    Signal s{states, {}};
    for (std::size_t i = 0; i < states.size(); ++i) {
        Cell c{states.labels[i], std::vector<IntervalSet>(states.size())};
        c.sections[i] = IntervalSet::full();
        s.cells.push_back(std::move(c));
    }
    return s;
}

/// First invariant violation of a signal.
struct Violation {
    std::string message;
    std::string state;          // empty when not state-specific
    std::optional<Interval> where;
};

/// Checks the partition invariants. Reports the first failing state (in
/// state order) and the leftmost gap or overlap within it.
inline std::optional<Violation> validate(const Signal& sig) {
    if (auto p = sig.states.problem(); !p.empty()) return Violation{p, {}, {}};
    if (sig.cells.empty()) return Violation{"signal has no cells", {}, {}};
    std::set<std::string> ids;
    for (const auto& c : sig.cells) {
        if (!ids.insert(c.id).second) return Violation{"duplicate cell id \"" + c.id + "\"", {}, {}};
        if (c.sections.size() != sig.states.size())
            return Violation{"cell \"" + c.id + "\" has " + std::to_string(c.sections.size()) + " sections for " + std::to_string(sig.states.size()) + " states", {}, {}};
        if (c.null()) return Violation{"cell \"" + c.id + "\" is null", {}, {}};
    }
    for (std::size_t s = 0; s < sig.states.size(); ++s) {
        std::vector<Interval> pieces;
        for (const auto& c : sig.cells)
            for (const auto& p : c.sections[s].intervals()) pieces.push_back(p);
        std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
        const std::string& label = sig.states.labels[s];
        Rational cursor(0);
        for (const auto& p : pieces) {
            if (p.lo > cursor) return Violation{"gap at " + label + " " + Interval{cursor, p.lo}.str(), label, Interval{cursor, p.lo}};
            if (p.lo < cursor) {
                Interval ov{p.lo, min(cursor, p.hi)};
                return Violation{"overlap at " + label + " " + ov.str(), label, ov};
            }
            cursor = p.hi;
        }
        if (cursor < Rational(1)) return Violation{"gap at " + label + " " + Interval{cursor, 1}.str(), label, Interval{cursor, 1}};
    }
    return std::nullopt;
}

inline void require_valid(const Signal& sig) {
    if (auto v = validate(sig)) throw ValidationError(v->message);
}

inline void require_same_states(const StateSpace& a, const StateSpace& b) {
    if (!(a == b)) throw MismatchError("signals are defined on different state spaces");
}

/// P(cell | state): measure of the cell's section at `state`.
inline Rational cell_probability(const Signal& sig, const std::string& cell_id, const std::string& state) {
    const Cell& c = sig.cell(cell_id);
    return c.sections[sig.states.index_of(state)].measure();
}

/// True when at most one state has positive probability.
inline bool is_revealing(const Cell& c) { return c.support_size() <= 1; }
inline bool is_revealing(const Signal& sig, const std::string& cell_id) { return is_revealing(sig.cell(cell_id)); }

/// Index of the cell of `coarse` containing `c` mod null, if any.
inline std::optional<std::size_t> containing_cell(const Signal& coarse, const Cell& c) {
    for (std::size_t i = 0; i < coarse.cells.size(); ++i)
        if (c.subset_of(coarse.cells[i])) return i;
    return std::nullopt;
}

/// Indices of the cells of `sig` that meet `c` in positive measure.
inline std::vector<std::size_t> overlapping_cells(const Signal& sig, const Cell& c) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < sig.cells.size(); ++i)
        if (c.overlaps(sig.cells[i])) out.push_back(i);
    return out;
}

struct RefinementWitness {
    std::string fine_cell;
    std::string coarse_a;
    std::string coarse_b;
};

struct RefinementResult {
    bool holds = true;
    std::optional<RefinementWitness> witness;  // set iff !holds
    explicit operator bool() const { return holds; }
};

/// Whether every cell of `fine` sits inside one cell of `coarse`.
inline RefinementResult refines(const Signal& fine, const Signal& coarse) {
    require_same_states(fine.states, coarse.states);
    for (const auto& c : fine.cells) {
        if (containing_cell(coarse, c)) continue;
        auto hits = overlapping_cells(coarse, c);
        // a valid partition always leaves at least two overlapped cells here
        RefinementWitness w{c.id, hits.size() > 0 ? coarse.cells[hits[0]].id : "", hits.size() > 1 ? coarse.cells[hits[1]].id : ""};
        return {false, w};
    }
    return {};
}

/// Same partition up to cell ids.
inline bool same_partition(const Signal& a, const Signal& b) {
    return refines(a, b).holds && refines(b, a).holds;
}

inline std::string join_id(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

/// Coarsest common refinement. Cells are the positive-measure pairwise
/// intersections, ordered by (a-cell, b-cell), with id "(a,b)".
inline Signal join(const Signal& a, const Signal& b) {
    require_same_states(a.states, b.states);
    Signal out{a.states, {}};
    for (const auto& ca : a.cells) {
        for (const auto& cb : b.cells) {
            Cell c{join_id(ca.id, cb.id), {}};
            c.sections.reserve(a.states.size());
            for (std::size_t s = 0; s < a.states.size(); ++s) c.sections.push_back(ca.sections[s].intersect(cb.sections[s]));
            if (!c.null()) out.cells.push_back(std::move(c));
        }
    }
    return out;
}

enum class Clause { Refine, Reveal, Fail };

inline const char* to_string(Clause c) {
    switch (c) {
        case Clause::Refine: return "refine";
        case Clause::Reveal: return "reveal";
        case Clause::Fail: return "fail";
    }
    return "?";
}

/// Outcome for one cell of the reveal-or-refine test. The refine clause is
/// reported whenever it holds, even for revealing cells.
struct CellVerdict {
    std::string cell;
    Clause clause = Clause::Fail;
    std::string container;       // Refine: the containing cell
    bool self = false;           // Refine: container is the same set
    std::string revealed_state;  // Reveal: the only state with positive mass
    std::string straddled_a;     // Fail: two overlapped cells of the other signal
    std::string straddled_b;

    std::string describe() const {
        switch (clause) {
            case Clause::Refine: return self ? "refine (self)" : "refine (in " + container + ")";
            case Clause::Reveal: return "reveal (" + revealed_state + ")";
            case Clause::Fail: return "fail (straddles " + straddled_a + ", " + straddled_b + ")";
        }
        return {};
    }
};

struct RevealOrRefineResult {
    bool holds = true;
    std::vector<CellVerdict> cells;

    const CellVerdict* first_failure() const {
        for (const auto& v : cells)
            if (v.clause == Clause::Fail) return &v;
        return nullptr;
    }
};

/// Every cell of `a` either reveals the state or sits inside a cell of `b`.
inline RevealOrRefineResult reveal_or_refines(const Signal& a, const Signal& b) {
    require_same_states(a.states, b.states);
    RevealOrRefineResult r;
    for (const auto& c : a.cells) {
        CellVerdict v;
        v.cell = c.id;
        if (auto k = containing_cell(b, c)) {
            v.clause = Clause::Refine;
            v.container = b.cells[*k].id;
            v.self = c.same_set(b.cells[*k]);
        } else if (is_revealing(c)) {
            v.clause = Clause::Reveal;
            for (std::size_t s = 0; s < c.sections.size(); ++s)
                if (!c.sections[s].empty()) v.revealed_state = a.states.labels[s];
        } else {
            v.clause = Clause::Fail;
            auto hits = overlapping_cells(b, c);
            if (hits.size() > 0) v.straddled_a = b.cells[hits[0]].id;
            if (hits.size() > 1) v.straddled_b = b.cells[hits[1]].id;
            r.holds = false;
        }
        r.cells.push_back(std::move(v));
    }
    return r;
}

}  // namespace dynsig
