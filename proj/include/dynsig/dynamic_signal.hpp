#pragma once

// Dynamic signals (filtrations of static signals), their history trees and
// the dynamic experiments they induce.

#include "dynsig/errors.hpp"
#include "dynsig/signal.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dynsig {

/// Period t+1 refines period t. Periods are stored 0-based; reports and
/// user-facing text count periods from 1.
struct DynamicSignal {
    StateSpace states;
    std::vector<Signal> periods;

    std::size_t horizon() const { return periods.size(); }
    const Signal& operator[](std::size_t t) const { return periods[t]; }

    friend bool operator==(const DynamicSignal&, const DynamicSignal&) = default;
};

inline DynamicSignal constant_dynamic(const Signal& s, std::size_t horizon) {
    return DynamicSignal{s.states, std::vector<Signal>(horizon, s)};
}

inline DynamicSignal trivial_dynamic(const StateSpace& states, std::size_t horizon) {
    return constant_dynamic(trivial_signal(states), horizon);
}

struct DynamicViolation {
    std::size_t period;  // 1-based
    std::string message;
    std::string cell;    // witness cell of the failing period, if any
};

inline std::optional<DynamicViolation> validate_dynamic(const DynamicSignal& ds) {
    if (auto p = ds.states.problem(); !p.empty()) return DynamicViolation{0, p, {}};
    if (ds.periods.empty()) return DynamicViolation{0, "dynamic signal has no periods", {}};
    for (std::size_t t = 0; t < ds.horizon(); ++t) {
        if (!(ds.periods[t].states == ds.states)) return DynamicViolation{t + 1, "period uses a different state space", {}};
        if (auto v = validate(ds.periods[t])) return DynamicViolation{t + 1, v->message, {}};
        if (t > 0) {
            auto r = refines(ds.periods[t], ds.periods[t - 1]);
            if (!r.holds)
                return DynamicViolation{t + 1, "period " + std::to_string(t + 1) + " does not refine period " + std::to_string(t) + ": cell \"" + r.witness->fine_cell + "\" straddles \"" + r.witness->coarse_a + "\" and \"" + r.witness->coarse_b + "\"", r.witness->fine_cell};
        }
    }
    return std::nullopt;
}

inline void require_valid(const DynamicSignal& ds) {
    if (auto v = validate_dynamic(ds)) throw ValidationError(v->message);
}

inline void require_compatible(const DynamicSignal& a, const DynamicSignal& b) {
    require_same_states(a.states, b.states);
    if (a.horizon() != b.horizon())
        throw MismatchError("horizons differ: " + std::to_string(a.horizon()) + " vs " + std::to_string(b.horizon()));
}

/// Period-wise join.
inline DynamicSignal dynamic_join(const DynamicSignal& a, const DynamicSignal& b) {
    require_compatible(a, b);
    DynamicSignal out{a.states, {}};
    out.periods.reserve(a.horizon());
    for (std::size_t t = 0; t < a.horizon(); ++t) out.periods.push_back(join(a.periods[t], b.periods[t]));
    return out;
}

struct HistoryNode {
    std::size_t cell = 0;                  // index into the period's signal
    std::optional<std::size_t> parent;     // index into the previous level
    std::vector<std::size_t> children;     // indices into the next level
    std::vector<Rational> measures;        // per state
    std::string label;                     // realization label (see realization_label)

    const std::string& id(const DynamicSignal& ds, std::size_t level) const { return ds.periods[level].cells[cell].id; }
};

/// Period-t realization label of a child cell: the child id with its parent's
/// id stripped when the parent id is a proper prefix, otherwise the child id.
inline std::string realization_label(const std::string& child, const std::string& parent) {
    if (child.size() > parent.size() && child.compare(0, parent.size(), parent) == 0) return child.substr(parent.size());
    return child;
}

/// Positive-probability cells of a dynamic signal arranged by containment.
struct HistoryTree {
    DynamicSignal signal;
    Prior prior;
    std::vector<std::vector<HistoryNode>> levels;

    std::size_t horizon() const { return levels.size(); }
    const HistoryNode& node(std::size_t level, std::size_t i) const { return levels[level][i]; }
    const Cell& cell(std::size_t level, std::size_t i) const { return signal.periods[level].cells[levels[level][i].cell]; }

    /// mu-weighted probability of a node.
    Rational probability(std::size_t level, std::size_t i) const {
        Rational p;
        const auto& m = levels[level][i].measures;
        for (std::size_t s = 0; s < m.size(); ++s) p += prior[s] * m[s];
        return p;
    }

    /// Level-0 .. level-(t) node indices of the chain ending at (level, i).
    std::vector<std::size_t> chain(std::size_t level, std::size_t i) const {
        std::vector<std::size_t> out(level + 1);
        for (std::size_t l = level + 1; l-- > 0;) {
            out[l] = i;
            if (l > 0) i = *levels[l][i].parent;
        }
        return out;
    }
};

inline HistoryTree build_history_tree(const DynamicSignal& ds, const Prior& prior) {
    require_valid(ds);
    prior.check(ds.states);
    HistoryTree tree{ds, prior, {}};
    tree.levels.resize(ds.horizon());
    for (std::size_t t = 0; t < ds.horizon(); ++t) {
        const Signal& sig = ds.periods[t];
        for (std::size_t c = 0; c < sig.cells.size(); ++c) {
            HistoryNode n;
            n.cell = c;
            for (const auto& sec : sig.cells[c].sections) n.measures.push_back(sec.measure());
            Rational p;
            for (std::size_t s = 0; s < n.measures.size(); ++s) p += prior[s] * n.measures[s];
            if (p.is_zero()) continue;
            if (t > 0) {
                auto& prev = tree.levels[t - 1];
                for (std::size_t k = 0; k < prev.size(); ++k) {
                    if (sig.cells[c].subset_of(ds.periods[t - 1].cells[prev[k].cell])) {
                        n.parent = k;
                        break;
                    }
                }
                if (!n.parent) throw ValidationError("cell \"" + sig.cells[c].id + "\" has no parent");
                prev[*n.parent].children.push_back(tree.levels[t].size());
            }
            tree.levels[t].push_back(std::move(n));
        }
    }
    // realization labels, unique among siblings
    for (std::size_t t = 0; t < ds.horizon(); ++t) {
        auto& level = tree.levels[t];
        if (t == 0) {
            for (auto& n : level) n.label = n.id(ds, 0);
            continue;
        }
        for (auto& parent : tree.levels[t - 1]) {
            const std::string& pid = parent.id(ds, t - 1);
            std::map<std::string, int> seen;
            bool unique = true;
            for (auto k : parent.children) unique &= ++seen[realization_label(level[k].id(ds, t), pid)] == 1;
            for (auto k : parent.children) level[k].label = unique ? realization_label(level[k].id(ds, t), pid) : level[k].id(ds, t);
        }
    }
    return tree;
}

struct ExperimentRow {
    std::vector<std::string> path;         // cell id per period
    std::vector<std::string> realization;  // realization label per period
    std::vector<Rational> probability;     // per state
};

/// State-conditional distribution over nested realization paths. Paths not
/// listed (non-nested) have probability 0.
struct DynamicExperiment {
    StateSpace states;
    std::vector<std::vector<std::string>> alphabet;  // realization labels per period
    std::vector<ExperimentRow> rows;

    Rational probability(const std::vector<std::string>& realization, const std::string& state) const {
        std::size_t s = states.index_of(state);
        for (const auto& r : rows)
            if (r.realization == realization) return r.probability[s];
        return Rational(0);
    }

    /// Every realization tuple in the product of the alphabets, in order.
    std::vector<std::vector<std::string>> product() const {
        std::vector<std::vector<std::string>> out{{}};
        for (const auto& letters : alphabet) {
            std::vector<std::vector<std::string>> next;
            for (const auto& prefix : out)
                for (const auto& l : letters) {
                    next.push_back(prefix);
                    next.back().push_back(l);
                }
            out = std::move(next);
        }
        return out;
    }

    std::size_t product_size() const {
        std::size_t n = 1;
        for (const auto& a : alphabet) n *= a.size();
        return n;
    }
};

inline DynamicExperiment to_experiment(const DynamicSignal& ds) {
    HistoryTree tree = build_history_tree(ds, Prior::uniform(ds.states.size()));
    DynamicExperiment ex{ds.states, {}, {}};
    for (std::size_t t = 0; t < tree.horizon(); ++t) {
        std::vector<std::string> letters;
        for (const auto& n : tree.levels[t])
            if (std::find(letters.begin(), letters.end(), n.label) == letters.end()) letters.push_back(n.label);
        ex.alphabet.push_back(std::move(letters));
    }
    std::size_t last = tree.horizon() - 1;
    for (std::size_t i = 0; i < tree.levels[last].size(); ++i) {
        ExperimentRow row;
        for (std::size_t l = 0; auto k : tree.chain(last, i)) {
            row.path.push_back(tree.levels[l][k].id(ds, l));
            row.realization.push_back(tree.levels[l][k].label);
            ++l;
        }
        row.probability = tree.levels[last][i].measures;
        ex.rows.push_back(std::move(row));
    }
    return ex;
}

}  // namespace dynsig
