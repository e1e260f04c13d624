#pragma once

// Extended dynamic decision problems and their exact value. The agent
// observes eta joined with the problem's auxiliary signal and picks one
// action per period, adapted to what it has seen so far.

#include "dynsig/dynamic_signal.hpp"
#include "dynsig/errors.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dynsig {

/// u(profile, state) for every full action profile. Profiles are indexed in
/// mixed radix with period 1 most significant.
struct GeneralUtility {
    std::vector<Rational> table;  // [profile * states + state]
    friend bool operator==(const GeneralUtility&, const GeneralUtility&) = default;
};

/// u(a, state) = sum_t u_t(a_t, state).
struct SeparableUtility {
    std::vector<std::vector<std::vector<Rational>>> periods;  // [t][action][state]
    friend bool operator==(const SeparableUtility&, const SeparableUtility&) = default;
};

using Utility = std::variant<GeneralUtility, SeparableUtility>;

struct ExtendedDecisionProblem {
    std::vector<std::vector<std::string>> actions;  // A_t labels
    Utility utility;
    std::optional<DynamicSignal> aux;               // empty: uninformative

    std::size_t horizon() const { return actions.size(); }
    bool separable() const { return std::holds_alternative<SeparableUtility>(utility); }

    std::size_t profile_count() const {
        std::size_t n = 1;
        for (const auto& a : actions) {
            if (n > std::numeric_limits<std::size_t>::max() / a.size()) throw MismatchError("action profile space too large");
            n *= a.size();
        }
        return n;
    }

    std::vector<std::size_t> decode_profile(std::size_t index) const {
        std::vector<std::size_t> p(horizon());
        for (std::size_t t = horizon(); t-- > 0;) {
            p[t] = index % actions[t].size();
            index /= actions[t].size();
        }
        return p;
    }

    std::size_t encode_profile(const std::vector<std::size_t>& p) const {
        std::size_t index = 0;
        for (std::size_t t = 0; t < horizon(); ++t) index = index * actions[t].size() + p[t];
        return index;
    }

    /// u(profile, state) with the profile given by its mixed-radix index.
    Rational utility_of(std::size_t profile, std::size_t state, std::size_t states) const {
        if (const auto* g = std::get_if<GeneralUtility>(&utility)) return g->table[profile * states + state];
        const auto& sep = std::get<SeparableUtility>(utility);
        Rational u;
        auto p = decode_profile(profile);
        for (std::size_t t = 0; t < horizon(); ++t) u += sep.periods[t][p[t]][state];
        return u;
    }

    DynamicSignal aux_or_trivial(const StateSpace& states, std::size_t horizon) const {
        return aux ? *aux : trivial_dynamic(states, horizon);
    }

    /// Throws when the problem cannot be evaluated against signals on
    /// `states` with `horizon` periods.
    void check(const StateSpace& states, std::size_t horizon) const {
        if (actions.size() != horizon)
            throw MismatchError("problem has " + std::to_string(actions.size()) + " periods, signal has " + std::to_string(horizon));
        for (std::size_t t = 0; t < actions.size(); ++t) {
            if (actions[t].empty()) throw ValidationError("period " + std::to_string(t + 1) + " has no actions");
            for (std::size_t i = 0; i < actions[t].size(); ++i)
                for (std::size_t j = 0; j < i; ++j)
                    if (actions[t][i] == actions[t][j]) throw ValidationError("duplicate action \"" + actions[t][i] + "\" in period " + std::to_string(t + 1));
        }
        if (const auto* g = std::get_if<GeneralUtility>(&utility)) {
            if (g->table.size() != profile_count() * states.size()) throw MismatchError("utility table does not cover every (profile, state)");
        } else {
            const auto& sep = std::get<SeparableUtility>(utility);
            if (sep.periods.size() != horizon) throw MismatchError("separable utility has wrong number of periods");
            for (std::size_t t = 0; t < horizon; ++t) {
                if (sep.periods[t].size() != actions[t].size()) throw MismatchError("separable utility misses actions in period " + std::to_string(t + 1));
                for (const auto& row : sep.periods[t])
                    if (row.size() != states.size()) throw MismatchError("separable utility misses states in period " + std::to_string(t + 1));
            }
        }
        if (aux) {
            if (!(aux->states == states)) throw MismatchError("auxiliary signal uses a different state space");
            if (aux->horizon() != horizon) throw MismatchError("auxiliary signal has a different horizon");
            require_valid(*aux);
        }
    }
};

/// General utility table equivalent to a separable one.
inline GeneralUtility to_general(const ExtendedDecisionProblem& p, std::size_t states) {
    GeneralUtility g;
    std::size_t n = p.profile_count();
    g.table.reserve(n * states);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t s = 0; s < states; ++s) g.table.push_back(p.utility_of(k, s, states));
    return g;
}

/// Deterministic adapted plan on a history tree: one action per node,
/// actions[t][node] indexes A_t.
struct AdaptedStrategy {
    std::vector<std::vector<std::size_t>> actions;
};

struct ValueResult {
    Rational value;
    AdaptedStrategy strategy;
    HistoryTree tree;  // the tree of eta joined with aux that the strategy lives on
};

/// Expected utility of a strategy, summed leaf by leaf.
inline Rational expected_utility(const HistoryTree& tree, const AdaptedStrategy& strategy, const ExtendedDecisionProblem& problem) {
    const std::size_t T = tree.horizon();
    const std::size_t n_states = tree.signal.states.size();
    Rational total;
    for (std::size_t leaf = 0; leaf < tree.levels[T - 1].size(); ++leaf) {
        auto chain = tree.chain(T - 1, leaf);
        std::vector<std::size_t> profile(T);
        for (std::size_t t = 0; t < T; ++t) profile[t] = strategy.actions[t][chain[t]];
        std::size_t k = problem.encode_profile(profile);
        const auto& m = tree.levels[T - 1][leaf].measures;
        for (std::size_t s = 0; s < n_states; ++s)
            if (!m[s].is_zero()) total += tree.prior[s] * m[s] * problem.utility_of(k, s, n_states);
    }
    return total;
}

namespace detail {

inline HistoryTree joined_tree(const DynamicSignal& eta, const ExtendedDecisionProblem& problem, const Prior& prior) {
    require_valid(eta);
    problem.check(eta.states, eta.horizon());
    if (!problem.aux) return build_history_tree(eta, prior);
    return build_history_tree(dynamic_join(eta, *problem.aux), prior);
}

}  // namespace detail

/// Optimal value over adapted deterministic strategies on the tree of
/// eta joined with the problem's auxiliary signal. Backward induction over
/// (node, actions taken so far), so non-separable utilities are exact.
/// Ties go to the earliest action.
inline ValueResult value(const DynamicSignal& eta, const ExtendedDecisionProblem& problem, const Prior& prior) {
    HistoryTree tree = detail::joined_tree(eta, problem, prior);
    const std::size_t T = tree.horizon();
    const std::size_t n_states = eta.states.size();
    GeneralUtility table = problem.separable() ? to_general(problem, n_states) : std::get<GeneralUtility>(problem.utility);

    // prefixes[t] = number of action prefixes of length t
    std::vector<std::size_t> prefixes(T + 1, 1);
    for (std::size_t t = 0; t < T; ++t) prefixes[t + 1] = prefixes[t] * problem.actions[t].size();

    // best[t][node * prefixes[t] + prefix], choice likewise
    std::vector<std::vector<Rational>> best(T);
    std::vector<std::vector<std::size_t>> choice(T);
    for (std::size_t t = T; t-- > 0;) {
        const auto& level = tree.levels[t];
        const std::size_t width = problem.actions[t].size();
        best[t].assign(level.size() * prefixes[t], Rational());
        choice[t].assign(level.size() * prefixes[t], 0);
        for (std::size_t n = 0; n < level.size(); ++n) {
            std::vector<Rational> weight(n_states);
            if (t + 1 == T)
                for (std::size_t s = 0; s < n_states; ++s) weight[s] = prior[s] * level[n].measures[s];
            for (std::size_t p = 0; p < prefixes[t]; ++p) {
                Rational top;
                std::size_t arg = 0;
                for (std::size_t a = 0; a < width; ++a) {
                    const std::size_t next = p * width + a;
                    Rational v;
                    if (t + 1 == T) {
                        for (std::size_t s = 0; s < n_states; ++s)
                            if (!weight[s].is_zero()) v += weight[s] * table.table[next * n_states + s];
                    } else {
                        for (auto c : level[n].children) v += best[t + 1][c * prefixes[t + 1] + next];
                    }
                    if (a == 0 || v > top) {
                        top = std::move(v);
                        arg = a;
                    }
                }
                best[t][n * prefixes[t] + p] = std::move(top);
                choice[t][n * prefixes[t] + p] = arg;
            }
        }
    }

    ValueResult r{Rational(), AdaptedStrategy{}, std::move(tree)};
    r.strategy.actions.resize(T);
    for (std::size_t t = 0; t < T; ++t) r.strategy.actions[t].assign(r.tree.levels[t].size(), 0);
    // walk down, carrying each node's realized prefix
    std::vector<std::size_t> prefix_of(r.tree.levels[0].size(), 0);
    for (std::size_t n = 0; n < r.tree.levels[0].size(); ++n) r.value += best[0][n];
    for (std::size_t t = 0; t < T; ++t) {
        std::vector<std::size_t> next_prefix(t + 1 < T ? r.tree.levels[t + 1].size() : 0, 0);
        for (std::size_t n = 0; n < r.tree.levels[t].size(); ++n) {
            std::size_t a = choice[t][n * prefixes[t] + prefix_of[n]];
            r.strategy.actions[t][n] = a;
            for (auto c : r.tree.levels[t][n].children) next_prefix[c] = prefix_of[n] * problem.actions[t].size() + a;
        }
        prefix_of = std::move(next_prefix);
    }
    return r;
}

/// Separable fast path: each node maximizes its own conditional period payoff.
inline ValueResult value_as(const DynamicSignal& eta, const ExtendedDecisionProblem& problem, const Prior& prior) {
    if (!problem.separable()) throw PreconditionError("value_as requires an additively separable utility");
    HistoryTree tree = detail::joined_tree(eta, problem, prior);
    const auto& sep = std::get<SeparableUtility>(problem.utility);
    const std::size_t n_states = eta.states.size();
    ValueResult r{Rational(), AdaptedStrategy{}, std::move(tree)};
    r.strategy.actions.resize(r.tree.horizon());
    for (std::size_t t = 0; t < r.tree.horizon(); ++t) {
        for (const auto& node : r.tree.levels[t]) {
            Rational top;
            std::size_t arg = 0;
            for (std::size_t a = 0; a < problem.actions[t].size(); ++a) {
                Rational v;
                for (std::size_t s = 0; s < n_states; ++s) v += prior[s] * node.measures[s] * sep.periods[t][a][s];
                if (a == 0 || v > top) {
                    top = std::move(v);
                    arg = a;
                }
            }
            r.value += top;
            r.strategy.actions[t].push_back(arg);
        }
    }
    return r;
}

inline constexpr std::uint64_t kDefaultBruteforceBudget = 1'000'000;

/// Number of adapted deterministic strategies on a tree, saturating at
/// `cap + 1`.
inline std::uint64_t strategy_count(const HistoryTree& tree, const ExtendedDecisionProblem& problem, std::uint64_t cap) {
    std::uint64_t n = 1;
    for (std::size_t t = 0; t < tree.horizon(); ++t)
        for (std::size_t k = 0; k < tree.levels[t].size(); ++k) {
            n *= problem.actions[t].size();
            if (n > cap) return cap + 1;
        }
    return n;
}

/// Exhaustive search over every adapted strategy. Independent check of value().
inline ValueResult value_bruteforce(const DynamicSignal& eta, const ExtendedDecisionProblem& problem, const Prior& prior,
                                    std::uint64_t budget = kDefaultBruteforceBudget) {
    HistoryTree tree = detail::joined_tree(eta, problem, prior);
    if (strategy_count(tree, problem, budget) > budget)
        throw BudgetError("more than " + std::to_string(budget) + " adapted strategies");
    const std::size_t T = tree.horizon();
    const std::size_t n_states = eta.states.size();
    const std::size_t n_profiles = problem.profile_count();
    const auto& leaves = tree.levels[T - 1];

    // contribution[leaf][profile] = sum_s mu(s) m_s(leaf) u(profile, s)
    std::vector<std::vector<Rational>> contribution(leaves.size(), std::vector<Rational>(n_profiles));
    for (std::size_t l = 0; l < leaves.size(); ++l)
        for (std::size_t k = 0; k < n_profiles; ++k)
            for (std::size_t s = 0; s < n_states; ++s)
                if (!leaves[l].measures[s].is_zero()) contribution[l][k] += prior[s] * leaves[l].measures[s] * problem.utility_of(k, s, n_states);
    std::vector<std::vector<std::size_t>> chains;
    for (std::size_t l = 0; l < leaves.size(); ++l) chains.push_back(tree.chain(T - 1, l));

    AdaptedStrategy current;
    current.actions.resize(T);
    for (std::size_t t = 0; t < T; ++t) current.actions[t].assign(tree.levels[t].size(), 0);

    std::optional<Rational> top;
    AdaptedStrategy arg;
    std::vector<std::size_t> profile(T);
    while (true) {
        Rational v;
        for (std::size_t l = 0; l < leaves.size(); ++l) {
            for (std::size_t t = 0; t < T; ++t) profile[t] = current.actions[t][chains[l][t]];
            v += contribution[l][problem.encode_profile(profile)];
        }
        if (!top || v > *top) {
            top = std::move(v);
            arg = current;
        }
        // odometer step, last node of last level fastest
        bool carried = true;
        for (std::size_t t = T; carried && t-- > 0;) {
            for (std::size_t k = current.actions[t].size(); carried && k-- > 0;) {
                if (++current.actions[t][k] < problem.actions[t].size()) carried = false;
                else current.actions[t][k] = 0;
            }
        }
        if (carried) break;
    }
    return ValueResult{*top, std::move(arg), std::move(tree)};
}

/// Value with no auxiliary information.
inline ValueResult value_nonrobust(const DynamicSignal& eta, const Utility& utility, const std::vector<std::vector<std::string>>& actions,
                                   const Prior& prior) {
    return value(eta, ExtendedDecisionProblem{actions, utility, std::nullopt}, prior);
}

/// Guess-the-state at period `period` (0-based): payoff 1 for naming the
/// true state; every other period has the single action "wait".
inline ExtendedDecisionProblem guess_the_state(const StateSpace& states, std::size_t horizon, std::size_t period,
                                               std::optional<DynamicSignal> aux = std::nullopt) {
    ExtendedDecisionProblem p;
    SeparableUtility sep;
    for (std::size_t t = 0; t < horizon; ++t) {
        if (t == period) {
            std::vector<std::string> acts;
            std::vector<std::vector<Rational>> rows;
            for (std::size_t a = 0; a < states.size(); ++a) {
                acts.push_back("guess_" + states.labels[a]);
                std::vector<Rational> row(states.size());
                row[a] = Rational(1);
                rows.push_back(std::move(row));
            }
            p.actions.push_back(std::move(acts));
            sep.periods.push_back(std::move(rows));
        } else {
            p.actions.push_back({"wait"});
            sep.periods.push_back({std::vector<Rational>(states.size())});
        }
    }
    p.utility = std::move(sep);
    p.aux = std::move(aux);
    return p;
}

}  // namespace dynsig
