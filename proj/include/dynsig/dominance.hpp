#pragma once

// Strong dominance between dynamic signals. Dominance over every extended
// decision problem is equivalent to reveal-or-refine holding in every
// period, so the verdicts below are decided by the per-period cell check.
// The remaining tools make both directions observable: a chain certificate
// plus strategy lifting for the "holds" side, and a verified counterexample
// search for the "fails" side.

#include "dynsig/decision.hpp"
#include "dynsig/dynamic_signal.hpp"
#include "dynsig/errors.hpp"
#include "dynsig/signal.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace dynsig {

struct PeriodFailure {
    std::size_t period;  // 1-based
    std::string cell;
};

struct DominanceReport {
    bool verdict = true;
    std::vector<RevealOrRefineResult> per_period;
    std::optional<PeriodFailure> first_failure;
};

inline DominanceReport dynamic_reveal_or_refine(const DynamicSignal& eta, const DynamicSignal& eta_hat) {
    require_compatible(eta, eta_hat);
    DominanceReport r;
    for (std::size_t t = 0; t < eta.horizon(); ++t) {
        r.per_period.push_back(reveal_or_refines(eta[t], eta_hat[t]));
        if (!r.per_period.back().holds && r.verdict) {
            r.verdict = false;
            r.first_failure = PeriodFailure{t + 1, r.per_period.back().first_failure()->cell};
        }
    }
    return r;
}

/// eta is worth at least as much as eta_hat in every extended problem.
inline bool strongly_dominates(const DynamicSignal& eta, const DynamicSignal& eta_hat) {
    return dynamic_reveal_or_refine(eta, eta_hat).verdict;
}

/// Same as strongly_dominates, restricted to additively separable problems;
/// the criterion is identical.
inline bool strongly_dominates_as(const DynamicSignal& eta, const DynamicSignal& eta_hat) {
    return dynamic_reveal_or_refine(eta, eta_hat).verdict;
}

/// One-way test for dominance without auxiliary information. True implies
/// dominance; false means no conclusion.
inline bool dominates_sufficient(const DynamicSignal& eta, const DynamicSignal& eta_hat) {
    return dynamic_reveal_or_refine(eta, eta_hat).verdict;
}

// ---------------------------------------------------------------------------
// Chain certificate

struct CertifiedChain {
    std::vector<std::string> cells;            // eta cell id per period
    std::optional<std::size_t> reveal_time;    // 1-based; empty means never
    std::string revealed_state;                // set with reveal_time
    std::vector<std::string> containers;       // eta_hat cell ids for periods before reveal_time
};

struct ChainCertificate {
    std::vector<CertifiedChain> chains;
};

struct CertificateResult {
    std::optional<ChainCertificate> certificate;
    std::string failure;  // set when no certificate could be built
};

/// For every positive-probability chain of eta: the first period whose cell
/// reveals the state, and before it the eta_hat cell containing each cell.
inline CertificateResult verify_chain_certificate(const DynamicSignal& eta, const DynamicSignal& eta_hat, const Prior& prior) {
    if (!dynamic_reveal_or_refine(eta, eta_hat).verdict) throw PreconditionError("chain certificate requires dynamic reveal-or-refine");
    HistoryTree tree = build_history_tree(eta, prior);
    const std::size_t T = tree.horizon();
    ChainCertificate cert;
    for (std::size_t leaf = 0; leaf < tree.levels[T - 1].size(); ++leaf) {
        CertifiedChain chain;
        auto nodes = tree.chain(T - 1, leaf);
        for (std::size_t t = 0; t < T; ++t) {
            const Cell& c = tree.cell(t, nodes[t]);
            chain.cells.push_back(c.id);
            if (!chain.reveal_time && is_revealing(c)) {
                chain.reveal_time = t + 1;
                for (std::size_t s = 0; s < c.sections.size(); ++s)
                    if (!c.sections[s].empty()) chain.revealed_state = eta.states.labels[s];
            }
            if (chain.reveal_time) {
                if (!is_revealing(c)) return {std::nullopt, "cell \"" + c.id + "\" stops revealing after period " + std::to_string(*chain.reveal_time)};
                continue;
            }
            auto k = containing_cell(eta_hat[t], c);
            if (!k) return {std::nullopt, "period " + std::to_string(t + 1) + " cell \"" + c.id + "\" has no container"};
            chain.containers.push_back(eta_hat[t].cells[*k].id);
        }
        cert.chains.push_back(std::move(chain));
    }
    return {std::move(cert), {}};
}

/// Lifts eta_hat's optimal strategy in `problem` to a strategy on eta:
/// copy eta_hat's action while eta has not revealed the state, then play the
/// best continuation for the revealed state. Requires dynamic reveal-or-refine.
/// Returns the lifted strategy's exact value on eta's joined tree.
inline ValueResult lift_strategy(const DynamicSignal& eta, const DynamicSignal& eta_hat, const ExtendedDecisionProblem& problem,
                                 const Prior& prior) {
    if (!dynamic_reveal_or_refine(eta, eta_hat).verdict) throw PreconditionError("strategy lifting requires dynamic reveal-or-refine");
    ValueResult hat = value(eta_hat, problem, prior);
    HistoryTree tree = detail::joined_tree(eta, problem, prior);
    const std::size_t T = tree.horizon();
    const std::size_t n_states = eta.states.size();

    struct Plan {
        std::vector<std::size_t> prefix;
        std::optional<std::size_t> revealed;     // state index
        std::vector<std::size_t> continuation;   // actions from the reveal period on
        std::size_t reveal_period = 0;
    };

    AdaptedStrategy lifted;
    lifted.actions.resize(T);
    std::vector<Plan> plans(tree.levels[0].size());
    for (std::size_t t = 0; t < T; ++t) {
        const auto& level = tree.levels[t];
        lifted.actions[t].assign(level.size(), 0);
        std::vector<Plan> next(t + 1 < T ? tree.levels[t + 1].size() : 0);
        for (std::size_t n = 0; n < level.size(); ++n) {
            Plan plan = plans[n];
            const Cell& joint = tree.cell(t, n);
            auto own = containing_cell(eta[t], joint);
            if (!own) throw std::logic_error("joined cell outside eta");
            const Cell& own_cell = eta[t].cells[*own];
            if (!plan.revealed && is_revealing(own_cell)) {
                for (std::size_t s = 0; s < n_states; ++s)
                    if (!own_cell.sections[s].empty()) plan.revealed = s;
                plan.reveal_period = t;
                // best completion of the prefix for the revealed state
                std::size_t tail = 1;
                for (std::size_t k = t; k < T; ++k) tail *= problem.actions[k].size();
                std::optional<Rational> top;
                for (std::size_t idx = 0; idx < tail; ++idx) {
                    std::vector<std::size_t> cont(T - t);
                    std::size_t rest = idx;
                    for (std::size_t k = T; k-- > t;) {
                        cont[k - t] = rest % problem.actions[k].size();
                        rest /= problem.actions[k].size();
                    }
                    auto full = plan.prefix;
                    full.insert(full.end(), cont.begin(), cont.end());
                    Rational u = problem.utility_of(problem.encode_profile(full), *plan.revealed, n_states);
                    if (!top || u > *top) {
                        top = u;
                        plan.continuation = std::move(cont);
                    }
                }
            }
            std::size_t action;
            if (plan.revealed) {
                action = plan.continuation[t - plan.reveal_period];
            } else {
                const auto& hat_level = hat.tree.levels[t];
                std::optional<std::size_t> match;
                for (std::size_t k = 0; k < hat_level.size() && !match; ++k)
                    if (joint.subset_of(hat.tree.cell(t, k))) match = k;
                if (!match) throw std::logic_error("no eta_hat history contains joined cell \"" + joint.id + "\"");
                action = hat.strategy.actions[t][*match];
            }
            lifted.actions[t][n] = action;
            plan.prefix.push_back(action);
            for (auto c : level[n].children) next[c] = plan;
        }
        plans = std::move(next);
    }
    Rational v = expected_utility(tree, lifted, problem);
    return ValueResult{std::move(v), std::move(lifted), std::move(tree)};
}

// ---------------------------------------------------------------------------
// Counterexample search

struct Counterexample {
    ExtendedDecisionProblem problem;
    Rational w_dominant;   // value of eta (the signal claimed to dominate)
    Rational w_dominated;  // value of eta_hat, strictly larger
    std::string construction;  // "guided-swap" or "random-search"
    std::size_t period = 0;    // 1-based period the utility depends on
    std::uint64_t candidates = 0;
};

struct FalsifyOptions {
    std::uint64_t budget = 10'000;  // candidate (aux, problem) pairs
    std::uint64_t seed = 0;
};

namespace detail {

inline ExtendedDecisionProblem single_period_problem(const StateSpace& states, std::size_t horizon, std::size_t period,
                                                     std::vector<std::string> acts, std::vector<std::vector<Rational>> rows,
                                                     DynamicSignal aux) {
    ExtendedDecisionProblem p;
    SeparableUtility sep;
    for (std::size_t t = 0; t < horizon; ++t) {
        if (t == period) {
            p.actions.push_back(acts);
            sep.periods.push_back(rows);
        } else {
            p.actions.push_back({"wait"});
            sep.periods.push_back({std::vector<Rational>(states.size())});
        }
    }
    p.utility = std::move(sep);
    p.aux = std::move(aux);
    return p;
}

/// Uninformative before `period`, `from` afterwards.
inline DynamicSignal switch_on(const Signal& from, std::size_t horizon, std::size_t period) {
    DynamicSignal d{from.states, {}};
    for (std::size_t t = 0; t < horizon; ++t) d.periods.push_back(t < period ? trivial_signal(from.states) : from);
    return d;
}

/// Swap partition for a straddling cell: inside every eta_hat cell k, state
/// theta gets label (theta + shift_k) mod |states|, so joining it with
/// eta_hat separates all states. The shifts make the pieces (a, theta1) and
/// (b, theta2) of the straddling cell share a label, so joining with eta
/// leaves a cell with two states.
inline std::optional<Signal> swap_partition(const Signal& eta_t, const Signal& hat_t, const Cell& straddler) {
    const std::size_t n = eta_t.states.size();
    std::vector<std::pair<std::size_t, std::size_t>> pieces;  // (hat cell, state)
    for (std::size_t k = 0; k < hat_t.cells.size(); ++k)
        for (std::size_t s = 0; s < n; ++s)
            if (!straddler.sections[s].intersect(hat_t.cells[k].sections[s]).empty()) pieces.emplace_back(k, s);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
            auto [a, s1] = pieces[i];
            auto [b, s2] = pieces[j];
            if (a == b || s1 == s2) continue;
            std::vector<std::size_t> shift(hat_t.cells.size(), 0);
            shift[b] = (s1 + n - s2) % n;
            Signal rho{eta_t.states, {}};
            for (std::size_t label = 0; label < n; ++label) {
                Cell c{"r" + std::to_string(label + 1), std::vector<IntervalSet>(n)};
                for (std::size_t k = 0; k < hat_t.cells.size(); ++k)
                    for (std::size_t s = 0; s < n; ++s)
                        if ((s + shift[k]) % n == label) c.sections[s] = c.sections[s].unite(hat_t.cells[k].sections[s]);
                if (!c.null()) rho.cells.push_back(std::move(c));
            }
            return rho;
        }
    }
    return std::nullopt;
}

/// Random partition of the midpoint-split atoms of eta_t v hat_t into at most
/// `max_cells` cells.
inline Signal random_aux_partition(const Signal& eta_t, const Signal& hat_t, std::mt19937_64& rng, std::size_t max_cells = 4) {
    const std::size_t n = eta_t.states.size();
    Signal atoms = join(eta_t, hat_t);
    std::uniform_int_distribution<std::size_t> count(2, max_cells);
    const std::size_t m = count(rng);
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    std::vector<std::vector<std::vector<Interval>>> parts(m, std::vector<std::vector<Interval>>(n));
    for (const auto& c : atoms.cells)
        for (std::size_t s = 0; s < n; ++s)
            for (auto& piece : c.sections[s].halves()) parts[pick(rng)][s].push_back(piece);
    Signal rho{eta_t.states, {}};
    for (std::size_t i = 0; i < m; ++i) {
        Cell c{"r" + std::to_string(i + 1), {}};
        for (std::size_t s = 0; s < n; ++s) c.sections.emplace_back(std::move(parts[i][s]));
        if (!c.null()) rho.cells.push_back(std::move(c));
    }
    return rho;
}

}  // namespace detail

/// Searches for an extended problem in which eta_hat is strictly more
/// valuable than eta. Requires that eta does not dynamically reveal-or-refine
/// eta_hat. Candidates: first the swap construction at the first failing
/// period, then seeded random auxiliary partitions with single-period
/// payoffs. Every returned counterexample has been evaluated exactly.
/// An empty result is a search failure, not a dominance proof.
inline std::optional<Counterexample> falsify(const DynamicSignal& eta, const DynamicSignal& eta_hat, const Prior& prior,
                                             const FalsifyOptions& opts = {}) {
    require_valid(eta);
    require_valid(eta_hat);
    prior.check(eta.states);
    DominanceReport report = dynamic_reveal_or_refine(eta, eta_hat);
    if (report.verdict) throw PreconditionError("eta reveal-or-refines eta_hat in every period; no counterexample exists");
    const std::size_t T = eta.horizon();
    const StateSpace& states = eta.states;
    std::uint64_t tried = 0;

    auto attempt = [&](ExtendedDecisionProblem problem, std::size_t period, const char* tag) -> std::optional<Counterexample> {
        ++tried;
        Rational w_eta = value(eta, problem, prior).value;
        Rational w_hat = value(eta_hat, problem, prior).value;
        if (w_eta < w_hat) return Counterexample{std::move(problem), std::move(w_eta), std::move(w_hat), tag, period + 1, tried};
        return std::nullopt;
    };

    const std::size_t t0 = report.first_failure->period - 1;
    const Cell& straddler = eta[t0].cell(report.first_failure->cell);
    if (opts.budget > 0) {
        if (auto rho = detail::swap_partition(eta[t0], eta_hat[t0], straddler)) {
            if (auto cx = attempt(guess_the_state(states, T, t0, detail::switch_on(*rho, T, t0)), t0, "guided-swap")) return cx;
        }
    }

    std::vector<std::size_t> failing;
    for (std::size_t t = 0; t < T; ++t)
        if (!report.per_period[t].holds) failing.push_back(t);
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> pick_period(0, failing.size() - 1);
    std::uniform_int_distribution<int> pick_family(0, 2);
    std::uniform_int_distribution<int> payoff(0, 2);
    std::uniform_int_distribution<std::size_t> action_count(2, 3);
    while (tried < opts.budget) {
        const std::size_t t = failing[pick_period(rng)];
        Signal rho = detail::random_aux_partition(eta[t], eta_hat[t], rng);
        std::vector<std::string> acts;
        std::vector<std::vector<Rational>> rows;
        switch (pick_family(rng)) {
            case 0:  // guess the state
                for (std::size_t a = 0; a < states.size(); ++a) {
                    acts.push_back("guess_" + states.labels[a]);
                    rows.emplace_back(states.size());
                    rows.back()[a] = Rational(1);
                }
                break;
            case 1:  // guess the eta_hat cell, scored by its likelihood
                for (const auto& c : eta_hat[t].cells) {
                    acts.push_back("guess_" + c.id);
                    rows.emplace_back();
                    for (const auto& sec : c.sections) rows.back().push_back(sec.measure());
                }
                break;
            default: {
                const std::size_t k = action_count(rng);
                for (std::size_t a = 0; a < k; ++a) {
                    acts.push_back("a" + std::to_string(a + 1));
                    rows.emplace_back();
                    for (std::size_t s = 0; s < states.size(); ++s) rows.back().push_back(Rational(payoff(rng)));
                }
            }
        }
        auto problem = detail::single_period_problem(states, T, t, std::move(acts), std::move(rows), detail::switch_on(rho, T, t));
        if (auto cx = attempt(std::move(problem), t, "random-search")) return cx;
    }
    return std::nullopt;
}

}  // namespace dynsig
