#pragma once

// Seeded random signals, filtrations and decision problems. Every draw is a
// pure function of (config, index).

#include "dynsig/decision.hpp"
#include "dynsig/dynamic_signal.hpp"
#include "dynsig/signal.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace dynsig {

struct GenConfig {
    std::uint64_t seed = 0;
    std::size_t max_states = 3;
    std::size_t max_periods = 3;
    std::size_t max_cells_per_period = 4;
    std::size_t max_actions_per_period = 3;
    std::int64_t denominator_bound = 16;
    std::size_t max_aux_cells = 3;
    double separable_probability = 0.5;
    std::size_t general_table_cap = 512;  // larger (profile x state) tables fall back to separable
};

class Generator {
public:
    explicit Generator(const GenConfig& cfg, std::uint64_t index = 0) : cfg_(cfg) {
        std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                          static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
        rng_.seed(seq);
    }

    std::mt19937_64& rng() { return rng_; }
    const GenConfig& config() const { return cfg_; }

    std::size_t uniform(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    StateSpace states() {
        std::size_t n = uniform(std::min<std::size_t>(2, cfg_.max_states), std::max<std::size_t>(1, cfg_.max_states));
        StateSpace s;
        for (std::size_t i = 0; i < n; ++i) s.labels.push_back("s" + std::to_string(i + 1));
        return s;
    }

    std::size_t horizon() { return uniform(1, std::max<std::size_t>(1, cfg_.max_periods)); }

    /// Rational strictly inside (lo, hi) with denominator <= bound when one
    /// exists, otherwise the midpoint.
    Rational point_inside(const Rational& lo, const Rational& hi) {
        std::vector<Rational> options;
        for (std::int64_t q = 2; q <= cfg_.denominator_bound; ++q)
            for (std::int64_t p = 1; p < q; ++p) {
                Rational x(p, q);
                if (x > lo && x < hi && std::find(options.begin(), options.end(), x) == options.end()) options.push_back(x);
            }
        if (options.empty()) return (lo + hi) / Rational(2);
        return options[uniform(0, options.size() - 1)];
    }

    Signal signal(const StateSpace& states, std::size_t max_cells) {
        const std::size_t n = states.size();
        std::size_t cells = uniform(1, std::max<std::size_t>(1, max_cells));
        std::vector<std::pair<std::size_t, Interval>> pieces;
        for (std::size_t s = 0; s < n; ++s) {
            std::size_t cuts = uniform(0, cells);
            std::set<std::pair<std::int64_t, std::int64_t>> seen;
            std::vector<Rational> points;
            for (std::size_t k = 0; k < cuts; ++k) {
                auto q = static_cast<std::int64_t>(uniform(2, static_cast<std::size_t>(std::max<std::int64_t>(2, cfg_.denominator_bound))));
                auto p = static_cast<std::int64_t>(uniform(1, static_cast<std::size_t>(q - 1)));
                Rational x(p, q);
                if (std::find(points.begin(), points.end(), x) == points.end()) points.push_back(x);
            }
            std::sort(points.begin(), points.end());
            Rational lo(0);
            for (const auto& x : points) {
                pieces.emplace_back(s, Interval{lo, x});
                lo = x;
            }
            pieces.emplace_back(s, Interval{lo, 1});
        }
        std::shuffle(pieces.begin(), pieces.end(), rng_);
        cells = std::min(cells, pieces.size());
        std::vector<std::vector<std::vector<Interval>>> parts(cells, std::vector<std::vector<Interval>>(n));
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            std::size_t target = i < cells ? i : uniform(0, cells - 1);
            parts[target][pieces[i].first].push_back(pieces[i].second);
        }
        Signal sig{states, {}};
        for (std::size_t c = 0; c < cells; ++c) {
            Cell cell{"c" + std::to_string(c + 1), {}};
            for (std::size_t s = 0; s < n; ++s) cell.sections.emplace_back(std::move(parts[c][s]));
            sig.cells.push_back(std::move(cell));
        }
        return sig;
    }

    /// Splits some cells of `sig` in two, keeping at most `max_cells` cells.
    Signal split(const Signal& sig, std::size_t max_cells) {
        Signal out{sig.states, {}};
        std::size_t budget = max_cells > sig.cells.size() ? max_cells - sig.cells.size() : 0;
        for (const auto& c : sig.cells) {
            if (budget == 0 || !coin()) {
                out.cells.push_back(c);
                continue;
            }
            std::vector<std::pair<std::size_t, Interval>> pieces;
            for (std::size_t s = 0; s < c.sections.size(); ++s)
                for (const auto& p : c.sections[s].intervals()) pieces.emplace_back(s, p);
            if (pieces.size() == 1 || coin(0.3)) {
                std::size_t k = uniform(0, pieces.size() - 1);
                auto [s, p] = pieces[k];
                Rational x = point_inside(p.lo, p.hi);
                pieces[k].second = Interval{p.lo, x};
                pieces.emplace_back(s, Interval{x, p.hi});
            }
            std::shuffle(pieces.begin(), pieces.end(), rng_);
            Cell a{c.id + ".1", std::vector<IntervalSet>(c.sections.size())};
            Cell b{c.id + ".2", std::vector<IntervalSet>(c.sections.size())};
            for (std::size_t i = 0; i < pieces.size(); ++i) {
                Cell& dst = i == 0 ? a : i == 1 ? b : coin() ? a : b;
                auto [s, p] = pieces[i];
                dst.sections[s] = dst.sections[s].unite(IntervalSet({p}));
            }
            out.cells.push_back(std::move(a));
            out.cells.push_back(std::move(b));
            --budget;
        }
        return out;
    }

    DynamicSignal dynamic_signal(const StateSpace& states, std::size_t horizon, std::size_t max_cells) {
        DynamicSignal ds{states, {}};
        ds.periods.push_back(signal(states, max_cells));
        while (ds.periods.size() < horizon) ds.periods.push_back(split(ds.periods.back(), max_cells));
        return ds;
    }

    Rational utility_entry() {
        auto d = static_cast<std::int64_t>(uniform(1, 4));
        auto bound = cfg_.denominator_bound * d;
        auto n = std::uniform_int_distribution<std::int64_t>(-bound, bound)(rng_);
        return Rational(n, d);
    }

    ExtendedDecisionProblem problem(const StateSpace& states, std::size_t horizon, std::optional<bool> force_separable = std::nullopt) {
        ExtendedDecisionProblem p;
        for (std::size_t t = 0; t < horizon; ++t) {
            std::size_t k = uniform(1, std::max<std::size_t>(1, cfg_.max_actions_per_period));
            std::vector<std::string> acts;
            for (std::size_t a = 0; a < k; ++a) acts.push_back("a" + std::to_string(a + 1));
            p.actions.push_back(std::move(acts));
        }
        bool sep = force_separable ? *force_separable : coin(cfg_.separable_probability);
        if (!force_separable && p.profile_count() * states.size() > cfg_.general_table_cap) sep = true;
        if (sep) {
            SeparableUtility u;
            for (std::size_t t = 0; t < horizon; ++t) {
                u.periods.emplace_back();
                for (std::size_t a = 0; a < p.actions[t].size(); ++a) {
                    u.periods[t].emplace_back();
                    for (std::size_t s = 0; s < states.size(); ++s) u.periods[t][a].push_back(utility_entry());
                }
            }
            p.utility = std::move(u);
        } else {
            GeneralUtility u;
            for (std::size_t i = 0; i < p.profile_count() * states.size(); ++i) u.table.push_back(utility_entry());
            p.utility = std::move(u);
        }
        if (coin(2.0 / 3.0)) p.aux = dynamic_signal(states, horizon, cfg_.max_aux_cells);
        return p;
    }

private:
    GenConfig cfg_;
    std::mt19937_64 rng_;
};

inline Signal gen_signal(const GenConfig& cfg, std::uint64_t index = 0) {
    Generator g(cfg, index);
    auto states = g.states();
    return g.signal(states, cfg.max_cells_per_period);
}

inline DynamicSignal gen_dynamic_signal(const GenConfig& cfg, std::uint64_t index = 0) {
    Generator g(cfg, index);
    auto states = g.states();
    auto T = g.horizon();
    return g.dynamic_signal(states, T, cfg.max_cells_per_period);
}

inline ExtendedDecisionProblem gen_problem(const GenConfig& cfg, std::size_t horizon, const StateSpace& states, std::uint64_t index = 0) {
    Generator g(cfg, index);
    return g.problem(states, horizon);
}

/// Renames every period's cells to c1, c2, ... in order.
inline DynamicSignal relabel(DynamicSignal ds) {
    for (auto& sig : ds.periods)
        for (std::size_t i = 0; i < sig.cells.size(); ++i) sig.cells[i].id = "c" + std::to_string(i + 1);
    return ds;
}

/// Partition with one cell per state in `reveal`, plus one cell holding the
/// other states.
inline Signal partial_revealer(const StateSpace& states, const std::vector<bool>& reveal) {
    Signal sig{states, {}};
    Cell rest{"rest", std::vector<IntervalSet>(states.size())};
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (reveal[s]) {
            Cell c{states.labels[s], std::vector<IntervalSet>(states.size())};
            c.sections[s] = IntervalSet::full();
            sig.cells.push_back(std::move(c));
        } else {
            rest.sections[s] = IntervalSet::full();
        }
    }
    if (!rest.null()) sig.cells.push_back(std::move(rest));
    return sig;
}

/// `sig` on the states outside `reveal`; the revealed states form one cell.
inline Signal mask_states(const Signal& sig, const std::vector<bool>& reveal) {
    Signal out{sig.states, {}};
    Cell masked{"masked", std::vector<IntervalSet>(sig.states.size())};
    for (std::size_t s = 0; s < sig.states.size(); ++s)
        if (reveal[s]) masked.sections[s] = IntervalSet::full();
    for (const auto& c : sig.cells) {
        Cell d = c;
        for (std::size_t s = 0; s < sig.states.size(); ++s)
            if (reveal[s]) d.sections[s] = IntervalSet();
        if (!d.null()) out.cells.push_back(std::move(d));
    }
    if (!masked.null()) out.cells.push_back(std::move(masked));
    return out;
}

/// A pair (eta, eta_hat) where eta reveal-or-refines eta_hat in every period.
/// Built either by refining eta_hat, or by refining it until a random period
/// and revealing a random set of states from then on.
inline std::pair<DynamicSignal, DynamicSignal> gen_ror_pair(const GenConfig& cfg, std::uint64_t index = 0) {
    Generator g(cfg, index);
    auto states = g.states();
    auto T = g.horizon();
    DynamicSignal hat = g.dynamic_signal(states, T, cfg.max_cells_per_period);
    DynamicSignal extra = g.coin(0.25) ? trivial_dynamic(states, T) : g.dynamic_signal(states, T, 2);
    DynamicSignal eta{states, {}};
    if (g.coin()) {
        eta = dynamic_join(hat, extra);
    } else {
        std::size_t t0 = g.uniform(0, T - 1);
        std::vector<bool> reveal(states.size());
        for (std::size_t s = 0; s < states.size(); ++s) reveal[s] = g.coin();
        reveal[g.uniform(0, states.size() - 1)] = true;
        Signal revealer = partial_revealer(states, reveal);
        for (std::size_t t = 0; t < T; ++t) {
            if (t < t0) {
                eta.periods.push_back(join(hat[t], extra[t]));
            } else {
                Signal base = t0 == 0 ? trivial_signal(states) : eta.periods[t0 - 1];
                eta.periods.push_back(join(join(join(revealer, base), extra[t]), mask_states(hat[t], reveal)));
            }
        }
    }
    return {relabel(std::move(eta)), std::move(hat)};
}

/// A pair on a common state space and horizon that fails dynamic
/// reveal-or-refine. Falls back to (trivial, fully revealing) when rejection
/// sampling does not find one.
inline std::pair<DynamicSignal, DynamicSignal> gen_non_ror_pair(const GenConfig& cfg, std::uint64_t index = 0) {
    Generator g(cfg, index);
    auto states = g.states();
    if (states.size() < 2) states.labels = {"s1", "s2"};
    auto T = g.horizon();
    for (int attempt = 0; attempt < 100; ++attempt) {
        auto eta = g.dynamic_signal(states, T, cfg.max_cells_per_period);
        auto hat = g.dynamic_signal(states, T, cfg.max_cells_per_period);
        for (std::size_t t = 0; t < T; ++t)
            if (!reveal_or_refines(eta[t], hat[t]).holds) return {eta, hat};
    }
    return {trivial_dynamic(states, T), constant_dynamic(revealing_signal(states), T)};
}

}  // namespace dynsig
