#pragma once

// JSON encoding of signals, problems, experiments and reports. Rationals are
// always strings "p/q" or "n". With `decimal` set, every rational field
// `x` gets a sibling `x_approx` holding a 6-place decimal approximation.

#include "dynsig/decision.hpp"
#include "dynsig/dominance.hpp"
#include "dynsig/dynamic_signal.hpp"
#include "dynsig/signal.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace dynsig::io {

using json = nlohmann::ordered_json;

/// Malformed input: wrong JSON types, missing keys, unparsable numbers.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Format {
    bool decimal = false;
};

inline void put(json& j, const std::string& key, const Rational& r, const Format& fmt) {
    j[key] = r.str();
    if (fmt.decimal) j[key + "_approx"] = r.decimal();
}

inline Rational rational_from(const json& j) {
    try {
        if (j.is_string()) return Rational::parse(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    throw SchemaError("expected a rational string, got " + j.dump());
}

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

inline std::vector<std::string> strings_from(const json& j, const char* what) {
    if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) throw SchemaError(std::string(what) + " must hold strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

// ---------------------------------------------------------------- signals

inline json cells_to_json(const Signal& sig) {
    json cells = json::array();
    for (const auto& c : sig.cells) {
        json sections = json::object();
        for (std::size_t s = 0; s < sig.states.size(); ++s) {
            if (c.sections[s].empty()) continue;
            json list = json::array();
            for (const auto& p : c.sections[s].intervals()) list.push_back(json::array({p.lo.str(), p.hi.str()}));
            sections[sig.states.labels[s]] = std::move(list);
        }
        cells.push_back(json{{"id", c.id}, {"sections", std::move(sections)}});
    }
    return cells;
}

inline json to_json(const Signal& sig) { return json{{"states", sig.states.labels}, {"cells", cells_to_json(sig)}}; }

inline std::vector<Cell> cells_from(const json& j, const StateSpace& states) {
    if (!j.is_array()) throw SchemaError("cells must be an array");
    std::vector<Cell> cells;
    for (const auto& jc : j) {
        const json& id = field(jc, "id");
        if (!id.is_string()) throw SchemaError("cell id must be a string");
        Cell c{id.get<std::string>(), std::vector<IntervalSet>(states.size())};
        const json& sections = field(jc, "sections");
        if (!sections.is_object()) throw SchemaError("sections of \"" + c.id + "\" must be an object");
        for (const auto& [state, list] : sections.items()) {
            std::size_t s;
            try {
                s = states.index_of(state);
            } catch (const LookupError& e) {
                throw ValidationError(std::string(e.what()) + " in cell \"" + c.id + "\"");
            }
            if (!list.is_array()) throw SchemaError("section list must be an array");
            std::vector<Interval> pieces;
            for (const auto& pair : list) {
                if (!pair.is_array() || pair.size() != 2) throw SchemaError("interval must be [lo, hi]");
                pieces.push_back({rational_from(pair[0]), rational_from(pair[1])});
            }
            try {
                c.sections[s] = IntervalSet(std::move(pieces));
            } catch (const std::invalid_argument& e) {
                throw ValidationError(std::string(e.what()) + " in cell \"" + c.id + "\"");
            }
        }
        cells.push_back(std::move(c));
    }
    return cells;
}

inline StateSpace states_from(const json& j) { return StateSpace{strings_from(field(j, "states"), "states")}; }

/// Parses without validating the partition.
inline Signal signal_from(const json& j) {
    StateSpace states = states_from(j);
    return Signal{states, cells_from(field(j, "cells"), states)};
}

inline json to_json(const DynamicSignal& ds) {
    json periods = json::array();
    for (const auto& p : ds.periods) periods.push_back(cells_to_json(p));
    return json{{"states", ds.states.labels}, {"periods", std::move(periods)}};
}

/// Periods may be cell arrays or objects with a "cells" key.
inline DynamicSignal dynamic_from(const json& j) {
    StateSpace states = states_from(j);
    const json& periods = field(j, "periods");
    if (!periods.is_array()) throw SchemaError("periods must be an array");
    DynamicSignal ds{states, {}};
    for (const auto& p : periods) ds.periods.push_back(Signal{states, cells_from(p.is_object() ? field(p, "cells") : p, states)});
    return ds;
}

inline bool is_dynamic(const json& j) { return j.is_object() && j.contains("periods"); }

/// Static signals become one-period dynamic signals.
inline DynamicSignal any_dynamic_from(const json& j) {
    if (is_dynamic(j)) return dynamic_from(j);
    Signal s = signal_from(j);
    return DynamicSignal{s.states, {s}};
}

/// A corpus is a JSON array of signals or dynamic signals.
inline std::vector<DynamicSignal> corpus_from(const json& j) {
    if (!j.is_array()) throw SchemaError("corpus must be an array");
    std::vector<DynamicSignal> out;
    for (const auto& e : j) out.push_back(any_dynamic_from(e));
    return out;
}

// ---------------------------------------------------------------- priors

inline Prior prior_from(const json& j, const StateSpace& states) {
    if (j.is_string() && j.get<std::string>() == "uniform") return Prior::uniform(states.size());
    if (!j.is_object()) throw SchemaError("prior must be \"uniform\" or an object of rational strings");
    Prior p{std::vector<Rational>(states.size())};
    for (const auto& [state, w] : j.items()) p.weights[states.index_of(state)] = rational_from(w);
    return p;
}

inline json to_json(const Prior& p, const StateSpace& states) {
    json j = json::object();
    for (std::size_t s = 0; s < states.size(); ++s) j[states.labels[s]] = p[s].str();
    return j;
}

// ---------------------------------------------------------------- problems

inline json to_json(const ExtendedDecisionProblem& p, const StateSpace& states) {
    json j;
    j["actions"] = p.actions;
    if (const auto* g = std::get_if<GeneralUtility>(&p.utility)) {
        json entries = json::array();
        for (std::size_t k = 0; k < p.profile_count(); ++k) {
            auto profile = p.decode_profile(k);
            json names = json::array();
            for (std::size_t t = 0; t < profile.size(); ++t) names.push_back(p.actions[t][profile[t]]);
            for (std::size_t s = 0; s < states.size(); ++s)
                entries.push_back(json{{"profile", names}, {"state", states.labels[s]}, {"u", g->table[k * states.size() + s].str()}});
        }
        j["utility"] = json{{"mode", "general"}, {"entries", std::move(entries)}};
    } else {
        const auto& sep = std::get<SeparableUtility>(p.utility);
        json periods = json::array();
        for (std::size_t t = 0; t < sep.periods.size(); ++t) {
            json per = json::object();
            for (std::size_t a = 0; a < p.actions[t].size(); ++a) {
                json row = json::object();
                for (std::size_t s = 0; s < states.size(); ++s) row[states.labels[s]] = sep.periods[t][a][s].str();
                per[p.actions[t][a]] = std::move(row);
            }
            periods.push_back(std::move(per));
        }
        j["utility"] = json{{"mode", "as"}, {"periods", std::move(periods)}};
    }
    j["aux"] = p.aux ? to_json(*p.aux) : json(nullptr);
    return j;
}

/// Needs the state space of the signals the problem will be evaluated on.
inline ExtendedDecisionProblem problem_from(const json& j, const StateSpace& states) {
    ExtendedDecisionProblem p;
    const json& actions = field(j, "actions");
    if (!actions.is_array() || actions.empty()) throw SchemaError("actions must be a nonempty array of arrays");
    for (const auto& a : actions) p.actions.push_back(strings_from(a, "action set"));
    for (std::size_t t = 0; t < p.actions.size(); ++t)
        if (p.actions[t].empty()) throw ValidationError("period " + std::to_string(t + 1) + " has no actions");
    auto action_index = [&](std::size_t t, const std::string& name) {
        for (std::size_t a = 0; a < p.actions[t].size(); ++a)
            if (p.actions[t][a] == name) return a;
        throw ValidationError("unknown action \"" + name + "\" in period " + std::to_string(t + 1));
    };
    const json& u = field(j, "utility");
    const json& mode = field(u, "mode");
    if (mode == "general") {
        const std::size_t n = p.profile_count() * states.size();
        std::vector<std::optional<Rational>> table(n);
        for (const auto& e : field(u, "entries")) {
            auto names = strings_from(field(e, "profile"), "profile");
            if (names.size() != p.actions.size()) throw ValidationError("profile length does not match the horizon");
            std::vector<std::size_t> profile;
            for (std::size_t t = 0; t < names.size(); ++t) profile.push_back(action_index(t, names[t]));
            const json& state = field(e, "state");
            if (!state.is_string()) throw SchemaError("entry state must be a string");
            table[p.encode_profile(profile) * states.size() + states.index_of(state.get<std::string>())] = rational_from(field(e, "u"));
        }
        GeneralUtility g;
        for (std::size_t i = 0; i < n; ++i) {
            if (!table[i]) throw ValidationError("utility undefined for some (profile, state)");
            g.table.push_back(*table[i]);
        }
        p.utility = std::move(g);
    } else if (mode == "as") {
        const json& periods = field(u, "periods");
        if (!periods.is_array() || periods.size() != p.actions.size()) throw ValidationError("separable utility needs one table per period");
        SeparableUtility sep;
        for (std::size_t t = 0; t < p.actions.size(); ++t) {
            std::vector<std::vector<std::optional<Rational>>> rows(p.actions[t].size(), std::vector<std::optional<Rational>>(states.size()));
            if (!periods[t].is_object()) throw SchemaError("separable period table must be an object");
            for (const auto& [action, row] : periods[t].items()) {
                if (!row.is_object()) throw SchemaError("separable row must be an object");
                auto a = action_index(t, action);
                for (const auto& [state, v] : row.items()) rows[a][states.index_of(state)] = rational_from(v);
            }
            sep.periods.emplace_back();
            for (auto& row : rows) {
                sep.periods.back().emplace_back();
                for (auto& v : row) {
                    if (!v) throw ValidationError("separable utility undefined for some (action, state) in period " + std::to_string(t + 1));
                    sep.periods.back().back().push_back(*v);
                }
            }
        }
        p.utility = std::move(sep);
    } else {
        throw SchemaError("utility mode must be \"general\" or \"as\"");
    }
    if (j.contains("aux") && !j.at("aux").is_null()) p.aux = dynamic_from(j.at("aux"));
    return p;
}

// ---------------------------------------------------------------- results

inline json to_json(const DynamicExperiment& ex, const Format& fmt = {}) {
    json rows = json::array();
    for (const auto& r : ex.rows)
        for (std::size_t s = 0; s < ex.states.size(); ++s) {
            json row{{"path", r.path}, {"realization", r.realization}, {"state", ex.states.labels[s]}};
            put(row, "p", r.probability[s], fmt);
            rows.push_back(std::move(row));
        }
    return json{{"states", ex.states.labels}, {"alphabet", ex.alphabet}, {"rows", std::move(rows)}};
}

inline json strategy_to_json(const HistoryTree& tree, const AdaptedStrategy& strategy, const std::vector<std::vector<std::string>>& actions) {
    json out = json::array();
    for (std::size_t t = 0; t < tree.horizon(); ++t)
        for (std::size_t n = 0; n < tree.levels[t].size(); ++n)
            out.push_back(json{{"period", t + 1}, {"history", tree.cell(t, n).id}, {"action", actions[t][strategy.actions[t][n]]}});
    return out;
}

inline json to_json(const ValueResult& r, const ExtendedDecisionProblem& p, const Format& fmt = {}) {
    json j;
    put(j, "value", r.value, fmt);
    j["strategy"] = strategy_to_json(r.tree, r.strategy, p.actions);
    return j;
}

inline json to_json(const RevealOrRefineResult& r) {
    json cells = json::array();
    for (const auto& v : r.cells) {
        json c{{"cell", v.cell}, {"clause", to_string(v.clause)}, {"detail", v.describe()}};
        if (v.clause == Clause::Refine) c["container"] = v.container;
        if (v.clause == Clause::Reveal) c["state"] = v.revealed_state;
        if (v.clause == Clause::Fail) c["straddles"] = json::array({v.straddled_a, v.straddled_b});
        cells.push_back(std::move(c));
    }
    return json{{"holds", r.holds}, {"cells", std::move(cells)}};
}

inline json to_json(const DominanceReport& r) {
    json periods = json::array();
    for (std::size_t t = 0; t < r.per_period.size(); ++t) {
        json p{{"period", t + 1}};
        p.update(to_json(r.per_period[t]));
        periods.push_back(std::move(p));
    }
    json j{{"verdict", r.verdict}, {"periods", std::move(periods)}};
    j["first_failure"] = r.first_failure ? json{{"period", r.first_failure->period}, {"cell", r.first_failure->cell}} : json(nullptr);
    return j;
}

inline json to_json(const Counterexample& cx, const StateSpace& states, const Format& fmt = {}) {
    json j{{"construction", cx.construction}, {"period", cx.period}, {"candidates", cx.candidates}};
    put(j, "w_dominant", cx.w_dominant, fmt);
    put(j, "w_dominated", cx.w_dominated, fmt);
    j["problem"] = to_json(cx.problem, states);
    return j;
}

inline json to_json(const ChainCertificate& cert) {
    json chains = json::array();
    for (const auto& c : cert.chains) {
        json j{{"cells", c.cells}};
        j["reveal_time"] = c.reveal_time ? json(*c.reveal_time) : json("never");
        if (c.reveal_time) j["revealed_state"] = c.revealed_state;
        j["containers"] = c.containers;
        chains.push_back(std::move(j));
    }
    return json{{"chains", std::move(chains)}};
}

}  // namespace dynsig::io
