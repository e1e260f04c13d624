#pragma once

// dynsig command-line front end.
//
// Exit codes: 0 success or true verdict, 1 false verdict (ror, dominates) or
// counterexample found (falsify), 2 validation error, 3 I/O or schema error.

#include "dynsig/dynsig.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace dynsig::cli {

using io::json;

enum Exit : int { kOk = 0, kFalse = 1, kInvalid = 2, kIoError = 3 };

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Runner {
public:
    Runner(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

    int run(std::vector<std::string> args) {
        CLI::App app{"Exact value-of-information and strong-dominance toolkit for dynamic signals", "dynsig"};
        app.require_subcommand(1);
        app.fallthrough();
        app.add_flag("--decimal", fmt_.decimal, "Also print 6-place decimal approximations (marked _approx)");
        app.add_option("-o,--output", output_, "Write output to a file instead of stdout");

        std::string a, b, problem_path, prior_text = "uniform", kind = "dynamic";
        bool as_flag = false, nonrobust = false, as_json = false, bruteforce = false;
        std::uint64_t seed = 0, budget = FalsifyOptions{}.budget, bf_budget = kDefaultBruteforceBudget, index = 0, count = 0;
        GenConfig gen;

        auto* validate = app.add_subcommand("validate", "Check a signal or dynamic signal");
        validate->add_option("file", a, "Signal JSON ('-' for stdin)")->required();

        auto* join_cmd = app.add_subcommand("join", "Join two signals (period-wise for dynamic signals)");
        join_cmd->add_option("a", a)->required();
        join_cmd->add_option("b", b)->required();

        auto* experiment = app.add_subcommand("experiment", "Print the dynamic experiment induced by a dynamic signal");
        experiment->add_option("file", a)->required();
        experiment->add_flag("--json", as_json, "Emit the experiment table as JSON");

        auto* value_cmd = app.add_subcommand("value", "Exact value of a dynamic signal in an extended decision problem");
        value_cmd->add_option("signal", a)->required();
        value_cmd->add_option("problem", problem_path)->required();
        value_cmd->add_option("--prior", prior_text, "\"uniform\", an inline JSON object, or a JSON file");
        value_cmd->add_flag("--as", as_flag, "Use the additively separable fast path");
        value_cmd->add_flag("--bruteforce", bruteforce, "Enumerate every adapted strategy");
        value_cmd->add_option("--budget", bf_budget, "Strategy budget for --bruteforce");

        auto* ror = app.add_subcommand("ror", "Reveal-or-refine check (period-wise for dynamic signals)");
        ror->add_option("a", a)->required();
        ror->add_option("b", b)->required();

        auto* dominates = app.add_subcommand("dominates", "Does a strongly dominate b?");
        dominates->add_option("a", a)->required();
        dominates->add_option("b", b)->required();
        dominates->add_flag("--as", as_flag, "Restrict to additively separable problems");
        dominates->add_flag("--nonrobust", nonrobust, "Dominance without auxiliary information (sufficient test only)");

        auto* falsify_cmd = app.add_subcommand("falsify", "Search for a problem where b is worth strictly more than a");
        falsify_cmd->add_option("a", a)->required();
        falsify_cmd->add_option("b", b)->required();
        falsify_cmd->add_option("--prior", prior_text);
        falsify_cmd->add_option("--seed", seed);
        falsify_cmd->add_option("--budget", budget);

        auto* gen_cmd = app.add_subcommand("gen", "Generate a random signal, dynamic signal or problem");
        gen_cmd->add_option("--kind", kind)->check(CLI::IsMember({"signal", "dynamic", "problem"}));
        gen_cmd->add_option("--seed", gen.seed);
        gen_cmd->add_option("--index", index);
        gen_cmd->add_option("--count", count, "Emit a JSON array of this many instances (indices index, index+1, ...)");
        gen_cmd->add_option("--max-states", gen.max_states);
        gen_cmd->add_option("--max-periods", gen.max_periods);
        gen_cmd->add_option("--max-cells", gen.max_cells_per_period);
        gen_cmd->add_option("--max-actions", gen.max_actions_per_period);
        gen_cmd->add_option("--denominator-bound", gen.denominator_bound);

        auto* render = app.add_subcommand("render", "Draw a dynamic signal as SVG");
        render->add_option("file", a)->required();

        auto* demo = app.add_subcommand("demo-example1", "Emit the bundled two-period example with its experiment table");

        std::reverse(args.begin(), args.end());
        try {
            app.parse(args);
        } catch (const CLI::CallForHelp& e) {
            out_ << app.help();
            return kOk;
        } catch (const CLI::ParseError& e) {
            err_ << e.what() << "\n";
            return kIoError;
        }

        try {
            if (*validate) return cmd_validate(a);
            if (*join_cmd) return cmd_join(a, b);
            if (*experiment) return cmd_experiment(a, as_json);
            if (*value_cmd) return cmd_value(a, problem_path, prior_text, as_flag, bruteforce, bf_budget);
            if (*ror) return cmd_ror(a, b);
            if (*dominates) return cmd_dominates(a, b, as_flag, nonrobust);
            if (*falsify_cmd) return cmd_falsify(a, b, prior_text, seed, budget);
            if (*gen_cmd) return cmd_gen(kind, gen, index, count);
            if (*render) return cmd_render(a);
            if (*demo) return cmd_demo();
        } catch (const IoFailure& e) {
            err_ << "error: " << e.what() << "\n";
            return kIoError;
        } catch (const io::SchemaError& e) {
            err_ << "schema error: " << e.what() << "\n";
            return kIoError;
        } catch (const json::exception& e) {
            err_ << "schema error: " << e.what() << "\n";
            return kIoError;
        } catch (const std::invalid_argument& e) {  // ValidationError, MismatchError
            err_ << "invalid: " << e.what() << "\n";
            return kInvalid;
        } catch (const std::logic_error& e) {  // PreconditionError, LookupError
            err_ << "invalid: " << e.what() << "\n";
            return kInvalid;
        } catch (const BudgetError& e) {
            err_ << "invalid: " << e.what() << "\n";
            return kInvalid;
        }
        return kIoError;
    }

private:
    std::istream& in_;
    std::ostream& out_;
    std::ostream& err_;
    io::Format fmt_;
    std::string output_;

    std::string slurp(const std::string& path) {
        if (path == "-") return std::string(std::istreambuf_iterator<char>(in_), {});
        std::ifstream f(path, std::ios::binary);
        if (!f) throw IoFailure("cannot read " + path);
        return std::string(std::istreambuf_iterator<char>(f), {});
    }

    json load(const std::string& path) {
        std::string text = slurp(path);
        try {
            return json::parse(text);
        } catch (const json::parse_error& e) {
            throw IoFailure(path + ": " + e.what());
        }
    }

    void emit(const std::string& text) {
        if (output_.empty()) {
            out_ << text;
            return;
        }
        std::ofstream f(output_, std::ios::binary);
        if (!f) throw IoFailure("cannot write " + output_);
        f << text;
    }

    void emit(const json& j) { emit(j.dump(2) + "\n"); }

    DynamicSignal load_dynamic(const std::string& path) {
        DynamicSignal ds = io::any_dynamic_from(load(path));
        require_valid(ds);
        return ds;
    }

    Prior load_prior(const std::string& text, const StateSpace& states) {
        json j;
        if (text == "uniform") j = text;
        else if (!text.empty() && text.front() == '{') {
            try {
                j = json::parse(text);
            } catch (const json::parse_error& e) {
                throw IoFailure(std::string("--prior: ") + e.what());
            }
        } else {
            j = load(text);
        }
        Prior p = io::prior_from(j, states);
        p.check(states);
        return p;
    }

    int cmd_validate(const std::string& path) {
        json j = load(path);
        if (io::is_dynamic(j)) {
            auto ds = io::dynamic_from(j);
            if (auto v = validate_dynamic(ds)) {
                emit(json{{"ok", false}, {"period", v->period}, {"violation", v->message}});
                return kInvalid;
            }
        } else {
            auto s = io::signal_from(j);
            if (auto v = validate(s)) {
                json r{{"ok", false}, {"violation", v->message}};
                if (!v->state.empty()) r["state"] = v->state;
                if (v->where) r["interval"] = json::array({v->where->lo.str(), v->where->hi.str()});
                emit(r);
                return kInvalid;
            }
        }
        emit(json{{"ok", true}});
        return kOk;
    }

    int cmd_join(const std::string& pa, const std::string& pb) {
        json ja = load(pa), jb = load(pb);
        if (!io::is_dynamic(ja) && !io::is_dynamic(jb)) {
            auto sa = io::signal_from(ja), sb = io::signal_from(jb);
            require_valid(sa);
            require_valid(sb);
            emit(io::to_json(join(sa, sb)));
            return kOk;
        }
        auto da = io::any_dynamic_from(ja), db = io::any_dynamic_from(jb);
        require_valid(da);
        require_valid(db);
        emit(io::to_json(dynamic_join(da, db)));
        return kOk;
    }

    std::string experiment_text(const DynamicExperiment& ex) {
        std::string text;
        auto line = [&](const std::vector<std::string>& real, std::size_t s, const Rational& p) {
            text += "pi(";
            for (std::size_t i = 0; i < real.size(); ++i) text += (i ? "," : "") + real[i];
            text += "|" + ex.states.labels[s] + ") = " + p.str();
            if (fmt_.decimal) text += "  (~" + p.decimal() + ")";
            text += "\n";
        };
        if (ex.product_size() <= 4096) {
            for (const auto& real : ex.product())
                for (std::size_t s = 0; s < ex.states.size(); ++s) line(real, s, ex.probability(real, ex.states.labels[s]));
        } else {
            for (const auto& r : ex.rows)
                for (std::size_t s = 0; s < ex.states.size(); ++s) line(r.realization, s, r.probability[s]);
        }
        return text;
    }

    int cmd_experiment(const std::string& path, bool as_json) {
        auto ex = to_experiment(load_dynamic(path));
        if (as_json) emit(io::to_json(ex, fmt_));
        else emit(experiment_text(ex));
        return kOk;
    }

    int cmd_value(const std::string& sp, const std::string& pp, const std::string& prior_text, bool as_flag, bool bruteforce,
                  std::uint64_t budget) {
        auto eta = load_dynamic(sp);
        auto problem = io::problem_from(load(pp), eta.states);
        auto prior = load_prior(prior_text, eta.states);
        ValueResult r = bruteforce ? value_bruteforce(eta, problem, prior, budget) : as_flag ? value_as(eta, problem, prior) : value(eta, problem, prior);
        emit(io::to_json(r, problem, fmt_));
        return kOk;
    }

    std::pair<DynamicSignal, DynamicSignal> load_pair(const std::string& pa, const std::string& pb) {
        auto a = load_dynamic(pa), b = load_dynamic(pb);
        require_compatible(a, b);
        return {a, b};
    }

    int cmd_ror(const std::string& pa, const std::string& pb) {
        auto [a, b] = load_pair(pa, pb);
        auto report = dynamic_reveal_or_refine(a, b);
        emit(io::to_json(report));
        return report.verdict ? kOk : kFalse;
    }

    int cmd_dominates(const std::string& pa, const std::string& pb, bool as_flag, bool nonrobust) {
        auto [a, b] = load_pair(pa, pb);
        auto report = dynamic_reveal_or_refine(a, b);
        bool verdict = nonrobust ? dominates_sufficient(a, b) : as_flag ? strongly_dominates_as(a, b) : strongly_dominates(a, b);
        json j{{"relation", nonrobust ? "dominates" : as_flag ? "strongly-dominates-as" : "strongly-dominates"}, {"verdict", verdict}};
        if (nonrobust && !verdict) j["note"] = "reveal-or-refine fails; this test is only sufficient, so no conclusion";
        j["report"] = io::to_json(report);
        emit(j);
        return verdict ? kOk : kFalse;
    }

    int cmd_falsify(const std::string& pa, const std::string& pb, const std::string& prior_text, std::uint64_t seed, std::uint64_t budget) {
        auto [a, b] = load_pair(pa, pb);
        auto prior = load_prior(prior_text, a.states);
        auto cx = falsify(a, b, prior, FalsifyOptions{budget, seed});
        if (!cx) {
            emit(json{{"found", false}, {"note", "search exhausted its budget; this is not a dominance proof"}});
            return kOk;
        }
        json j{{"found", true}};
        j.update(io::to_json(*cx, a.states, fmt_));
        emit(j);
        return kFalse;
    }

    json gen_one(const std::string& kind, const GenConfig& cfg, std::uint64_t index) {
        if (kind == "signal") return io::to_json(gen_signal(cfg, index));
        if (kind == "dynamic") return io::to_json(gen_dynamic_signal(cfg, index));
        Generator g(cfg, index);
        auto states = g.states();
        auto T = g.horizon();
        json j = io::to_json(g.problem(states, T), states);
        j["states"] = states.labels;
        return j;
    }

    int cmd_gen(const std::string& kind, const GenConfig& cfg, std::uint64_t index, std::uint64_t count) {
        if (count == 0) {
            emit(gen_one(kind, cfg, index));
            return kOk;
        }
        json corpus = json::array();
        for (std::uint64_t i = 0; i < count; ++i) corpus.push_back(gen_one(kind, cfg, index + i));
        emit(corpus);
        return kOk;
    }

    int cmd_render(const std::string& path) {
        emit(svg::render(load_dynamic(path)));
        return kOk;
    }

    int cmd_demo() {
        DynamicSignal ds = fixtures::example1();
        json j = io::to_json(ds);
        j["experiment"] = io::to_json(to_experiment(ds), fmt_)["rows"];
        emit(j);
        return kOk;
    }
};

inline int run(const std::vector<std::string>& args, std::istream& in = std::cin, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return Runner(in, out, err).run(args);
}

}  // namespace dynsig::cli
