#pragma once

// Test-only helpers. The oracles here deliberately avoid the library's
// interval algebra: membership is decided point by point.

#include "dynsig/dynsig.hpp"

#include <gtest/gtest.h>

#include <vector>

namespace dynsig::testing {

inline bool member(const IntervalSet& set, const Rational& x) {
    for (const auto& p : set.intervals())
        if (p.lo <= x && x < p.hi) return true;
    return false;
}

/// Midpoints of the elementary pieces cut by every endpoint in `sets`.
/// Any two canonical sets built from those endpoints agree or disagree on
/// whole pieces, so testing these points decides set relations exactly.
inline std::vector<Rational> probe_points(const std::vector<const IntervalSet*>& sets) {
    std::vector<Rational> cuts{Rational(0), Rational(1)};
    for (const auto* s : sets)
        for (const auto& p : s->intervals()) {
            cuts.push_back(p.lo);
            cuts.push_back(p.hi);
        }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Rational> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) out.push_back((cuts[i] + cuts[i + 1]) / Rational(2));
    return out;
}

/// Length of the elementary piece around each probe point.
inline std::vector<Rational> probe_widths(const std::vector<const IntervalSet*>& sets) {
    std::vector<Rational> cuts{Rational(0), Rational(1)};
    for (const auto* s : sets)
        for (const auto& p : s->intervals()) {
            cuts.push_back(p.lo);
            cuts.push_back(p.hi);
        }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Rational> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) out.push_back(cuts[i + 1] - cuts[i]);
    return out;
}

/// Cell of `sig` containing the point (state, x).
inline std::size_t cell_at(const Signal& sig, std::size_t state, const Rational& x) {
    for (std::size_t c = 0; c < sig.cells.size(); ++c)
        if (member(sig.cells[c].sections[state], x)) return c;
    ADD_FAILURE() << "point not covered";
    return 0;
}

inline std::vector<const IntervalSet*> all_sections(std::initializer_list<const Signal*> sigs, std::size_t state) {
    std::vector<const IntervalSet*> out;
    for (const auto* s : sigs)
        for (const auto& c : s->cells) out.push_back(&c.sections[state]);
    return out;
}

/// Pointwise refinement oracle: every probe point's fine cell maps to a
/// single coarse cell.
inline bool refines_pointwise(const Signal& fine, const Signal& coarse) {
    std::vector<std::optional<std::size_t>> image(fine.cells.size());
    for (std::size_t s = 0; s < fine.states.size(); ++s) {
        for (const auto& x : probe_points(all_sections({&fine, &coarse}, s))) {
            std::size_t f = cell_at(fine, s, x), c = cell_at(coarse, s, x);
            if (image[f] && *image[f] != c) return false;
            image[f] = c;
        }
    }
    return true;
}

inline Rational r(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

}  // namespace dynsig::testing
