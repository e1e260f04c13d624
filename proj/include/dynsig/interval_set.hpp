#pragma once

#include "dynsig/rational.hpp"

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dynsig {

/// Half-open interval [lo, hi) inside [0, 1).
struct Interval {
    Rational lo;
    Rational hi;

    Rational length() const { return hi - lo; }
    std::string str() const { return "[" + lo.str() + "," + hi.str() + ")"; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of half-open intervals in [0, 1), kept canonical: sorted,
/// pairwise disjoint, no zero-length pieces, touching pieces merged.
/// Two sets equal as point sets compare equal.
class IntervalSet {
public:
    IntervalSet() = default;

    /// Builds the union of `pieces`. Throws on pieces outside [0,1) or with lo > hi.
    explicit IntervalSet(std::vector<Interval> pieces) {
        for (const auto& p : pieces) {
            if (p.lo < Rational(0) || p.hi > Rational(1) || p.hi < p.lo)
                throw std::invalid_argument("interval " + p.str() + " not inside [0,1)");
        }
        std::erase_if(pieces, [](const Interval& p) { return p.hi == p.lo; });
        std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        for (auto& p : pieces) {
            if (!items_.empty() && p.lo <= items_.back().hi) {
                if (p.hi > items_.back().hi) items_.back().hi = p.hi;
            } else {
                items_.push_back(std::move(p));
            }
        }
    }

    IntervalSet(std::initializer_list<Interval> pieces) : IntervalSet(std::vector<Interval>(pieces)) {}

    static IntervalSet full() { return IntervalSet({Interval{0, 1}}); }

    const std::vector<Interval>& intervals() const { return items_; }
    bool empty() const { return items_.empty(); }

    Rational measure() const {
        Rational m;
        for (const auto& p : items_) m += p.length();
        return m;
    }

    IntervalSet intersect(const IntervalSet& o) const {
        IntervalSet out;
        std::size_t i = 0, j = 0;
        while (i < items_.size() && j < o.items_.size()) {
            const auto& a = items_[i];
            const auto& b = o.items_[j];
            Rational lo = max(a.lo, b.lo);
            Rational hi = min(a.hi, b.hi);
            if (lo < hi) out.items_.push_back({lo, hi});
            if (a.hi < b.hi) ++i; else ++j;
        }
        return out;  // pieces of canonical sets intersect into disjoint, non-touching pieces
    }

    IntervalSet unite(const IntervalSet& o) const {
        std::vector<Interval> all = items_;
        all.insert(all.end(), o.items_.begin(), o.items_.end());
        return IntervalSet(std::move(all));
    }

    /// Points of *this not in o.
    IntervalSet subtract(const IntervalSet& o) const {
        IntervalSet out;
        std::size_t j = 0;
        for (const auto& a : items_) {
            Rational cur = a.lo;
            while (j < o.items_.size() && o.items_[j].hi <= cur) ++j;
            std::size_t k = j;
            while (k < o.items_.size() && o.items_[k].lo < a.hi) {
                const auto& b = o.items_[k];
                if (b.lo > cur) out.items_.push_back({cur, b.lo});
                if (b.hi > cur) cur = b.hi;
                ++k;
            }
            if (cur < a.hi) out.items_.push_back({cur, a.hi});
        }
        return out;
    }

    /// Subset as point sets; for canonical sets this is also subset mod null.
    bool subset_of(const IntervalSet& o) const { return subtract(o).empty(); }

    /// Midpoint split of every piece, used by search heuristics.
    std::vector<Interval> halves() const {
        std::vector<Interval> out;
        for (const auto& p : items_) {
            Rational mid = (p.lo + p.hi) / Rational(2);
            out.push_back({p.lo, mid});
            out.push_back({mid, p.hi});
        }
        return out;
    }

    std::string str() const {
        if (items_.empty()) return "{}";
        std::string s;
        for (const auto& p : items_) {
            if (!s.empty()) s += " u ";
            s += p.str();
        }
        return s;
    }

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
    std::vector<Interval> items_;
};

}  // namespace dynsig
