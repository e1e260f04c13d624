#pragma once

// Bundled instances used by the CLI demo and the test suites.

#include "dynsig/dynamic_signal.hpp"
#include "dynsig/signal.hpp"

#include <string>
#include <utility>
#include <vector>

namespace dynsig::fixtures {

inline StateSpace two_states() { return StateSpace{{"theta_L", "theta_H"}}; }

/// Cell with a section for theta_L and one for theta_H.
inline Cell cell2(std::string id, IntervalSet low, IntervalSet high) { return Cell{std::move(id), {std::move(low), std::move(high)}}; }

inline Rational q(std::int64_t n, std::int64_t d) { return Rational(n, d); }

/// Two-period, two-state worked example. Period 1 realizations h, l;
/// period 2 cells hH, lH, lL (realizations H, L after the period-1 label).
///   pi(h,H|L)=1/4  pi(h,H|H)=3/4  pi(l,H|L)=1/2  pi(l,H|H)=0
///   pi(l,L|L)=1/4  pi(l,L|H)=1/4  pi(h,L|.)=0
inline DynamicSignal example1() {
    auto states = two_states();
    Signal p1{states,
              {cell2("h", {{0, q(1, 4)}}, {{0, q(3, 4)}}),
               cell2("l", {{q(1, 4), 1}}, {{q(3, 4), 1}})}};
    Signal p2{states,
              {cell2("hH", {{0, q(1, 4)}}, {{0, q(3, 4)}}),
               cell2("lH", {{q(1, 4), q(3, 4)}}, {}),
               cell2("lL", {{q(3, 4), 1}}, {{q(3, 4), 1}})}};
    return DynamicSignal{states, {p1, p2}};
}

/// Splits [0,1) at 1/2 in both states; induces an uninformative experiment.
inline Signal split_half() {
    auto states = two_states();
    return Signal{states,
                  {cell2("lo", {{0, q(1, 2)}}, {{0, q(1, 2)}}),
                   cell2("hi", {{q(1, 2), 1}}, {{q(1, 2), 1}})}};
}

/// s1 = (theta_L,[0,3/4)) u (theta_H,[0,1/4)), s2 its complement. Its
/// experiment Blackwell-dominates split_half's (which carries no
/// information), yet it does not strongly dominate it.
inline Signal blackwell_eta() {
    auto states = two_states();
    return Signal{states,
                  {cell2("s1", {{0, q(3, 4)}}, {{0, q(1, 4)}}),
                   cell2("s2", {{q(3, 4), 1}}, {{q(1, 4), 1}})}};
}

inline Signal blackwell_eta_hat() { return split_half(); }

/// Auxiliary signal under which split_half beats blackwell_eta in
/// guess-the-state: r1 = (theta_L,[0,1/2)) u (theta_H,[1/2,1)).
inline Signal swap_rho() {
    auto states = two_states();
    return Signal{states,
                  {cell2("r1", {{0, q(1, 2)}}, {{q(1, 2), 1}}),
                   cell2("r2", {{q(1, 2), 1}}, {{0, q(1, 2)}})}};
}

/// Converse-failure witness, sigma1: split at 1/2 in both states.
inline Signal converse_sigma1() { return split_half(); }

/// sigma2: {[0,1/4) u [1/2,3/4), rest} in both states. Same experiment as
/// sigma1, but neither reveal-or-refines the other.
inline Signal converse_sigma2() {
    auto states = two_states();
    IntervalSet a{{0, q(1, 4)}, {q(1, 2), q(3, 4)}};
    IntervalSet b{{q(1, 4), q(1, 2)}, {q(3, 4), 1}};
    return Signal{states, {cell2("odd", a, a), cell2("even", b, b)}};
}

}  // namespace dynsig::fixtures
