#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asymm/measures.hpp"
#include "asymm/quantum.hpp"

namespace asymm {

// One recorded comparison inside an experiment. `expected` and `actual` are
// compared according to `relation`: "abs" passes when |actual - expected| <=
// tolerance, "ge" when actual >= expected - tolerance, "le" when actual <=
// expected + tolerance, and "info" lines always pass (context for the
// report).
struct CheckRecord {
  std::string description;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  std::string relation = "abs";
  bool pass = true;
};

struct ExperimentReport {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;
  bool overall_pass = true;

  CheckRecord& add(CheckRecord record);
};

// Two spin-1/2 + qubit-reference states with identical generator moments to
// every order but different asymmetry: one commutes with J_z and scores zero
// on every z-axis measure, the other scores one bit of Holevo asymmetry and
// unit commutator asymmetry, and a bare quarter-turn about y maps the first
// to the second.
ExperimentReport spin_example_report();

// Cyclic-group demonstration (2 <= n <= 12): the characteristic function of
// the identity-basis state is unchanged by twirling while the Holevo
// asymmetry gap is log2(n) bits, and the group-eigenbasis encoder channel
// deposits an arbitrary target state covariantly.
ExperimentReport triviality_demo(int n, std::uint64_t seed);

// Entropy-difference bound for covariant channels, S(E(rho)) - S(rho) >=
// S(twirl(E(rho))) - S(twirl(rho)), over random symmetric dilations on a
// four-level U(1) system, plus the exact one-bit twirl entropy of random
// spin-1/2 states.
ExperimentReport amplifier_bound_check(int trials, std::uint64_t seed);

// Monotonicity of a measure under random covariant channels for a registered
// group instance ("z8", "u1", "su2") and measure id ("holevo", "commutator",
// "trace-distance", "skew25", "skew50", "skew75"). Unregistered combinations
// raise UnknownInstance.
ExperimentReport monotonicity_suite(const std::string& instance,
                                    const std::string& measure, int trials,
                                    std::uint64_t seed);

// The (instance, measure) pairs monotonicity_suite accepts.
std::vector<std::pair<std::string, std::string>> monotonicity_registry();

struct InterconversionResult {
  bool equal_strict = false;
  double max_deviation_strict = 0.0;
  bool equal_up_to_phase = false;
  double max_deviation_phase = 0.0;
};

// Compares characteristic functions of two pure states over all elements
// (finite groups) or a 64-element grid/sample (Lie groups), under both the
// strict entrywise convention and the moduli-plus-phase-character convention.
InterconversionResult pure_state_interconversion(const DensityOperator& psi1,
                                                 const DensityOperator& psi2,
                                                 const Representation& r,
                                                 double tol);

// Three fixed interconversion verdicts on a three-level U(1) system: a global
// phase (equal), support on different gaps (inequivalent), and a one-step
// spectral shift (strictly different characteristic function yet equal up to
// a phase character).
ExperimentReport interconversion_demo();

}  // namespace asymm
