#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spinpa/annulus.hpp"
#include "spinpa/diagram.hpp"
#include "spinpa/generators.hpp"

namespace spinpa {

struct VerifyConfig {
  int n = 2;
  int max_k = 4;             // largest box size used by the exhaustive suites
  int max_m = 2;             // largest tuple length for the trace and matrix-unit tables
  std::uint64_t seed = 0;
  int random_cases = 200;    // per randomized family
  /// Right-hand constant of the black channel relation; 1/sqrt(n) when unset.
  std::optional<Scalar> channel_constant;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  long cases = 0;
  std::vector<std::string> notes;
  std::string counterexample;  // first failure, in the diagram text format
};

/// Check names in the order `verify all` runs them.
const std::vector<std::string>& check_names();
bool is_check_name(const std::string& name);

CheckResult run_check(const std::string& name, const VerifyConfig& cfg);

/// The iso suite restricted to one colour; used by `iso-check`.
CheckResult check_iso_colour(const VerifyConfig& cfg, Colour c);

/// One-line summary plus notes and counterexample.
std::string render(const CheckResult& r);

/// A relation between formal combinations of raw tangles of one colour.
struct Relation {
  std::string name;
  Colour colour;
  RawCombination lhs;
  RawCombination rhs;
};

Relation black_channel_relation(int n, const Scalar& constant);

/// The annular tangles with a (2,+) hole reaching each of the six ways the
/// region around the hole can be closed, with every labelling of the black
/// regions of the cap. `closure_class` names the class of each entry.
struct ClassifiedAnnulus {
  Annulus annulus;
  std::string closure_class;
};
std::vector<ClassifiedAnnulus> channel_closures(int n);

/// Cup-cap cap over the once-rotated hole; both sides of the channel relation close to sqrt n.
Annulus channel_witness_annulus();

}  // namespace spinpa
