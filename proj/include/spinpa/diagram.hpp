#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "spinpa/errors.hpp"
#include "spinpa/exactnum.hpp"

namespace spinpa {

enum class Sign : std::uint8_t { Plus, Minus };

inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

struct Colour {
  int k = 0;
  Sign eps = Sign::Plus;

  friend auto operator<=>(const Colour&, const Colour&) = default;
};

std::string to_string(Colour c);

using Label = int;
/// Sorted multiset of labels sitting in one black face.
using LabelBag = std::vector<Label>;

void insert_label(LabelBag& bag, Label l);
void merge_labels(LabelBag& into, const LabelBag& from);
/// True if the bag holds two distinct labels.
bool conflicting(const LabelBag& bag);

/// Boundary interval index normalised into 1..2k (0 for k == 0).
int interval_slot(int k, int t);

/// Colour of boundary interval t of a (k, eps) disk: the marked interval 2k
/// is white iff eps is +, and colours alternate around the boundary.
bool interval_is_black(Colour c, int t);

/// The interior of one closed string. Its colour is the opposite of the face
/// it sits in; `children` are the loops nested directly inside it.
struct Loop {
  LabelBag labels;
  std::vector<Loop> children;

  friend bool operator==(const Loop&, const Loop&) = default;
  friend bool operator<(const Loop& a, const Loop& b) {
    if (a.labels != b.labels) return a.labels < b.labels;
    return a.children < b.children;
  }
};

/// Number of loops in a forest, counted recursively.
int count_loops(const std::vector<Loop>& forest);
/// Sorts every level of the forest so structurally equal forests compare equal.
void sort_forest(std::vector<Loop>& forest);

/// A loop-free labelled flat tangle of colour (k, eps).
///
/// Boundary points 1..2k run clockwise: 1..k along the top left to right,
/// k+1..2k along the bottom right to left. Interval t lies between points t
/// and t+1; interval 2k (between 2k and 1) is the marked one. A face is keyed
/// by the smallest interval it touches (0 for k == 0). Canonical diagrams
/// carry at most one label per face.
struct FlatDiagram {
  Colour colour;
  std::vector<int> partner;  // partner[t-1] is the point matched with t
  std::map<int, LabelBag> labels;

  static FlatDiagram identity(Colour c);
  static FlatDiagram empty(Sign eps);
  /// Builds from 1-based chord pairs.
  static FlatDiagram from_pairs(Colour c, const std::vector<std::pair<int, int>>& pairs);

  int k() const { return colour.k; }
  int mate(int point) const { return partner[static_cast<std::size_t>(point - 1)]; }
  bool is_canonical() const;

  friend bool operator==(const FlatDiagram&, const FlatDiagram&) = default;
  friend auto operator<=>(const FlatDiagram&, const FlatDiagram&) = default;
};

struct FaceInfo {
  int address = 0;
  bool black = false;
  std::vector<int> intervals;
};

/// The k+1 faces of the chord diagram in order of address.
/// Throws ValidationError for a crossing or malformed matching.
std::vector<FaceInfo> faces(const FlatDiagram& d);

/// face index (into faces(d)) for every interval slot; entry 0 unused when k >= 1.
std::vector<int> interval_faces(const FlatDiagram& d);

/// Checks matching, face addresses, label placement and (for n > 0) label range.
void validate(const FlatDiagram& d, int n = 0);

/// A flat diagram together with closed loops floating in its faces; the
/// intermediate form produced by gluing before loops are resolved. With k == 0
/// it is a closed diagram.
struct Tangle {
  FlatDiagram flat;
  std::map<int, std::vector<Loop>> loops;

  static Tangle of(FlatDiagram d) { return Tangle{std::move(d), {}}; }
};

/// A collection of nested closed loops of colour (0, eps).
struct ClosedDiagram {
  Sign eps = Sign::Plus;
  LabelBag external;
  std::vector<Loop> loops;

  int loop_count() const { return count_loops(loops); }
  void normalise() { sort_forest(loops); }

  friend bool operator==(const ClosedDiagram&, const ClosedDiagram&) = default;
};

ClosedDiagram to_closed(const Tangle& t);
Tangle to_tangle(const ClosedDiagram& c);

/// Places `inner` in the outer face of `outer`: both external regions merge.
ClosedDiagram merge_closed(const ClosedDiagram& outer, const ClosedDiagram& inner);
/// Surrounds `d` by one more loop. The old external region becomes the loop
/// interior and receives `inner_labels`; the new external region has the
/// opposite colour and carries `outer_labels`.
ClosedDiagram wrap_closed(const ClosedDiagram& d, const LabelBag& inner_labels,
                          const LabelBag& outer_labels = {});

// ---------------------------------------------------------------------------
// Gluing

/// A slot or point of an input disk (piece >= 0) or of the output disk (piece == kOut).
struct Port {
  static constexpr int kOut = -1;
  int piece = kOut;
  int index = 0;
};

/// A planar tangle with input disks and one output disk, given combinatorially:
/// strands joining boundary points, and the regions of the tangle listed by
/// the boundary intervals each one touches.
struct Wiring {
  Colour out;
  std::vector<Colour> inputs;
  std::vector<std::pair<Port, Port>> strands;
  std::vector<std::vector<Port>> regions;

  void connect(Port a, Port b) { strands.emplace_back(a, b); }
  void region(std::vector<Port> slots) { regions.push_back(std::move(slots)); }
};

Wiring stack_wiring(Colour c);
Wiring cap_right_wiring(Colour c);
Wiring cap_left_wiring(Colour c);
Wiring add_string_right_wiring(Colour c);
Wiring rotate_wiring(Colour c);
Wiring trace_wiring(Colour c);

/// Substitutes the inputs into the wiring. Labels of merged faces are united;
/// closed strings become loops, nested according to the regions they bound.
Tangle glue(const Wiring& w, const std::vector<const Tangle*>& inputs);

/// Reflection top to bottom: point t goes to 2k+1-t.
FlatDiagram reflect(const FlatDiagram& d);

// ---------------------------------------------------------------------------
// Loop resolution

struct Resolved {
  FlatDiagram diagram;  // canonical
  Scalar coeff;
};

/// Removes every loop, innermost first: an unlabelled interior gives sqrt(n),
/// an interior holding one distinct label gives 1/sqrt(n). Any face holding
/// two distinct labels makes the result zero (nullopt).
std::optional<Resolved> resolve(const Tangle& t, int n);

struct ClosedResolution {
  bool zero = false;
  Scalar coeff;
  std::optional<Label> external_label;
};

/// Loop-by-loop deletion of a closed diagram. With an engine the next leaf
/// loop is picked at random, otherwise the leftmost leaf is taken.
ClosedResolution resolve_loops(const ClosedDiagram& d, int n, std::mt19937_64* order = nullptr);

// ---------------------------------------------------------------------------
// Elements

/// A finite linear combination of canonical flat diagrams of one colour.
class Element {
 public:
  using Terms = std::map<FlatDiagram, Scalar>;

  Element(int n, Colour c);

  static Element identity(int n, Colour c);
  /// Canonicalizes `d` (merging labels per face) and returns coeff * d.
  static Element from_diagram(int n, const FlatDiagram& d, const Scalar& coeff = 1);
  /// S(i): the (0,-) diagram whose external face holds label i.
  static Element generator(int n, Label i);

  int n() const { return n_; }
  Colour colour() const { return colour_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds coeff * d for a canonical diagram of this colour.
  void add_term(const FlatDiagram& d, const Scalar& coeff);

  Element& operator+=(const Element& rhs);
  Element& operator-=(const Element& rhs);
  Element& operator*=(const Scalar& s);
  friend Element operator+(Element x, const Element& y) { return x += y; }
  friend Element operator-(Element x, const Element& y) { return x -= y; }
  friend Element operator*(const Scalar& s, Element x) { return x *= s; }
  friend Element operator*(Element x, const Scalar& s) { return x *= s; }

  friend bool operator==(const Element& x, const Element& y) {
    return x.n_ == y.n_ && x.colour_ == y.colour_ && x.terms_ == y.terms_;
  }

 private:
  int n_;
  Colour colour_;
  Terms terms_;
};

/// Collapses label multisets; zero if a face carries two distinct labels.
Element canonicalize(int n, const FlatDiagram& d, const Scalar& coeff);

/// x drawn above y.
Element stack(const Element& x, const Element& y);
Element involute(const Element& x);
Element cap_right(const Element& x);
Element cap_left(const Element& x);
Element add_string_right(const Element& x);
Element rotate_one(const Element& x);
/// Each term closed up by nested arcs around the right side; no normalisation.
std::vector<std::pair<ClosedDiagram, Scalar>> trace_close(const Element& x);
/// Replaces every unlabelled black face by the sum over all labels.
Element expand_units(const Element& x);

/// Applies the wiring to one term per input and resolves loops.
Element apply_wiring(const Wiring& w, int n, const std::vector<const Element*>& inputs);

// ---------------------------------------------------------------------------
// Text formats

std::string to_text(const FlatDiagram& d);
FlatDiagram parse_diagram(const std::string& text);
std::string to_text(const Element& x);
std::string to_text(const ClosedDiagram& d);

}  // namespace spinpa
