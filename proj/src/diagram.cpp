#include "spinpa/diagram.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace spinpa {

std::string to_string(Colour c) {
  return "(" + std::to_string(c.k) + "," + sign_char(c.eps) + ")";
}

void insert_label(LabelBag& bag, Label l) { bag.insert(std::upper_bound(bag.begin(), bag.end(), l), l); }

void merge_labels(LabelBag& into, const LabelBag& from) {
  if (from.empty()) return;
  LabelBag out;
  out.reserve(into.size() + from.size());
  std::merge(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
  into = std::move(out);
}

bool conflicting(const LabelBag& bag) { return !bag.empty() && bag.front() != bag.back(); }

int interval_slot(int k, int t) {
  if (k == 0) return 0;
  const int m = 2 * k;
  return ((t - 1) % m + m) % m + 1;
}

bool interval_is_black(Colour c, int t) {
  const bool minus = c.eps == Sign::Minus;
  if (c.k == 0) return minus;
  return (interval_slot(c.k, t) % 2 == 1) != minus;
}

int count_loops(const std::vector<Loop>& forest) {
  int total = 0;
  for (const auto& l : forest) total += 1 + count_loops(l.children);
  return total;
}

void sort_forest(std::vector<Loop>& forest) {
  for (auto& l : forest) sort_forest(l.children);
  std::sort(forest.begin(), forest.end());
}

// ---------------------------------------------------------------------------

FlatDiagram FlatDiagram::identity(Colour c) {
  FlatDiagram d;
  d.colour = c;
  const int m = 2 * c.k;
  d.partner.resize(static_cast<std::size_t>(m));
  for (int t = 1; t <= m; ++t) d.partner[static_cast<std::size_t>(t - 1)] = m + 1 - t;
  return d;
}

FlatDiagram FlatDiagram::empty(Sign eps) {
  FlatDiagram d;
  d.colour = Colour{0, eps};
  return d;
}

FlatDiagram FlatDiagram::from_pairs(Colour c, const std::vector<std::pair<int, int>>& pairs) {
  FlatDiagram d;
  d.colour = c;
  d.partner.assign(static_cast<std::size_t>(2 * c.k), 0);
  for (auto [a, b] : pairs) {
    if (a < 1 || b < 1 || a > 2 * c.k || b > 2 * c.k) throw ValidationError("chord endpoint out of range");
    d.partner[static_cast<std::size_t>(a - 1)] = b;
    d.partner[static_cast<std::size_t>(b - 1)] = a;
  }
  return d;
}

bool FlatDiagram::is_canonical() const {
  return std::all_of(labels.begin(), labels.end(), [](const auto& kv) { return kv.second.size() == 1; });
}

namespace {

void check_matching(const FlatDiagram& d) {
  const int m = 2 * d.k();
  if (d.k() < 0) throw ValidationError("negative k");
  if (static_cast<int>(d.partner.size()) != m) throw ValidationError("matching has wrong size");
  std::vector<int> open;
  for (int p = 1; p <= m; ++p) {
    const int q = d.mate(p);
    if (q < 1 || q > m || q == p || d.mate(q) != p) throw ValidationError("not a perfect matching");
    if (q > p) {
      open.push_back(p);
    } else {
      if (open.empty() || open.back() != q) throw ValidationError("matching is crossing");
      open.pop_back();
    }
  }
}

}  // namespace

std::vector<FaceInfo> faces(const FlatDiagram& d) {
  check_matching(d);
  const int k = d.k();
  if (k == 0) return {FaceInfo{0, d.colour.eps == Sign::Minus, {0}}};
  const int m = 2 * k;
  std::vector<FaceInfo> out;
  std::vector<char> seen(static_cast<std::size_t>(m + 1), 0);
  for (int t = 1; t <= m; ++t) {
    if (seen[static_cast<std::size_t>(t)]) continue;
    FaceInfo f;
    f.address = t;
    f.black = interval_is_black(d.colour, t);
    int cur = t;
    do {
      seen[static_cast<std::size_t>(cur)] = 1;
      f.intervals.push_back(cur);
      cur = d.mate(interval_slot(k, cur + 1));
    } while (cur != t);
    std::sort(f.intervals.begin(), f.intervals.end());
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<int> interval_faces(const FlatDiagram& d) {
  const auto fs = faces(d);
  std::vector<int> out(static_cast<std::size_t>(std::max(1, 2 * d.k() + 1)), 0);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (int t : fs[i].intervals) out[static_cast<std::size_t>(t)] = static_cast<int>(i);
  }
  return out;
}

void validate(const FlatDiagram& d, int n) {
  const auto fs = faces(d);
  for (const auto& [address, bag] : d.labels) {
    auto it = std::find_if(fs.begin(), fs.end(), [a = address](const FaceInfo& f) { return f.address == a; });
    if (it == fs.end()) throw ValidationError("label at " + std::to_string(address) + " is not a face address");
    if (bag.empty()) throw ValidationError("empty label bag at " + std::to_string(address));
    if (!it->black) throw ValidationError("label on white face " + std::to_string(address));
    if (!std::is_sorted(bag.begin(), bag.end())) throw ValidationError("label bag not sorted");
    for (Label l : bag) {
      if (l < 1 || (n > 0 && l > n)) throw ValidationError("label " + std::to_string(l) + " out of range");
    }
  }
}

// ---------------------------------------------------------------------------

ClosedDiagram to_closed(const Tangle& t) {
  if (t.flat.k() != 0) throw ArityError("to_closed: diagram has boundary points");
  ClosedDiagram c;
  c.eps = t.flat.colour.eps;
  if (auto it = t.flat.labels.find(0); it != t.flat.labels.end()) c.external = it->second;
  if (auto it = t.loops.find(0); it != t.loops.end()) c.loops = it->second;
  return c;
}

Tangle to_tangle(const ClosedDiagram& c) {
  Tangle t = Tangle::of(FlatDiagram::empty(c.eps));
  if (!c.external.empty()) t.flat.labels[0] = c.external;
  if (!c.loops.empty()) t.loops[0] = c.loops;
  return t;
}

ClosedDiagram merge_closed(const ClosedDiagram& outer, const ClosedDiagram& inner) {
  if (outer.eps != inner.eps) throw ArityError("merge_closed: colour mismatch");
  ClosedDiagram out = outer;
  merge_labels(out.external, inner.external);
  out.loops.insert(out.loops.end(), inner.loops.begin(), inner.loops.end());
  return out;
}

ClosedDiagram wrap_closed(const ClosedDiagram& d, const LabelBag& inner_labels, const LabelBag& outer_labels) {
  ClosedDiagram out;
  out.eps = flip(d.eps);
  out.external = outer_labels;
  std::sort(out.external.begin(), out.external.end());
  Loop l;
  l.labels = d.external;
  LabelBag extra = inner_labels;
  std::sort(extra.begin(), extra.end());
  merge_labels(l.labels, extra);
  l.children = d.loops;
  out.loops.push_back(std::move(l));
  return out;
}

// ---------------------------------------------------------------------------
// Wirings

namespace {

Port in_port(int piece, int index) { return Port{piece, index}; }
Port out_port(int index) { return Port{Port::kOut, index}; }

}  // namespace

Wiring stack_wiring(Colour c) {
  Wiring w;
  w.out = c;
  w.inputs = {c, c};
  const int k = c.k;
  if (k == 0) {
    w.region({out_port(0), in_port(0, 0), in_port(1, 0)});
    return w;
  }
  const int m = 2 * k;
  for (int t = 1; t <= k; ++t) w.connect(out_port(t), in_port(0, t));
  for (int t = k + 1; t <= m; ++t) {
    w.connect(out_port(t), in_port(1, t));
    w.connect(in_port(0, t), in_port(1, m + 1 - t));
  }
  for (int t = 1; t < k; ++t) w.region({out_port(t), in_port(0, t)});
  w.region({out_port(k), in_port(0, k), in_port(1, k)});
  for (int t = k + 1; t < m; ++t) {
    w.region({out_port(t), in_port(1, t)});
    w.region({in_port(0, t), in_port(1, m - t)});
  }
  w.region({out_port(m), in_port(0, m), in_port(1, m)});
  return w;
}

Wiring cap_right_wiring(Colour c) {
  if (c.k < 1) throw ArityError("cap_right needs k >= 1");
  Wiring w;
  const int k = c.k;
  w.out = Colour{k - 1, c.eps};
  w.inputs = {c};
  w.connect(in_port(0, k), in_port(0, k + 1));
  for (int t = 1; t <= k - 1; ++t) w.connect(out_port(t), in_port(0, t));
  for (int t = k; t <= 2 * k - 2; ++t) w.connect(out_port(t), in_port(0, t + 2));
  w.region({in_port(0, k)});
  if (k == 1) {
    w.region({out_port(0), in_port(0, 2)});
    return w;
  }
  for (int t = 1; t <= k - 2; ++t) w.region({out_port(t), in_port(0, t)});
  w.region({out_port(k - 1), in_port(0, k - 1), in_port(0, k + 1)});
  for (int t = k; t <= 2 * k - 2; ++t) w.region({out_port(t), in_port(0, t + 2)});
  return w;
}

Wiring cap_left_wiring(Colour c) {
  if (c.k < 1) throw ArityError("cap_left needs k >= 1");
  Wiring w;
  const int k = c.k;
  const int m = 2 * k;
  w.out = Colour{k - 1, flip(c.eps)};
  w.inputs = {c};
  w.connect(in_port(0, 1), in_port(0, m));
  for (int t = 1; t <= m - 2; ++t) w.connect(out_port(t), in_port(0, t + 1));
  w.region({in_port(0, m)});
  if (k == 1) {
    w.region({out_port(0), in_port(0, 1)});
    return w;
  }
  for (int t = 1; t <= m - 3; ++t) w.region({out_port(t), in_port(0, t + 1)});
  w.region({out_port(m - 2), in_port(0, 1), in_port(0, m - 1)});
  return w;
}

Wiring add_string_right_wiring(Colour c) {
  Wiring w;
  const int k = c.k;
  const int m = 2 * k;
  w.out = Colour{k + 1, c.eps};
  w.inputs = {c};
  w.connect(out_port(k + 1), out_port(k + 2));
  for (int t = 1; t <= k; ++t) w.connect(out_port(t), in_port(0, t));
  for (int t = k + 3; t <= m + 2; ++t) w.connect(out_port(t), in_port(0, t - 2));
  w.region({out_port(k + 1)});
  if (k == 0) {
    w.region({out_port(2), in_port(0, 0)});
    return w;
  }
  for (int t = 1; t <= k - 1; ++t) w.region({out_port(t), in_port(0, t)});
  w.region({out_port(k), out_port(k + 2), in_port(0, k)});
  for (int t = k + 3; t <= m + 2; ++t) w.region({out_port(t), in_port(0, t - 2)});
  return w;
}

Wiring rotate_wiring(Colour c) {
  if (c.k < 1) throw ArityError("rotate needs k >= 1");
  Wiring w;
  const int k = c.k;
  const int m = 2 * k;
  w.out = Colour{k, flip(c.eps)};
  w.inputs = {c};
  for (int j = 1; j <= m; ++j) {
    w.connect(out_port(j), in_port(0, interval_slot(k, j + 1)));
    w.region({out_port(j), in_port(0, interval_slot(k, j + 1))});
  }
  return w;
}

Wiring trace_wiring(Colour c) {
  Wiring w;
  const int k = c.k;
  const int m = 2 * k;
  w.out = Colour{0, c.eps};
  w.inputs = {c};
  if (k == 0) {
    w.region({out_port(0), in_port(0, 0)});
    return w;
  }
  for (int j = 1; j <= k; ++j) w.connect(in_port(0, j), in_port(0, m + 1 - j));
  w.region({in_port(0, k)});
  for (int j = 1; j < k; ++j) w.region({in_port(0, j), in_port(0, m - j)});
  w.region({out_port(0), in_port(0, m)});
  return w;
}

// ---------------------------------------------------------------------------
// Gluing

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int size) : parent(static_cast<std::size_t>(size)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

struct PieceInfo {
  const Tangle* tangle;
  std::vector<FaceInfo> faces;
  std::vector<int> slot_face;
  int point_offset = 0;
  int face_offset = 0;
};

}  // namespace

Tangle glue(const Wiring& w, const std::vector<const Tangle*>& inputs) {
  if (inputs.size() != w.inputs.size()) throw ArityError("glue: wrong number of inputs");
  const int out_points = 2 * w.out.k;

  std::vector<PieceInfo> pieces(inputs.size());
  int total_points = out_points;
  int total_faces = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i]->flat.colour != w.inputs[i]) {
      throw ArityError("glue: input colour " + to_string(inputs[i]->flat.colour) + " where " +
                       to_string(w.inputs[i]) + " expected");
    }
    auto& p = pieces[i];
    p.tangle = inputs[i];
    p.faces = faces(inputs[i]->flat);
    p.slot_face.assign(static_cast<std::size_t>(std::max(1, 2 * w.inputs[i].k + 1)), 0);
    for (std::size_t f = 0; f < p.faces.size(); ++f) {
      for (int t : p.faces[f].intervals) p.slot_face[static_cast<std::size_t>(t)] = static_cast<int>(f);
    }
    p.point_offset = total_points;
    p.face_offset = total_faces;
    total_points += 2 * w.inputs[i].k;
    total_faces += static_cast<int>(p.faces.size());
  }
  const int region_offset = total_faces;
  const int node_count = total_faces + static_cast<int>(w.regions.size());

  auto port_id = [&](const Port& p) {
    return p.piece == Port::kOut ? p.index - 1 : pieces[static_cast<std::size_t>(p.piece)].point_offset + p.index - 1;
  };
  auto slot_black = [&](const Port& p) {
    return p.piece == Port::kOut ? interval_is_black(w.out, p.index)
                                 : interval_is_black(w.inputs[static_cast<std::size_t>(p.piece)], p.index);
  };

  // strands
  std::vector<int> wire(static_cast<std::size_t>(total_points), -1);
  for (const auto& [a, b] : w.strands) {
    const int ia = port_id(a);
    const int ib = port_id(b);
    wire[static_cast<std::size_t>(ia)] = ib;
    wire[static_cast<std::size_t>(ib)] = ia;
  }
  if (std::find(wire.begin(), wire.end(), -1) != wire.end()) throw std::logic_error("glue: unwired point");

  // regions
  UnionFind uf(node_count);
  std::vector<char> black(static_cast<std::size_t>(node_count), 0);
  for (const auto& p : pieces) {
    for (std::size_t f = 0; f < p.faces.size(); ++f) {
      black[static_cast<std::size_t>(p.face_offset) + f] = p.faces[f].black ? 1 : 0;
    }
  }
  std::vector<int> out_slot_region(static_cast<std::size_t>(std::max(1, out_points + 1)), -1);
  for (std::size_t g = 0; g < w.regions.size(); ++g) {
    const auto& members = w.regions[g];
    const int node = region_offset + static_cast<int>(g);
    const bool is_black = slot_black(members.front());
    black[static_cast<std::size_t>(node)] = is_black ? 1 : 0;
    for (const auto& m : members) {
      if (slot_black(m) != is_black) throw std::logic_error("glue: inconsistent shading in wiring");
      if (m.piece == Port::kOut) {
        out_slot_region[static_cast<std::size_t>(m.index)] = node;
      } else {
        const auto& p = pieces[static_cast<std::size_t>(m.piece)];
        uf.unite(p.face_offset + p.slot_face[static_cast<std::size_t>(m.index)], node);
      }
    }
  }

  // strands through the composite: boundary paths and closed loops
  Tangle out;
  out.flat.colour = w.out;
  out.flat.partner.assign(static_cast<std::size_t>(out_points), 0);
  std::vector<char> seen(static_cast<std::size_t>(total_points), 0);
  auto chord = [&](int id) {
    for (const auto& p : pieces) {
      const int local = id - p.point_offset;
      if (local >= 0 && local < 2 * p.tangle->flat.k()) return p.point_offset + p.tangle->flat.mate(local + 1) - 1;
    }
    throw std::logic_error("glue: chord of output point");
  };
  for (int o = 0; o < out_points; ++o) {
    if (seen[static_cast<std::size_t>(o)]) continue;
    seen[static_cast<std::size_t>(o)] = 1;
    int next = wire[static_cast<std::size_t>(o)];
    while (next >= out_points) {
      seen[static_cast<std::size_t>(next)] = 1;
      const int c = chord(next);
      seen[static_cast<std::size_t>(c)] = 1;
      next = wire[static_cast<std::size_t>(c)];
    }
    seen[static_cast<std::size_t>(next)] = 1;
    out.flat.partner[static_cast<std::size_t>(o)] = next + 1;
    out.flat.partner[static_cast<std::size_t>(next)] = o + 1;
  }

  struct NewLoop {
    int side_a;
    int side_b;
  };
  std::vector<NewLoop> new_loops;
  for (int start = out_points; start < total_points; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    // one chord of the cycle fixes the two regions it separates
    std::size_t piece = 0;
    while (!(start >= pieces[piece].point_offset &&
             start < pieces[piece].point_offset + 2 * pieces[piece].tangle->flat.k())) {
      ++piece;
    }
    const auto& p = pieces[piece];
    int a = start - p.point_offset + 1;
    int b = p.tangle->flat.mate(a);
    if (a > b) std::swap(a, b);
    const int k_in = p.tangle->flat.k();
    new_loops.push_back({uf.find(p.face_offset + p.slot_face[static_cast<std::size_t>(interval_slot(k_in, a))]),
                         uf.find(p.face_offset + p.slot_face[static_cast<std::size_t>(interval_slot(k_in, b))])});
    int cur = start;
    do {
      seen[static_cast<std::size_t>(cur)] = 1;
      const int c = chord(cur);
      seen[static_cast<std::size_t>(c)] = 1;
      cur = wire[static_cast<std::size_t>(c)];
    } while (cur != start);
  }

  // labels and floating loops collected per region
  std::map<int, LabelBag> bags;
  std::map<int, std::vector<Loop>> floating;
  for (const auto& p : pieces) {
    for (const auto& [address, bag] : p.tangle->flat.labels) {
      const int f = p.slot_face[static_cast<std::size_t>(address)];
      merge_labels(bags[uf.find(p.face_offset + f)], bag);
    }
    for (const auto& [address, forest] : p.tangle->loops) {
      const int f = p.slot_face[static_cast<std::size_t>(address)];
      auto& dst = floating[uf.find(p.face_offset + f)];
      dst.insert(dst.end(), forest.begin(), forest.end());
    }
  }

  // the regions and new loops form a tree rooted at the boundary regions
  std::map<int, std::vector<int>> incident;
  for (std::size_t l = 0; l < new_loops.size(); ++l) {
    if (new_loops[l].side_a == new_loops[l].side_b) throw std::logic_error("glue: loop with one region on both sides");
    incident[new_loops[l].side_a].push_back(static_cast<int>(l));
    incident[new_loops[l].side_b].push_back(static_cast<int>(l));
  }
  std::map<int, int> depth;
  std::vector<int> queue;
  const auto out_faces = faces(out.flat);
  std::vector<int> out_face_root;
  for (const auto& f : out_faces) {
    const int root = uf.find(out_slot_region[static_cast<std::size_t>(f.intervals.front())]);
    for (int t : f.intervals) {
      if (uf.find(out_slot_region[static_cast<std::size_t>(t)]) != root) {
        throw std::logic_error("glue: output face split across regions");
      }
    }
    if (depth.count(root) != 0) throw std::logic_error("glue: output faces share a region");
    depth[root] = 0;
    queue.push_back(root);
    out_face_root.push_back(root);
  }
  std::vector<int> inner_side(new_loops.size(), -1);
  std::map<int, std::vector<int>> children;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int r = queue[qi];
    for (int l : incident[r]) {
      const auto& nl = new_loops[static_cast<std::size_t>(l)];
      const int other = nl.side_a == r ? nl.side_b : nl.side_a;
      if (depth.count(other) != 0) continue;
      depth[other] = depth[r] + 1;
      inner_side[static_cast<std::size_t>(l)] = other;
      children[r].push_back(l);
      queue.push_back(other);
    }
  }
  if (std::find(inner_side.begin(), inner_side.end(), -1) != inner_side.end()) {
    throw std::logic_error("glue: loop not reachable from the boundary");
  }

  std::function<std::vector<Loop>(int)> forest_of = [&](int region) {
    std::vector<Loop> forest;
    if (auto it = floating.find(region); it != floating.end()) forest = it->second;
    for (int l : children[region]) {
      const int inner = inner_side[static_cast<std::size_t>(l)];
      Loop loop;
      if (auto it = bags.find(inner); it != bags.end()) loop.labels = it->second;
      loop.children = forest_of(inner);
      forest.push_back(std::move(loop));
    }
    return forest;
  };

  for (std::size_t f = 0; f < out_faces.size(); ++f) {
    const int root = out_face_root[f];
    if (auto it = bags.find(root); it != bags.end() && !it->second.empty()) {
      if (!out_faces[f].black) throw std::logic_error("glue: labels reached a white face");
      out.flat.labels[out_faces[f].address] = it->second;
    }
    auto forest = forest_of(root);
    if (!forest.empty()) out.loops[out_faces[f].address] = std::move(forest);
  }
  return out;
}

FlatDiagram reflect(const FlatDiagram& d) {
  const int k = d.k();
  if (k == 0) return d;
  const int m = 2 * k;
  FlatDiagram out;
  out.colour = d.colour;
  out.partner.assign(static_cast<std::size_t>(m), 0);
  for (int t = 1; t <= m; ++t) out.partner[static_cast<std::size_t>(m - t)] = m + 1 - d.mate(t);
  if (d.labels.empty()) return out;
  for (const auto& f : faces(d)) {
    auto it = d.labels.find(f.address);
    if (it == d.labels.end()) continue;
    int address = m;
    for (int t : f.intervals) address = std::min(address, t == m ? m : m - t);
    out.labels[address] = it->second;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Loop resolution

namespace {

struct LoopFactors {
  Scalar empty;     // sqrt n
  Scalar labelled;  // 1 / sqrt n
  explicit LoopFactors(int n) : empty(Scalar::sqrtn(n)), labelled(Scalar::sqrtn(n).inverse()) {}
};

// Multiplies in the loop factors innermost first; false on a label conflict.
bool fold_forest(const std::vector<Loop>& forest, const LoopFactors& f, Scalar& acc) {
  for (const auto& loop : forest) {
    if (!fold_forest(loop.children, f, acc)) return false;
    if (conflicting(loop.labels)) return false;
    acc *= loop.labels.empty() ? f.empty : f.labelled;
  }
  return true;
}

}  // namespace

std::optional<Resolved> resolve(const Tangle& t, int n) {
  Resolved r{t.flat, Scalar(1)};
  for (auto& [address, bag] : r.diagram.labels) {
    if (conflicting(bag)) return std::nullopt;
    bag.resize(1);
  }
  if (t.loops.empty()) return r;
  const LoopFactors factors(n);
  for (const auto& [address, forest] : t.loops) {
    if (!fold_forest(forest, factors, r.coeff)) return std::nullopt;
  }
  return r;
}

ClosedResolution resolve_loops(const ClosedDiagram& d, int n, std::mt19937_64* order) {
  ClosedResolution res;
  res.coeff = 1;
  if (conflicting(d.external)) {
    res.zero = true;
    res.coeff = 0;
    return res;
  }
  if (!d.external.empty()) res.external_label = d.external.front();

  struct Node {
    int parent;
    const LabelBag* labels;
    int live_children = 0;
  };
  std::vector<Node> nodes;
  std::function<void(const std::vector<Loop>&, int)> flatten = [&](const std::vector<Loop>& forest, int parent) {
    for (const auto& l : forest) {
      const int id = static_cast<int>(nodes.size());
      nodes.push_back({parent, &l.labels, static_cast<int>(l.children.size())});
      flatten(l.children, id);
    }
  };
  flatten(d.loops, -1);

  std::vector<int> leaves;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].live_children == 0) leaves.push_back(static_cast<int>(i));
  }
  const Scalar root = Scalar::sqrtn(n);
  const Scalar inv_root = root.inverse();
  while (!leaves.empty()) {
    std::size_t pick = 0;
    if (order != nullptr) pick = std::uniform_int_distribution<std::size_t>(0, leaves.size() - 1)(*order);
    const int id = leaves[pick];
    leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(pick));
    const Node& node = nodes[static_cast<std::size_t>(id)];
    if (conflicting(*node.labels)) {
      res.zero = true;
      res.coeff = 0;
      res.external_label.reset();
      return res;
    }
    res.coeff *= node.labels->empty() ? root : inv_root;
    if (node.parent >= 0 && --nodes[static_cast<std::size_t>(node.parent)].live_children == 0) {
      leaves.push_back(node.parent);
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Elements

Element::Element(int n, Colour c) : n_(n), colour_(c) {
  if (n <= 0) throw ConfigError("Element: n must be positive");
}

Element Element::identity(int n, Colour c) {
  Element e(n, c);
  e.terms_.emplace(FlatDiagram::identity(c), Scalar(1));
  return e;
}

Element Element::from_diagram(int n, const FlatDiagram& d, const Scalar& coeff) { return canonicalize(n, d, coeff); }

Element Element::generator(int n, Label i) {
  FlatDiagram d = FlatDiagram::empty(Sign::Minus);
  d.labels[0] = {i};
  return canonicalize(n, d, 1);
}

void Element::add_term(const FlatDiagram& d, const Scalar& coeff) {
  if (d.colour != colour_) throw ArityError("add_term: colour mismatch");
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(d, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

namespace {

void check_same(const Element& x, const Element& y, const char* op) {
  if (x.n() != y.n()) throw ConfigError(std::string(op) + ": elements over different n");
  if (x.colour() != y.colour()) {
    throw ArityError(std::string(op) + ": colour " + to_string(x.colour()) + " vs " + to_string(y.colour()));
  }
}

}  // namespace

Element& Element::operator+=(const Element& rhs) {
  check_same(*this, rhs, "add");
  for (const auto& [d, c] : rhs.terms_) add_term(d, c);
  return *this;
}

Element& Element::operator-=(const Element& rhs) {
  check_same(*this, rhs, "subtract");
  for (const auto& [d, c] : rhs.terms_) add_term(d, -c);
  return *this;
}

Element& Element::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [d, c] : terms_) c *= s;
  return *this;
}

Element canonicalize(int n, const FlatDiagram& d, const Scalar& coeff) {
  validate(d, n);
  Element out(n, d.colour);
  FlatDiagram canon = d;
  for (auto& [address, bag] : canon.labels) {
    if (conflicting(bag)) return out;
    bag.resize(1);
  }
  out.add_term(canon, coeff);
  return out;
}

Element apply_wiring(const Wiring& w, int n, const std::vector<const Element*>& inputs) {
  if (inputs.size() != w.inputs.size()) throw ArityError("apply_wiring: wrong number of inputs");
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i]->n() != n) throw ConfigError("apply_wiring: elements over different n");
    if (inputs[i]->colour() != w.inputs[i]) {
      throw ArityError("operand colour " + to_string(inputs[i]->colour()) + " where " + to_string(w.inputs[i]) +
                       " expected");
    }
  }
  Element out(n, w.out);
  std::vector<Tangle> current(inputs.size());
  std::vector<const Tangle*> ptrs(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) ptrs[i] = &current[i];
  std::function<void(std::size_t, const Scalar&)> rec = [&](std::size_t i, const Scalar& coeff) {
    if (i == inputs.size()) {
      auto r = resolve(glue(w, ptrs), n);
      if (r) out.add_term(r->diagram, coeff * r->coeff);
      return;
    }
    for (const auto& [d, c] : inputs[i]->terms()) {
      current[i] = Tangle::of(d);
      rec(i + 1, coeff * c);
    }
  };
  rec(0, Scalar(1));
  return out;
}

Element stack(const Element& x, const Element& y) {
  check_same(x, y, "stack");
  return apply_wiring(stack_wiring(x.colour()), x.n(), {&x, &y});
}

Element involute(const Element& x) {
  Element out(x.n(), x.colour());
  for (const auto& [d, c] : x.terms()) out.add_term(reflect(d), c);
  return out;
}

Element cap_right(const Element& x) { return apply_wiring(cap_right_wiring(x.colour()), x.n(), {&x}); }
Element cap_left(const Element& x) { return apply_wiring(cap_left_wiring(x.colour()), x.n(), {&x}); }
Element add_string_right(const Element& x) {
  return apply_wiring(add_string_right_wiring(x.colour()), x.n(), {&x});
}
Element rotate_one(const Element& x) { return apply_wiring(rotate_wiring(x.colour()), x.n(), {&x}); }

std::vector<std::pair<ClosedDiagram, Scalar>> trace_close(const Element& x) {
  const Wiring w = trace_wiring(x.colour());
  std::vector<std::pair<ClosedDiagram, Scalar>> out;
  out.reserve(x.size());
  for (const auto& [d, c] : x.terms()) {
    const Tangle t = Tangle::of(d);
    out.emplace_back(to_closed(glue(w, {&t})), c);
  }
  return out;
}

Element expand_units(const Element& x) {
  Element out(x.n(), x.colour());
  for (const auto& [d, c] : x.terms()) {
    std::vector<int> open;
    for (const auto& f : faces(d)) {
      if (f.black && d.labels.count(f.address) == 0) open.push_back(f.address);
    }
    FlatDiagram cur = d;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == open.size()) {
        out.add_term(cur, c);
        return;
      }
      for (Label l = 1; l <= x.n(); ++l) {
        cur.labels[open[i]] = {l};
        rec(i + 1);
      }
      cur.labels.erase(open[i]);
    };
    rec(0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text formats

std::string to_text(const FlatDiagram& d) {
  std::ostringstream os;
  os << "colour " << d.k() << ' ' << sign_char(d.colour.eps) << "\nmatch:";
  for (int t = 1; t <= 2 * d.k(); ++t) {
    if (t < d.mate(t)) os << " (" << t << ',' << d.mate(t) << ')';
  }
  os << "\nlabels:";
  for (const auto& [address, bag] : d.labels) {
    for (Label l : bag) os << ' ' << address << '=' << l;
  }
  os << '\n';
  return os.str();
}

namespace {

int parse_int(const std::string& s, const std::string& what) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    throw ValidationError("diagram text: bad " + what + " '" + s + "'");
  }
  return std::stoi(s);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

}  // namespace

FlatDiagram parse_diagram(const std::string& text) {
  std::istringstream is(text);
  std::string l1, l2, l3;
  if (!std::getline(is, l1) || !std::getline(is, l2) || !std::getline(is, l3)) {
    throw ValidationError("diagram text: expected three lines");
  }
  const auto head = split_ws(l1);
  if (head.size() != 3 || head[0] != "colour" || (head[2] != "+" && head[2] != "-")) {
    throw ValidationError("diagram text: bad colour line '" + l1 + "'");
  }
  FlatDiagram d;
  d.colour = Colour{parse_int(head[1], "k"), head[2] == "+" ? Sign::Plus : Sign::Minus};

  const auto match = split_ws(l2);
  if (match.empty() || match[0] != "match:") throw ValidationError("diagram text: bad match line '" + l2 + "'");
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 1; i < match.size(); ++i) {
    const auto& tok = match[i];
    const auto comma = tok.find(',');
    if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')' || comma == std::string::npos) {
      throw ValidationError("diagram text: bad chord '" + tok + "'");
    }
    pairs.emplace_back(parse_int(tok.substr(1, comma - 1), "point"),
                       parse_int(tok.substr(comma + 1, tok.size() - comma - 2), "point"));
  }
  if (static_cast<int>(pairs.size()) != d.k()) throw ValidationError("diagram text: wrong number of chords");
  d = FlatDiagram::from_pairs(d.colour, pairs);

  const auto labels = split_ws(l3);
  if (labels.empty() || labels[0] != "labels:") throw ValidationError("diagram text: bad labels line '" + l3 + "'");
  for (std::size_t i = 1; i < labels.size(); ++i) {
    const auto& tok = labels[i];
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw ValidationError("diagram text: bad label '" + tok + "'");
    insert_label(d.labels[parse_int(tok.substr(0, eq), "address")], parse_int(tok.substr(eq + 1), "label"));
  }
  validate(d);
  return d;
}

std::string to_text(const Element& x) {
  std::ostringstream os;
  os << "element " << x.colour().k << ' ' << sign_char(x.colour().eps) << " terms " << x.size() << '\n';
  for (const auto& [d, c] : x.terms()) os << "coeff " << c << '\n' << to_text(d);
  return os.str();
}

namespace {

void write_bag(std::ostream& os, const LabelBag& bag) {
  os << '{';
  for (std::size_t i = 0; i < bag.size(); ++i) os << (i ? "," : "") << bag[i];
  os << '}';
}

void write_forest(std::ostream& os, const std::vector<Loop>& forest) {
  for (const auto& l : forest) {
    os << " [";
    write_bag(os, l.labels);
    write_forest(os, l.children);
    os << ']';
  }
}

}  // namespace

std::string to_text(const ClosedDiagram& d) {
  std::ostringstream os;
  os << "closed " << sign_char(d.eps) << ' ';
  write_bag(os, d.external);
  write_forest(os, d.loops);
  return os.str();
}

}  // namespace spinpa
