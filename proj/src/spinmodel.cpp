#include "spinpa/spinmodel.hpp"

#include <functional>
#include <sstream>

#include "spinpa/evalfun.hpp"

namespace spinpa {

namespace {

constexpr int kCentre = 0;

void push_leaf_then_centre(std::vector<int>& walk, Label l) {
  walk.push_back(l);
  walk.push_back(kCentre);
}

}  // namespace

GraphLoop loop_encode(const BasisIndex& idx) {
  GraphLoop loop;
  auto& w = loop.vertices;
  switch (idx.family) {
    case Family::Point:
      w = {idx.p};
      return loop;
    case Family::EvenPlus:
    case Family::OddPlus:
      w.push_back(kCentre);
      for (Label l : idx.upper) push_leaf_then_centre(w, l);
      if (idx.family == Family::OddPlus) push_leaf_then_centre(w, idx.q);
      for (auto it = idx.lower.rbegin(); it != idx.lower.rend(); ++it) push_leaf_then_centre(w, *it);
      return loop;
    case Family::EvenMinus:
    case Family::OddMinus:
      w.push_back(idx.p);
      w.push_back(kCentre);
      for (Label l : idx.upper) push_leaf_then_centre(w, l);
      if (idx.family == Family::EvenMinus) push_leaf_then_centre(w, idx.q);
      for (auto it = idx.lower.rbegin(); it != idx.lower.rend(); ++it) push_leaf_then_centre(w, *it);
      w.push_back(idx.p);
      return loop;
  }
  throw std::logic_error("loop_encode: bad family");
}

BasisIndex loop_decode(const GraphLoop& loop, int n) {
  const auto& w = loop.vertices;
  if (w.empty() || w.size() % 2 == 0) throw ValidationError("loop: a closed walk has odd vertex count");
  if (w.front() != w.back()) throw ValidationError("loop: walk is not closed");
  const bool plus = w.front() == kCentre;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool centre_here = (i % 2 == 0) == plus;
    if (centre_here ? w[i] != kCentre : (w[i] < 1 || w[i] > n)) {
      throw ValidationError("loop: vertex " + std::to_string(i) + " breaks the alternation w, v_i");
    }
  }
  const int k = loop.length() / 2;
  BasisIndex idx;
  idx.family = family_for(Colour{k, plus ? Sign::Plus : Sign::Minus});
  std::vector<Label> leaves;
  for (std::size_t i = plus ? 1 : 0; i < w.size(); i += 2) leaves.push_back(w[i]);
  if (!plus) {
    idx.p = leaves.front();
    leaves.erase(leaves.begin());
    if (!leaves.empty()) leaves.pop_back();
  }
  const std::size_t m = leaves.size() / 2;
  idx.upper.assign(leaves.begin(), leaves.begin() + static_cast<std::ptrdiff_t>(m));
  idx.lower.assign(leaves.rbegin(), leaves.rbegin() + static_cast<std::ptrdiff_t>(m));
  if (leaves.size() % 2 == 1) idx.q = leaves[m];
  validate(idx, n);
  return idx;
}

std::string to_text(const GraphLoop& loop) {
  std::string out;
  for (std::size_t i = 0; i < loop.vertices.size(); ++i) {
    if (i) out += ' ';
    out += loop.vertices[i] == kCentre ? std::string("w") : "v" + std::to_string(loop.vertices[i]);
  }
  return out;
}

GraphLoop parse_loop(const std::string& text) {
  std::istringstream is(text);
  GraphLoop loop;
  for (std::string tok; is >> tok;) {
    if (tok == "w") {
      loop.vertices.push_back(kCentre);
    } else if (tok.size() > 1 && tok[0] == 'v' && tok.find_first_not_of("0123456789", 1) == std::string::npos) {
      loop.vertices.push_back(std::stoi(tok.substr(1)));
      if (loop.vertices.back() == 0) throw ValidationError("loop: leaves are numbered from 1");
    } else {
      throw ValidationError("loop: bad vertex '" + tok + "'");
    }
  }
  if (loop.vertices.empty()) throw ValidationError("loop: empty walk");
  return loop;
}

std::vector<GraphLoop> enumerate_loops(int n, int k, Sign eps) {
  std::vector<GraphLoop> out;
  GraphLoop cur;
  // plain depth-first walk on the adjacency of the star
  std::function<void()> extend = [&] {
    if (cur.length() == 2 * k) {
      if (cur.vertices.back() == cur.vertices.front()) out.push_back(cur);
      return;
    }
    const int at = cur.vertices.back();
    for (int next = 0; next <= n; ++next) {
      const bool adjacent = (at == kCentre) != (next == kCentre);
      if (!adjacent) continue;
      cur.vertices.push_back(next);
      extend();
      cur.vertices.pop_back();
    }
  };
  if (eps == Sign::Plus) {
    cur.vertices = {kCentre};
    extend();
  } else {
    for (int v = 1; v <= n; ++v) {
      cur.vertices = {v};
      extend();
    }
  }
  return out;
}

ModelElement model_identity(int n, Colour c) {
  ModelElement out{n, c, {}};
  for (auto& idx : enumerate_basis(n, c.k, c.eps)) {
    if (idx.upper == idx.lower) out.coeffs.emplace(std::move(idx), Scalar(1));
  }
  return out;
}

namespace {

void check_same(const ModelElement& x, const ModelElement& y, const char* op) {
  if (x.n != y.n || x.colour != y.colour) {
    throw ArityError(std::string(op) + ": colours " + to_string(x.colour) + " and " + to_string(y.colour));
  }
}

}  // namespace

ModelElement model_mul(const ModelElement& x, const ModelElement& y) {
  check_same(x, y, "model_mul");
  return ModelElement{x.n, x.colour, convolve(x.coeffs, y.coeffs)};
}

ModelElement model_add(const ModelElement& x, const ModelElement& y) {
  check_same(x, y, "model_add");
  ModelElement out = x;
  for (const auto& [idx, c] : y.coeffs) {
    auto [it, inserted] = out.coeffs.try_emplace(idx, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) out.coeffs.erase(it);
    }
  }
  return out;
}

ModelElement model_star(const ModelElement& x) {
  ModelElement out{x.n, x.colour, {}};
  for (const auto& [idx, c] : x.coeffs) {
    BasisIndex s = idx;
    std::swap(s.upper, s.lower);
    out.coeffs.emplace(std::move(s), c);
  }
  return out;
}

Scalar model_tau(const ModelElement& x) {
  Scalar total;
  for (const auto& [idx, c] : x.coeffs) total += c * stated_trace(idx, x.n);
  return total;
}

ModelElement iso_to_model(const Element& x) { return ModelElement{x.n(), x.colour(), to_basis(x)}; }

Element iso_from_model(const ModelElement& x) { return from_basis(x.n, x.colour, x.coeffs); }

SpinFunction spin_function(int n) { return SpinFunction{Scalar::sqrtn(n), Scalar(1)}; }

std::vector<SpinCheck> spin_consistency(int n) {
  const SpinFunction mu = spin_function(n);
  std::vector<SpinCheck> out;
  auto add = [&out](std::string name, Scalar expected, Scalar actual) {
    const bool ok = expected == actual;
    out.push_back(SpinCheck{std::move(name), std::move(expected), std::move(actual), ok});
  };

  // a loop contributes mu(inside)^2 / mu(outside)^2 summed over the inside vertices
  ClosedDiagram white_loop;
  white_loop.eps = Sign::Minus;
  white_loop.loops.push_back(Loop{});
  add("white loop = mu_w^2 / mu_v^2", mu.mu_w_sq / mu.mu_v_sq, lambda_minus(white_loop, 1, n));

  for (Label i = 1; i <= n; ++i) {
    ClosedDiagram black_loop;
    black_loop.loops.push_back(Loop{{i}, {}});
    add("black loop around s(" + std::to_string(i) + ") = mu_v^2 / mu_w^2", mu.mu_v_sq / mu.mu_w_sq,
        lambda_plus(black_loop, n));
  }

  ClosedDiagram open_black;
  open_black.loops.push_back(Loop{});
  add("unlabelled black loop = n mu_v^2 / mu_w^2", Scalar(n) * mu.mu_v_sq / mu.mu_w_sq, lambda_plus(open_black, n));

  Scalar leaf_total;
  for (Label j = 1; j <= n; ++j) leaf_total += mu.mu_v_sq;
  for (Label i = 1; i <= n; ++i) {
    add("tr(s(" + std::to_string(i) + ")) = mu_v^2 / sum mu_v^2", mu.mu_v_sq / leaf_total,
        tau(Element::generator(n, i)));
  }

  // the squared spin function is an eigenvector of the adjacency matrix with eigenvalue sqrt n
  add("(A mu^2)_w = sqrt n mu_w^2", Scalar::sqrtn(n) * mu.mu_w_sq, leaf_total);
  add("(A mu^2)_v = sqrt n mu_v^2", Scalar::sqrtn(n) * mu.mu_v_sq, mu.mu_w_sq);
  return out;
}

}  // namespace spinpa
