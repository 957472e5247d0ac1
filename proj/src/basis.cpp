#include "spinpa/basis.hpp"

#include <cctype>
#include <memory>
#include <mutex>
#include <tuple>

#include "spinpa/evalfun.hpp"

namespace spinpa {

Colour colour_of(const BasisIndex& idx) {
  const int m = idx.m();
  switch (idx.family) {
    case Family::EvenPlus: return {2 * m, Sign::Plus};
    case Family::EvenMinus: return {2 * m + 2, Sign::Minus};
    case Family::OddPlus: return {2 * m + 1, Sign::Plus};
    case Family::OddMinus: return {2 * m + 1, Sign::Minus};
    case Family::Point: return {0, Sign::Minus};
  }
  throw std::logic_error("colour_of: bad family");
}

Family family_for(Colour c) {
  if (c.k == 0) return c.eps == Sign::Plus ? Family::EvenPlus : Family::Point;
  if (c.k % 2 == 0) return c.eps == Sign::Plus ? Family::EvenPlus : Family::EvenMinus;
  return c.eps == Sign::Plus ? Family::OddPlus : Family::OddMinus;
}

namespace {

int m_for(Colour c) {
  if (c.k == 0) return 0;
  if (c.k % 2 == 0) return c.eps == Sign::Plus ? c.k / 2 : (c.k - 2) / 2;
  return (c.k - 1) / 2;
}

}  // namespace

void validate(const BasisIndex& idx, int n) {
  if (idx.upper.size() != idx.lower.size()) throw ValidationError("basis index: upper and lower lengths differ");
  if (idx.family == Family::Point && idx.m() != 0) throw ValidationError("basis index: s(p) takes no tuples");
  auto check = [n](Label l) {
    if (l < 1 || l > n) throw ValidationError("basis index: label " + std::to_string(l) + " out of range");
  };
  for (Label l : idx.upper) check(l);
  for (Label l : idx.lower) check(l);
  if (idx.has_p()) check(idx.p);
  if (idx.has_q()) check(idx.q);
  if (!idx.has_p() && idx.p != 0) throw ValidationError("basis index: unexpected p");
  if (!idx.has_q() && idx.q != 0) throw ValidationError("basis index: unexpected q");
}

std::string to_text(const BasisIndex& idx) {
  if (idx.family == Family::Point) return "s(" + std::to_string(idx.p) + ")";
  auto tuple = [](const std::vector<Label>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s + "}";
  };
  std::string out = "e";
  if (idx.has_p()) out += "[" + std::to_string(idx.p) + ")";
  out += "^" + tuple(idx.upper) + "_" + tuple(idx.lower);
  if (idx.has_q()) out += "(" + std::to_string(idx.q) + "]";
  return out;
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t& pos;

  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("basis literal: " + what + " at offset " + std::to_string(pos));
  }
  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool peek(char c) {
    return pos < text.size() && text[pos] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  int integer() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected integer");
    return std::stoi(std::string(text.substr(start, pos - start)));
  }
  std::vector<Label> tuple() {
    std::vector<Label> out;
    if (!peek('{')) {
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        out.push_back(text[pos] - '0');
        ++pos;
      }
      return out;
    }
    ++pos;
    skip_ws();
    while (!peek('}')) {
      out.push_back(integer());
      skip_ws();
      if (peek(',')) ++pos;
      skip_ws();
      if (pos >= text.size()) fail("unterminated tuple");
    }
    ++pos;
    return out;
  }
};

}  // namespace

BasisIndex parse_basis_index_at(std::string_view text, std::size_t& pos) {
  Cursor c{text, pos};
  BasisIndex idx;
  if (c.peek('s')) {
    ++pos;
    c.expect('(');
    idx.family = Family::Point;
    idx.p = c.integer();
    c.skip_ws();
    c.expect(')');
    return idx;
  }
  c.expect('e');
  bool has_p = false;
  bool has_q = false;
  if (c.peek('[')) {
    ++pos;
    idx.p = c.integer();
    c.expect(')');
    has_p = true;
  }
  c.expect('^');
  idx.upper = c.tuple();
  c.expect('_');
  idx.lower = c.tuple();
  if (c.peek('(')) {
    ++pos;
    idx.q = c.integer();
    c.expect(']');
    has_q = true;
  }
  if (has_p && has_q) {
    idx.family = Family::EvenMinus;
  } else if (has_p) {
    idx.family = Family::OddMinus;
  } else if (has_q) {
    idx.family = Family::OddPlus;
  } else {
    idx.family = Family::EvenPlus;
  }
  if (idx.upper.size() != idx.lower.size()) c.fail("upper and lower tuples differ in length");
  return idx;
}

BasisIndex parse_basis_index(const std::string& text) {
  std::size_t pos = 0;
  BasisIndex idx = parse_basis_index_at(text, pos);
  if (pos != text.size()) throw ValidationError("basis literal: trailing text in '" + text + "'");
  return idx;
}

FlatDiagram basis_layout(const BasisIndex& idx) {
  const Colour c = colour_of(idx);
  const int k = c.k;
  const int M = 2 * k;
  const int m = idx.m();
  std::vector<std::pair<int, int>> chords;
  std::map<int, LabelBag> labels;
  switch (idx.family) {
    case Family::EvenPlus:
    case Family::OddPlus:
      for (int t = 1; t <= m; ++t) {
        chords.emplace_back(2 * t - 1, 2 * t);
        chords.emplace_back(M + 1 - 2 * t, M + 2 - 2 * t);
        labels[2 * t - 1] = {idx.upper[static_cast<std::size_t>(t - 1)]};
        labels[M + 1 - 2 * t] = {idx.lower[static_cast<std::size_t>(t - 1)]};
      }
      if (idx.family == Family::OddPlus) {
        chords.emplace_back(k, k + 1);
        labels[k] = {idx.q};
      }
      break;
    case Family::EvenMinus:
    case Family::OddMinus:
      chords.emplace_back(1, M);
      for (int t = 1; t <= m; ++t) {
        chords.emplace_back(2 * t, 2 * t + 1);
        chords.emplace_back(M - 2 * t, M + 1 - 2 * t);
        labels[2 * t] = {idx.upper[static_cast<std::size_t>(t - 1)]};
        labels[M - 2 * t] = {idx.lower[static_cast<std::size_t>(t - 1)]};
      }
      labels[M] = {idx.p};
      if (idx.family == Family::EvenMinus) {
        chords.emplace_back(k, k + 1);
        labels[k] = {idx.q};
      }
      break;
    case Family::Point:
      labels[0] = {idx.p};
      break;
  }
  FlatDiagram d = FlatDiagram::from_pairs(c, chords);
  d.labels = std::move(labels);
  return d;
}

Element basis_diagram(int n, const BasisIndex& idx) {
  validate(idx, n);
  return Element::from_diagram(n, basis_layout(idx), sc_sqrtn_pow(n, idx.m()));
}

std::vector<BasisIndex> enumerate_basis(int n, int k, Sign eps) {
  if (k < 0) throw ArityError("enumerate_basis: negative k");
  const Colour c{k, eps};
  BasisIndex proto;
  proto.family = family_for(c);
  const int m = m_for(c);
  const int slots = (proto.has_p() ? 1 : 0) + 2 * m + (proto.has_q() ? 1 : 0);
  std::vector<Label> digits(static_cast<std::size_t>(slots), 1);
  std::vector<BasisIndex> out;
  while (true) {
    BasisIndex idx = proto;
    std::size_t at = 0;
    if (idx.has_p()) idx.p = digits[at++];
    idx.upper.assign(digits.begin() + static_cast<std::ptrdiff_t>(at), digits.begin() + static_cast<std::ptrdiff_t>(at + m));
    at += static_cast<std::size_t>(m);
    idx.lower.assign(digits.begin() + static_cast<std::ptrdiff_t>(at), digits.begin() + static_cast<std::ptrdiff_t>(at + m));
    at += static_cast<std::size_t>(m);
    if (idx.has_q()) idx.q = digits[at];
    out.push_back(std::move(idx));
    int pos = slots - 1;
    while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == n) digits[static_cast<std::size_t>(pos--)] = 1;
    if (pos < 0) break;
    ++digits[static_cast<std::size_t>(pos)];
  }
  return out;
}

UnitProduct unit_product(const BasisIndex& a, const BasisIndex& b) {
  if (a.family != b.family || a.m() != b.m()) {
    throw ArityError("unit_product: " + to_text(a) + " and " + to_text(b) + " are in different families");
  }
  UnitProduct out{Scalar(0), std::nullopt};
  if (a.lower != b.upper) return out;
  if (a.has_p() && a.p != b.p) return out;
  if (a.has_q() && a.q != b.q) return out;
  BasisIndex c = a;
  c.lower = b.lower;
  out.coeff = 1;
  out.index = std::move(c);
  return out;
}

namespace {

struct BasisData {
  std::vector<BasisIndex> indices;
  std::vector<Element> starred;  // e* for each basis element
  std::vector<Scalar> inv_norm;  // 1 / tau(e* e)
};

std::shared_ptr<const BasisData> basis_data(int n, Colour c) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, Sign>, std::shared_ptr<const BasisData>> cache;
  const auto key = std::make_tuple(n, c.k, c.eps);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto data = std::make_shared<BasisData>();
  data->indices = enumerate_basis(n, c.k, c.eps);
  for (const auto& idx : data->indices) {
    const Element e = basis_diagram(n, idx);
    Element es = involute(e);
    const Scalar norm = tau(stack(es, e));
    if (norm.sign() <= 0) throw std::logic_error("basis element with non-positive norm: " + to_text(idx));
    data->starred.push_back(std::move(es));
    data->inv_norm.push_back(norm.inverse());
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(data)).first->second;
}

}  // namespace

Coordinates to_basis(const Element& x) {
  const auto data = basis_data(x.n(), x.colour());
  Coordinates out;
  if (x.is_zero()) return out;
  for (std::size_t i = 0; i < data->indices.size(); ++i) {
    Scalar c = tau(stack(data->starred[i], x));
    if (c.is_zero()) continue;
    out.emplace(data->indices[i], c * data->inv_norm[i]);
  }
  return out;
}

Element from_basis(int n, Colour c, const Coordinates& coords) {
  Element out(n, c);
  for (const auto& [idx, coeff] : coords) {
    if (colour_of(idx) != c) throw ArityError("from_basis: index " + to_text(idx) + " has the wrong colour");
    out += basis_diagram(n, idx) * coeff;
  }
  return out;
}

Coordinates convolve(const Coordinates& x, const Coordinates& y) {
  Coordinates out;
  for (const auto& [a, ca] : x) {
    for (const auto& [b, cb] : y) {
      auto prod = unit_product(a, b);
      if (!prod.index) continue;
      auto [it, inserted] = out.try_emplace(*prod.index, ca * cb * prod.coeff);
      if (!inserted) it->second += ca * cb * prod.coeff;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

Element jones_projection(int n, int pos, int k, Sign eps) {
  if (pos < 1 || pos > k - 1) {
    throw ArityError("jones_projection: position " + std::to_string(pos) + " outside 1.." + std::to_string(k - 1));
  }
  const Colour c{k, eps};
  FlatDiagram d = FlatDiagram::identity(c);
  const int M = 2 * k;
  auto join = [&d](int a, int b) {
    d.partner[static_cast<std::size_t>(a - 1)] = b;
    d.partner[static_cast<std::size_t>(b - 1)] = a;
  };
  join(pos, pos + 1);
  join(M - pos, M + 1 - pos);
  return Element::from_diagram(n, d, sc_sqrtn_pow(n, -1));
}

Scalar stated_trace(const BasisIndex& idx, int n) {
  if (idx.family == Family::Point) return Scalar(Rational(1, n));
  if (idx.upper != idx.lower) return Scalar(0);
  const int m = idx.m();
  int exponent = m;
  if (idx.family == Family::EvenMinus) exponent = m + 2;
  if (idx.family == Family::OddPlus || idx.family == Family::OddMinus) exponent = m + 1;
  return sc_sqrtn_pow(n, -2 * exponent);
}

}  // namespace spinpa
