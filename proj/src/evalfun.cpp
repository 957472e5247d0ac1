#include "spinpa/evalfun.hpp"

namespace spinpa {

namespace {

void count_forest(const std::vector<Loop>& forest, EvalCounts& out) {
  for (const auto& l : forest) {
    if (conflicting(l.labels)) out.consistent = false;
    if (l.labels.empty()) {
      ++out.empty_regions;
    } else {
      ++out.labelled_regions;
    }
    count_forest(l.children, out);
  }
}

}  // namespace

EvalCounts eval_counts(const ClosedDiagram& d) {
  EvalCounts out;
  if (conflicting(d.external)) out.consistent = false;
  if (!d.external.empty()) out.external_label = d.external.front();
  count_forest(d.loops, out);
  return out;
}

Scalar lambda_plus(const ClosedDiagram& d, int n) {
  if (d.eps != Sign::Plus) throw ArityError("lambda_plus needs a (0,+) diagram");
  const auto c = eval_counts(d);
  if (!c.consistent) return Scalar(0);
  return sc_sqrtn_pow(n, c.empty_regions - c.labelled_regions);
}

Scalar lambda_minus(const ClosedDiagram& d, Label i, int n) {
  if (d.eps != Sign::Minus) throw ArityError("lambda_minus needs a (0,-) diagram");
  const auto c = eval_counts(d);
  if (!c.consistent) return Scalar(0);
  if (c.external_label && *c.external_label != i) return Scalar(0);
  return sc_sqrtn_pow(n, c.empty_regions - c.labelled_regions);
}

std::vector<Scalar> lambda_values(const ClosedDiagram& d, int n) {
  if (d.eps == Sign::Plus) return {lambda_plus(d, n)};
  return project_0minus(d, n);
}

std::vector<Scalar> project_0minus(const ClosedDiagram& d, int n) {
  if (d.eps != Sign::Minus) throw ArityError("project_0minus needs a (0,-) diagram");
  const auto c = eval_counts(d);
  std::vector<Scalar> out(static_cast<std::size_t>(n), Scalar(0));
  if (!c.consistent) return out;
  const Scalar v = sc_sqrtn_pow(n, c.empty_regions - c.labelled_regions);
  for (Label i = 1; i <= n; ++i) {
    if (!c.external_label || *c.external_label == i) out[static_cast<std::size_t>(i - 1)] = v;
  }
  return out;
}

Scalar tau(const Element& x) {
  const int n = x.n();
  Scalar total(0);
  for (const auto& [closed, coeff] : trace_close(x)) {
    if (closed.eps == Sign::Plus) {
      total += coeff * lambda_plus(closed, n);
    } else {
      Scalar sum(0);
      for (const auto& v : project_0minus(closed, n)) sum += v;
      total += coeff * sum * Scalar(Rational(1, n));
    }
  }
  return total * sc_sqrtn_pow(n, -x.colour().k);
}

Scalar pairing(const Element& x, const Element& y) { return tau(stack(involute(y), x)); }

}  // namespace spinpa
