#include <casimir/quadrature.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace casimir::quad {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;

struct Piece {
  double a, b, value, error;
};

struct ByError {
  bool operator()(const Piece& x, const Piece& y) const { return x.error < y.error; }
};

Piece apply_rule(const std::function<double(double)>& f, double a, double b, std::size_t& evals) {
  double err = 0.0;
  const double v = Rule::integrate(f, a, b, 0, 0.0, &err);
  evals += 31;
  return {a, b, v, err};
}

// Global adaptive bisection on a finite interval.
Result adaptive_finite(const std::function<double(double)>& f, double a, double b,
                       const Tolerance& tol) {
  Result res;
  if (a == b) return res;
  const std::size_t max_pieces = std::size_t{1} << std::min(tol.max_depth, 24u);

  std::priority_queue<Piece, std::vector<Piece>, ByError> heap;
  heap.push(apply_rule(f, a, b, res.evaluations));
  double total = heap.top().value;
  double total_err = heap.top().error;

  while (total_err > std::max(tol.abs, tol.rel * std::abs(total))) {
    if (heap.size() >= max_pieces) {
      res.converged = false;
      break;
    }
    Piece worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // interval exhausted at double resolution
      res.converged = false;
      break;
    }
    heap.pop();
    Piece left = apply_rule(f, worst.a, mid, res.evaluations);
    Piece right = apply_rule(f, mid, worst.b, res.evaluations);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum left to right so the result does not depend on heap history.
  std::vector<Piece> pieces;
  pieces.reserve(heap.size());
  while (!heap.empty()) {
    pieces.push_back(heap.top());
    heap.pop();
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
  res.value = 0.0;
  res.error = 0.0;
  for (const auto& p : pieces) {
    res.value += p.value;
    res.error += p.error;
  }
  if (!std::isfinite(res.value)) res.converged = false;
  return res;
}

} // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, Tolerance tol) {
  if (std::isinf(b)) {
    // [a, c] directly, then x = c/u maps [c, inf) onto (0, 1].
    const double c = a > 0.0 ? a : a + 1.0;
    Result head;
    if (c > a) head = adaptive_finite(f, a, c, tol);
    auto mapped = [&](double u) {
      if (u <= 0.0) return 0.0;
      const double x = c / u;
      const double v = f(x);
      return v == 0.0 ? 0.0 : v * c / (u * u);
    };
    Result tail = adaptive_finite(mapped, 0.0, 1.0, tol);
    tail.value += head.value;
    tail.error += head.error;
    tail.evaluations += head.evaluations;
    tail.converged = tail.converged && head.converged;
    return tail;
  }
  return adaptive_finite(f, a, b, tol);
}

Result integrate_panels(const std::function<double(double)>& f, std::span<const double> points,
                        Tolerance tol) {
  Result total;
  if (points.size() < 2) return total;
  double left = points[0];
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double right = points[i];
    if (!(right > left)) continue;
    Result r = integrate(f, left, right, tol);
    total.value += r.value;
    total.error += r.error;
    total.evaluations += r.evaluations;
    total.converged = total.converged && r.converged;
    left = right;
  }
  return total;
}

} // namespace casimir::quad
