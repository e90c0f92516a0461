#include <casimir/polynomial.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace casimir {

Polynomial::Polynomial(std::vector<cplx> coefficients) : coef_(std::move(coefficients)) { trim(); }

Polynomial Polynomial::monomial(cplx c, int degree) {
  std::vector<cplx> v(static_cast<std::size_t>(degree) + 1, cplx{0.0});
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coef_.empty() && coef_.back() == cplx{0.0}) coef_.pop_back();
}

cplx Polynomial::operator()(cplx x) const {
  cplx acc{0.0};
  for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coef_.size() < 2) return {};
  std::vector<cplx> d(coef_.size() - 1);
  for (std::size_t k = 1; k < coef_.size(); ++k) d[k - 1] = static_cast<double>(k) * coef_[k];
  return Polynomial(std::move(d));
}

std::vector<cplx> Polynomial::roots() const {
  const int n = degree();
  if (n < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  const cplx lead = coef_.back();
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coef_[static_cast<std::size_t>(i)] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<cplx> out(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
  std::vector<cplx> v(std::max(p.coef_.size(), q.coef_.size()), cplx{0.0});
  for (std::size_t i = 0; i < p.coef_.size(); ++i) v[i] += p.coef_[i];
  for (std::size_t i = 0; i < q.coef_.size(); ++i) v[i] += q.coef_[i];
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& p, const Polynomial& q) { return p + cplx{-1.0} * q; }

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  if (p.coef_.empty() || q.coef_.empty()) return {};
  std::vector<cplx> v(p.coef_.size() + q.coef_.size() - 1, cplx{0.0});
  for (std::size_t i = 0; i < p.coef_.size(); ++i)
    for (std::size_t j = 0; j < q.coef_.size(); ++j) v[i + j] += p.coef_[i] * q.coef_[j];
  return Polynomial(std::move(v));
}

Polynomial operator*(cplx c, const Polynomial& p) {
  std::vector<cplx> v = p.coef_;
  for (auto& x : v) x *= c;
  return Polynomial(std::move(v));
}

cplx Rational::derivative(cplx x) const {
  const cplx d = den(x);
  return (num.derivative()(x) * d - num(x) * den.derivative()(x)) / (d * d);
}

Rational operator+(const Rational& p, const Rational& q) {
  return {p.num * q.den + q.num * p.den, p.den * q.den};
}

} // namespace casimir
