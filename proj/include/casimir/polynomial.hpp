#pragma once

#include <complex>
#include <vector>

namespace casimir {

using cplx = std::complex<double>;

// Dense polynomial with complex coefficients, lowest order first.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coefficients);

  static Polynomial constant(cplx c) { return Polynomial({c}); }
  static Polynomial monomial(cplx c, int degree);

  int degree() const noexcept { return static_cast<int>(coef_.size()) - 1; }
  const std::vector<cplx>& coefficients() const noexcept { return coef_; }

  cplx operator()(cplx x) const;
  Polynomial derivative() const;

  // Roots from the eigenvalues of the companion matrix.
  std::vector<cplx> roots() const;

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator-(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(cplx c, const Polynomial& p);

private:
  void trim();
  std::vector<cplx> coef_;
};

// N(x)/D(x); used for the closed-form permittivities.
struct Rational {
  Polynomial num;
  Polynomial den;

  cplx operator()(cplx x) const { return num(x) / den(x); }
  cplx derivative(cplx x) const;

  friend Rational operator+(const Rational& p, const Rational& q);
};

} // namespace casimir
