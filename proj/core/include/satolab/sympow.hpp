#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "satolab/clt.hpp"
#include "satolab/root_system.hpp"

namespace satolab {

/// Dense polynomial with exact integer coefficients in ascending degree.
/// The zero polynomial has no coefficients.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  BigInt coefficient(int k) const;

  /// Horner's rule in 50-digit floating point, rounded to double. Plain
  /// double Horner cancels catastrophically for large degree on [-2, 2].
  double operator()(double x) const;
  /// Exact value at an integer.
  BigInt evaluate_exact(const BigInt& x) const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  std::vector<BigInt> coeffs_;
};

inline constexpr int kMaxSymPower = 200;

/// H_0 = 1, H_1 = x, H_{u+2} = x H_{u+1} - H_u; requires 0 <= u <= 200.
IntPolynomial h_polynomial(int u);

/// H_u(x) as the determinant of the u x u tridiagonal matrix with x on the
/// diagonal and 1 off it, expanded along the last row.
double h_via_determinant(int u, double x);

/// (H_u(2 cos theta), sin((u+1) theta) / sin theta); requires |sin theta| > 1e-6.
std::pair<double, double> chebyshev_check(int u, double theta);

/// (2u)! / ((u+1)! u!), the 2u-th moment of (1/2pi) sqrt(4 - x^2) on [-2, 2];
/// requires 0 <= u <= 30.
Rational semicircle_moment(int u);
/// The k-th moment of the semicircle law by Gauss-Chebyshev quadrature.
double semicircle_moment_quadrature(int k);

/// Integral of H_u H_v against the semicircle law, through the A1 torus
/// quadrature (x = 2 cos theta); requires u, v <= 60.
double h_orthonormality(int u, int v);

/// Sparse multivariate polynomial: exponent vector -> coefficient.
using SparsePolynomial = std::map<std::vector<int>, BigInt>;

/// Complete homogeneous h_u(x_1..x_n), from prod_k 1/(1 - x_k t).
SparsePolynomial complete_homogeneous(int n, int u);
/// Elementary e_k(x_1..x_n), from prod_k (1 + x_k t).
SparsePolynomial elementary(int n, int k);
/// det(e_{1-i+j})_{1<=i,j<=u}, expanded over permutations.
SparsePolynomial jacobi_trudi_determinant(int n, int u);
/// h_u == det(e_{1-i+j}) exactly; requires 1 <= n <= 5, 0 <= u <= 6.
bool jacobi_trudi_check(int n, int u);

struct SymPowConfig {
  int u = 1;
  Int x = 10000;
  std::size_t family_size = 20000;
  std::uint64_t seed = 0;
  int threads = 1;
};

/// CLT for S = sum_p H_u(a_p) / sqrt(pi(x)) with a_p = 2 cos theta_p drawn
/// from the A1 Sato-Tate (semicircle) law.
CLTReport sympow_clt(const SymPowConfig& cfg);

}  // namespace satolab
