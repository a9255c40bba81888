#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

#include "satolab/root_system.hpp"

namespace satolab {

using Complex = std::complex<double>;

/// A point of the compact maximal torus, given by its angles.
///
/// Angles are reduced modulo the period of the root system's weight
/// lattice: 2*pi, or 4*pi when the lattice contains half-integral weights.
class TorusPoint {
 public:
  TorusPoint() = default;
  explicit TorusPoint(std::vector<double> thetas, double period = 2.0 * std::numbers::pi);

  int rank() const { return static_cast<int>(thetas_.size()); }
  std::span<const double> thetas() const { return thetas_; }
  double theta(int i) const { return thetas_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<double> thetas_;
};

/// Builds a TorusPoint using the root system's angle period.
TorusPoint torus_point(const RootSystem& rs, std::vector<double> thetas);

/// <lambda, theta> = sum_j lambda_j theta_j.
double phase(const Weight& lambda, std::span<const double> thetas);
inline Complex torus_exp(const Weight& lambda, std::span<const double> thetas) {
  return std::polar(1.0, phase(lambda, thetas));
}

/// Finite real combination of irreducible characters, keyed by dominant weight.
class CharExpansion {
 public:
  CharExpansion() = default;
  static CharExpansion single(const Weight& lambda, double coeff = 1.0);

  /// Adds coeff to the term at lambda; zero results are pruned.
  void add(const Weight& lambda, double coeff);
  double coefficient(const Weight& lambda) const;

  const std::map<Weight, double>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  double sum_of_squares() const;

  friend bool operator==(const CharExpansion&, const CharExpansion&) = default;

 private:
  std::map<Weight, double> terms_;
};

/// Weight multiplicities of one irreducible representation, over all
/// weights (not only dominant ones).
struct WeightMultiplicityTable {
  Weight highest;
  std::map<Weight, Int> entries;

  Int multiplicity(const Weight& mu) const;
  BigInt dimension() const;
};

/// Weyl denominator as the alternating sum over W of e^{w rho}.
Complex weyl_denominator(const RootSystem& rs, const TorusPoint& t);
/// Product form prod_{alpha > 0} (e^{alpha/2} - e^{-alpha/2}).
Complex weyl_denominator_product(const RootSystem& rs, const TorusPoint& t);
/// sum_w eps(w) e^{w(mu)}.
Complex alternant(const RootSystem& rs, const Weight& mu, std::span<const double> thetas);

/// |delta| below this switches char_value to the multiplicity sum.
double singularity_threshold(const RootSystem& rs);

/// Irreducible character chi_lambda at t, by the Weyl quotient away from
/// singular points and by the weight-multiplicity sum near them.
Complex char_value(const RootSystem& rs, const Weight& lambda, const TorusPoint& t);
/// The two branches, exposed for consistency checks.
Complex char_value_quotient(const RootSystem& rs, const Weight& lambda, const TorusPoint& t);
Complex char_value_multiplicity_sum(const RootSystem& rs, const Weight& lambda, const TorusPoint& t);

/// Exact Weyl dimension formula prod <lambda+rho, alpha> / <rho, alpha>.
BigInt weyl_dimension(const RootSystem& rs, const Weight& lambda);

inline constexpr double kDefaultDimensionBound = 1e6;

/// Freudenthal multiplicities of the irreducible representation with
/// highest weight lambda. Memoized per root system.
WeightMultiplicityTable weight_multiplicities(const RootSystem& rs, const Weight& lambda,
                                              double dimension_bound = kDefaultDimensionBound);

/// Dominant weights mu <= lambda with their multiplicities in pi_lambda,
/// ordered by depth (lambda first).
std::vector<std::pair<Weight, Int>> dominant_multiplicities(const RootSystem& rs, const Weight& lambda,
                                                            double dimension_bound = kDefaultDimensionBound);

/// Coefficients a_{lambda,mu} with m_lambda = sum_mu a_{lambda,mu} chi_mu.
CharExpansion monomial_in_char_basis(const RootSystem& rs, const Weight& lambda);
/// Orbit sum m_lambda(t) = sum over the Weyl orbit of e^nu.
Complex monomial_value(const RootSystem& rs, const Weight& lambda, const TorusPoint& t);

/// Replaces each key by its dual weight; pointwise complex conjugation.
CharExpansion char_conjugate_expansion(const RootSystem& rs, const CharExpansion& e);
bool is_self_dual(const RootSystem& rs, const CharExpansion& e);

/// Throws ValidationError unless every key is a dominant lattice weight.
void validate_expansion(const RootSystem& rs, const CharExpansion& e);

/// sum_lambda c_lambda chi_lambda(t), each term through char_value.
Complex evaluate(const RootSystem& rs, const CharExpansion& e, const TorusPoint& t);

/// A character expansion flattened to sum_mu a_mu e^{i<mu,theta>} with real
/// a_mu. Evaluation is division-free and exact at singular points, which
/// makes it the evaluator of choice inside sampling loops.
class CharacterPolynomial {
 public:
  CharacterPolynomial() = default;
  CharacterPolynomial(const RootSystem& rs, const CharExpansion& e);

  Complex operator()(std::span<const double> thetas) const;
  /// Real part only; exact for self-dual expansions.
  double real_part(std::span<const double> thetas) const;

  std::size_t term_count() const { return coeffs_.size(); }
  int rank() const { return rank_; }
  /// Largest |mu_j| over the terms, per coordinate, in undoubled units.
  std::vector<double> max_abs_coords() const;

 private:
  int rank_ = 0;
  std::vector<double> half_coords_;  // term-major, rank_ per term: doubled/2
  std::vector<double> coeffs_;
};

}  // namespace satolab
