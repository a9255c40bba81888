#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "satolab/characters.hpp"
#include "satolab/quadrature.hpp"
#include "satolab/root_system.hpp"

namespace satolab {

/// Unnormalized Sato-Tate density |delta(t)|^2 = prod_{alpha>0} |1 - e^{i<alpha,theta>}|^2.
double st_density(const RootSystem& rs, std::span<const double> thetas);
inline double st_density(const RootSystem& rs, const TorusPoint& t) { return st_density(rs, t.thetas()); }

/// Unnormalized Plancherel density
/// prod_{alpha in R} (1 - e^{alpha}) / (1 - p^{-1} e^{alpha}); requires p >= 2.
double plancherel_density(const RootSystem& rs, Int p, std::span<const double> thetas);
inline double plancherel_density(const RootSystem& rs, Int p, const TorusPoint& t) {
  return plancherel_density(rs, p, t.thetas());
}

enum class MeasureKind { sato_tate, plancherel };

/// A density on the full torus. Once normalized, integrating
/// normalization * unnormalized(t) against normalized Haar measure gives 1;
/// integrals over T/W are |W| times smaller, which is why the
/// Sato-Tate normalization is 1/|W|.
class MeasureDensity {
 public:
  static MeasureDensity sato_tate(const RootSystem& rs);
  static MeasureDensity plancherel(const RootSystem& rs, Int p);

  MeasureKind kind() const { return kind_; }
  Int prime() const { return prime_; }
  const RootSystem& root_system() const { return *rs_; }
  double normalization() const { return normalization_; }
  bool normalized() const { return normalized_; }

  double unnormalized(std::span<const double> thetas) const;
  double operator()(std::span<const double> thetas) const { return normalization_ * unnormalized(thetas); }

  MeasureDensity with_normalization(double normalization) const;

 private:
  MeasureDensity(const RootSystem& rs, MeasureKind kind, Int prime);

  const RootSystem* rs_;
  MeasureKind kind_;
  Int prime_;
  double normalization_ = 1.0;
  bool normalized_ = false;
  // Positive roots as undoubled floating coordinates, rank per root.
  std::vector<double> roots_;
  double inv_p_ = 0.0;
};

inline constexpr double kPlancherelAgreement = 1e-7;

/// Fixes the normalization from quadrature. Sato-Tate requires the grid to
/// resolve |delta|^2 exactly; Plancherel densities are not band-limited and
/// are refined by grid doubling until two successive integrals agree to 1e-7.
MeasureDensity normalize(const MeasureDensity& d, const TorusQuadrature& q, int threads = 1);

/// <f, g> = integral of f conj(g) against the normalized Sato-Tate measure.
using TorusFunction = std::function<Complex(std::span<const double>)>;
Complex inner_product(const RootSystem& rs, const TorusQuadrature& q, const TorusFunction& f, const TorusFunction& g,
                      int threads = 1);
/// Same for two character expansions, with a bandwidth guard.
Complex inner_product(const RootSystem& rs, const TorusQuadrature& q, const CharExpansion& f, const CharExpansion& g,
                      int threads = 1);

/// Matrix of inner products <chi_i, chi_j>, evaluating each character once per node.
std::vector<std::vector<Complex>> gram_matrix(const RootSystem& rs, const TorusQuadrature& q,
                                              std::span<const Weight> weights, int threads = 1);

struct CharacterMoments {
  Complex first;           // integral of h
  double second = 0.0;     // integral of |h|^2
  double re_sq = 0.0;      // integral of (Re h)^2
  double im_sq = 0.0;      // integral of (Im h)^2
  Complex square_no_conj;  // integral of h^2
};

CharacterMoments character_moments(const RootSystem& rs, const TorusQuadrature& q, const CharExpansion& e,
                                   int threads = 1);

/// Integral of f against a normalized density (full torus, normalized Haar).
Complex integrate_against(const MeasureDensity& d, const TorusQuadrature& q, const TorusFunction& f, int threads = 1);

}  // namespace satolab
