#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace satolab {

using Int = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::size_t kDefaultWeylCap = 50'000;

enum class Family { A, B, C, D, G, F };

/// Cartan type of a split simple root system, e.g. C2, G2, A2.
struct GroupType {
  Family family = Family::A;
  int rank = 1;

  /// Throws ValidationError on a rank outside the family's range.
  static GroupType make(Family family, int rank);
  /// Accepts "C2", "g2", "A_3", "B3" and so on.
  static GroupType parse(std::string_view text);

  std::string name() const;
  /// Classical order of the Weyl group; saturates at UINT64_MAX.
  std::uint64_t weyl_order() const;

  friend bool operator==(const GroupType&, const GroupType&) = default;
};

/// An element of the weight lattice, stored as doubled integer coordinates.
///
/// Coordinates are torus-character coordinates: the exponential e^lambda
/// evaluated at angles theta is exp(i * sum_j lambda_j theta_j). For the
/// classical families these are the usual orthogonal e_i coordinates; for
/// A_n the last coordinate e_{n+1} = -(e_1 + ... + e_n) is eliminated, and
/// for G2 the basis is the one in which the positive roots read
/// (1,-1), (-1,2), (2,-1), (1,0), (1,1), (0,1).
class Weight {
 public:
  Weight() = default;
  explicit Weight(std::vector<Int> doubled) : doubled_(std::move(doubled)) {}

  static Weight zero(int rank) { return Weight(std::vector<Int>(static_cast<std::size_t>(rank), 0)); }
  /// From integral (undoubled) coordinates.
  static Weight from_coords(std::span<const Int> coords);
  static Weight from_coords(std::initializer_list<Int> coords) {
    return from_coords(std::span<const Int>(coords.begin(), coords.size()));
  }

  int rank() const { return static_cast<int>(doubled_.size()); }
  std::span<const Int> doubled() const { return doubled_; }
  Int doubled(int i) const { return doubled_[static_cast<std::size_t>(i)]; }
  double coord(int i) const { return 0.5 * static_cast<double>(doubled(i)); }
  bool is_zero() const;
  /// True when every coordinate is an integer (no half-integers).
  bool integral() const;

  Weight operator+(const Weight& other) const;
  Weight operator-(const Weight& other) const;
  Weight operator-() const;
  Weight scaled(Int factor) const;

  /// "(1,0)" style, with halves written as "1/2".
  std::string to_string() const;

  friend auto operator<=>(const Weight&, const Weight&) = default;
  friend bool operator==(const Weight&, const Weight&) = default;

 private:
  std::vector<Int> doubled_;
};

/// Weyl group element as an exact matrix on weight coordinates, stored as
/// integers over a common denominator (2 for F4, whose reflections have
/// half-integral entries in e_i coordinates; 1 otherwise).
struct WeylElement {
  std::vector<Int> matrix;  // row-major, rank x rank, scaled by `scale`
  Int scale = 1;
  int sign = 1;             // epsilon(w) = (-1)^length = det(matrix / scale)
  int length = 0;           // word length in simple reflections

  Weight apply(const Weight& weight) const;
  /// Dual action on angles: theta -> M^T theta, so that
  /// <lambda, w.theta> = <M lambda, theta>.
  std::vector<double> act_on_angles(std::span<const double> thetas) const;
};

namespace detail {
struct MultiplicityCache;
}

/// Exact data of an irreducible root system and its Weyl group.
/// Immutable after construction; safe to share between threads.
class RootSystem {
 public:
  static RootSystem build(GroupType type, std::size_t weyl_cap = kDefaultWeylCap);

  const GroupType& type() const { return type_; }
  int rank() const { return type_.rank; }

  std::span<const Weight> positive_roots() const { return positive_roots_; }
  std::span<const Weight> simple_roots() const { return simple_roots_; }
  std::span<const Weight> fundamental_weights() const { return fundamental_weights_; }
  const Weight& rho() const { return rho_; }
  std::span<const WeylElement> weyl_elements() const { return weyl_; }
  std::size_t weyl_order() const { return weyl_.size(); }
  std::size_t longest_element_index() const { return longest_; }
  const WeylElement& longest_element() const { return weyl_[longest_]; }

  /// Symmetric positive-definite integer matrix proportional to the
  /// W-invariant form on undoubled coordinates.
  std::span<const Int> gram() const { return gram_; }

  /// 1 when every weight is integral, 2 when the lattice has half-integral
  /// weights (spin weights of B_n and D_n, and F4).
  int angle_unit() const { return angle_unit_; }
  /// Period of the torus angles: 2*pi*angle_unit().
  double angle_period() const { return 2.0 * std::numbers::pi * angle_unit_; }

  /// Scaled form value on doubled coordinates: a^T G b.
  Int form(const Weight& a, const Weight& b) const;
  /// Coroot pairing <v, alpha^vee>; throws InternalError if not integral.
  Int coroot_pairing(const Weight& v, const Weight& root) const;

  bool in_weight_lattice(const Weight& v) const;
  bool is_dominant(const Weight& v) const;
  Weight dominant_representative(const Weight& v) const;

  /// Coefficients of v in the simple-root basis, or nullopt when v is not
  /// in the root lattice.
  std::optional<std::vector<Int>> simple_root_coefficients(const Weight& v) const;

  /// Throws ValidationError unless v has the right rank, lies in the weight
  /// lattice and (if requested) is dominant.
  void require_weight(const Weight& v, bool dominant, std::string_view what) const;

  detail::MultiplicityCache& multiplicity_cache() const { return *cache_; }

 private:
  RootSystem() = default;

  GroupType type_;
  std::vector<Int> gram_;
  std::vector<Weight> positive_roots_;
  std::vector<Weight> simple_roots_;
  std::vector<Weight> fundamental_weights_;
  Weight rho_;
  std::vector<WeylElement> weyl_;
  std::size_t longest_ = 0;
  int angle_unit_ = 1;
  // Inverse of the simple-root matrix, scaled by inverse_den_ to integers.
  std::vector<Int> inverse_simple_;
  Int inverse_den_ = 1;
  std::shared_ptr<detail::MultiplicityCache> cache_;
};

RootSystem build_root_system(GroupType type, std::size_t weyl_cap = kDefaultWeylCap);

/// Weyl orbit of a dominant weight, sorted.
std::vector<Weight> weyl_orbit(const RootSystem& rs, const Weight& lambda);

/// mu <= lambda in the dominance order: lambda - mu is a nonnegative
/// integer combination of simple roots. Both must be dominant.
bool dominance_leq(const RootSystem& rs, const Weight& mu, const Weight& lambda);

bool minus_one_in_weyl(const RootSystem& rs);

/// Highest weight of the contragredient representation, -w0(lambda).
Weight dual_weight(const RootSystem& rs, const Weight& lambda);

/// max over w in W of the sup-norm of w(lambda), in undoubled units.
double weight_height(const RootSystem& rs, const Weight& lambda);

/// Height of a root-lattice vector in the simple-root basis (sum of coefficients).
Int root_height(const RootSystem& rs, const Weight& v);

/// Exact determinant of a square integer matrix (Bareiss elimination).
BigInt integer_determinant(std::span<const Int> matrix, int n);

}  // namespace satolab
