#include "satolab/root_system.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "multiplicity_cache.hpp"
#include "satolab/error.hpp"

namespace satolab {

namespace {

std::size_t idx(int r, int c, int n) { return static_cast<std::size_t>(r * n + c); }

// Undoubled integer coordinates -> Weight.
Weight w(std::initializer_list<Int> coords) { return Weight::from_coords(coords); }

Weight unit(int rank, int i, Int value = 1) {
  std::vector<Int> d(static_cast<std::size_t>(rank), 0);
  d[static_cast<std::size_t>(i)] = 2 * value;
  return Weight(std::move(d));
}

struct CartanData {
  std::vector<Int> gram;
  std::vector<Weight> positive;
  std::vector<Weight> simple;
};

CartanData type_a(int n) {
  // SL_{n+1}; basis e_1..e_n with e_{n+1} = -(e_1 + ... + e_n).
  CartanData d;
  d.gram.assign(static_cast<std::size_t>(n * n), -1);
  for (int i = 0; i < n; ++i) d.gram[idx(i, i, n)] = n;
  auto ambient = [n](int i) {  // e_i, 0-based, i in [0, n]
    std::vector<Int> v(static_cast<std::size_t>(n), 0);
    if (i < n) {
      v[static_cast<std::size_t>(i)] = 2;
    } else {
      std::fill(v.begin(), v.end(), -2);
    }
    return Weight(std::move(v));
  };
  for (int i = 0; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) d.positive.push_back(ambient(i) - ambient(j));
  }
  for (int i = 0; i < n; ++i) d.simple.push_back(ambient(i) - ambient(i + 1));
  return d;
}

std::vector<Int> identity_gram(int n) {
  std::vector<Int> g(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) g[idx(i, i, n)] = 1;
  return g;
}

void add_pm_pairs(CartanData& d, int n) {
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      d.positive.push_back(unit(n, i) - unit(n, j));
      d.positive.push_back(unit(n, i) + unit(n, j));
    }
  }
  for (int i = 0; i + 1 < n; ++i) d.simple.push_back(unit(n, i) - unit(n, i + 1));
}

CartanData type_b(int n) {
  CartanData d;
  d.gram = identity_gram(n);
  add_pm_pairs(d, n);
  for (int i = 0; i < n; ++i) d.positive.push_back(unit(n, i));
  d.simple.push_back(unit(n, n - 1));
  return d;
}

CartanData type_c(int n) {
  CartanData d;
  d.gram = identity_gram(n);
  add_pm_pairs(d, n);
  for (int i = 0; i < n; ++i) d.positive.push_back(unit(n, i, 2));
  d.simple.push_back(unit(n, n - 1, 2));
  return d;
}

CartanData type_d(int n) {
  CartanData d;
  d.gram = identity_gram(n);
  add_pm_pairs(d, n);
  d.simple.push_back(unit(n, n - 2) + unit(n, n - 1));
  return d;
}

CartanData type_g2() {
  // Basis in which the form is a^2 + ab + b^2 (short roots have length 1).
  CartanData d;
  d.gram = {2, 1, 1, 2};
  d.positive = {w({1, -1}), w({-1, 2}), w({2, -1}), w({1, 0}), w({1, 1}), w({0, 1})};
  d.simple = {w({1, -1}), w({-1, 2})};
  return d;
}

CartanData type_f4() {
  CartanData d;
  d.gram = identity_gram(4);
  for (int i = 0; i < 4; ++i) d.positive.push_back(unit(4, i));
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      d.positive.push_back(unit(4, i) - unit(4, j));
      d.positive.push_back(unit(4, i) + unit(4, j));
    }
  }
  // 1/2 (e1 +- e2 +- e3 +- e4)
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<Int> v{1, (mask & 1) ? -1 : 1, (mask & 2) ? -1 : 1, (mask & 4) ? -1 : 1};
    d.positive.emplace_back(std::move(v));
  }
  d.simple = {unit(4, 1) - unit(4, 2), unit(4, 2) - unit(4, 3), unit(4, 3), Weight({1, -1, -1, -1})};
  return d;
}

// Product of two matrices that share the denominator `scale`.
std::vector<Int> matmul(const std::vector<Int>& a, const std::vector<Int>& b, int n, Int scale) {
  std::vector<Int> c(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Int aik = a[idx(i, k, n)];
      if (aik == 0) continue;
      for (int j = 0; j < n; ++j) c[idx(i, j, n)] += aik * b[idx(k, j, n)];
    }
  }
  for (auto& x : c) {
    if (x % scale != 0) throw InternalError("Weyl group product left the scaled lattice");
    x /= scale;
  }
  return c;
}

Int gram_form(std::span<const Int> gram, std::span<const Int> a, std::span<const Int> b) {
  const int n = static_cast<int>(a.size());
  Int s = 0;
  for (int i = 0; i < n; ++i) {
    if (a[static_cast<std::size_t>(i)] == 0) continue;
    Int row = 0;
    for (int j = 0; j < n; ++j) row += gram[idx(i, j, n)] * b[static_cast<std::size_t>(j)];
    s += a[static_cast<std::size_t>(i)] * row;
  }
  return s;
}

// Matrix of the reflection in `root`, times `scale`, acting on (doubled or
// undoubled) coordinates.
std::vector<Int> reflection_matrix(std::span<const Int> gram, const Weight& root, Int scale) {
  const int n = root.rank();
  const auto a = root.doubled();
  const Int norm = gram_form(gram, a, a);
  std::vector<Int> ga(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) ga[static_cast<std::size_t>(i)] += gram[idx(i, j, n)] * a[static_cast<std::size_t>(j)];
  }
  // s(e_k) = e_k - <e_k, alpha^vee> alpha, and with alpha = a/2 the correction
  // in row j of column k is 2 (G a)_k a_j / (a^T G a).
  std::vector<Int> m(static_cast<std::size_t>(n * n), 0);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      const Int num = 2 * scale * ga[static_cast<std::size_t>(k)] * a[static_cast<std::size_t>(j)];
      if (num % norm != 0) throw InternalError("reflection matrix is not integral");
      m[idx(j, k, n)] = (j == k ? scale : 0) - num / norm;
    }
  }
  return m;
}

// Solve A X = B over the rationals (A square, invertible); B has `cols` columns.
std::vector<Rational> solve_rational(std::vector<Rational> a, std::vector<Rational> b, int n, int cols) {
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r) {
      if (a[idx(r, c, n)] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw InternalError("singular matrix in root system construction");
    if (pivot != c) {
      for (int j = 0; j < n; ++j) std::swap(a[idx(c, j, n)], a[idx(pivot, j, n)]);
      for (int j = 0; j < cols; ++j) std::swap(b[idx(c, j, cols)], b[idx(pivot, j, cols)]);
    }
    const Rational inv = 1 / a[idx(c, c, n)];
    for (int j = 0; j < n; ++j) a[idx(c, j, n)] *= inv;
    for (int j = 0; j < cols; ++j) b[idx(c, j, cols)] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == c || a[idx(r, c, n)] == 0) continue;
      const Rational f = a[idx(r, c, n)];
      for (int j = 0; j < n; ++j) a[idx(r, j, n)] -= f * a[idx(c, j, n)];
      for (int j = 0; j < cols; ++j) b[idx(r, j, cols)] -= f * b[idx(c, j, cols)];
    }
  }
  return b;
}

Int to_int(const BigInt& v) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min()) {
    throw InternalError("integer overflow in root system data");
  }
  return static_cast<Int>(v);
}

}  // namespace

// ---------------------------------------------------------------------------
// GroupType

GroupType GroupType::make(Family family, int rank) {
  auto fail = [&](const std::string& why) {
    throw ValidationError("invalid group type " + GroupType{family, rank}.name() + ": " + why);
  };
  switch (family) {
    case Family::A:
      if (rank < 1) fail("rank must be >= 1 for A");
      break;
    case Family::B:
    case Family::C:
      if (rank < 2) fail("rank must be >= 2 for B and C");
      break;
    case Family::D:
      if (rank < 3) fail("rank must be >= 3 for D");
      break;
    case Family::G:
      if (rank != 2) fail("G2 has rank 2");
      break;
    case Family::F:
      if (rank != 4) fail("F4 has rank 4");
      break;
  }
  return GroupType{family, rank};
}

GroupType GroupType::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (ch != '_' && !std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.size() < 2) throw ValidationError("cannot parse group type '" + std::string(text) + "'");
  Family family;
  switch (std::toupper(static_cast<unsigned char>(s[0]))) {
    case 'A': family = Family::A; break;
    case 'B': family = Family::B; break;
    case 'C': family = Family::C; break;
    case 'D': family = Family::D; break;
    case 'G': family = Family::G; break;
    case 'F': family = Family::F; break;
    case 'E':
      throw ValidationError("E-type root systems are not supported (Weyl group above enumeration cap)");
    default:
      throw ValidationError("unknown root system family in '" + std::string(text) + "'");
  }
  int rank = 0;
  const auto* first = s.data() + 1;
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, rank);
  if (ec != std::errc() || ptr != last) {
    throw ValidationError("cannot parse rank in '" + std::string(text) + "'");
  }
  return make(family, rank);
}

std::string GroupType::name() const {
  const char* letters = "ABCDGF";
  return std::string(1, letters[static_cast<int>(family)]) + std::to_string(rank);
}

std::uint64_t GroupType::weyl_order() const {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  auto factorial = [&](int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) {
      if (f > kMax / static_cast<std::uint64_t>(i)) return kMax;
      f *= static_cast<std::uint64_t>(i);
    }
    return f;
  };
  auto times_pow2 = [&](std::uint64_t v, int e) {
    for (int i = 0; i < e; ++i) {
      if (v > kMax / 2) return kMax;
      v *= 2;
    }
    return v;
  };
  switch (family) {
    case Family::A:
      return factorial(rank + 1);
    case Family::B:
    case Family::C:
      return times_pow2(factorial(rank), rank);
    case Family::D:
      return times_pow2(factorial(rank), rank - 1);
    case Family::G:
      return 12;
    case Family::F:
      return 1152;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Weight

Weight Weight::from_coords(std::span<const Int> coords) {
  std::vector<Int> d(coords.begin(), coords.end());
  for (auto& c : d) c *= 2;
  return Weight(std::move(d));
}

bool Weight::is_zero() const {
  return std::all_of(doubled_.begin(), doubled_.end(), [](Int c) { return c == 0; });
}

bool Weight::integral() const {
  return std::all_of(doubled_.begin(), doubled_.end(), [](Int c) { return c % 2 == 0; });
}

Weight Weight::operator+(const Weight& other) const {
  Weight r = *this;
  for (std::size_t i = 0; i < doubled_.size(); ++i) r.doubled_[i] += other.doubled_[i];
  return r;
}

Weight Weight::operator-(const Weight& other) const {
  Weight r = *this;
  for (std::size_t i = 0; i < doubled_.size(); ++i) r.doubled_[i] -= other.doubled_[i];
  return r;
}

Weight Weight::operator-() const { return scaled(-1); }

Weight Weight::scaled(Int factor) const {
  Weight r = *this;
  for (auto& c : r.doubled_) c *= factor;
  return r;
}

std::string Weight::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < doubled_.size(); ++i) {
    if (i) os << ',';
    if (doubled_[i] % 2 == 0) {
      os << doubled_[i] / 2;
    } else {
      os << doubled_[i] << "/2";
    }
  }
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// WeylElement

Weight WeylElement::apply(const Weight& weight) const {
  const int n = weight.rank();
  const auto v = weight.doubled();
  std::vector<Int> out(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    Int s = 0;
    for (int j = 0; j < n; ++j) s += matrix[idx(i, j, n)] * v[static_cast<std::size_t>(j)];
    if (s % scale != 0) throw InternalError("Weyl element moved a weight off the lattice");
    out[static_cast<std::size_t>(i)] = s / scale;
  }
  return Weight(std::move(out));
}

std::vector<double> WeylElement::act_on_angles(std::span<const double> thetas) const {
  const int n = static_cast<int>(thetas.size());
  std::vector<double> out(thetas.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += static_cast<double>(matrix[idx(j, i, n)]) * thetas[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = s / static_cast<double>(scale);
  }
  return out;
}

// ---------------------------------------------------------------------------
// RootSystem

RootSystem RootSystem::build(GroupType type, std::size_t weyl_cap) {
  type = GroupType::make(type.family, type.rank);
  const std::uint64_t expected_order = type.weyl_order();
  if (expected_order > weyl_cap) {
    throw ValidationError("Weyl group of " + type.name() + " has order " + std::to_string(expected_order) +
                          ", above the enumeration cap " + std::to_string(weyl_cap));
  }

  CartanData data;
  switch (type.family) {
    case Family::A: data = type_a(type.rank); break;
    case Family::B: data = type_b(type.rank); break;
    case Family::C: data = type_c(type.rank); break;
    case Family::D: data = type_d(type.rank); break;
    case Family::G: data = type_g2(); break;
    case Family::F: data = type_f4(); break;
  }

  const int n = type.rank;
  RootSystem rs;
  rs.type_ = type;
  rs.gram_ = std::move(data.gram);
  rs.positive_roots_ = std::move(data.positive);
  rs.simple_roots_ = std::move(data.simple);
  rs.cache_ = std::make_shared<detail::MultiplicityCache>();

  // rho = half the sum of positive roots.
  std::vector<Int> two_rho(static_cast<std::size_t>(n), 0);
  for (const auto& a : rs.positive_roots_) {
    for (int i = 0; i < n; ++i) two_rho[static_cast<std::size_t>(i)] += a.doubled(i);
  }
  for (auto& c : two_rho) {
    if (c % 2 != 0) throw InternalError("rho is not in the doubled lattice");
    c /= 2;
  }
  rs.rho_ = Weight(std::move(two_rho));

  // Inverse of the simple-root matrix (columns = simple roots).
  {
    std::vector<Rational> s(static_cast<std::size_t>(n * n));
    std::vector<Rational> eye(static_cast<std::size_t>(n * n), Rational(0));
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) s[idx(i, j, n)] = Rational(rs.simple_roots_[static_cast<std::size_t>(j)].doubled(i));
      eye[idx(j, j, n)] = 1;
    }
    const auto inv = solve_rational(s, eye, n, n);
    BigInt den = 1;
    for (const auto& q : inv) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(q));
    rs.inverse_den_ = to_int(den);
    rs.inverse_simple_.resize(inv.size());
    for (std::size_t k = 0; k < inv.size(); ++k) {
      const Rational scaled = inv[k] * Rational(den);
      rs.inverse_simple_[k] = to_int(boost::multiprecision::numerator(scaled));
    }
  }

  // Fundamental weights: <omega_i, alpha_j^vee> = delta_ij.
  {
    std::vector<Rational> p(static_cast<std::size_t>(n * n));
    std::vector<Rational> eye(static_cast<std::size_t>(n * n), Rational(0));
    for (int j = 0; j < n; ++j) {
      const auto a = rs.simple_roots_[static_cast<std::size_t>(j)].doubled();
      const Int norm = gram_form(rs.gram_, a, a);
      for (int k = 0; k < n; ++k) {
        Int ga = 0;
        for (int l = 0; l < n; ++l) ga += rs.gram_[idx(k, l, n)] * a[static_cast<std::size_t>(l)];
        // <e_k, alpha^vee> = 4 (G a)_k / (a^T G a) with a the doubled root
        p[idx(j, k, n)] = Rational(4 * ga, norm);
      }
      eye[idx(j, j, n)] = 1;
    }
    const auto omega = solve_rational(p, eye, n, n);
    int unit = 1;
    for (int i = 0; i < n; ++i) {
      std::vector<Int> d(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) {
        const Rational twice = 2 * omega[idx(k, i, n)];
        if (boost::multiprecision::denominator(twice) != 1) {
          throw InternalError("fundamental weight outside the doubled lattice");
        }
        d[static_cast<std::size_t>(k)] = to_int(boost::multiprecision::numerator(twice));
        if (d[static_cast<std::size_t>(k)] % 2 != 0) unit = 2;
      }
      rs.fundamental_weights_.emplace_back(std::move(d));
    }
    rs.angle_unit_ = unit;
  }

  // Weyl group by breadth-first closure under the simple reflections.
  {
    // Half-integral roots (F4) give half-integral reflection matrices.
    const bool half_roots = std::any_of(rs.positive_roots_.begin(), rs.positive_roots_.end(),
                                        [](const Weight& a) { return !a.integral(); });
    const Int scale = half_roots ? 2 : 1;
    std::vector<std::vector<Int>> gens;
    for (const auto& a : rs.simple_roots_) gens.push_back(reflection_matrix(rs.gram_, a, scale));
    std::map<std::vector<Int>, std::size_t> seen;
    WeylElement id;
    id.scale = scale;
    id.matrix.assign(static_cast<std::size_t>(n * n), 0);
    for (int i = 0; i < n; ++i) id.matrix[idx(i, i, n)] = scale;
    seen.emplace(id.matrix, 0);
    rs.weyl_.push_back(std::move(id));
    for (std::size_t head = 0; head < rs.weyl_.size(); ++head) {
      for (const auto& g : gens) {
        auto m = matmul(g, rs.weyl_[head].matrix, n, scale);
        if (seen.count(m)) continue;
        if (rs.weyl_.size() >= weyl_cap) {
          throw ValidationError("Weyl group of " + type.name() + " exceeds the enumeration cap");
        }
        WeylElement e;
        e.scale = scale;
        e.length = rs.weyl_[head].length + 1;
        e.sign = (e.length % 2 == 0) ? 1 : -1;
        seen.emplace(m, rs.weyl_.size());
        e.matrix = std::move(m);
        rs.weyl_.push_back(std::move(e));
      }
    }
    if (rs.weyl_.size() != expected_order) {
      throw InternalError("Weyl group of " + type.name() + " has " + std::to_string(rs.weyl_.size()) +
                          " elements, expected " + std::to_string(expected_order));
    }
    // Breadth-first order puts the unique longest element last.
    rs.longest_ = rs.weyl_.size() - 1;
    if (rs.weyl_[rs.longest_].apply(rs.rho_) != -rs.rho_) {
      throw InternalError("longest Weyl element does not send rho to -rho");
    }
  }
  return rs;
}

Int RootSystem::form(const Weight& a, const Weight& b) const { return gram_form(gram_, a.doubled(), b.doubled()); }

Int RootSystem::coroot_pairing(const Weight& v, const Weight& root) const {
  const Int num = 2 * form(v, root);
  const Int den = form(root, root);
  if (num % den != 0) throw InternalError("non-integral coroot pairing for " + v.to_string());
  return num / den;
}

bool RootSystem::in_weight_lattice(const Weight& v) const {
  if (v.rank() != rank()) return false;
  for (const auto& a : simple_roots_) {
    if ((2 * form(v, a)) % form(a, a) != 0) return false;
  }
  return true;
}

bool RootSystem::is_dominant(const Weight& v) const {
  return std::all_of(simple_roots_.begin(), simple_roots_.end(), [&](const Weight& a) { return form(v, a) >= 0; });
}

Weight RootSystem::dominant_representative(const Weight& v) const {
  Weight cur = v;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& a : simple_roots_) {
      const Int f = form(cur, a);
      if (f < 0) {
        const Int k = coroot_pairing(cur, a);
        cur = cur - a.scaled(k);
        changed = true;
      }
    }
  }
  return cur;
}

std::optional<std::vector<Int>> RootSystem::simple_root_coefficients(const Weight& v) const {
  const int n = rank();
  std::vector<Int> c(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Int s = 0;
    for (int j = 0; j < n; ++j) s += inverse_simple_[idx(i, j, n)] * v.doubled(j);
    if (s % inverse_den_ != 0) return std::nullopt;
    c[static_cast<std::size_t>(i)] = s / inverse_den_;
  }
  return c;
}

void RootSystem::require_weight(const Weight& v, bool dominant, std::string_view what) const {
  if (v.rank() != rank()) {
    throw ValidationError(std::string(what) + ": weight " + v.to_string() + " has rank " + std::to_string(v.rank()) +
                          ", expected " + std::to_string(rank()));
  }
  if (!in_weight_lattice(v)) {
    throw ValidationError(std::string(what) + ": " + v.to_string() + " is not in the weight lattice of " + type_.name());
  }
  if (dominant && !is_dominant(v)) {
    throw ValidationError(std::string(what) + ": weight " + v.to_string() + " is not dominant");
  }
}

RootSystem build_root_system(GroupType type, std::size_t weyl_cap) { return RootSystem::build(type, weyl_cap); }

std::vector<Weight> weyl_orbit(const RootSystem& rs, const Weight& lambda) {
  rs.require_weight(lambda, true, "weyl_orbit");
  std::set<Weight> orbit;
  for (const auto& e : rs.weyl_elements()) orbit.insert(e.apply(lambda));
  return {orbit.begin(), orbit.end()};
}

bool dominance_leq(const RootSystem& rs, const Weight& mu, const Weight& lambda) {
  rs.require_weight(mu, true, "dominance_leq");
  rs.require_weight(lambda, true, "dominance_leq");
  const auto c = rs.simple_root_coefficients(lambda - mu);
  if (!c) return false;
  return std::all_of(c->begin(), c->end(), [](Int x) { return x >= 0; });
}

bool minus_one_in_weyl(const RootSystem& rs) {
  const int n = rs.rank();
  for (const auto& e : rs.weyl_elements()) {
    bool is_minus_identity = true;
    for (int i = 0; i < n && is_minus_identity; ++i) {
      for (int j = 0; j < n; ++j) {
        if (e.matrix[idx(i, j, n)] != (i == j ? -e.scale : 0)) {
          is_minus_identity = false;
          break;
        }
      }
    }
    if (is_minus_identity) return true;
  }
  return false;
}

Weight dual_weight(const RootSystem& rs, const Weight& lambda) {
  rs.require_weight(lambda, true, "dual_weight");
  return -rs.longest_element().apply(lambda);
}

double weight_height(const RootSystem& rs, const Weight& lambda) {
  rs.require_weight(lambda, false, "weight_height");
  Int best = 0;
  for (const auto& e : rs.weyl_elements()) {
    const auto image = e.apply(lambda);
    for (Int c : image.doubled()) best = std::max(best, c < 0 ? -c : c);
  }
  return 0.5 * static_cast<double>(best);
}

Int root_height(const RootSystem& rs, const Weight& v) {
  const auto c = rs.simple_root_coefficients(v);
  if (!c) throw ValidationError("root_height: " + v.to_string() + " is not in the root lattice");
  return std::accumulate(c->begin(), c->end(), Int{0});
}

BigInt integer_determinant(std::span<const Int> matrix, int n) {
  if (n == 0) return 1;
  std::vector<BigInt> a(matrix.begin(), matrix.end());
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[idx(k, k, n)] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r) {
        if (a[idx(r, k, n)] != 0) {
          swap_row = r;
          break;
        }
      }
      if (swap_row < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a[idx(k, j, n)], a[idx(swap_row, j, n)]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a[idx(i, j, n)] = (a[idx(i, j, n)] * a[idx(k, k, n)] - a[idx(i, k, n)] * a[idx(k, j, n)]) / prev;
      }
    }
    prev = a[idx(k, k, n)];
  }
  return sign * a[idx(n - 1, n - 1, n)];
}

}  // namespace satolab
