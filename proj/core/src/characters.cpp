#include "satolab/characters.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "multiplicity_cache.hpp"
#include "satolab/error.hpp"

namespace satolab {

namespace {

std::shared_ptr<const detail::DominantMultiplicities> compute_dominant(const RootSystem& rs, const Weight& lambda,
                                                                       const BigInt& dimension) {
  // Dominant weights below lambda, reached by subtracting positive roots
  // while staying dominant; the dimension check below catches any gap.
  std::set<Weight> found{lambda};
  std::deque<Weight> queue{lambda};
  while (!queue.empty()) {
    const Weight cur = queue.front();
    queue.pop_front();
    for (const auto& a : rs.positive_roots()) {
      Weight next = cur - a;
      if (!rs.is_dominant(next) || found.count(next)) continue;
      found.insert(next);
      queue.push_back(std::move(next));
    }
  }

  std::vector<std::pair<Int, Weight>> by_depth;
  by_depth.reserve(found.size());
  for (const auto& mu : found) by_depth.emplace_back(root_height(rs, lambda - mu), mu);
  std::sort(by_depth.begin(), by_depth.end());

  const Weight lr = lambda + rs.rho();
  const Int top = rs.form(lr, lr);
  std::map<Weight, Int> mult;
  auto table = std::make_shared<detail::DominantMultiplicities>();
  table->highest = lambda;
  table->dimension = dimension;

  for (const auto& [depth, mu] : by_depth) {
    Int m = 1;
    if (depth > 0) {
      Int numerator = 0;
      for (const auto& a : rs.positive_roots()) {
        Weight nu = mu + a;
        for (;;) {
          const auto it = mult.find(rs.dominant_representative(nu));
          if (it == mult.end()) break;
          numerator += it->second * rs.form(nu, a);
          nu = nu + a;
        }
      }
      numerator *= 2;
      const Weight mr = mu + rs.rho();
      const Int denominator = top - rs.form(mr, mr);
      if (denominator <= 0 || numerator % denominator != 0) {
        throw InternalError("Freudenthal recursion produced a non-integral multiplicity at " + mu.to_string());
      }
      m = numerator / denominator;
    }
    if (m > 0) {
      mult.emplace(mu, m);
      table->entries.emplace_back(mu, m);
    }
  }

  BigInt total = 0;
  for (const auto& [mu, m] : table->entries) {
    std::set<Weight> orbit;
    for (const auto& e : rs.weyl_elements()) orbit.insert(e.apply(mu));
    total += BigInt(m) * BigInt(orbit.size());
  }
  if (total != dimension) {
    throw InternalError("multiplicities of " + lambda.to_string() + " sum to " + total.str() +
                        ", Weyl dimension is " + dimension.str());
  }
  return table;
}

std::shared_ptr<const detail::DominantMultiplicities> dominant_table(const RootSystem& rs, const Weight& lambda,
                                                                     double dimension_bound) {
  auto& cache = rs.multiplicity_cache();
  {
    std::lock_guard lock(cache.mutex);
    if (auto it = cache.tables.find(lambda); it != cache.tables.end()) return it->second;
  }
  const BigInt dim = weyl_dimension(rs, lambda);
  if (dim > BigInt(static_cast<long long>(dimension_bound))) {
    throw ValidationError("representation " + lambda.to_string() + " has dimension " + dim.str() +
                          ", above the bound " + std::to_string(static_cast<long long>(dimension_bound)));
  }
  // Computed outside the lock; a racing duplicate computes the same table.
  auto table = compute_dominant(rs, lambda, dim);
  std::lock_guard lock(cache.mutex);
  return cache.tables.emplace(lambda, std::move(table)).first->second;
}

}  // namespace

// ---------------------------------------------------------------------------

TorusPoint::TorusPoint(std::vector<double> thetas, double period) : thetas_(std::move(thetas)) {
  for (auto& t : thetas_) {
    t = std::fmod(t, period);
    if (t < 0) t += period;
    if (t >= period) t = 0.0;
  }
}

TorusPoint torus_point(const RootSystem& rs, std::vector<double> thetas) {
  if (static_cast<int>(thetas.size()) != rs.rank()) {
    throw ValidationError("torus point has " + std::to_string(thetas.size()) + " angles, expected " +
                          std::to_string(rs.rank()));
  }
  return TorusPoint(std::move(thetas), rs.angle_period());
}

double phase(const Weight& lambda, std::span<const double> thetas) {
  double s = 0.0;
  for (int j = 0; j < lambda.rank(); ++j) s += static_cast<double>(lambda.doubled(j)) * thetas[static_cast<std::size_t>(j)];
  return 0.5 * s;
}

// ---------------------------------------------------------------------------
// CharExpansion

CharExpansion CharExpansion::single(const Weight& lambda, double coeff) {
  CharExpansion e;
  e.add(lambda, coeff);
  return e;
}

void CharExpansion::add(const Weight& lambda, double coeff) {
  if (!std::isfinite(coeff)) throw ValidationError("character coefficient must be finite");
  const double v = (terms_.count(lambda) ? terms_[lambda] : 0.0) + coeff;
  if (v == 0.0) {
    terms_.erase(lambda);
  } else {
    terms_[lambda] = v;
  }
}

double CharExpansion::coefficient(const Weight& lambda) const {
  const auto it = terms_.find(lambda);
  return it == terms_.end() ? 0.0 : it->second;
}

double CharExpansion::sum_of_squares() const {
  double s = 0.0;
  for (const auto& [w, c] : terms_) s += c * c;
  return s;
}

Int WeightMultiplicityTable::multiplicity(const Weight& mu) const {
  const auto it = entries.find(mu);
  return it == entries.end() ? 0 : it->second;
}

BigInt WeightMultiplicityTable::dimension() const {
  BigInt s = 0;
  for (const auto& [mu, m] : entries) s += m;
  return s;
}

// ---------------------------------------------------------------------------
// Weyl formula

Complex alternant(const RootSystem& rs, const Weight& mu, std::span<const double> thetas) {
  Complex s = 0.0;
  for (const auto& e : rs.weyl_elements()) s += static_cast<double>(e.sign) * torus_exp(e.apply(mu), thetas);
  return s;
}

Complex weyl_denominator(const RootSystem& rs, const TorusPoint& t) { return alternant(rs, rs.rho(), t.thetas()); }

Complex weyl_denominator_product(const RootSystem& rs, const TorusPoint& t) {
  Complex p = 1.0;
  for (const auto& a : rs.positive_roots()) {
    const double half = 0.5 * phase(a, t.thetas());
    p *= Complex(0.0, 2.0 * std::sin(half));  // e^{i h} - e^{-i h}
  }
  return p;
}

double singularity_threshold(const RootSystem& rs) { return 1e-6 * static_cast<double>(rs.weyl_order()); }

Complex char_value_quotient(const RootSystem& rs, const Weight& lambda, const TorusPoint& t) {
  rs.require_weight(lambda, true, "char_value");
  return alternant(rs, lambda + rs.rho(), t.thetas()) / weyl_denominator(rs, t);
}

Complex char_value_multiplicity_sum(const RootSystem& rs, const Weight& lambda, const TorusPoint& t) {
  rs.require_weight(lambda, true, "char_value");
  const auto table = dominant_table(rs, lambda, kDefaultDimensionBound);
  Complex s = 0.0;
  for (const auto& [mu, m] : table->entries) {
    std::set<Weight> orbit;
    for (const auto& e : rs.weyl_elements()) orbit.insert(e.apply(mu));
    Complex orbit_sum = 0.0;
    for (const auto& nu : orbit) orbit_sum += torus_exp(nu, t.thetas());
    s += static_cast<double>(m) * orbit_sum;
  }
  return s;
}

Complex char_value(const RootSystem& rs, const Weight& lambda, const TorusPoint& t) {
  rs.require_weight(lambda, true, "char_value");
  const Complex delta = weyl_denominator(rs, t);
  if (std::abs(delta) < singularity_threshold(rs)) return char_value_multiplicity_sum(rs, lambda, t);
  return alternant(rs, lambda + rs.rho(), t.thetas()) / delta;
}

BigInt weyl_dimension(const RootSystem& rs, const Weight& lambda) {
  rs.require_weight(lambda, true, "weyl_dimension");
  const Weight lr = lambda + rs.rho();
  Rational d = 1;
  for (const auto& a : rs.positive_roots()) d *= Rational(rs.form(lr, a), rs.form(rs.rho(), a));
  if (boost::multiprecision::denominator(d) != 1) throw InternalError("Weyl dimension is not an integer");
  return boost::multiprecision::numerator(d);
}

std::vector<std::pair<Weight, Int>> dominant_multiplicities(const RootSystem& rs, const Weight& lambda,
                                                            double dimension_bound) {
  rs.require_weight(lambda, true, "weight_multiplicities");
  return dominant_table(rs, lambda, dimension_bound)->entries;
}

WeightMultiplicityTable weight_multiplicities(const RootSystem& rs, const Weight& lambda, double dimension_bound) {
  rs.require_weight(lambda, true, "weight_multiplicities");
  const auto table = dominant_table(rs, lambda, dimension_bound);
  WeightMultiplicityTable out;
  out.highest = lambda;
  for (const auto& [mu, m] : table->entries) {
    for (const auto& e : rs.weyl_elements()) out.entries[e.apply(mu)] = m;
  }
  return out;
}

Complex monomial_value(const RootSystem& rs, const Weight& lambda, const TorusPoint& t) {
  Complex s = 0.0;
  for (const auto& nu : weyl_orbit(rs, lambda)) s += torus_exp(nu, t.thetas());
  return s;
}

CharExpansion monomial_in_char_basis(const RootSystem& rs, const Weight& lambda) {
  rs.require_weight(lambda, true, "monomial_in_char_basis");
  // Every dominant mu <= lambda occurs in pi_lambda, so the table lists them
  // all, in depth order. M[mu][nu] (multiplicity of nu in pi_mu) is
  // unitriangular in this order.
  const auto below = dominant_multiplicities(rs, lambda);
  std::vector<Weight> order;
  for (const auto& [mu, m] : below) order.push_back(mu);
  std::map<Weight, std::map<Weight, Int>> rows;
  for (const auto& mu : order) {
    auto& row = rows[mu];
    for (const auto& [nu, m] : dominant_multiplicities(rs, mu)) row[nu] = m;
  }

  // Solve sum_mu a_mu M[mu][nu] = delta_{nu, lambda} by forward substitution.
  std::map<Weight, BigInt> a;
  for (const auto& nu : order) {
    BigInt s = (nu == lambda) ? 1 : 0;
    for (const auto& [mu, coeff] : a) {
      const auto& row = rows[mu];
      if (auto it = row.find(nu); it != row.end()) s -= coeff * it->second;
    }
    if (rows[nu].at(nu) != 1) throw InternalError("multiplicity matrix is not unitriangular");
    a[nu] = s;
  }

  CharExpansion out;
  for (const auto& [mu, coeff] : a) {
    if (coeff != 0) out.add(mu, static_cast<double>(coeff));
  }
  return out;
}

CharExpansion char_conjugate_expansion(const RootSystem& rs, const CharExpansion& e) {
  CharExpansion out;
  for (const auto& [lambda, c] : e.terms()) out.add(dual_weight(rs, lambda), c);
  return out;
}

bool is_self_dual(const RootSystem& rs, const CharExpansion& e) {
  return std::all_of(e.terms().begin(), e.terms().end(),
                     [&](const auto& term) { return dual_weight(rs, term.first) == term.first; });
}

void validate_expansion(const RootSystem& rs, const CharExpansion& e) {
  for (const auto& [lambda, c] : e.terms()) rs.require_weight(lambda, true, "character expansion");
}

Complex evaluate(const RootSystem& rs, const CharExpansion& e, const TorusPoint& t) {
  Complex s = 0.0;
  for (const auto& [lambda, c] : e.terms()) s += c * char_value(rs, lambda, t);
  return s;
}

// ---------------------------------------------------------------------------
// CharacterPolynomial

CharacterPolynomial::CharacterPolynomial(const RootSystem& rs, const CharExpansion& e) : rank_(rs.rank()) {
  validate_expansion(rs, e);
  std::map<Weight, double> flat;
  for (const auto& [lambda, c] : e.terms()) {
    for (const auto& [mu, m] : weight_multiplicities(rs, lambda).entries) flat[mu] += c * static_cast<double>(m);
  }
  for (const auto& [mu, a] : flat) {
    if (a == 0.0) continue;
    for (int j = 0; j < rank_; ++j) half_coords_.push_back(mu.coord(j));
    coeffs_.push_back(a);
  }
}

Complex CharacterPolynomial::operator()(std::span<const double> thetas) const {
  double re = 0.0;
  double im = 0.0;
  const double* coords = half_coords_.data();
  for (std::size_t k = 0; k < coeffs_.size(); ++k, coords += rank_) {
    double ph = 0.0;
    for (int j = 0; j < rank_; ++j) ph += coords[j] * thetas[static_cast<std::size_t>(j)];
    re += coeffs_[k] * std::cos(ph);
    im += coeffs_[k] * std::sin(ph);
  }
  return {re, im};
}

double CharacterPolynomial::real_part(std::span<const double> thetas) const {
  double re = 0.0;
  const double* coords = half_coords_.data();
  for (std::size_t k = 0; k < coeffs_.size(); ++k, coords += rank_) {
    double ph = 0.0;
    for (int j = 0; j < rank_; ++j) ph += coords[j] * thetas[static_cast<std::size_t>(j)];
    re += coeffs_[k] * std::cos(ph);
  }
  return re;
}

std::vector<double> CharacterPolynomial::max_abs_coords() const {
  std::vector<double> out(static_cast<std::size_t>(rank_), 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    for (int j = 0; j < rank_; ++j) {
      out[static_cast<std::size_t>(j)] =
          std::max(out[static_cast<std::size_t>(j)], std::abs(half_coords_[k * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(j)]));
    }
  }
  return out;
}

}  // namespace satolab
