#include "experiment.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "json.hpp"
#include "satolab/clt.hpp"
#include "satolab/dim_formulas.hpp"
#include "satolab/error.hpp"
#include "satolab/measures.hpp"
#include "satolab/quadrature.hpp"
#include "satolab/sampler.hpp"
#include "satolab/serialization.hpp"
#include "satolab/sympow.hpp"

#ifndef SATOLAB_VERSION
#define SATOLAB_VERSION "0.0.0"
#endif

namespace satolab::cli {

namespace {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Parameter access

const std::string& param(const ExperimentSpec& s, const std::string& name) {
  static const std::string empty;
  auto it = s.params.find(name);
  return it == s.params.end() ? empty : it->second;
}

std::string field(const std::string& name) { return "params." + name; }

Int get_int(const ExperimentSpec& s, const std::string& name) {
  const std::string& v = param(s, name);
  Int out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw ValidationError(field(name) + ": expected an integer, got '" + v + "'");
  }
  return out;
}

Int get_int_at_least(const ExperimentSpec& s, const std::string& name, Int lo) {
  const Int v = get_int(s, name);
  if (v < lo) throw ValidationError(field(name) + ": must be >= " + std::to_string(lo) + ", got " + std::to_string(v));
  return v;
}

std::string get_choice(const ExperimentSpec& s, const std::string& name, std::initializer_list<const char*> choices) {
  const std::string& v = param(s, name);
  for (const char* c : choices) {
    if (v == c) return v;
  }
  std::string list;
  for (const char* c : choices) list += (list.empty() ? "" : "|") + std::string(c);
  throw ValidationError(field(name) + ": expected one of " + list + ", got '" + v + "'");
}

// Rethrows a library validation error with the field path in front.
template <typename Fn>
auto with_field(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw ValidationError(path + ": " + what);
  }
}

RootSystem group_of(const ExperimentSpec& s) {
  if (s.group.empty()) throw ValidationError("group: required for " + s.subcommand);
  return with_field("group", [&] { return build_root_system(GroupType::parse(s.group)); });
}

// ---------------------------------------------------------------------------
// Weight literals

std::string lower(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

// Fundamental weight whose simple root is short (or long).
Weight fundamental_by_length(const RootSystem& rs, bool want_short, std::string_view field_name) {
  std::vector<Int> norms;
  for (const auto& a : rs.simple_roots()) norms.push_back(rs.form(a, a));
  const Int lo = *std::min_element(norms.begin(), norms.end());
  const Int hi = *std::max_element(norms.begin(), norms.end());
  if (lo == hi) {
    throw ValidationError(std::string(field_name) + ": short-fund/long-fund need roots of two lengths; " +
                          rs.type().name() + " is simply laced");
  }
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    if (norms[i] == (want_short ? lo : hi)) {
      if (found) {
        throw ValidationError(std::string(field_name) + ": " + (want_short ? "short-fund" : "long-fund") +
                              " is ambiguous for " + rs.type().name() + "; use w<i>");
      }
      found = i;
    }
  }
  return rs.fundamental_weights()[*found];
}

}  // namespace

Weight parse_weight(const RootSystem& rs, std::string_view text, std::string_view field_name) {
  const std::string s = lower(text);
  const std::string where(field_name);
  if (s.empty()) throw ValidationError(where + ": empty weight literal");
  const int rank = rs.rank();
  Weight total = Weight::zero(rank);
  std::size_t pos = 0;
  bool first = true;
  while (pos < s.size()) {
    Int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw ValidationError(where + ": expected '+' or '-' at position " + std::to_string(pos) + " in '" + s + "'");
    }
    first = false;
    Int coeff = 1;
    bool has_coeff = false;
    const std::size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos > digits) {
      has_coeff = true;
      if (pos - digits > 6) throw ValidationError(where + ": coefficient too large in '" + s + "'");
      coeff = std::stoll(s.substr(digits, pos - digits));
      if (pos < s.size() && s[pos] == '*') ++pos;
    }
    auto starts = [&](std::string_view w) { return s.compare(pos, w.size(), w) == 0; };
    Weight atom;
    if (starts("short-fund")) {
      atom = fundamental_by_length(rs, true, field_name);
      pos += 10;
    } else if (starts("long-fund")) {
      atom = fundamental_by_length(rs, false, field_name);
      pos += 9;
    } else if (starts("rho")) {
      atom = rs.rho();
      pos += 3;
    } else if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'w')) {
      const char kind = s[pos++];
      const std::size_t d0 = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos == d0) throw ValidationError(where + ": missing index after '" + std::string(1, kind) + "'");
      const int i = std::stoi(s.substr(d0, pos - d0));
      if (kind == 'w') {
        if (i < 1 || i > rank) throw ValidationError(where + ": w" + std::to_string(i) + " out of range for " + rs.type().name());
        atom = rs.fundamental_weights()[static_cast<std::size_t>(i - 1)];
      } else {
        const bool type_a = rs.type().family == Family::A;
        const int max_index = type_a ? rank + 1 : rank;
        if (i < 1 || i > max_index) throw ValidationError(where + ": e" + std::to_string(i) + " out of range for " + rs.type().name());
        std::vector<Int> c(static_cast<std::size_t>(rank), 0);
        if (i <= rank) {
          c[static_cast<std::size_t>(i - 1)] = 1;
        } else {
          std::fill(c.begin(), c.end(), -1);  // e_{n+1} = -(e_1 + ... + e_n)
        }
        atom = Weight::from_coords(c);
      }
    } else if (has_coeff && coeff == 0) {
      atom = Weight::zero(rank);
      coeff = 1;
    } else {
      throw ValidationError(where + ": cannot parse weight literal '" + s + "'");
    }
    total = total + atom.scaled(sign * coeff);
  }
  with_field(where, [&] {
    rs.require_weight(total, false, "weight");
    return 0;
  });
  return total;
}

std::vector<Weight> parse_weight_list(const RootSystem& rs, std::string_view text, std::string_view field_name) {
  std::vector<Weight> out;
  std::size_t start = 0;
  int index = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view part = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    out.push_back(parse_weight(rs, part, std::string(field_name) + "[" + std::to_string(index++) + "]"));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

CharExpansion parse_expansion(const RootSystem& rs, std::string_view text, std::string_view field_name) {
  CharExpansion e;
  std::size_t start = 0;
  int index = 0;
  while (true) {
    const std::size_t semi = text.find(';', start);
    std::string term(text.substr(start, semi == std::string_view::npos ? text.npos : semi - start));
    const std::string where = std::string(field_name) + "[" + std::to_string(index++) + "]";
    double coeff = 1.0;
    const std::size_t colon = term.find(':');
    if (colon != std::string::npos) {
      const std::string c = lower(term.substr(0, colon));
      const auto res = std::from_chars(c.data(), c.data() + c.size(), coeff);
      if (c.empty() || res.ec != std::errc() || res.ptr != c.data() + c.size() || !std::isfinite(coeff)) {
        throw ValidationError(where + ": bad coefficient '" + c + "'");
      }
      term = term.substr(colon + 1);
    }
    const Weight w = parse_weight(rs, term, where);
    if (!rs.is_dominant(w)) throw ValidationError(where + ": weight " + w.to_string() + " is not dominant");
    e.add(w, coeff);
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return e;
}

// ---------------------------------------------------------------------------
// Spec plumbing

const std::vector<SubcommandSpec>& subcommands() {
  static const std::vector<SubcommandSpec> table = {
      {"roots", "Root system data: roots, rho, fundamental weights, |W|", true, {}},
      {"gram", "Gram matrix of characters under the Sato-Tate measure", true,
       {{"weights", "", "comma-separated dominant weights, e.g. e1,e1+e2,2e1"},
        {"nodes", "0", "grid nodes per angle (0: smallest exact grid)"}}},
      {"density", "Sato-Tate or Plancherel density on a torus grid", true,
       {{"kind", "st", "st | plancherel"},
        {"p", "0", "prime for the Plancherel density"},
        {"nodes", "0", "grid nodes per angle (0: smallest exact grid)"}}},
      {"moments", "First and second moments of a character expansion", true,
       {{"weight", "", "single dominant weight", true}, {"hp", "", "test function, e.g. 0.6:e1;0.8:2e1", true}}},
      {"clt", "Monte Carlo CLT for normalized prime sums", true,
       {{"hp", "", "self-dual test function, e.g. e1"},
        {"x", "10000", "prime cutoff"},
        {"n", "20000", "family size"},
        {"sampling", "st", "st | plancherel"},
        {"prime-floor", "2", "smallest prime summed over"},
        {"plancherel-cutoff", "500", "primes above this use Sato-Tate"}}},
      {"complex-moments", "Complex moments of S for a non-self-dual test function", true,
       {{"hp", "", "non-self-dual test function, e.g. w1"},
        {"x", "5000", "prime cutoff"},
        {"n", "20000", "family size"},
        {"max-order", "4", "largest moment order (<= 8)"},
        {"sampling", "st", "st | plancherel"},
        {"prime-floor", "2", "smallest prime summed over"}}},
      {"sympow", "CLT for sums of H_u(a_p) with a_p semicircular", false,
       {{"u", "2", "symmetric power"}, {"x", "10000", "prime cutoff"}, {"n", "20000", "family size"}}},
      {"dims", "Leading terms of dimension formulas (sp<2n> or g2)", true,
       {{"k-range", "", "weights as lo..hi"},
        {"level", "", "level N > 2 (sp only)", true},
        {"ratio", "1", "index ratio, integer or p/q (g2 only)"}}},
      {"h-table", "Coefficients of H_0..H_u", false, {{"u", "", "largest degree (<= 200)"}}},
  };
  return table;
}

const SubcommandSpec& subcommand(std::string_view name) {
  for (const auto& s : subcommands()) {
    if (s.name == name) return s;
  }
  throw ValidationError("subcommand: unknown subcommand '" + std::string(name) + "'");
}

std::string to_json(const ExperimentSpec& spec) {
  Json j;
  j["subcommand"] = spec.subcommand;
  j["group"] = spec.group;
  j["params"] = Json::object();
  for (const auto& [k, v] : spec.params) j["params"][k] = v;
  j["seed"] = spec.seed;
  j["format"] = spec.format;
  j["out"] = spec.out;
  return j.dump(2);
}

ExperimentSpec from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config: expected a JSON object");
  ExperimentSpec s;
  for (const auto& [key, value] : j.items()) {
    if (key == "subcommand" || key == "group" || key == "format" || key == "out") {
      if (!value.is_string()) throw ValidationError(key + ": expected a string");
      const auto v = value.get<std::string>();
      if (key == "subcommand") s.subcommand = v;
      if (key == "group") s.group = v;
      if (key == "format") s.format = v;
      if (key == "out") s.out = v;
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) throw ValidationError("seed: expected a nonnegative integer");
      s.seed = value.get<std::uint64_t>();
    } else if (key == "params") {
      if (!value.is_object()) throw ValidationError("params: expected an object");
      for (const auto& [pk, pv] : value.items()) {
        if (pv.is_string()) {
          s.params[pk] = pv.get<std::string>();
        } else if (pv.is_number_integer()) {
          s.params[pk] = std::to_string(pv.get<Int>());
        } else if (pv.is_number()) {
          s.params[pk] = format_double(pv.get<double>());
        } else {
          throw ValidationError("params." + pk + ": expected a string or number");
        }
      }
    } else {
      throw ValidationError(key + ": unknown field");
    }
  }
  return s;
}

ExperimentSpec canonicalize(const ExperimentSpec& spec) {
  const SubcommandSpec& sub = subcommand(spec.subcommand);
  ExperimentSpec c = spec;
  if (c.format != "json" && c.format != "csv") throw ValidationError("format: expected json or csv, got '" + c.format + "'");
  if (c.threads < 1) throw ValidationError("threads: must be >= 1");
  if (!sub.needs_group) c.group.clear();
  if (sub.needs_group && c.group.empty()) throw ValidationError("group: required for " + sub.name);
  for (const auto& [k, v] : c.params) {
    const bool known = std::any_of(sub.params.begin(), sub.params.end(), [&](const ParamSpec& p) { return p.name == k; });
    if (!known) throw ValidationError(field(k) + ": unknown parameter for " + sub.name);
  }
  for (const auto& p : sub.params) {
    if (c.params.count(p.name) != 0) continue;
    if (!p.default_value.empty()) {
      c.params[p.name] = p.default_value;
    } else if (!p.optional) {
      throw ValidationError(field(p.name) + ": required for " + sub.name);
    }
  }
  return c;
}

namespace {

std::string shell_quote(const std::string& v) {
  const bool plain = !v.empty() && std::all_of(v.begin(), v.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || std::string_view("_.,+-:/=").find(ch) != std::string_view::npos;
  });
  if (plain) return v;
  std::string out = "'";
  for (char ch : v) {
    if (ch == '\'') {
      out += "'\\''";
    } else {
      out += ch;
    }
  }
  return out + "'";
}

}  // namespace

std::string reproduction_line(const ExperimentSpec& c) {
  std::string line = "satolab " + c.subcommand;
  if (!c.group.empty()) line += " --group " + shell_quote(c.group);
  for (const auto& [k, v] : c.params) line += " --" + k + " " + shell_quote(v);
  line += " --seed " + std::to_string(c.seed) + " --format " + c.format;
  return line;
}

// ---------------------------------------------------------------------------
// Artifacts

namespace {

struct Artifact {
  Json result = Json::object();
  std::vector<std::pair<std::string, std::string>> meta;  // CSV metadata lines
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string num(double v) { return format_double(v); }

Json weight_array(const Weight& w) {
  Json a = Json::array();
  for (Int d : w.doubled()) a.push_back(d);
  return a;
}

Artifact render_roots(const ExperimentSpec& s) {
  const RootSystem rs = group_of(s);
  Artifact a;
  a.result = Json::parse(root_system_json(rs));
  a.meta = {{"group", rs.type().name()},
            {"weyl_order", std::to_string(rs.weyl_order())},
            {"minus_one_in_weyl", minus_one_in_weyl(rs) ? "true" : "false"}};
  a.header = {"kind", "index"};
  for (int j = 1; j <= rs.rank(); ++j) a.header.push_back("c" + std::to_string(j));
  auto emit = [&](const char* kind, std::span<const Weight> ws) {
    for (std::size_t i = 0; i < ws.size(); ++i) {
      std::vector<std::string> row{kind, std::to_string(i + 1)};
      for (int j = 0; j < rs.rank(); ++j) row.push_back(num(ws[i].coord(j)));
      a.rows.push_back(row);
    }
  };
  emit("simple_root", rs.simple_roots());
  emit("positive_root", rs.positive_roots());
  emit("fundamental_weight", rs.fundamental_weights());
  emit("rho", std::span<const Weight>(&rs.rho(), 1));
  return a;
}

Artifact render_gram(const ExperimentSpec& s) {
  const RootSystem rs = group_of(s);
  const auto ws = parse_weight_list(rs, param(s, "weights"), field("weights"));
  int bw = 0;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (!rs.is_dominant(ws[i])) {
      throw ValidationError(field("weights") + "[" + std::to_string(i) + "]: weight " + ws[i].to_string() +
                            " is not dominant");
    }
    bw = std::max(bw, character_bandwidth(rs, ws[i]));
  }
  const Int nodes = get_int_at_least(s, "nodes", 0);
  if (nodes != 0 && (nodes % 2 == 0 || nodes < 3)) throw ValidationError(field("nodes") + ": must be odd and >= 3");
  if (std::pow(static_cast<double>(nodes), rs.rank()) > 2e6) throw ValidationError(field("nodes") + ": grid too large");
  // An explicit grid that is too coarse trips the bandwidth guard in gram_matrix.
  const auto q = nodes == 0 ? TorusQuadrature::for_bandwidth(rs, 2 * bw + density_bandwidth(rs))
                            : TorusQuadrature(rs, static_cast<int>(nodes));
  const auto g = gram_matrix(rs, q, ws, s.threads);
  const std::size_t n = ws.size();
  double err = 0.0, max_imag = 0.0;
  Json re = Json::array(), im = Json::array(), wj = Json::array();
  Artifact a;
  a.header = {"weight"};
  for (const auto& w : ws) a.header.push_back(w.to_string());
  for (std::size_t i = 0; i < n; ++i) {
    Json rr = Json::array(), ri = Json::array();
    std::vector<std::string> row{ws[i].to_string()};
    for (std::size_t j = 0; j < n; ++j) {
      const Complex z = g[i][j];
      err = std::max(err, std::abs(z - Complex(i == j ? 1.0 : 0.0)));
      max_imag = std::max(max_imag, std::abs(z.imag()));
      rr.push_back(z.real());
      ri.push_back(z.imag());
      row.push_back(num(z.real()));
    }
    re.push_back(rr);
    im.push_back(ri);
    wj.push_back(weight_array(ws[i]));
    a.rows.push_back(row);
  }
  a.result["weights"] = wj;
  a.result["nodes_per_dim"] = q.nodes_per_dim();
  a.result["re"] = re;
  a.result["im"] = im;
  a.result["max_abs_error_vs_identity"] = err;
  a.meta = {{"group", rs.type().name()},
            {"nodes_per_dim", std::to_string(q.nodes_per_dim())},
            {"max_abs_imag", num(max_imag)},
            {"max_abs_error_vs_identity", num(err)}};
  return a;
}

Artifact render_density(const ExperimentSpec& s) {
  const RootSystem rs = group_of(s);
  const std::string kind = get_choice(s, "kind", {"st", "plancherel"});
  const Int nodes_param = get_int_at_least(s, "nodes", 0);
  MeasureDensity d = MeasureDensity::sato_tate(rs);
  if (kind == "plancherel") {
    const Int p = get_int(s, "p");
    if (p < 2 || sieve_primes(p).primes.back() != p) throw ValidationError(field("p") + ": expected a prime, got " + std::to_string(p));
    d = MeasureDensity::plancherel(rs, p);
  }
  const int exact_nodes = 2 * density_bandwidth(rs) + 3;
  int nodes = nodes_param == 0 ? exact_nodes : static_cast<int>(nodes_param);
  if (nodes % 2 == 0 || nodes < 3) throw ValidationError(field("nodes") + ": must be odd and >= 3");
  if (std::pow(static_cast<double>(nodes), rs.rank()) > 2e6) throw ValidationError(field("nodes") + ": grid too large");
  const TorusQuadrature normalizer(rs, std::max(nodes, exact_nodes));
  d = normalize(d, normalizer, s.threads);
  const TorusQuadrature grid(rs, nodes);
  Artifact a;
  for (int j = 1; j <= rs.rank(); ++j) a.header.push_back("theta_" + std::to_string(j));
  a.header.push_back("density");
  std::vector<double> th(static_cast<std::size_t>(rs.rank()));
  CompensatedSum<double> total;
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    grid.node(i, th);
    const double v = d(th);
    total.add(v);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    std::vector<std::string> row;
    for (double t : th) row.push_back(num(t));
    row.push_back(num(v));
    a.rows.push_back(row);
  }
  const double integral = total.value() * grid.weight();
  a.result["kind"] = kind;
  if (kind == "plancherel") a.result["p"] = d.prime();
  a.result["nodes_per_dim"] = nodes;
  a.result["normalization"] = d.normalization();
  a.result["grid_integral"] = integral;
  a.result["grid_min"] = lo;
  a.result["grid_max"] = hi;
  a.result["period"] = rs.angle_period();
  a.meta = {{"group", rs.type().name()},
            {"kind", kind},
            {"normalization", num(d.normalization())},
            {"grid_integral", num(integral)}};
  return a;
}

CharExpansion expansion_param(const RootSystem& rs, const ExperimentSpec& s) {
  const bool has_weight = !param(s, "weight").empty();
  const bool has_hp = !param(s, "hp").empty();
  if (has_weight && has_hp) throw ValidationError(field("weight") + ": give either weight or hp, not both");
  if (has_weight) {
    const Weight w = parse_weight(rs, param(s, "weight"), field("weight"));
    if (!rs.is_dominant(w)) throw ValidationError(field("weight") + ": weight " + w.to_string() + " is not dominant");
    return CharExpansion::single(w);
  }
  if (!has_hp) throw ValidationError(field("weight") + ": one of weight or hp is required");
  return parse_expansion(rs, param(s, "hp"), field("hp"));
}

Artifact render_moments(const ExperimentSpec& s) {
  const RootSystem rs = group_of(s);
  const CharExpansion e = expansion_param(rs, s);
  const auto q = TorusQuadrature::for_bandwidth(rs, 2 * expansion_bandwidth(rs, e) + density_bandwidth(rs));
  const CharacterMoments m = character_moments(rs, q, e, s.threads);
  Artifact a;
  a.result["expansion"] = Json::parse(expansion_to_json(e));
  a.result["self_dual"] = is_self_dual(rs, e);
  a.result["first"] = {{"re", m.first.real()}, {"im", m.first.imag()}};
  a.result["second"] = m.second;
  a.result["re_sq"] = m.re_sq;
  a.result["im_sq"] = m.im_sq;
  a.result["square_no_conj"] = {{"re", m.square_no_conj.real()}, {"im", m.square_no_conj.imag()}};
  a.meta = {{"group", rs.type().name()}, {"nodes_per_dim", std::to_string(q.nodes_per_dim())}};
  a.header = {"quantity", "re", "im"};
  a.rows = {{"first", num(m.first.real()), num(m.first.imag())},
            {"second", num(m.second), "0"},
            {"re_sq", num(m.re_sq), "0"},
            {"im_sq", num(m.im_sq), "0"},
            {"square_no_conj", num(m.square_no_conj.real()), num(m.square_no_conj.imag())}};
  return a;
}

FamilyConfig family_config(const RootSystem& rs, const ExperimentSpec& s) {
  FamilyConfig c;
  c.group = rs.type();
  c.test_fn = parse_expansion(rs, param(s, "hp"), field("hp"));
  c.x = get_int_at_least(s, "x", 3);
  c.family_size = static_cast<std::size_t>(get_int_at_least(s, "n", static_cast<Int>(kMinFamilySize)));
  c.sampling = get_choice(s, "sampling", {"st", "plancherel"}) == "st" ? SamplingMode::sato_tate_only
                                                                      : SamplingMode::plancherel_per_prime;
  c.prime_floor = get_int_at_least(s, "prime-floor", 2);
  if (c.prime_floor > c.x) throw ValidationError(field("prime-floor") + ": must not exceed x");
  if (s.params.count("plancherel-cutoff") != 0) c.plancherel_cutoff = get_int_at_least(s, "plancherel-cutoff", 2);
  c.seed = s.seed;
  c.threads = s.threads;
  return c;
}

void report_into(Artifact& a, const CLTReport& r) {
  a.result["report"] = Json::parse(clt_report_json(r));
  a.meta.insert(a.meta.end(), {{"n", std::to_string(r.n)},
                               {"prime_count", std::to_string(r.prime_count)},
                               {"mean", num(r.mean)},
                               {"variance", num(r.variance)},
                               {"m3", num(r.raw_moments[3])},
                               {"m4", num(r.raw_moments[4])},
                               {"ks", num(r.ks)}});
  a.header = {"bin_lo", "bin_hi", "count"};
  const auto& h = r.histogram;
  a.rows.push_back({"-inf", num(h.edges.front()), std::to_string(h.underflow)});
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    a.rows.push_back({num(h.edges[b]), num(h.edges[b + 1]), std::to_string(h.counts[b])});
  }
  a.rows.push_back({num(h.edges.back()), "inf", std::to_string(h.overflow)});
  std::fprintf(stderr, "runtime: %.3f s\n", r.runtime_seconds);
}

Artifact render_clt(const ExperimentSpec& s) {
  const RootSystem rs = group_of(s);
  const FamilyConfig c = family_config(rs, s);
  with_field(field("hp"), [&] { return TestFunction(rs, c.test_fn, TestMode::self_dual); });
  Artifact a;
  a.meta = {{"group", rs.type().name()}};
  report_into(a, simulate_family(rs, c));
  return a;
}

Artifact render_complex_moments(const ExperimentSpec& s) {
  const RootSystem rs = group_of(s);
  const FamilyConfig c = family_config(rs, s);
  const Int order = get_int_at_least(s, "max-order", 1);
  if (order > kMaxComplexMoment) throw ValidationError(field("max-order") + ": must be <= 8");
  with_field(field("hp"), [&] { return TestFunction(rs, c.test_fn, TestMode::complex); });
  if (is_self_dual(rs, c.test_fn)) throw ValidationError(field("hp") + ": test function is self-dual; use clt");
  const auto ms = complex_moments(rs, c, static_cast<int>(order));
  Artifact a;
  a.meta = {{"group", rs.type().name()}, {"n", std::to_string(c.family_size)}};
  a.header = {"order", "raw_re", "raw_im", "raw_se", "re", "re_se", "im", "im_se", "gaussian_limit"};
  Json list = Json::array();
  for (const auto& m : ms) {
    list.push_back({{"order", m.order},
                    {"raw_re", m.raw.real()},
                    {"raw_im", m.raw.imag()},
                    {"raw_se", m.raw_se},
                    {"re", m.re},
                    {"re_se", m.re_se},
                    {"im", m.im},
                    {"im_se", m.im_se},
                    {"gaussian_limit", m.gaussian_limit}});
    a.rows.push_back({std::to_string(m.order), num(m.raw.real()), num(m.raw.imag()), num(m.raw_se), num(m.re),
                      num(m.re_se), num(m.im), num(m.im_se), num(m.gaussian_limit)});
  }
  a.result["moments"] = list;
  return a;
}

Artifact render_sympow(const ExperimentSpec& s) {
  SymPowConfig c;
  const Int u = get_int_at_least(s, "u", 1);
  if (u > kMaxSymPower) throw ValidationError(field("u") + ": must be <= 200");
  c.u = static_cast<int>(u);
  c.x = get_int_at_least(s, "x", 3);
  c.family_size = static_cast<std::size_t>(get_int_at_least(s, "n", static_cast<Int>(kMinFamilySize)));
  c.seed = s.seed;
  c.threads = s.threads;
  Artifact a;
  a.meta = {{"u", std::to_string(c.u)}};
  report_into(a, sympow_clt(c));
  return a;
}

std::pair<Int, Int> parse_range(const std::string& v, const std::string& name) {
  const auto dots = v.find("..");
  auto to_int = [&](std::string_view t) {
    Int out = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
      throw ValidationError(field(name) + ": expected lo..hi, got '" + v + "'");
    }
    return out;
  };
  if (dots == std::string::npos) {
    const Int k = to_int(v);
    return {k, k};
  }
  const Int lo = to_int(std::string_view(v).substr(0, dots));
  const Int hi = to_int(std::string_view(v).substr(dots + 2));
  if (lo > hi) throw ValidationError(field(name) + ": empty range '" + v + "'");
  if (hi - lo > 100000) throw ValidationError(field(name) + ": range too long");
  return {lo, hi};
}

Rational parse_rational(const std::string& v, const std::string& name) {
  try {
    const auto slash = v.find('/');
    if (slash == std::string::npos) return Rational(BigInt(v));
    const BigInt den(v.substr(slash + 1));
    if (den == 0) throw ValidationError(field(name) + ": zero denominator");
    return Rational(BigInt(v.substr(0, slash)), den);
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception&) {
    throw ValidationError(field(name) + ": expected an integer or p/q, got '" + v + "'");
  }
}

Artifact render_dims(const ExperimentSpec& s) {
  const std::string g = lower(s.group);
  int genus = 0;
  bool g2 = false;
  if (g == "g2") {
    g2 = true;
  } else if (g.rfind("sp", 0) == 0) {
    const std::string digits = g.substr(2);
    const int two_n = digits.empty() ? -1 : std::atoi(digits.c_str());
    if (two_n < 2 || two_n % 2 != 0 || std::to_string(two_n) != digits) {
      throw ValidationError("group: expected sp<2n> or g2, got '" + s.group + "'");
    }
    genus = two_n / 2;
  } else if (g.size() >= 2 && g[0] == 'c') {
    genus = with_field("group", [&] { return GroupType::parse(s.group).rank; });
  } else {
    throw ValidationError("group: dims supports sp<2n> (or C<n>) and g2, got '" + s.group + "'");
  }
  const auto [lo, hi] = parse_range(param(s, "k-range"), "k-range");
  Artifact a;
  a.header = {"k", "numerator", "denominator", "approx"};
  Json rows = Json::array();
  Int level = 0;
  Rational ratio = 1;
  if (g2) {
    if (s.params.count("level") != 0) throw ValidationError(field("level") + ": not used for g2");
    ratio = parse_rational(param(s, "ratio"), "ratio");
    a.meta = {{"formula", "g2"}, {"ratio", ratio.str()}};
  } else {
    if (param(s, "ratio") != "1") throw ValidationError(field("ratio") + ": only used for g2");
    if (param(s, "level").empty()) throw ValidationError(field("level") + ": required for sp<2n>");
    level = get_int(s, "level");
    if (level <= 2) throw ValidationError(field("level") + ": must be > 2");
    if (lo <= genus + 1) throw ValidationError(field("k-range") + ": weights must exceed n + 1 = " + std::to_string(genus + 1));
    a.meta = {{"formula", "siegel"}, {"genus", std::to_string(genus)}, {"level", std::to_string(level)}};
  }
  for (Int k = lo; k <= hi; ++k) {
    const Rational v = g2 ? with_field(field("k-range"), [&] { return g2_leading_term(k, ratio); })
                          : with_field(field("k-range"), [&] { return siegel_leading_term(genus, k, level); });
    const std::string n = boost::multiprecision::numerator(v).str();
    const std::string d = boost::multiprecision::denominator(v).str();
    const double approx = static_cast<double>(v);
    rows.push_back({{"k", k}, {"numerator", n}, {"denominator", d}, {"approx", approx}});
    a.rows.push_back({std::to_string(k), n, d, num(approx)});
  }
  a.result["rows"] = rows;
  return a;
}

Artifact render_h_table(const ExperimentSpec& s) {
  const Int u = get_int_at_least(s, "u", 0);
  if (u > kMaxSymPower) throw ValidationError(field("u") + ": must be <= 200");
  Artifact a;
  a.header = {"u", "degree", "coefficient"};
  Json table = Json::array();
  for (int v = 0; v <= u; ++v) {
    const IntPolynomial h = h_polynomial(v);
    Json coeffs = Json::array();
    for (int k = 0; k <= h.degree(); ++k) {
      const std::string c = h.coefficient(k).str();
      coeffs.push_back(c);
      a.rows.push_back({std::to_string(v), std::to_string(k), c});
    }
    table.push_back(coeffs);
  }
  a.result["coefficients"] = table;
  return a;
}

}  // namespace

std::string render(const ExperimentSpec& c) {
  Artifact a;
  const std::string& sub = c.subcommand;
  if (sub == "roots") a = render_roots(c);
  else if (sub == "gram") a = render_gram(c);
  else if (sub == "density") a = render_density(c);
  else if (sub == "moments") a = render_moments(c);
  else if (sub == "clt") a = render_clt(c);
  else if (sub == "complex-moments") a = render_complex_moments(c);
  else if (sub == "sympow") a = render_sympow(c);
  else if (sub == "dims") a = render_dims(c);
  else if (sub == "h-table") a = render_h_table(c);
  else throw ValidationError("subcommand: unknown subcommand '" + sub + "'");

  const std::string repro = reproduction_line(c);
  if (c.format == "json") {
    Json j;
    j["version"] = SATOLAB_VERSION;
    j["reproduce"] = repro;
    j["spec"] = Json::parse(to_json(c));
    j["spec"].erase("out");
    j["result"] = a.result;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "# satolab " << SATOLAB_VERSION << "\n";
  os << "# reproduce: " << repro << "\n";
  for (const auto& [k, v] : a.meta) os << "# " << k << ": " << v << "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_field(cells[i]);
    os << "\r\n";
  };
  line(a.header);
  for (const auto& r : a.rows) line(r);
  return os.str();
}

void write_atomically(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    if (!std::cout) throw IoError("failed to write to stdout");
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot rename " + tmp.string() + " to " + target.string() + ": " + ec.message());
  }
}

std::string run(const ExperimentSpec& spec) {
  const ExperimentSpec c = canonicalize(spec);
  const std::string text = render(c);
  write_atomically(c.out, text);
  return text;
}

}  // namespace satolab::cli
