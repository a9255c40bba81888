#include "satolab/serialization.hpp"

#include <charconv>
#include <system_error>

#include "json.hpp"
#include "satolab/error.hpp"

namespace satolab {

namespace {

using Json = nlohmann::ordered_json;

Json weight_json(const Weight& w) {
  Json a = Json::array();
  for (Int d : w.doubled()) a.push_back(d);
  return a;
}

}  // namespace

std::string root_system_json(const RootSystem& rs) {
  Json j;
  j["group"] = rs.type().name();
  j["rank"] = rs.rank();
  j["coordinates"] = "doubled";
  Json gram = Json::array();
  for (Int g : rs.gram()) gram.push_back(g);
  j["gram"] = gram;
  auto list = [](std::span<const Weight> ws) {
    Json a = Json::array();
    for (const auto& w : ws) a.push_back(weight_json(w));
    return a;
  };
  j["simple_roots"] = list(rs.simple_roots());
  j["positive_roots"] = list(rs.positive_roots());
  j["fundamental_weights"] = list(rs.fundamental_weights());
  j["rho"] = weight_json(rs.rho());
  j["weyl_order"] = rs.weyl_order();
  j["minus_one_in_weyl"] = minus_one_in_weyl(rs);
  Json signs = Json::array();
  for (const auto& w : rs.weyl_elements()) signs.push_back(w.sign);
  j["weyl_signs"] = signs;
  return j.dump(2);
}

std::string expansion_to_json(const CharExpansion& e) {
  Json a = Json::array();
  for (const auto& [w, c] : e.terms()) {
    Json t;
    t["weight"] = weight_json(w);
    t["coeff"] = c;
    a.push_back(t);
  }
  return a.dump();
}

CharExpansion expansion_from_json(std::string_view text) {
  Json a;
  try {
    a = Json::parse(text);
  } catch (const Json::exception& ex) {
    throw ValidationError(std::string("expansion JSON: ") + ex.what());
  }
  if (!a.is_array()) throw ValidationError("expansion JSON: expected an array");
  CharExpansion e;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& t = a[i];
    const std::string where = "expansion JSON [" + std::to_string(i) + "]";
    if (!t.is_object() || !t.contains("weight") || !t.contains("coeff")) {
      throw ValidationError(where + ": expected {weight, coeff}");
    }
    if (!t["weight"].is_array() || !t["coeff"].is_number()) throw ValidationError(where + ": bad field types");
    std::vector<Int> d;
    for (const auto& v : t["weight"]) {
      if (!v.is_number_integer()) throw ValidationError(where + ".weight: expected integers");
      d.push_back(v.get<Int>());
    }
    e.add(Weight(std::move(d)), t["coeff"].get<double>());
  }
  return e;
}

std::string clt_report_json(const CLTReport& r) {
  Json j;
  j["n"] = r.n;
  j["x"] = r.x;
  j["prime_count"] = r.prime_count;
  j["seed"] = r.seed;
  j["mean"] = r.mean;
  j["variance"] = r.variance;
  j["skewness"] = r.skewness;
  j["excess_kurtosis"] = r.excess_kurtosis;
  Json raw = Json::object();
  for (int k = 1; k <= 8; ++k) raw[std::to_string(k)] = r.raw_moments[static_cast<std::size_t>(k)];
  j["raw_moments"] = raw;
  j["ks"] = r.ks;
  Json h;
  h["edges"] = r.histogram.edges;
  h["counts"] = r.histogram.counts;
  h["underflow"] = r.histogram.underflow;
  h["overflow"] = r.histogram.overflow;
  j["histogram"] = h;
  return j.dump(2);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  if (res.ec != std::errc()) throw InternalError("format_double failed");
  return std::string(buf, res.ptr);
}

}  // namespace satolab
