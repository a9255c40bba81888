#include "doctest.h"

#include <string>

#include "satolab/error.hpp"
#include "satolab/serialization.hpp"

using namespace satolab;

TEST_CASE("expansion JSON round trip") {
  CharExpansion e;
  e.add(Weight::from_coords({1, 0}), 0.6);
  e.add(Weight::from_coords({2, 0}), -0.8);
  const std::string text = expansion_to_json(e);
  CHECK(text == R"([{"weight":[2,0],"coeff":0.6},{"weight":[4,0],"coeff":-0.8}])");
  CHECK(expansion_from_json(text) == e);
  CHECK(expansion_from_json("[]").empty());
  CHECK_THROWS_AS(expansion_from_json("{"), ValidationError);
  CHECK_THROWS_AS(expansion_from_json(R"([{"weight":[1.5],"coeff":1}])"), ValidationError);
  CHECK_THROWS_AS(expansion_from_json(R"([{"coeff":1}])"), ValidationError);
}

TEST_CASE("root system JSON") {
  const auto g2 = build_root_system(GroupType::parse("G2"));
  const std::string j = root_system_json(g2);
  CHECK(j.find("\"weyl_order\": 12") != std::string::npos);
  CHECK(j.find("\"group\": \"G2\"") != std::string::npos);
  CHECK(root_system_json(g2) == j);
}

TEST_CASE("CSV and number formatting") {
  CHECK(csv_field("abc") == "abc");
  CHECK(csv_field("(1,0)") == "\"(1,0)\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.0}) CHECK(std::stod(format_double(v)) == v);
}
