#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "satolab/root_system.hpp"

namespace satolab::detail {

/// Multiplicities of the dominant weights of one irreducible representation,
/// ordered by depth below the highest weight.
struct DominantMultiplicities {
  Weight highest;
  std::vector<std::pair<Weight, Int>> entries;  // (dominant weight, multiplicity)
  BigInt dimension;
};

struct MultiplicityCache {
  std::mutex mutex;
  std::map<Weight, std::shared_ptr<const DominantMultiplicities>> tables;
};

}  // namespace satolab::detail
