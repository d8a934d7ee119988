#include "ucp/axioms.hpp"

#include <algorithm>
#include <limits>

#include "ucp/error.hpp"

namespace ucp {

const AxiomTally& AxiomReport::at(const std::string& name) const {
  for (const auto& t : tallies)
    if (t.name == name) return t;
  throw Error(ErrorKind::InvalidValue, "no axiom tally named '" + name + "'");
}

std::size_t AxiomReport::min_trials() const {
  std::size_t m = std::numeric_limits<std::size_t>::max();
  for (const auto& t : tallies) m = std::min(m, t.trials);
  return tallies.empty() ? 0 : m;
}

}  // namespace ucp
