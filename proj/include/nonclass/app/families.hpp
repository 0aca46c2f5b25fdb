#pragma once

#include "nonclass/core.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nonclass::app {

class UnknownFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FamilyParams {
  std::optional<int> d;
  std::optional<double> p;
  std::optional<double> a;
  std::optional<double> alpha;
  std::optional<double> beta;
  int m = 2;
  int n = 2;
  int rank = 0;  // 0 means full rank
  std::uint64_t seed = 1;
};

struct FamilyInfo {
  std::string name;
  std::string params;
  std::string help;
};

const std::vector<FamilyInfo>& families();
bool is_family(const std::string& name);

/// Throws UnknownFamily for unregistered names and std::invalid_argument for
/// missing or out-of-range parameters.
DensityOperator make_family_state(const std::string& name, const FamilyParams& params);

}  // namespace nonclass::app
