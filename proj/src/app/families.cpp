#include "nonclass/app/families.hpp"

#include "nonclass/closed_forms.hpp"

#include <algorithm>

namespace nonclass::app {

namespace {

template <typename T>
T require(const std::optional<T>& value, const char* flag, const std::string& family) {
  if (!value) throw std::invalid_argument("family '" + family + "' needs " + flag);
  return *value;
}

}  // namespace

const std::vector<FamilyInfo>& families() {
  static const std::vector<FamilyInfo> registry = {
      {"bell", "", "(|00> + |11>)/sqrt2; D = 1"},
      {"werner", "--d --p", "U(x)U-invariant Werner state on C^d (x) C^d; D = |2pd - d - 1|/(d^2 - 1)"},
      {"schmidt-pure", "--a", "a|00> + sqrt(1 - a^2)|11>; D = 2a sqrt(1 - a^2)"},
      {"rank2-separable", "--alpha --beta",
       "(|0><0| (x) |0><0| + |a2><a2| (x) |b2><b2|)/2, a2 at Bloch angle beta, b2 at alpha; max D = 1/2 at "
       "(pi, pi/2)"},
      {"maximally-entangled", "--d", "sum_k |kk>/sqrt d; D = 1"},
      {"random", "--m --n --rank --state-seed", "GG^dagger / tr for a complex Ginibre G"},
  };
  return registry;
}

bool is_family(const std::string& name) {
  const auto& f = families();
  return std::any_of(f.begin(), f.end(), [&](const FamilyInfo& i) { return i.name == name; });
}

DensityOperator make_family_state(const std::string& name, const FamilyParams& params) {
  if (name == "bell") return bell_state().density();
  if (name == "werner") {
    return werner_state(WernerParams(require(params.d, "--d", name), require(params.p, "--p", name)));
  }
  if (name == "schmidt-pure") return schmidt_pure_state(require(params.a, "--a", name)).density();
  if (name == "rank2-separable") {
    return rank2_ensemble(require(params.alpha, "--alpha", name), require(params.beta, "--beta", name)).assemble();
  }
  if (name == "maximally-entangled") return maximally_entangled_state(require(params.d, "--d", name)).density();
  if (name == "random") {
    const int rank = params.rank > 0 ? params.rank : params.m * params.n;
    return random_density(params.m, params.n, rank, params.seed);
  }
  throw UnknownFamily("unknown family '" + name + "'");
}

}  // namespace nonclass::app
