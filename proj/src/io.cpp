#include "nonclass/io.hpp"

#include <fstream>

namespace nonclass {

using nlohmann::json;

namespace {

json real_vector(const RealVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json complex_entries(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return out;
}

int positive_int(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long>() < 1) {
    throw FormatError(std::string("state JSON: \"") + key + "\" must be a positive integer");
  }
  return j.at(key).get<int>();
}

}  // namespace

json state_to_json(const DensityOperator& rho) {
  return {{"dim_a", rho.dim_a()}, {"dim_b", rho.dim_b()}, {"matrix", complex_entries(rho.matrix())}};
}

DensityOperator state_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("state JSON: expected an object");
  const int m = positive_int(j, "dim_a");
  const int n = positive_int(j, "dim_b");
  if (!j.contains("matrix") || !j.at("matrix").is_array()) {
    throw FormatError("state JSON: \"matrix\" must be an array of [re, im] pairs");
  }
  const json& entries = j.at("matrix");
  const std::size_t d = static_cast<std::size_t>(m) * static_cast<std::size_t>(n);
  if (entries.size() != d * d) {
    throw FormatError("state JSON: expected " + std::to_string(d * d) + " matrix entries, got " +
                      std::to_string(entries.size()));
  }
  Matrix rho(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const json& e = entries[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw FormatError("state JSON: entry " + std::to_string(k) + " is not a [re, im] pair");
    }
    rho(static_cast<Eigen::Index>(k / d), static_cast<Eigen::Index>(k % d)) =
        Complex(e[0].get<double>(), e[1].get<double>());
  }
  return DensityOperator(std::move(rho), m, n);
}

DensityOperator read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON in ") + path + ": " + e.what());
  }
  return state_from_json(j);
}

json generator_basis_to_json(const GeneratorBasis& basis) {
  json map = json::array();
  for (std::size_t i = 0; i < basis.index_map.size(); ++i) {
    const GeneratorTag& t = basis.index_map[i];
    json entry = {{"index", i}, {"label", t.label()}};
    if (t.kind == GeneratorKind::W) {
      entry["kind"] = "W";
      entry["r"] = t.r;
    } else {
      entry["kind"] = t.kind == GeneratorKind::U ? "U" : "V";
      entry["p"] = t.p;
      entry["q"] = t.q;
    }
    map.push_back(std::move(entry));
  }
  return {{"dim", basis.dim}, {"basis_vectors", complex_entries(basis.basis)}, {"index_map", map}};
}

json fano_to_json(const FanoForm& f) {
  json t = json::array();
  for (Eigen::Index i = 0; i < f.t.rows(); ++i) t.push_back(real_vector(f.t.row(i).transpose()));
  return {{"dim_a", f.dim_a},
          {"dim_b", f.dim_b},
          {"r_a", real_vector(f.r_a)},
          {"r_b", real_vector(f.r_b)},
          {"t", t},
          {"basis_a", generator_basis_to_json(f.basis_a)},
          {"basis_b", generator_basis_to_json(f.basis_b)}};
}

json measure_result_to_json(const MeasureResult& r) {
  return {{"value", r.value},
          {"method", to_string(r.method)},
          {"restarts_used", r.restarts_used},
          {"iterations", r.iterations},
          {"residual", r.residual},
          {"converged", r.converged},
          {"optimizer_u", complex_entries(r.optimizer_u.matrix())}};
}

json report_to_json(const ClassificationReport& r) {
  json out = {{"D", r.d}, {"classical_basis_found", r.classical_basis_found}, {"defect", r.defect}};
  out["discord"] = r.discord ? json(*r.discord) : json(nullptr);
  return out;
}

}  // namespace nonclass
