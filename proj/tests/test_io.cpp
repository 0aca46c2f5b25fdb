#include "nonclass/io.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace nonclass;
using nlohmann::json;

TEST_CASE("state JSON round trip") {
  const DensityOperator rho = random_density(2, 3, 4, 12);
  const json j = state_to_json(rho);
  CHECK(j.at("dim_a") == 2);
  CHECK(j.at("dim_b") == 3);
  CHECK(j.at("matrix").size() == 36);
  const DensityOperator back = state_from_json(json::parse(j.dump()));
  CHECK((back.matrix() - rho.matrix()).norm() < 1e-15);
}

TEST_CASE("schema errors") {
  CHECK_THROWS_AS(state_from_json(json::array()), FormatError);
  CHECK_THROWS_AS(state_from_json(json{{"dim_a", 2}, {"matrix", json::array()}}), FormatError);
  CHECK_THROWS_AS(state_from_json(json{{"dim_a", 0}, {"dim_b", 1}, {"matrix", json::array()}}), FormatError);

  json short_matrix = state_to_json(random_density(2, 2, 4, 1));
  short_matrix["matrix"].erase(0);
  CHECK_THROWS_AS(state_from_json(short_matrix), FormatError);

  json bad_entry = state_to_json(random_density(2, 2, 4, 1));
  bad_entry["matrix"][3] = "x";
  CHECK_THROWS_AS(state_from_json(bad_entry), FormatError);
}

TEST_CASE("invalid matrices are InvalidState") {
  json j = state_to_json(random_density(2, 2, 4, 1));
  j["matrix"][0] = {2.0, 0.0};  // trace 2-ish
  CHECK_THROWS_AS(state_from_json(j), InvalidState);
}

TEST_CASE("state files") {
  CHECK_THROWS_AS(read_state_file("/nonexistent/state.json"), FormatError);
  const std::string path = "test_io_state.json";
  {
    std::ofstream out(path);
    out << "{ \"dim_a\": 2, ";
  }
  CHECK_THROWS_AS(read_state_file(path), FormatError);
  {
    std::ofstream out(path);
    out << state_to_json(random_density(2, 2, 1, 5)).dump();
  }
  CHECK(read_state_file(path).dim_b() == 2);
  std::remove(path.c_str());
}

TEST_CASE("Fano JSON labels both index maps") {
  const json j = fano_to_json(fano_decompose(random_density(3, 2, 6, 2)));
  CHECK(j.at("r_a").size() == 8);
  CHECK(j.at("r_b").size() == 3);
  CHECK(j.at("t").size() == 8);
  CHECK(j.at("t")[0].size() == 3);
  const json& map = j.at("basis_a").at("index_map");
  CHECK(map[0].at("label") == "U_1_2");
  CHECK(map[3].at("kind") == "V");
  CHECK(map[7].at("label") == "W_2");
  CHECK(j.at("basis_b").at("index_map")[2].at("r") == 1);
}

TEST_CASE("measure result JSON") {
  OptimizerConfig c;
  c.closed_form_dispatch = false;
  c.restarts = 2;
  const json j = measure_result_to_json(minimize_d(random_density(2, 2, 2, 3), c));
  for (const char* key : {"value", "method", "restarts_used", "iterations", "residual", "converged", "optimizer_u"}) {
    CHECK(j.contains(key));
  }
  CHECK(j.at("method") == "optimizer");
  CHECK(j.at("optimizer_u").size() == 4);
}
