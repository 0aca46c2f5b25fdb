#include "nonclass/app/cli.hpp"
#include "nonclass/app/sweep.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

using namespace nonclass::app;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "nonclass");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const std::string& name) { return std::string(NONCLASS_TEST_DATA) + "/" + name; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream s(text);
  for (std::string line; std::getline(s, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("compute on the Bell state") {
  const Run r = run({"compute", "--family", "bell"});
  REQUIRE(r.code == exit_code::ok);
  const json j = json::parse(r.out);
  CHECK(j.at("D").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j.at("D_method") == "closed_form_2xN");
  CHECK(j.at("horodecki_M").get<double>() == doctest::Approx(2.0));
  CHECK(j.at("discord").get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(j.at("classical_basis_found") == false);
  CHECK(j.at("optimizer").at("value").get<double>() == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("compute from a file matches the family") {
  const Run r = run({"compute", "--input", data("bell.json"), "--format", "csv"});
  REQUIRE(r.code == exit_code::ok);
  CHECK(r.out.rfind("key,value\n", 0) == 0);
  CHECK(r.out.find("\nD,1\n") != std::string::npos);
}

TEST_CASE("compute on a Werner state") {
  const Run r = run({"compute", "--family", "werner", "--d", "2", "--p", "0.6666666666666666"});
  REQUIRE(r.code == exit_code::ok);
  const json j = json::parse(r.out);
  CHECK(j.at("D").get<double>() == doctest::Approx(1.0 / 9.0).epsilon(1e-9));
  CHECK(j.at("D_formula").get<double>() == doctest::Approx(1.0 / 9.0).epsilon(1e-9));
  CHECK(j.at("discord").get<double>() == doctest::Approx(0.01614).epsilon(3e-3));
}

TEST_CASE("exit codes") {
  CHECK(run({"compute", "--input", data("not_psd.json")}).code == exit_code::invalid_state);
  CHECK(run({"compute", "--input", data("malformed.json")}).code == exit_code::usage);
  CHECK(run({"compute", "--input", data("missing.json")}).code == exit_code::usage);
  CHECK(run({"compute", "--family", "nope"}).code == exit_code::usage);
  CHECK(run({"compute", "--family", "werner", "--d", "2"}).code == exit_code::usage);
  CHECK(run({"compute"}).code == exit_code::usage);
  CHECK(run({"frobnicate"}).code == exit_code::usage);
  CHECK(run({}).code == exit_code::usage);
  const Run help = run({"--help"});
  CHECK(help.code == exit_code::ok);
  CHECK(help.out.find("maximally-entangled") != std::string::npos);
}

TEST_CASE("Werner sweep") {
  const Run r = run({"sweep", "--family", "werner", "--d", "2"});
  REQUIRE(r.code == exit_code::ok);
  const std::vector<std::string> l = lines(r.out);
  REQUIRE(l.size() == 13);  // provenance, header, 11 rows
  CHECK(l[0].rfind("# ", 0) == 0);
  CHECK(l[1] == sweep_csv_header("werner"));
  CHECK(l[2].rfind("werner,", 0) == 0);

  // the header is the one documented in --help
  const Run help = run({"sweep", "--help"});
  CHECK(help.out.find(l[1]) != std::string::npos);

  // reruns are byte-identical
  CHECK(run({"sweep", "--family", "werner", "--d", "2"}).out == r.out);
}

TEST_CASE("sweep JSON and random family") {
  const Run r = run({"sweep", "--family", "random", "--m", "2", "--n", "3", "--samples", "3", "--format", "json"});
  REQUIRE(r.code == exit_code::ok);
  const json j = json::parse(r.out);
  CHECK(j.at("rows").size() == 3);
  CHECK(run({"sweep", "--family", "bell"}).code == exit_code::usage);
}

TEST_CASE("reproduce filter and tolerance scale") {
  const Run r = run({"reproduce", "--filter", "werner"});
  CHECK(r.code == exit_code::ok);
  const std::vector<std::string> l = lines(r.out);
  int headlines = 0;
  for (const std::string& line : l) {
    if (line.rfind("PASS", 0) == 0 || line.rfind("FAIL", 0) == 0) ++headlines;
  }
  CHECK(headlines == 2);
  CHECK(r.out.find("werner-pair") != std::string::npos);
  CHECK(r.out.find("werner-zero") != std::string::npos);

  CHECK(run({"reproduce", "--filter", "werner-pair", "--tolerance-scale", "0"}).code == exit_code::check_failed);
  CHECK(run({"reproduce", "--filter", "no-such-criterion"}).code == exit_code::usage);
}
