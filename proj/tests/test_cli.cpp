#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gqo/cli.hpp"
#include "gqo/serialization.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = GQO_FIXTURE_DIR;
const fs::path kGoldens = GQO_GOLDEN_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = gqo::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return (kFixtures / name).string(); }

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Compares stdout with tests/golden/<name>.txt byte for byte. Setting
/// GQO_UPDATE_GOLDENS rewrites the file instead.
void check_golden(const std::string& name, const std::vector<std::string>& args) {
  const Run r = run(args);
  INFO("golden ", name, ", stderr: ", r.err);
  REQUIRE(r.code == gqo::cli::kExitOk);
  const fs::path path = kGoldens / (name + ".txt");
  if (std::getenv("GQO_UPDATE_GOLDENS")) {
    std::ofstream(path, std::ios::binary) << r.out;
    return;
  }
  REQUIRE(fs::exists(path));
  CHECK(r.out == slurp(path));
}

}  // namespace

TEST_CASE("golden reports") {
  const auto example = fixture("example_observable.json");
  const auto mixed = fixture("mixed_state.json");
  const auto standard = fixture("standard_pvm.json");

  check_golden("demo_example", {"demo-example"});
  check_golden("demo_example_json", {"demo-example", "--json"});
  check_golden("prob_example", {"prob", mixed, example});
  check_golden("prob_example_json", {"prob", mixed, example, "--json"});
  check_golden("prob_povm", {"prob", fixture("tilted_state.json"), fixture("projective_povm.json")});
  check_golden("prob_frame_ket", {"prob", fixture("ket_one.json"), fixture("skewed_frame.json")});
  check_golden("decide_example", {"decide", example});
  check_golden("decide_projective", {"decide", fixture("projective_povm.json")});
  check_golden("decide_scaled", {"decide", fixture("scaled_povm.json")});
  check_golden("frame_skewed", {"frame", fixture("skewed_frame.json")});
  check_golden("frame_orthonormal", {"frame", fixture("orthonormal_frame.json")});
  check_golden("transition_same", {"transition", standard, standard, "--check-doubly-stochastic"});
  check_golden("transition_hadamard",
               {"transition", standard, fixture("hadamard_pvm.json"), "--check-doubly-stochastic"});
  check_golden("transition_frame",
               {"transition", fixture("skewed_frame.json"), standard, "--check-doubly-stochastic"});
  check_golden("transition_frame_json",
               {"transition", fixture("skewed_frame.json"), standard, "--check-doubly-stochastic", "--json"});
  check_golden("sample_example", {"sample", example, mixed, "--n", "1000", "--seed", "7"});
  check_golden("sample_zero", {"sample", example, mixed, "--n", "0"});
  check_golden("sample_deterministic", {"sample", fixture("projective_povm.json"), fixture("ket_zero.json"), "--n", "100"});
}

TEST_CASE("commands are deterministic") {
  const std::vector<std::string> demo{"demo-example"};
  CHECK(run(demo).out == run(demo).out);
  const std::vector<std::string> sample{"sample", fixture("example_observable.json"), fixture("mixed_state.json"),
                                        "--n", "5000", "--seed", "3"};
  CHECK(run(sample).out == run(sample).out);
  auto other = sample;
  other.back() = "4";
  CHECK(run(sample).out != run(other).out);
}

TEST_CASE("demo-example reports the qubit argument") {
  const Run r = run({"demo-example"});
  CHECK(r.code == 0);
  CHECK(r.out.find("p_E(0|rho1) = 1 ") != std::string::npos);
  CHECK(r.out.find("p_E(0|rho2) = 0 ") != std::string::npos);
  CHECK(r.out.find("p_E(0|rho3) = 0.666666666666667") != std::string::npos);
  CHECK(r.out.find("x00 = 1, x11 = 0") != std::string::npos);
  CHECK(r.out.find("(x00 + x11)/2 = 0.5 != 0.666666666666667") != std::string::npos);
  CHECK(r.out.find("verdict: NotRepresentable") != std::string::npos);

  const Run j = run({"demo-example", "--json"});
  const auto verdict = gqo::io::verdict_from_json(gqo::io::parse_document(j.out));
  CHECK(verdict.status == gqo::Representability::NotRepresentable);
  CHECK(verdict.witness->p_first == 1.0);
  CHECK(verdict.witness->p_second == 0.0);
  CHECK(std::abs(verdict.witness->p_midpoint - 2.0 / 3.0) <= 1e-12);
}

TEST_CASE("frame output feeds back into prob") {
  const Run f = run({"frame", fixture("skewed_frame.json")});
  REQUIRE(f.code == 0);
  const fs::path tmp = fs::temp_directory_path() / "gqo_frame_effects.json";
  std::ofstream(tmp) << f.out;
  const Run p = run({"prob", fixture("ket_one.json"), tmp.string(), "--json"});
  fs::remove(tmp);
  REQUIRE(p.code == 0);
  const auto doc = gqo::io::parse_document(p.out);
  CHECK(std::abs(doc["probabilities"][0].get<double>() - 1.0 / 3.0) <= 1e-12);
  CHECK(std::abs(doc["probabilities"][1].get<double>() - 2.0 / 3.0) <= 1e-12);
  CHECK(doc["is_povm"] == false);
}

TEST_CASE("POVM denominator is reported as 1") {
  const Run r = run({"prob", fixture("tilted_state.json"), fixture("projective_povm.json"), "--json"});
  REQUIRE(r.code == 0);
  CHECK(gqo::io::parse_document(r.out)["denominator"].get<double>() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("input errors exit with code 2") {
  auto expect_input_error = [](std::vector<std::string> args, const char* needle) {
    const Run r = run(args);
    INFO("stderr: ", r.err);
    CHECK(r.code == gqo::cli::kExitInput);
    CHECK(r.out.empty());
    CHECK(r.err.find(needle) != std::string::npos);
  };
  expect_input_error({"prob", fixture("nonsquare_state.json"), fixture("example_observable.json")}, "square");
  expect_input_error({"frame", fixture("duplicate_frame.json")}, "SingularFrame");
  expect_input_error({"transition", fixture("standard_pvm.json"), fixture("qutrit_pvm.json")}, "DimMismatch");
  expect_input_error({"decide", fixture("does_not_exist.json")}, "cannot open");
  expect_input_error({"prob", fixture("mixed_state.json"), fixture("mixed_state.json")}, "not accepted");
  expect_input_error({"frobnicate"}, "error");
  expect_input_error({"sample", fixture("example_observable.json"), fixture("mixed_state.json")}, "--n");
  expect_input_error({"--tol", "-1", "demo-example"}, "error");
}
