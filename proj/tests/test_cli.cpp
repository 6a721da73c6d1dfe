#include <doctest.h>

#include <filesystem>
#include <random>

#include "cli_runner.hpp"
#include "ncfree/distribution.hpp"
#include "ncfree/verify.hpp"

using namespace ncfree;
using ncfree::testing::RunResult;
using ncfree::testing::run_cli;
using ncfree::testing::slurp;
namespace fs = std::filesystem;

TEST_CASE("cli: kreweras golden example and determinism") {
  std::string args = "nc kreweras \"{(1,2,7),(3),(4,6),(5),(8)}\"";
  RunResult first = run_cli(args);
  CHECK(first.exit_code == 0);
  CHECK(first.output == "{(1),(2,3,6),(4,5),(7,8)}\n");
  RunResult second = run_cli(args);
  CHECK(second.output == first.output);
}

TEST_CASE("cli: enumerate is deterministic and canonical") {
  RunResult first = run_cli("nc enumerate 5");
  RunResult second = run_cli("nc enumerate 5");
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);
  int lines = 0;
  for (char c : first.output) lines += (c == '\n');
  CHECK(lines == 42);
}

TEST_CASE("cli: join, meet, moebius verbs") {
  RunResult join_result =
      run_cli("nc join \"{(1,8),(2,3),(4,5,7),(6)}\" \"{(1,2,3,4),(5),(6),(7),(8)}\"");
  CHECK(join_result.exit_code == 0);
  CHECK(join_result.output == "{(1,2,3,4,5,7,8),(6)}\n");

  RunResult meet_result = run_cli("nc meet \"{(1,2,3)}\" \"{(1,2),(3)}\"");
  CHECK(meet_result.output == "{(1,2),(3)}\n");

  RunResult moebius_result = run_cli("nc moebius \"{(1),(2),(3)}\" \"{(1,2,3)}\"");
  CHECK(moebius_result.exit_code == 0);
  CHECK(moebius_result.output == "2\n");
}

TEST_CASE("cli: file round trip moments -> cumulants -> moments") {
  fs::path dir = fs::temp_directory_path() / "ncfree_cli_roundtrip";
  fs::create_directories(dir);
  std::mt19937_64 rng(55);
  MomentFunctional phi = random_moment_functional(3, {"a"}, rng);
  fs::path dist = dir / "dist.json";
  fs::path cum = dir / "cum.json";
  fs::path back = dir / "dist2.json";
  save_moments(phi, dist.string());

  RunResult to_cum = run_cli("cumulants from-moments " + dist.string() + " --out " + cum.string());
  REQUIRE(to_cum.exit_code == 0);
  RunResult to_mom = run_cli("moments from-cumulants " + cum.string() + " --out " + back.string());
  REQUIRE(to_mom.exit_code == 0);
  CHECK(slurp(back) == slurp(dist));

  // the reverse direction: cumulants -> moments -> cumulants
  CumulantTable k = cumulants_from_moments(phi);
  fs::path kfile = dir / "k.json";
  fs::path kmom = dir / "kmom.json";
  fs::path kback = dir / "k2.json";
  save_cumulants(k, kfile.string());
  REQUIRE(run_cli("moments from-cumulants " + kfile.string() + " --out " + kmom.string())
              .exit_code == 0);
  REQUIRE(run_cli("cumulants from-moments " + kmom.string() + " --out " + kback.string())
              .exit_code == 0);
  CHECK(slurp(kback) == slurp(kfile));

  // spec file path: cumulants from-spec
  fs::path spec = dir / "spec.json";
  save_rdiag_spec(RDiagonalSpec(4, {Rational(1), Rational(0)}, {Rational(1), Rational(0)}),
                  spec.string());
  RunResult from_spec = run_cli("cumulants from-spec " + spec.string());
  CHECK(from_spec.exit_code == 0);
  CHECK(from_spec.output.find("\"cumulants\"") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("cli: kprod and ksigma match direct moment expansions") {
  fs::path dir = fs::temp_directory_path() / "ncfree_cli_kprod";
  fs::create_directories(dir);
  std::mt19937_64 rng(56);
  MomentFunctional phi = random_moment_functional(3, {"a", "b", "c"}, rng, 3);
  fs::path dist = dir / "dist.json";
  save_moments(phi, dist.string());

  RunResult kprod = run_cli("kprod " + dist.string() + " --word \"a b c\" --breaks 2,3");
  CHECK(kprod.exit_code == 0);
  auto p = [&](const char* s) { return phi(parse_word(s, phi.alphabet())); };
  CHECK(kprod.output == rational_to_string(p("a b c") - p("a b") * p("c")) + "\n");

  RunResult ksigma = run_cli("ksigma " + dist.string() +
                             " --word \"a b a c\" --sigma \"{(1,3),(2),(4)}\"");
  CHECK(ksigma.exit_code == 4);  // word length 4 exceeds the order-3 table
  CHECK(ksigma.output.find("truncation error") != std::string::npos);
  RunResult ksigma3 =
      run_cli("ksigma " + dist.string() + " --word \"a b c\" --sigma \"{(1,3),(2)}\"");
  CHECK(ksigma3.exit_code == 0);
  fs::remove_all(dir);
}

TEST_CASE("cli: error taxonomy uses distinct messages and nonzero exits") {
  RunResult unknown = run_cli("frobnicate");
  CHECK(unknown.exit_code != 0);

  RunResult bad_partition = run_cli("nc kreweras \"{(1,3),(2,4)}\"");
  CHECK(bad_partition.exit_code == 3);
  CHECK(bad_partition.output.find("invalid input") != std::string::npos);

  fs::path missing = fs::temp_directory_path() / "ncfree_missing.json";
  RunResult bad_file = run_cli("cumulants from-moments " + missing.string());
  CHECK(bad_file.exit_code == 3);
  CHECK(bad_file.output.find("invalid input") != std::string::npos);

  // truncation: word longer than the file's order
  fs::path dir = fs::temp_directory_path() / "ncfree_cli_err";
  fs::create_directories(dir);
  std::mt19937_64 rng(57);
  MomentFunctional phi = random_moment_functional(2, {"a"}, rng);
  fs::path dist = dir / "dist.json";
  save_moments(phi, dist.string());
  RunResult truncated = run_cli("kprod " + dist.string() + " --word \"a a a\" --breaks 2,3");
  CHECK(truncated.exit_code == 4);
  CHECK(truncated.output.find("truncation error") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("cli: rdiag verbs") {
  fs::path dir = fs::temp_directory_path() / "ncfree_cli_rdiag";
  fs::create_directories(dir);
  std::mt19937_64 rng(58);
  RDiagonalSpec spec = random_rdiag_spec(4, rng, 3);
  fs::path spec_path = dir / "spec.json";
  save_rdiag_spec(spec, spec_path.string());

  RunResult aastar = run_cli("rdiag aastar " + spec_path.string() + " --n 2");
  CHECK(aastar.exit_code == 0);
  CHECK(aastar.output ==
        rational_to_string(spec.alpha_at(2) + spec.alpha_at(1) * spec.beta_at(1)) + "\n");

  RunResult product =
      run_cli("rdiag product " + spec_path.string() + " " + spec_path.string() + " --n 1");
  CHECK(product.exit_code == 0);
  CHECK(product.output == rational_to_string(spec.alpha_at(1) * spec.alpha_at(1)) + "\n");

  RunResult power = run_cli("rdiag power " + spec_path.string() + " --r 2");
  CHECK(power.exit_code == 0);
  CHECK(power.output == "true\n");
  fs::remove_all(dir);
}

TEST_CASE("cli: json format and decimal rendering") {
  RunResult json = run_cli("nc kreweras \"{(1,2),(3)}\" --format json");
  CHECK(json.exit_code == 0);
  CHECK(json.output.find("\"result\": \"{(1),(2,3)}\"") != std::string::npos);

  RunResult decimal = run_cli("nc moebius \"{(1),(2),(3)}\" \"{(1,2,3)}\" --decimal 2");
  CHECK(decimal.exit_code == 0);
  CHECK(decimal.output == "2 (~2.00)\n");
}

TEST_CASE("cli: verify suite selection") {
  RunResult lattice = run_cli("verify lattice --max-n 4");
  CHECK(lattice.exit_code == 0);
  CHECK(lattice.output.find("[PASS]") != std::string::npos);
  CHECK(lattice.output.find("[FAIL]") == std::string::npos);

  RunResult unknown = run_cli("verify nonsense");
  CHECK(unknown.exit_code != 0);
}
