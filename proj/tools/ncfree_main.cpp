// Command-line front end: lattice operations, moment/cumulant transforms,
// the product-argument cumulant machinery, R-diagonal computations and the
// verification suites, all on exact rationals.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncfree/cumulant_engine.hpp"
#include "ncfree/free_ops.hpp"
#include "ncfree/nc_lattice.hpp"
#include "ncfree/verify.hpp"

namespace {

using namespace ncfree;

struct OutputOptions {
  std::string out_path;   // empty = stdout
  std::string format = "text";
  int decimal = -1;       // display-only rounding; -1 keeps exact strings
};

void add_output_flags(CLI::App* cmd, OutputOptions& opt) {
  cmd->add_option("--out", opt.out_path, "write the result to a file instead of stdout");
  cmd->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--decimal", opt.decimal,
                  "additionally render scalars with this many decimal digits");
}

void emit(const OutputOptions& opt, const std::string& body) {
  if (opt.out_path.empty()) {
    std::cout << body;
    if (!body.empty() && body.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(opt.out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot write file: " + opt.out_path);
    out << body;
  }
}

std::string scalar_text(const Rational& value, const OutputOptions& opt) {
  std::string body = rational_to_string(value);
  if (opt.decimal >= 0) body += " (~" + rational_to_decimal(value, opt.decimal) + ")";
  return body;
}

void emit_scalar(const OutputOptions& opt, const Rational& value) {
  if (opt.format == "json") {
    nlohmann::ordered_json doc;
    doc["result"] = rational_to_string(value);
    if (opt.decimal >= 0) doc["decimal"] = rational_to_decimal(value, opt.decimal);
    emit(opt, doc.dump(2) + "\n");
  } else {
    emit(opt, scalar_text(value, opt));
  }
}

void emit_partition(const OutputOptions& opt, const NcPartition& p) {
  if (opt.format == "json") {
    nlohmann::ordered_json doc;
    doc["result"] = p.str();
    emit(opt, doc.dump(2) + "\n");
  } else {
    emit(opt, p.str());
  }
}

std::vector<int> parse_breakpoints(const std::string& text) {
  std::vector<int> out;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    size_t used = 0;
    int value = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument("malformed breakpoint: '" + token + "'");
    out.push_back(value);
  }
  if (out.empty()) throw std::invalid_argument("empty breakpoint list");
  return out;
}

int run_verify(const std::string& suite, const VerifyOptions& options,
               const OutputOptions& out_opt) {
  std::vector<CheckResult> results = run_verify_suite(suite, options);
  bool all_passed = true;
  std::string body;
  if (out_opt.format == "json") {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& r : results) {
      nlohmann::ordered_json item;
      item["name"] = r.name;
      item["passed"] = r.passed;
      if (!r.detail.empty()) item["detail"] = r.detail;
      doc.push_back(std::move(item));
      all_passed = all_passed && r.passed;
    }
    body = doc.dump(2) + "\n";
  } else {
    for (const auto& r : results) {
      body += (r.passed ? "[PASS] " : "[FAIL] ") + r.name;
      if (!r.detail.empty()) body += "  (" + r.detail + ")";
      body += '\n';
      all_passed = all_passed && r.passed;
    }
    body += all_passed ? "all checks passed\n" : "some checks FAILED\n";
  }
  emit(out_opt, body);
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic engine for the combinatorics of free cumulants"};
  app.require_subcommand(1);
  int exit_code = 0;

  OutputOptions out_opt;

  // --- nc -------------------------------------------------------------
  auto* nc = app.add_subcommand("nc", "non-crossing partition lattice operations");
  nc->require_subcommand(1);

  auto* nc_enum = nc->add_subcommand("enumerate", "list NC(n) in canonical order");
  static int enum_n = 0;
  nc_enum->add_option("n", enum_n, "ground-set size")->required();
  add_output_flags(nc_enum, out_opt);
  nc_enum->callback([&] {
    std::string body;
    for_each_nc(enum_n, [&](const NcPartition& p) { body += p.str() + "\n"; });
    emit(out_opt, body);
  });

  static std::string arg_pi, arg_sigma;
  auto* nc_join = nc->add_subcommand("join", "least upper bound of two partitions");
  nc_join->add_option("pi", arg_pi)->required();
  nc_join->add_option("sigma", arg_sigma)->required();
  add_output_flags(nc_join, out_opt);
  nc_join->callback([&] {
    emit_partition(out_opt, join(NcPartition::parse(arg_pi), NcPartition::parse(arg_sigma)));
  });

  auto* nc_meet = nc->add_subcommand("meet", "greatest lower bound of two partitions");
  nc_meet->add_option("pi", arg_pi)->required();
  nc_meet->add_option("sigma", arg_sigma)->required();
  add_output_flags(nc_meet, out_opt);
  nc_meet->callback([&] {
    emit_partition(out_opt, meet(NcPartition::parse(arg_pi), NcPartition::parse(arg_sigma)));
  });

  auto* nc_krew = nc->add_subcommand("kreweras", "Kreweras complement");
  nc_krew->add_option("pi", arg_pi)->required();
  add_output_flags(nc_krew, out_opt);
  nc_krew->callback([&] { emit_partition(out_opt, kreweras(NcPartition::parse(arg_pi))); });

  auto* nc_moeb = nc->add_subcommand("moebius", "Moebius function of an interval");
  nc_moeb->add_option("pi", arg_pi, "lower bound")->required();
  nc_moeb->add_option("sigma", arg_sigma, "upper bound")->required();
  add_output_flags(nc_moeb, out_opt);
  nc_moeb->callback([&] {
    long long value = moebius(NcPartition::parse(arg_pi), NcPartition::parse(arg_sigma));
    emit_scalar(out_opt, Rational(static_cast<long>(value)));
  });

  auto* nc_check = nc->add_subcommand(
      "complement-check", "verify complement laws on all of NC(n)");
  static int check_n = 5;
  nc_check->add_option("n", check_n, "ground-set size")->required()->check(CLI::Range(0, 8));
  add_output_flags(nc_check, out_opt);
  nc_check->callback([&] {
    VerifyOptions vopt;
    vopt.max_n = check_n;
    exit_code = run_verify("lattice", vopt, out_opt);
  });

  // --- cumulants / moments ---------------------------------------------
  static std::string file_a, file_b;

  auto* cum = app.add_subcommand("cumulants", "cumulant-table computations");
  cum->require_subcommand(1);
  auto* cum_from = cum->add_subcommand("from-moments", "free cumulants of a distribution file");
  cum_from->add_option("file", file_a, "moment file (JSON)")->required();
  add_output_flags(cum_from, out_opt);
  cum_from->callback([&] {
    emit(out_opt, cumulants_to_json(cumulants_from_moments(load_moments(file_a))));
  });
  auto* cum_spec = cum->add_subcommand("from-spec", "cumulant table of an R-diagonal spec");
  cum_spec->add_option("file", file_a, "R-diagonal spec file (JSON)")->required();
  static std::string spec_var = "a";
  cum_spec->add_option("--var", spec_var, "variable name");
  add_output_flags(cum_spec, out_opt);
  cum_spec->callback([&] {
    emit(out_opt, cumulants_to_json(load_rdiag_spec(file_a).cumulant_table(spec_var)));
  });

  auto* mom = app.add_subcommand("moments", "moment-table computations");
  mom->require_subcommand(1);
  auto* mom_from = mom->add_subcommand("from-cumulants", "moments of a cumulant table file");
  mom_from->add_option("file", file_a, "cumulant file (JSON)")->required();
  add_output_flags(mom_from, out_opt);
  mom_from->callback([&] {
    emit(out_opt, moments_to_json(moments_from_cumulants(load_cumulants(file_a))));
  });

  // --- kprod / ksigma ---------------------------------------------------
  static std::string word_text, breaks_text, tau_text, sigma_text;

  auto* kprod = app.add_subcommand(
      "kprod", "cumulant with product arguments: k_tau[a_1..a_i1, ...] via the join-filtered sum");
  kprod->add_option("file", file_a, "moment file (JSON)")->required();
  kprod->add_option("--word", word_text, "letters a_1..a_n, space separated")->required();
  kprod->add_option("--breaks", breaks_text, "breakpoints i_1<...<i_m=n, comma separated")
      ->required();
  kprod->add_option("--tau", tau_text, "partition of the products (default 1_m)");
  add_output_flags(kprod, out_opt);
  kprod->callback([&] {
    MomentFunctional phi = load_moments(file_a);
    Word word = parse_word(word_text, phi.alphabet());
    IntervalGrouping grouping(word.size(), parse_breakpoints(breaks_text));
    NcPartition tau = tau_text.empty() ? NcPartition::full(grouping.group_count())
                                       : NcPartition::parse(tau_text);
    CumulantTable k = cumulants_from_moments(phi);
    emit_scalar(out_opt, cumulant_of_products(tau, grouping, word.letters(), k.fn()));
  });

  auto* ksig = app.add_subcommand("ksigma",
                                  "generalized cumulant k^sigma (both defining forms, asserted equal)");
  ksig->add_option("file", file_a, "moment file (JSON)")->required();
  ksig->add_option("--word", word_text, "letters a_1..a_n, space separated")->required();
  ksig->add_option("--sigma", sigma_text, "partition sigma of 1..n")->required();
  add_output_flags(ksig, out_opt);
  ksig->callback([&] {
    MomentFunctional phi = load_moments(file_a);
    Word word = parse_word(word_text, phi.alphabet());
    emit_scalar(out_opt,
                k_sigma_generalized(NcPartition::parse(sigma_text), word.letters(), phi));
  });

  // --- freeprod ----------------------------------------------------------
  static std::vector<std::string> marginal_files;
  static int order_flag = 8;

  auto* fprod = app.add_subcommand("freeprod", "free product of distribution files");
  fprod->add_option("files", marginal_files, "marginal moment files (JSON)")
      ->required()
      ->expected(-1);
  fprod->add_option("--order", order_flag, "truncation order of the joint distribution");
  add_output_flags(fprod, out_opt);
  fprod->callback([&] {
    std::vector<MomentFunctional> marginals;
    for (const auto& path : marginal_files) marginals.push_back(load_moments(path));
    emit(out_opt, moments_to_json(free_product(marginals, order_flag)));
  });

  // --- rdiag ---------------------------------------------------------------
  static int arg_n = 1, arg_r = 2, power_order = 0;

  auto* rdiag = app.add_subcommand("rdiag", "R-diagonal element computations");
  rdiag->require_subcommand(1);

  auto* rd_aastar = rdiag->add_subcommand("aastar", "k_n(aa*, ..., aa*) from an R-diagonal spec");
  rd_aastar->add_option("file", file_a, "R-diagonal spec file (JSON)")->required();
  rd_aastar->add_option("--n", arg_n, "number of aa* arguments")->required();
  add_output_flags(rd_aastar, out_opt);
  rd_aastar->callback(
      [&] { emit_scalar(out_opt, rdiag_aastar_cumulants(load_rdiag_spec(file_a), arg_n)); });

  auto* rd_prod = rdiag->add_subcommand("product",
                                        "k_2n(ab, b*a*, ...) for free R-diagonal a and b");
  rd_prod->add_option("file_a", file_a, "spec of a (JSON)")->required();
  rd_prod->add_option("file_b", file_b, "spec of b (JSON)")->required();
  rd_prod->add_option("--n", arg_n, "half the number of arguments")->required();
  add_output_flags(rd_prod, out_opt);
  rd_prod->callback([&] {
    emit_scalar(out_opt, rdiag_product_cumulants(load_rdiag_spec(file_a),
                                                 load_rdiag_spec(file_b), arg_n));
  });

  auto* rd_power = rdiag->add_subcommand(
      "power", "check that a^r is R-diagonal and distributed like a product of free copies");
  rd_power->add_option("file", file_a, "R-diagonal spec file (JSON)")->required();
  rd_power->add_option("--r", arg_r, "the power")->required();
  rd_power->add_option("--order", power_order, "base truncation order (default: spec order)");
  add_output_flags(rd_power, out_opt);
  rd_power->callback([&] {
    RDiagonalSpec spec = load_rdiag_spec(file_a);
    int order = power_order > 0 ? power_order : spec.order;
    bool ok = verify_power_rdiag(spec, arg_r, order);
    if (out_opt.format == "json") {
      nlohmann::ordered_json doc;
      doc["result"] = ok;
      emit(out_opt, doc.dump(2) + "\n");
    } else {
      emit(out_opt, ok ? "true" : "false");
    }
  });

  // --- verify ---------------------------------------------------------------
  static std::string suite = "all";
  static VerifyOptions vopt;

  auto* verify = app.add_subcommand("verify", "run the verification suites");
  std::vector<std::string> allowed = verify_suite_names();
  allowed.push_back("all");
  verify->add_option("suite", suite, "suite name (default: all)")
      ->check(CLI::IsMember(allowed));
  verify->add_option("--max-n", vopt.max_n, "largest ground-set size for exhaustive sweeps")
      ->check(CLI::Range(1, 8));
  verify->add_option("--order", vopt.order, "truncation order for distribution checks")
      ->check(CLI::Range(1, 8));
  verify->add_option("--trials", vopt.trials, "randomized repetitions");
  verify->add_option("--seed", vopt.seed, "seed for the randomized checks");
  add_output_flags(verify, out_opt);
  verify->callback([&] { exit_code = run_verify(suite, vopt, out_opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);  // unknown verb / bad flags: CLI11 message, nonzero exit
  } catch (const TruncationError& e) {
    std::cerr << "truncation error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
