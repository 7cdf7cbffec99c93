// Command-line front end: Drazin / group inverses of complex matrices plus
// the additive perturbation formulas and their error bounds.
//
// Exit codes: 0 success, 1 hypothesis violated, 2 not group invertible,
// 3 numeric failure, 4 worked-example mismatch, 64 usage or input error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "geninv/examples.hpp"
#include "geninv/harness.hpp"
#include "geninv/io.hpp"

namespace {

using namespace geninv;

constexpr int kExitOk = 0;
constexpr int kExitHypothesis = 1;
constexpr int kExitNotGroupInvertible = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitExampleMismatch = 4;
constexpr int kExitUsage = 64;

NormKind norm_from_option(const std::string& token) {
  auto kind = parse_norm_kind(token);
  if (!kind) throw CLI::ValidationError("--norm", "unknown norm: " + token);
  return *kind;
}

ConditionSet set_from_token(const std::string& token) {
  if (token == "t23" || token == "c24") return ConditionSet::orthogonal;
  if (token == "t32" || token == "c33") return ConditionSet::commutative;
  if (token == "c34") return ConditionSet::strict_commuting;
  throw CLI::ValidationError("--theorem", "unknown theorem: " + token);
}

void print_term_table(const BoundBreakdown& bound) {
  for (const auto& [label, value] : bound.terms) {
    std::cout << "  " << label << " = ";
    if (std::isfinite(value)) {
      std::cout << value;
    } else {
      std::cout << "divergent";
    }
    std::cout << "\n";
  }
  std::cout << "  total = ";
  if (bound.total) {
    std::cout << *bound.total;
  } else {
    std::cout << "divergent";
  }
  std::cout << "\n";
}

void print_condition_report(const ConditionReport& rep) {
  std::cout << "condition set " << condition_set_label(rep.theorem) << "\n";
  std::cout << "  |a^d b a a^d| = " << rep.norm_value
            << (rep.norm_ok ? "  (< 1)" : "  (>= 1, fails)") << "\n";
  for (const auto& [key, value] : rep.residuals) {
    std::cout << "  residual " << key << " = " << value;
    auto raw = rep.aux.find("raw:" + key);
    if (raw != rep.aux.end()) std::cout << "  (raw " << raw->second << ")";
    std::cout << "\n";
  }
  std::cout << "  all hold: " << (rep.all_hold ? "yes" : "no") << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{
      "Drazin and group inverses of dense complex matrices, additive "
      "perturbation formulas for (a+b)^# and their scalar error bounds"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  std::string norm_token = "entrywise-l1";

  // drazin FILE
  auto* cmd_drazin = app.add_subcommand("drazin", "Drazin inverse of FILE");
  std::string drazin_file;
  cmd_drazin->add_option("file", drazin_file, "matrix file")->required();

  // group FILE
  auto* cmd_group = app.add_subcommand("group", "group inverse of FILE");
  std::string group_file;
  cmd_group->add_option("file", group_file, "matrix file")->required();

  // check --theorem {t23,t32,c34} A B
  auto* cmd_check =
      app.add_subcommand("check", "evaluate the hypotheses for a pair");
  std::string check_theorem;
  std::string check_a, check_b;
  cmd_check->add_option("--theorem", check_theorem, "t23 | t32 | c34")
      ->required();
  cmd_check->add_option("--norm", norm_token, "norm kind");
  cmd_check->add_option("a", check_a, "matrix file for a")->required();
  cmd_check->add_option("b", check_b, "matrix file for b")->required();

  // perturb --theorem {t23,t32} [--mode literal|block] A B
  auto* cmd_perturb =
      app.add_subcommand("perturb", "evaluate (a+b)^# by the closed formula");
  std::string perturb_theorem, perturb_mode = "block";
  std::string perturb_a, perturb_b;
  cmd_perturb->add_option("--theorem", perturb_theorem, "t23 | t32")
      ->required();
  cmd_perturb->add_option("--mode", perturb_mode, "literal | block");
  cmd_perturb->add_option("--norm", norm_token, "norm kind");
  cmd_perturb->add_option("a", perturb_a, "matrix file for a")->required();
  cmd_perturb->add_option("b", perturb_b, "matrix file for b")->required();

  // bound --theorem {t23,t32,c24,c33,c34} [--norm KIND] A B
  auto* cmd_bound =
      app.add_subcommand("bound", "scalar bound on |(a+b)^# - a^d|");
  std::string bound_theorem;
  std::string bound_a, bound_b;
  cmd_bound->add_option("--theorem", bound_theorem,
                        "t23 | t32 | c24 | c33 | c34")
      ->required();
  cmd_bound->add_option("--norm", norm_token, "norm kind");
  cmd_bound->add_option("a", bound_a, "matrix file for a")->required();
  cmd_bound->add_option("b", bound_b, "matrix file for b")->required();

  // examples
  auto* cmd_examples =
      app.add_subcommand("examples", "reproduce the bundled worked examples");
  cmd_examples->add_option("--norm", norm_token, "norm kind");

  // fuzz --theorem T --dim N --trials K --seed S [--report FILE]
  auto* cmd_fuzz = app.add_subcommand(
      "fuzz", "random structured pairs: formula vs oracle plus bound checks");
  std::string fuzz_theorem;
  std::size_t fuzz_dim = 4, fuzz_trials = 100;
  std::uint64_t fuzz_seed = 1;
  std::string fuzz_report;
  cmd_fuzz->add_option("--theorem", fuzz_theorem, "t23 | t32")->required();
  cmd_fuzz->add_option("--dim", fuzz_dim, "matrix dimension (2..16)")
      ->required();
  cmd_fuzz->add_option("--trials", fuzz_trials, "trial count")->required();
  cmd_fuzz->add_option("--seed", fuzz_seed, "base seed")->required();
  cmd_fuzz->add_option("--report", fuzz_report,
                       "write one trial record per line (JSON)");
  cmd_fuzz->add_option("--norm", norm_token, "norm kind");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  const Tolerances& tol = Tolerances::defaults();
  const NormKind nk = norm_from_option(norm_token);

  if (cmd_drazin->parsed()) {
    const Matrix m = read_matrix_file(drazin_file);
    const DrazinResult d = drazin(m, tol);
    if (as_json) {
      std::cout << to_json(d).dump(2) << "\n";
    } else {
      std::cout << "index " << d.index << "\n"
                << "drazin inverse:\n"
                << render_matrix(d.inverse) << "spectral idempotent:\n"
                << render_matrix(d.spectral_idempotent);
    }
    return kExitOk;
  }

  if (cmd_group->parsed()) {
    const Matrix m = read_matrix_file(group_file);
    const Matrix g = group_inverse(m, tol);
    if (as_json) {
      std::cout << nlohmann::json{{"group_inverse", matrix_to_json(g)}}.dump(2)
                << "\n";
    } else {
      std::cout << "group inverse:\n" << render_matrix(g);
    }
    return kExitOk;
  }

  if (cmd_check->parsed()) {
    const ConditionSet set = set_from_token(check_theorem);
    const Matrix a = read_matrix_file(check_a);
    const Matrix b = read_matrix_file(check_b);
    const ConditionReport rep = check_conditions(a, b, set, nk, tol);
    if (as_json) {
      std::cout << to_json(rep).dump(2) << "\n";
    } else {
      print_condition_report(rep);
    }
    return rep.all_hold ? kExitOk : kExitHypothesis;
  }

  if (cmd_perturb->parsed()) {
    const ConditionSet set = set_from_token(perturb_theorem);
    if (set == ConditionSet::strict_commuting) {
      throw CLI::ValidationError("--theorem", "perturb supports t23 and t32");
    }
    const SeriesMode mode =
        perturb_mode == "literal" ? SeriesMode::literal : SeriesMode::block;
    const Matrix a = read_matrix_file(perturb_a);
    const Matrix b = read_matrix_file(perturb_b);
    const PerturbResult result =
        perturbed_group_inverse(a, b, set, mode, nk, tol);
    if (as_json) {
      std::cout << to_json(result).dump(2) << "\n";
    } else if (result.exists) {
      std::cout << "(a+b)^# (mode " << series_mode_name(result.mode)
                << "):\n"
                << render_matrix(result.group_inv);
    } else {
      std::cout << "a+b is not group invertible (projected index "
                << result.projected_index << ")\n";
    }
    return result.exists ? kExitOk : kExitNotGroupInvertible;
  }

  if (cmd_bound->parsed()) {
    const ConditionSet set = set_from_token(bound_theorem);
    const Matrix a = read_matrix_file(bound_a);
    const Matrix b = read_matrix_file(bound_b);
    const BoundBreakdown bound = perturbation_bound(a, b, set, nk, tol);
    if (as_json) {
      std::cout << to_json(bound).dump(2) << "\n";
    } else {
      std::cout << "bound on |(a+b)^# - a^d| under "
                << norm_kind_name(bound.norm_kind) << ":\n";
      print_term_table(bound);
    }
    return kExitOk;
  }

  if (cmd_examples->parsed()) {
    const ExampleReport report = reproduce_examples(nk, tol);
    if (as_json) {
      std::cout << to_json(report).dump(2) << "\n";
    } else {
      for (const auto& a : report.assertions) {
        std::cout << (a.skipped ? "SKIP" : (a.passed ? "PASS" : "FAIL"))
                  << "  " << a.name;
        if (!a.detail.empty()) std::cout << "  [" << a.detail << "]";
        std::cout << "\n";
      }
      std::cout << (report.all_passed() ? "all worked-example assertions hold"
                                        : "worked-example mismatch")
                << "\n";
    }
    return report.all_passed() ? kExitOk : kExitExampleMismatch;
  }

  if (cmd_fuzz->parsed()) {
    const ConditionSet set = set_from_token(fuzz_theorem);
    if (set == ConditionSet::strict_commuting) {
      throw CLI::ValidationError("--theorem", "fuzz supports t23 and t32");
    }
    std::vector<TrialRecord> records;
    const BatchSummary summary =
        run_batch(set, fuzz_dim, fuzz_dim, fuzz_trials, fuzz_seed, nk, tol,
                  fuzz_report.empty() ? nullptr : &records);
    if (!fuzz_report.empty()) {
      std::ofstream out(fuzz_report);
      if (!out) throw ParseError("cannot open report file: " + fuzz_report);
      for (const TrialRecord& rec : records) out << to_json(rec) << "\n";
    }
    if (as_json) {
      std::cout << to_json(summary).dump(2) << "\n";
    } else {
      std::cout << "trials " << summary.trials << ", existing "
                << summary.existing << ", missing " << summary.planted_missing
                << ", failed " << summary.failed << "\n"
                << "max formula error " << summary.max_formula_err
                << ", bound violations " << summary.bound_violations << "/"
                << summary.bound_checked << ", equivalence failures "
                << summary.equivalence_failures << "\n";
      if (summary.bound_checked > 0) {
        std::cout << "bound/actual ratio mean " << summary.mean_bound_ratio
                  << ", max " << summary.max_bound_ratio << "\n";
      }
    }
    return summary.clean() ? kExitOk : kExitNumeric;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::CallForHelp&) {
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis violated: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const NotContractiveError& e) {
    std::cerr << "hypothesis violated: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const NotGroupInvertibleError& e) {
    std::cerr << e.what() << "\n";
    return kExitNotGroupInvertible;
  } catch (const MismatchError& e) {
    std::cerr << "worked-example mismatch: " << e.what() << "\n";
    return kExitExampleMismatch;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ShapeError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
