// nlcheck: batch verification driver.
//
// Subcommands: torsion, invariant, flag, roundtrip, all. Every run is fully
// determined by the seed; identical invocations produce byte-identical
// reports.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nl/chart.hpp"
#include "nl/fixtures.hpp"
#include "nl/flag.hpp"
#include "nl/io.hpp"
#include "nl/lie.hpp"

namespace {

using namespace nl;

constexpr int kExitOk = 0;
constexpr int kExitTolerance = 1;
constexpr int kExitInvalidStructure = 2;
constexpr int kExitInvalidAlgebra = 3;
constexpr int kExitInvalidFlag = 4;

struct Report {
  std::ostringstream body;
  int failures = 0;

  void kv(const std::string& key, const std::string& value) {
    body << key << '=' << value << '\n';
  }
  void kv(const std::string& key, double value) {
    kv(key, format_double(value));
  }
  void kv(const std::string& key, bool value) {
    kv(key, std::string(value ? "true" : "false"));
  }
  void gate(const std::string& key, bool ok) {
    kv(key, ok);
    if (!ok) ++failures;
  }
};

struct Config {
  std::uint64_t seed = 0;
  int samples = 20;
  double tol = 1e-6;
  bool tol_from_cli = false;
  std::string input;
  std::string output;
  std::vector<double> generate;  // n d eps
};

void apply_env_tol(Config& cfg) {
  if (cfg.tol_from_cli) return;
  if (const char* env = std::getenv("NL_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0.0) cfg.tol = v;
  }
}

int finish(const Config& cfg, Report& rep, const std::string& name,
           int error_code = kExitTolerance) {
  int code = rep.failures == 0 ? kExitOk : error_code;
  rep.body << "SUMMARY\n";
  rep.body << "suite=" << name << '\n';
  rep.body << "failures=" << rep.failures << '\n';
  rep.body << "exit=" << code << '\n';
  if (cfg.output.empty())
    std::cout << rep.body.str();
  else
    write_text_file(cfg.output, rep.body.str());
  return code;
}

int emit_error(const Config& cfg, const std::string& name, int code,
               const std::string& message) {
  std::ostringstream os;
  os << "error=" << message << '\n';
  os << "SUMMARY\n";
  os << "suite=" << name << '\n';
  os << "exit=" << code << '\n';
  if (cfg.output.empty())
    std::cout << os.str();
  else
    write_text_file(cfg.output, os.str());
  std::cerr << name << ": " << message << '\n';
  return code;
}

OperatorField field_for(const Config& cfg) {
  if (!cfg.input.empty()) {
    OperatorField F = load_field_file(cfg.input);
    // Gate user-supplied fields: certify J^2 = -id by sampling.
    double res = certify_acs(F, std::max(cfg.samples, 20), cfg.seed ^ 0x11);
    if (res > 1e-6)
      throw InvalidStructureError("field fails J^2 = -id, residual " +
                                  format_double(res));
    return F;
  }
  int n = 4, d = 1;
  double eps = 0.1;
  if (cfg.generate.size() == 3) {
    n = static_cast<int>(cfg.generate[0]);
    d = static_cast<int>(cfg.generate[1]);
    eps = cfg.generate[2];
  }
  return generate_acs(n, cfg.seed, d, eps);
}

int cmd_torsion(const Config& cfg) {
  Report rep;
  OperatorField F;
  try {
    F = field_for(cfg);
  } catch (const InvalidStructureError& e) {
    return emit_error(cfg, "torsion", kExitInvalidStructure, e.what());
  } catch (const InvalidInputError& e) {
    return emit_error(cfg, "torsion", kExitInvalidStructure, e.what());
  }

  const int n = F.nvars();
  rep.kv("n", std::to_string(n));
  rep.kv("degree", std::to_string(F.J.degree()));
  rep.kv("radius", F.radius);
  rep.kv("seed", std::to_string(cfg.seed));

  Rng rng = Rng(cfg.seed).split(0x746f);
  ChartSampler sampler{n, F.radius, cfg.samples, cfg.seed};
  auto points = sampler.real_points();

  double max_discrepancy = 0.0, max_id1 = 0.0, max_id2 = 0.0, max_anti = 0.0;
  VecPoly a = random_vec_poly(n, 2, rng);
  VecPoly b = random_vec_poly(n, 2, rng);
  for (const Vec& x : points) {
    Vec t1 = torsion_bracket(F, a, b, x);
    Vec t2 = torsion_pointwise(F, a.eval(x), b.eval(x), x);
    double scale = 1.0 + a.eval(x).norm() * b.eval(x).norm();
    max_discrepancy = std::max(max_discrepancy, (t1 - t2).norm() / scale);
    max_anti =
        std::max(max_anti, (torsion_bracket(F, b, a, x) + t1).norm() / scale);

    Vec u(n), v(n);
    for (int i = 0; i < n; ++i) {
      u(i) = rng.uniform(-1.0, 1.0);
      v(i) = rng.uniform(-1.0, 1.0);
    }
    max_id1 = std::max(max_id1, check_identity_1(F, a, x, u));
    max_id2 = std::max(max_id2, check_identity_2(F, x, u, v));
  }

  rep.kv("max_two_formula_discrepancy", max_discrepancy);
  rep.kv("max_identity1_residual", max_id1);
  rep.kv("max_identity2_residual", max_id2);
  rep.kv("max_antisymmetry_residual", max_anti);
  rep.gate("two_formula_ok", max_discrepancy <= cfg.tol);
  rep.gate("identity1_ok", max_id1 <= std::max(cfg.tol, 1e-9));
  rep.gate("identity2_ok", max_id2 <= std::max(cfg.tol, 1e-8));
  rep.gate("antisymmetry_ok", max_anti <= cfg.tol);
  return finish(cfg, rep, "torsion");
}

std::vector<LieFixture> invariant_fixtures(const Config& cfg) {
  if (!cfg.input.empty()) {
    PairFixture pf = load_pair_file(cfg.input);
    LieFixture fx;
    fx.name = "input";
    fx.pair = pf.pair;
    if (pf.I)
      fx.I = *pf.I;
    else
      throw InvalidInputError("fixture has no operator I");
    return {fx};
  }
  return {fixture_su2(), fixture_abelian2(), fixture_abelian4(),
          fixture_heisenberg4(), fixture_heisenberg4_true()};
}

int run_invariant(const Config& cfg, Report& rep, bool roundtrip_only) {
  std::vector<LieFixture> fixtures;
  try {
    fixtures = invariant_fixtures(cfg);
  } catch (const std::exception& e) {
    return emit_error(cfg, roundtrip_only ? "roundtrip" : "invariant",
                      kExitInvalidAlgebra, e.what());
  }

  for (const LieFixture& fx : fixtures) {
    const std::string p = fx.name + ".";
    AlgebraReport alg = validate_algebra(fx.pair.g);
    rep.kv(p + "jacobi_residual", alg.jacobi_residual);
    if (!alg.ok)
      return emit_error(cfg, roundtrip_only ? "roundtrip" : "invariant",
                        kExitInvalidAlgebra,
                        fx.name + ": " +
                            (alg.detail.empty() ? "invalid algebra"
                                                : alg.detail));
    rep.gate(p + "pair_valid", validate_pair(fx.pair).ok);
    bool iv = check_IV(fx.pair, fx.I);
    rep.gate(p + "operator_valid", iv);
    if (!iv) continue;

    if (!roundtrip_only) {
      bool crit = integrability_criterion(fx.pair, fx.I);
      rep.kv(p + "criterion", crit);
      EquivalenceReport eq = criterion_subalgebra_equivalence(fx.pair, fx.I);
      rep.kv(p + "k_bracket_closed", eq.k_bracket_closed);
      rep.gate(p + "k_sum_full", eq.k_sum_full);
      rep.gate(p + "k_intersect_h", eq.k_intersect_h);
      rep.gate(p + "equivalence_agreement", eq.agreement);
      Subspace k = build_k(fx.pair, fx.I);
      rep.gate(p + "nu_iso", nu_iso_check(fx.pair, k));
    }

    double ri = roundtrip_I(fx.pair, fx.I);
    double rk = roundtrip_k(fx.pair, build_k(fx.pair, fx.I));
    rep.kv(p + "roundtrip_I_residual", ri);
    rep.kv(p + "roundtrip_k_residual", rk);
    rep.gate(p + "roundtrip_ok", ri <= 1e-9 && rk <= 1e-9);
  }
  return -1;
}

int cmd_invariant(const Config& cfg) {
  Report rep;
  int early = run_invariant(cfg, rep, false);
  if (early >= 0) return early;
  return finish(cfg, rep, "invariant");
}

int cmd_roundtrip(const Config& cfg) {
  Report rep;
  int early = run_invariant(cfg, rep, true);
  if (early >= 0) return early;
  return finish(cfg, rep, "roundtrip");
}

std::vector<FlagFixture> flag_fixtures(const Config& cfg) {
  if (!cfg.input.empty()) return {load_flag_file(cfg.input)};
  return {
      {StarAlgebra{{2}}, FlagSpec{1, {{1}}}},
      {StarAlgebra{{2}}, FlagSpec{1, {{2}}}},
      {StarAlgebra{{3}}, FlagSpec{2, {{1, 2}}}},
      {StarAlgebra{{2, 2}}, FlagSpec{1, {{1}, {1}}}},
  };
}

int cmd_flag(const Config& cfg) {
  Report rep;
  std::vector<FlagFixture> fixtures;
  try {
    fixtures = flag_fixtures(cfg);
  } catch (const std::exception& e) {
    return emit_error(cfg, "flag", kExitInvalidFlag, e.what());
  }
  for (size_t i = 0; i < fixtures.size(); ++i) {
    const FlagFixture& fx = fixtures[i];
    std::string p = "flag" + std::to_string(i) + ".";
    FlagReport fr;
    FlagData data{fx.algebra, fx.flag, SkewCoords(fx.algebra), {}, {}, {}};
    try {
      data = build_flag_data(fx.algebra, fx.flag, cfg.seed,
                             std::max(cfg.samples, 10));
    } catch (const InvalidInputError& e) {
      return emit_error(cfg, "flag", kExitInvalidFlag, e.what());
    }
    fr = verify_flag(data);
    rep.kv(p + "dim_g", std::to_string(data.pair.g.dim));
    rep.kv(p + "dim_k", std::to_string(static_cast<int>(data.k.dim())));
    rep.gate(p + "bracket_closed", fr.k0.bracket_closed);
    rep.gate(p + "sum_full", fr.k0.sum_full);
    rep.gate(p + "intersect_h", fr.k0.intersect_h);
    rep.gate(p + "ad_invariant", fr.k0.ad_invariant);
    rep.gate(p + "nu_iso", fr.nu_iso);
    rep.gate(p + "operator_valid", fr.iv_membership);
    rep.gate(p + "criterion", fr.criterion);
    rep.kv(p + "roundtrip_I_residual", fr.roundtrip_i);
    rep.kv(p + "roundtrip_k_residual", fr.roundtrip_k);
    rep.kv(p + "ad_residual", fr.ad_residual);
    rep.gate(p + "pass", fr.pass());
  }
  return finish(cfg, rep, "flag");
}

int cmd_all(const Config& cfg) {
  Report rep;

  {  // torsion block on a generated field
    OperatorField F;
    try {
      F = field_for(cfg);
    } catch (const std::exception& e) {
      return emit_error(cfg, "all", kExitInvalidStructure, e.what());
    }
    Rng rng = Rng(cfg.seed).split(0x746f);
    ChartSampler sampler{F.nvars(), F.radius, cfg.samples, cfg.seed};
    VecPoly a = random_vec_poly(F.nvars(), 2, rng);
    VecPoly b = random_vec_poly(F.nvars(), 2, rng);
    double worst = 0.0;
    for (const Vec& x : sampler.real_points()) {
      Vec t1 = torsion_bracket(F, a, b, x);
      Vec t2 = torsion_pointwise(F, a.eval(x), b.eval(x), x);
      worst = std::max(worst, (t1 - t2).norm() /
                                  (1.0 + a.eval(x).norm() * b.eval(x).norm()));
    }
    rep.kv("torsion.max_two_formula_discrepancy", worst);
    rep.gate("torsion.ok", worst <= cfg.tol);
  }

  int early = run_invariant(Config{cfg.seed, cfg.samples, cfg.tol,
                                   cfg.tol_from_cli, "", cfg.output, {}},
                            rep, false);
  if (early >= 0) return early;

  for (const FlagFixture& fx : flag_fixtures(Config{cfg.seed})) {
    FlagData data = build_flag_data(fx.algebra, fx.flag, cfg.seed, 10);
    std::string name = "flag";
    for (int d : fx.algebra.block_sizes) name += "_" + std::to_string(d);
    for (int r : fx.flag.ranks[0]) name += "r" + std::to_string(r);
    rep.gate(name + ".pass", verify_flag(data).pass());
  }
  return finish(cfg, rep, "all");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolkit for almost complex structures"};
  app.require_subcommand(1);

  Config cfg;
  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "randomness seed");
    sub->add_option("--samples", cfg.samples, "sample count per sweep");
    sub->add_option("--tol", cfg.tol, "tolerance (overrides NL_TOL)")
        ->each([&cfg](const std::string&) { cfg.tol_from_cli = true; });
    sub->add_option("--input", cfg.input, "fixture file");
    sub->add_option("--output", cfg.output, "report file (default stdout)");
    sub->add_option("--generate", cfg.generate,
                    "generator parameters: n d eps")
        ->expected(3);
  };

  CLI::App* torsion = app.add_subcommand("torsion", "torsion formula checks");
  CLI::App* invariant =
      app.add_subcommand("invariant", "homogeneous-pair criterion checks");
  CLI::App* flag = app.add_subcommand("flag", "flag manifold verification");
  CLI::App* roundtrip =
      app.add_subcommand("roundtrip", "bijection round-trip checks");
  CLI::App* all = app.add_subcommand("all", "every suite");
  for (CLI::App* sub : {torsion, invariant, flag, roundtrip, all})
    add_common(sub);

  CLI11_PARSE(app, argc, argv);
  apply_env_tol(cfg);

  try {
    if (torsion->parsed()) return cmd_torsion(cfg);
    if (invariant->parsed()) return cmd_invariant(cfg);
    if (flag->parsed()) return cmd_flag(cfg);
    if (roundtrip->parsed()) return cmd_roundtrip(cfg);
    return cmd_all(cfg);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    if (flag->parsed()) return kExitInvalidFlag;
    if (invariant->parsed() || roundtrip->parsed()) return kExitInvalidAlgebra;
    return kExitInvalidStructure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidStructure;
  }
}
