// Acceptance sweep: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nl/chart.hpp"
#include "nl/fixtures.hpp"
#include "nl/flag.hpp"
#include "nl/io.hpp"
#include "nl/lie.hpp"

using namespace nl;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool ok,
            const std::string& detail = "") {
  std::printf("criterion %d (%s): %s%s%s\n", idx, name.c_str(),
              ok ? "PASS" : "FAIL", detail.empty() ? "" : " — ",
              detail.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

Vec random_real(int n, Rng& rng, double scale) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = scale * rng.uniform(-1.0, 1.0);
  return v;
}

// ---------------------------------------------------------------- criterion 1
void criterion_torsion_equivalence() {
  auto t0 = std::chrono::steady_clock::now();
  struct Batch {
    int n, d, count;
    double eps;
  };
  const std::vector<Batch> batches = {
      {2, 1, 17, 0.25}, {2, 2, 17, 0.15}, {4, 1, 17, 0.15}, {4, 2, 16, 0.05},
      {6, 1, 30, 0.05}, {6, 2, 3, 0.008},
  };
  int fields = 0;
  double worst = 0.0;
  for (const Batch& batch : batches) {
    for (int f = 0; f < batch.count; ++f) {
      std::uint64_t seed = 1000 * batch.n + 100 * batch.d + f;
      OperatorField F = generate_acs(batch.n, seed, batch.d, batch.eps);
      ++fields;
      Rng rng = Rng(seed).split(0xac1);
      ChartSampler sampler{batch.n, F.radius, 5, seed};
      auto points = sampler.real_points();
      for (int pair = 0; pair < 4; ++pair) {
        VecPoly a = random_vec_poly(batch.n, 2, rng);
        VecPoly b = random_vec_poly(batch.n, 2, rng);
        for (const Vec& x : points) {
          Vec t1 = torsion_bracket(F, a, b, x);
          Vec t2 = torsion_pointwise(F, a.eval(x), b.eval(x), x);
          double rel =
              (t1 - t2).norm() / (1.0 + a.eval(x).norm() * b.eval(x).norm());
          worst = std::max(worst, rel);
        }
      }
    }
  }
  double elapsed = seconds_since(t0);
  std::ostringstream detail;
  detail << fields << " fields, max discrepancy " << format_double(worst)
         << ", " << format_double(elapsed) << " s";
  report(1, "torsion two-formula equivalence",
         fields >= 100 && worst <= 1e-6 && elapsed <= 60.0, detail.str());
}

// ---------------------------------------------------------------- criterion 2
void criterion_constant_torsion() {
  double worst = 0.0;
  int triples = 0;
  for (int n : {2, 4, 6}) {
    OperatorField F;
    F.J = MatPoly::constant(n, complexify(block_rotation(n)));
    F.radius = 0.5;
    Rng rng(2000 + n);
    for (int rep = 0; rep < 340; ++rep) {
      VecPoly a = random_vec_poly(n, 2, rng);
      VecPoly b = random_vec_poly(n, 2, rng);
      Vec x = random_real(n, rng, 0.3);
      worst = std::max(worst, torsion_bracket(F, a, b, x).norm());
      worst = std::max(
          worst,
          torsion_pointwise(F, a.eval(x), b.eval(x), x).norm());
      ++triples;
    }
  }
  report(2, "constant-structure torsion vanishes",
         triples >= 1000 && worst <= 1e-14,
         "max residual " + format_double(worst) + " over " +
             std::to_string(triples) + " triples");
}

// ---------------------------------------------------------------- criterion 3
void criterion_identities() {
  double worst1 = 0.0, worst2 = 0.0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    int n = (seed % 2) ? 4 : 6;
    OperatorField F = generate_acs(n, seed, (seed % 3 == 0) ? 2 : 1, 0.05);
    Rng rng = Rng(seed).split(0xac3);
    for (int rep = 0; rep < 20; ++rep) {
      VecPoly c = random_vec_poly(n, 2, rng);
      Vec x = random_real(n, rng, 0.3);
      Vec u = random_real(n, rng, 1.0);
      Vec v = random_real(n, rng, 1.0);
      worst1 = std::max(worst1, check_identity_1(F, c, x, u));
      worst2 = std::max(worst2, check_identity_2(F, x, u, v));
    }
  }
  report(3, "derivative identities", worst1 <= 1e-8 && worst2 <= 1e-8,
         "residuals " + format_double(worst1) + " / " + format_double(worst2));
}

// ---------------------------------------------------------------- criterion 4
void criterion_projections_exactness() {
  double worst = 0.0;
  bool exact = true;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    int n = (seed % 2) ? 4 : 6;
    OperatorField F = generate_acs(n, seed + 40, 1, 0.1);
    Mat id = Mat::Identity(n, n);

    ChartSampler sampler{n, F.radius, 25, seed};
    auto pts = sampler.real_points();
    auto cpts = sampler.complex_points();
    pts.insert(pts.end(), cpts.begin(), cpts.end());
    for (const Vec& z : pts) {
      auto [p, m] = eigenprojections(F, z);
      Mat Jz = F.eval(z);
      worst = std::max({worst, (p * p - p).norm(), (m * m - m).norm(),
                        (p * m).norm(), (Jz * p - Cplx(0, 1) * p).norm(),
                        (Jz * m + Cplx(0, 1) * m).norm()});
    }

    ChartSampler small{n, F.radius / 100.0, 100, seed + 7};
    for (const Vec& z : small.complex_points())
      if (!check_exactness(F, z)) exact = false;
  }
  report(4, "eigenprojection algebra and exactness",
         worst <= 1e-10 && exact,
         "max projection residual " + format_double(worst));
}

// ---------------------------------------------------------------- criterion 5
void criterion_involutivity() {
  bool closed_ok = true;
  double worst_closed = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    OperatorField F = generate_acs(4, seed, 2, 0.2, AcsKind::integrable);
    ChartSampler s{4, F.radius, 30, seed + 100};
    InvolutivityReport r = check_involutivity(F, s);
    worst_closed = std::max(worst_closed, r.max_closure_residual);
    if (r.inconclusive || r.max_closure_residual > 1e-5) closed_ok = false;
  }

  int torsional_found = 0, torsional_violating = 0;
  for (std::uint64_t seed = 1; seed <= 20 && torsional_found < 5; ++seed) {
    OperatorField F = generate_acs(4, seed, 1, 0.45, AcsKind::generic, 0.4);
    Rng rng = Rng(seed).split(0xac5);
    double tnorm = 0.0;
    for (int rep = 0; rep < 30; ++rep) {
      Vec x = random_real(4, rng, 0.2);
      Vec u = random_real(4, rng, 1.0).normalized();
      Vec v = random_real(4, rng, 1.0).normalized();
      tnorm = std::max(tnorm, torsion_pointwise(F, u, v, x).norm());
    }
    if (tnorm < 0.1) continue;
    ++torsional_found;
    ChartSampler s{4, F.radius, 40, seed + 200};
    InvolutivityReport r = check_involutivity(F, s);
    if (!r.inconclusive && r.max_closure_residual >= 1e-3)
      ++torsional_violating;
  }
  report(5, "involutivity tracks torsion",
         closed_ok && torsional_found >= 5 &&
             torsional_violating == torsional_found,
         "torsion-free residual " + format_double(worst_closed) + ", " +
             std::to_string(torsional_violating) + "/" +
             std::to_string(torsional_found) + " torsional fields violate");
}

// ---------------------------------------------------------------- criterion 6
void criterion_equivalence_sweep() {
  int agreements = 0, total = 0;
  auto run_one = [&](const HomogeneousPair& pair, const PartialStructure& I) {
    if (!check_IV(pair, I)) return;
    ++total;
    if (criterion_subalgebra_equivalence(pair, I).agreement) ++agreements;
  };
  for (const LieFixture& fx :
       {fixture_su2(), fixture_abelian2(), fixture_abelian4(),
        fixture_heisenberg4(), fixture_heisenberg4_true()})
    run_one(fx.pair, fx.I);
  for (std::uint64_t seed = 0; seed < 260 && total < 230; ++seed) {
    LieFixture fx = random_fixture(seed);
    run_one(fx.pair, fx.I);
  }
  report(6, "criterion/subalgebra meta-equivalence",
         total >= 205 && agreements == total,
         std::to_string(agreements) + "/" + std::to_string(total) +
             " fixtures agree");
}

// ---------------------------------------------------------------- criterion 7
void criterion_roundtrip() {
  double worst = 0.0;
  int count = 0;
  bool convention_forced = true;
  auto run_one = [&](const HomogeneousPair& pair, const PartialStructure& I) {
    if (!check_IV(pair, I)) return;
    Subspace k = build_k(pair, I);
    worst = std::max({worst, roundtrip_I(pair, I), roundtrip_k(pair, k)});
    ++count;
    if (pair.V.dim() > 0) {
      // Flipping the eigenvalue assignment must break the round trip: the
      // flipped forward map lands on a different subspace, and the flipped
      // reconstruction misses I by 2 ||I||.
      Subspace flipped = build_k(pair, PartialStructure{RMat(-I.I)});
      if (flipped.equals(k)) convention_forced = false;
      if ((-beta(pair, k).I - I.I).norm() <= 1e-3) convention_forced = false;
    }
  };
  for (const LieFixture& fx :
       {fixture_su2(), fixture_abelian2(), fixture_abelian4(),
        fixture_heisenberg4_true()})
    run_one(fx.pair, fx.I);
  for (std::uint64_t seed = 300; seed < 360; ++seed) {
    LieFixture fx = random_fixture(seed);
    run_one(fx.pair, fx.I);
  }
  report(7, "bijection round-trip", count >= 50 && worst <= 1e-9 &&
                                        convention_forced,
         "max residual " + format_double(worst) + " over " +
             std::to_string(count) + " fixtures");
}

// ---------------------------------------------------------------- criterion 8
void criterion_flag_sweep() {
  auto t0 = std::chrono::steady_clock::now();

  // All partitions of every total <= 6 into block sizes.
  std::vector<std::vector<int>> algebras;
  std::vector<int> current;
  std::function<void(int, int)> partitions = [&](int left, int maxpart) {
    if (left == 0) {
      algebras.push_back(current);
      return;
    }
    for (int p = std::min(left, maxpart); p >= 1; --p) {
      current.push_back(p);
      partitions(left - p, p);
      current.pop_back();
    }
  };
  for (int total = 1; total <= 6; ++total) partitions(total, total);

  int flags = 0, failed = 0;
  for (const std::vector<int>& sizes : algebras) {
    StarAlgebra A{sizes};
    // Exhaustive nondecreasing rank tuples per block, n = 1..3.
    for (int n = 1; n <= 3; ++n) {
      std::vector<std::vector<std::vector<int>>> per_block;
      for (int d : sizes) {
        std::vector<std::vector<int>> tuples;
        std::vector<int> t(n, 0);
        for (;;) {
          tuples.push_back(t);
          int j = n - 1;
          while (j >= 0 && t[j] == d) --j;
          if (j < 0) break;
          ++t[j];
          for (int l = j + 1; l < n; ++l) t[l] = t[j];
          // keep nondecreasing automatically by resetting to t[j]
        }
        per_block.push_back(tuples);
      }
      // Cartesian product over blocks.
      std::vector<size_t> idx(sizes.size(), 0);
      for (;;) {
        FlagSpec f;
        f.nflags = n;
        for (size_t b = 0; b < sizes.size(); ++b)
          f.ranks.push_back(per_block[b][idx[b]]);
        FlagData data = build_flag_data(A, f, 4242 + flags, 10);
        if (!verify_flag(data).pass()) ++failed;
        ++flags;

        size_t b = 0;
        while (b < idx.size() && ++idx[b] == per_block[b].size()) {
          idx[b] = 0;
          ++b;
        }
        if (b == idx.size()) break;
      }
    }
  }
  double elapsed = seconds_since(t0);
  std::ostringstream detail;
  detail << flags << " flags over " << algebras.size() << " algebras, "
         << failed << " failures, " << format_double(elapsed) << " s";
  report(8, "flag manifold sweep", failed == 0 && elapsed <= 120.0,
         detail.str());
}

// ---------------------------------------------------------------- criterion 9
void criterion_cli_determinism() {
  auto slurp = [](const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
  };
  std::string a = "acceptance_det_a.txt", b = "acceptance_det_b.txt";
  std::string base = std::string(NLCHECK_PATH) +
                     " all --seed 2024 --samples 10 --output ";
  int ra = std::system((base + a + " >/dev/null 2>&1").c_str());
  int rb = std::system((base + b + " >/dev/null 2>&1").c_str());
  std::string ca = slurp(a), cb = slurp(b);
  bool ok = WEXITSTATUS(ra) == 0 && WEXITSTATUS(rb) == 0 && !ca.empty() &&
            ca == cb;
  std::remove(a.c_str());
  std::remove(b.c_str());
  report(9, "deterministic reports", ok,
         std::to_string(ca.size()) + " bytes per report");
}

}  // namespace

int main() {
  criterion_torsion_equivalence();
  criterion_constant_torsion();
  criterion_identities();
  criterion_projections_exactness();
  criterion_involutivity();
  criterion_equivalence_sweep();
  criterion_roundtrip();
  criterion_flag_sweep();
  criterion_cli_determinism();
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
