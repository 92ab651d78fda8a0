// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Every tolerance is pinned in code next to its check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "solitonlab/analysis.hpp"
#include "solitonlab/dynamics.hpp"
#include "solitonlab/params.hpp"
#include "solitonlab/shooting.hpp"
#include "solitonlab/systems.hpp"

using namespace solitonlab;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s  %2d  %-34s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  if (!pass) ++g_failures;
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const auto start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

RescaledTrajectory shoot(const TwoSummandsParams& p, const ShootSpec& spec,
                         const IntegrationControls& c) {
  RescaledSystem sys{p};
  sys.project_conservation = spec.locus != LocusKind::Unconstrained;
  sys.pin_potential = spec.locus == LocusKind::Einstein;
  return integrate(sys, RescaledSystem::pack(seed_unstable(p, spec)), c, sys.default_events());
}

TwoSummandsParams product_params(int d1, int d2, double eps) {
  TwoSummandsParams p;
  p.d1 = d1;
  p.d2 = d2;
  p.A1 = static_cast<double>(d1) * (d1 - 1);
  p.A2 = static_cast<double>(d2) * (d2 - 1);
  p.A3 = 0.0;
  p.epsilon = eps;
  p.sphere_collapse = true;
  return p;
}

// --------------------------------------------------------------------------
// 1. cone solutions reproduce the preset family values to 1e-12 relative

void criterion_cone_regression() {
  const double t0 = now_seconds();
  bool pass = true;
  double worst = 0.0;
  auto check = [&](double got, double want) {
    const double rel = std::abs(got - want) / std::abs(want);
    worst = std::max(worst, rel);
    if (!(rel < 1e-12)) pass = false;
  };
  {
    const auto cones = cone_solutions(resolve_preset({PresetName::CaP, 1}));
    pass = pass && cones.size() == 2;
    check(cones[0].c1 * cones[0].c1, 57.0 / 121.0);
    check(cones[0].c2 * cones[0].c2, 19.0 / 11.0);
    check(cones[1].c1 * cones[1].c1, 1.0);
    check(cones[1].c2 * cones[1].c2, 1.0);
  }
  for (int m = 1; m <= 3; ++m) {
    const auto cones = cone_solutions(resolve_preset({PresetName::HP, m}));
    pass = pass && cones.size() == 2;
    const double num = 9.0 + 14.0 * m + 4.0 * m * m;
    check(cones[0].c1 * cones[0].c1, num / ((1.0 + 2 * m) * (3.0 + 2 * m) * (3.0 + 2 * m)));
    check(cones[0].c2 * cones[0].c2, num / ((1.0 + 2 * m) * (3.0 + 2 * m)));
    check(cones[1].c1 * cones[1].c1, 1.0);
    check(cones[1].c2 * cones[1].c2, 1.0);
  }
  for (int m = 1; m <= 3; ++m) {
    const auto cones = cone_solutions(resolve_preset({PresetName::F, m}));
    pass = pass && cones.size() == 2;
    const double mp1 = m + 1.0;
    check(cones[0].c1 * cones[0].c1, (mp1 * mp1 + m) / (mp1 * mp1 * (1.0 + 4 * m)));
    check(cones[0].c2 * cones[0].c2, 4.0 * (mp1 * mp1 + m) / ((2.0 * m + 1) * (2.0 * m + 1) + m));
    check(cones[1].c1 * cones[1].c1, mp1 / (1.0 + 4 * m));
    check(cones[1].c2 * cones[1].c2, 4.0 * mp1 / (1.0 + 4 * m));
  }
  const double dt = now_seconds() - t0;
  pass = pass && dt < 1.0;
  report(1, "cone-solution regression", pass,
         "worst rel err " + fmt(worst) + ", " + fmt(dt) + " s");
}

// --------------------------------------------------------------------------
// 2. initial-point eigenvalues for d1 = 1..10 to 1e-12

void criterion_eigenvalues() {
  bool pass = true;
  double worst = 0.0;
  for (int d1 = 1; d1 <= 10; ++d1) {
    TwoSummandsParams p;
    p.d1 = d1;
    p.d2 = 4;
    p.A1 = static_cast<double>(d1) * (d1 - 1);
    p.A2 = 48.0;
    p.A3 = 12.0;
    const auto lin = linearization_initial(p);
    const double want[5] = {2.0 / d1, 1.0 / d1 - 1.0, 1.0 / d1 - 1.0, 1.0 / d1, 1.0 / d1};
    for (int k = 0; k < 5; ++k) {
      worst = std::max(worst, std::abs(lin.eigenvalues[k] - want[k]));
      if (!(std::abs(lin.eigenvalues[k] - want[k]) < 1e-12)) pass = false;
      // eigenpairs must actually satisfy the matrix equation
      for (int i = 0; i < 5; ++i) {
        double acc = 0.0;
        for (int j = 0; j < 5; ++j) acc += lin.matrix[i][j] * lin.eigenvectors[k][j];
        if (!(std::abs(acc - lin.eigenvalues[k] * lin.eigenvectors[k][i]) < 1e-12)) pass = false;
      }
    }
  }
  report(2, "eigenvalue regression", pass, "worst abs err " + fmt(worst));
}

// --------------------------------------------------------------------------
// 3. conservation drift below 1e-8 over s in [0, 50] on 20 random shots

void criterion_conservation_drift() {
  const double t0 = now_seconds();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.2, 1.0);
  bool pass = true;
  double worst = 0.0, worst_raw = 0.0;
  for (int k = 0; k < 20; ++k) {
    auto p = resolve_preset(k % 2 == 0 ? Preset{PresetName::HP, 1} : Preset{PresetName::CaP, 1});
    ShootSpec spec;
    switch (k % 4) {
      case 0:  // steady
        p.epsilon = 0.0;
        p.C = -1.0;
        spec = {{-0.3 * unit(rng), unit(rng), unit(rng)}, 1e-7, LocusKind::Soliton};
        break;
      case 1:  // expanding
        p.epsilon = 2.0;
        p.C = -1.0;
        spec = {{-0.3 * unit(rng), unit(rng), unit(rng)}, 1e-7, LocusKind::Soliton};
        break;
      case 2:  // Ricci flat
        p.epsilon = 0.0;
        p.C = 0.0;
        spec = {{0.0, unit(rng), unit(rng)}, 1e-7, LocusKind::Einstein};
        break;
      case 3:  // negative Einstein
        p.epsilon = 2.0;
        p.C = 0.0;
        spec = {{0.0, unit(rng), unit(rng)}, 1e-7, LocusKind::Einstein};
        break;
    }
    IntegrationControls c;
    c.s_max = 50.0;
    c.convergence_tol = 0.0;
    const auto traj = shoot(p, spec, c);
    worst = std::max(worst, traj.max_invariant);
    worst_raw = std::max(worst_raw, traj.max_raw_drift);
    if (!(traj.max_invariant < 1e-8)) pass = false;
    // guard: the per-step defect removed by the manifold projection must be
    // at truncation level, or the field/law pair would be inconsistent
    if (!(traj.max_raw_drift < 1e-9)) pass = false;
  }
  const double dt = now_seconds() - t0;
  pass = pass && dt < 30.0;
  report(3, "conservation drift", pass,
         "max residual " + fmt(worst) + ", max step defect " + fmt(worst_raw) + ", " + fmt(dt) +
             " s");
}

// --------------------------------------------------------------------------
// 4. trapping region: X2 > 0 and Y2/Y1 < omega-hat-1 along 50 shots

void criterion_trapping() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.2, 1.0);
  const std::vector<Preset> presets = {{PresetName::HP, 1}, {PresetName::HP, 2},
                                       {PresetName::HP, 3}, {PresetName::CaP, 1},
                                       {PresetName::F, 3},  {PresetName::F, 4}};
  int violations = 0, trajectories = 0;
  using R = RescaledSystem;
  while (trajectories < 50) {
    for (const auto& preset : presets) {
      for (double eps : {0.0, 2.0}) {
        for (double C : {0.0, -1.0}) {
          if (trajectories >= 50) break;
          auto p = resolve_preset(preset);
          p.epsilon = eps;
          p.C = C;
          const auto roots = omega_hat_roots(p);
          if (!roots) continue;  // all listed presets have D-hat > 0
          ShootSpec spec;
          if (C == 0.0)
            spec = {{0.0, unit(rng), unit(rng)}, 1e-7, LocusKind::Einstein};
          else
            spec = {{-0.3 * unit(rng), unit(rng), unit(rng)}, 1e-7, LocusKind::Soliton};
          IntegrationControls c;
          c.s_max = 50.0;
          c.convergence_tol = 0.0;
          c.sample_ds = 0.1;
          const auto traj = shoot(p, spec, c);
          ++trajectories;
          for (std::size_t i = 0; i < traj.size(); ++i) {
            if (!(traj.s[i] > 0.0)) continue;  // the seed itself sits on X2 = 0
            if (!(traj.y[i][R::iX2] > 0.0)) ++violations;
            if (!(traj.y[i][R::iY2] / traj.y[i][R::iY1] < roots->first)) ++violations;
          }
        }
      }
    }
  }
  report(4, "trapping properties", violations == 0,
         std::to_string(trajectories) + " trajectories, " + std::to_string(violations) +
             " violations");
}

// --------------------------------------------------------------------------
// 5. Lyapunov monotonicity suites, sample-to-sample slack 1e-10

void criterion_lyapunov() {
  using R = RescaledSystem;
  bool pass = true;
  std::string note;

  auto run = [&](TwoSummandsParams p, const ShootSpec& spec, double s_max) {
    IntegrationControls c;
    c.s_max = s_max;
    c.sample_ds = 0.1;
    c.convergence_tol = 0.0;
    return shoot(p, spec, c);
  };
  auto functionals_along = [&](const TwoSummandsParams& p, const RescaledTrajectory& traj) {
    std::vector<Functionals> out;
    out.reserve(traj.size());
    for (const auto& y : traj.y) out.push_back(functionals(p, R::unpack(y)));
    return out;
  };

  // steady soliton: K nonincreasing while X2 > 0; L nondecreasing (eps = 0)
  {
    auto p = resolve_preset({PresetName::HP, 1});
    p.C = -1.0;
    const auto traj = run(p, {{-0.2, 0.9, 0.4}, 1e-7, LocusKind::Soliton}, 60.0);
    const auto F = functionals_along(p, traj);
    for (std::size_t i = 1; i < traj.size(); ++i) {
      if (traj.y[i - 1][R::iX2] > 0.0 && traj.y[i][R::iX2] > 0.0 &&
          F[i].K > F[i - 1].K + 1e-10) {
        pass = false;
        note = "K increased on steady run";
      }
      if (traj.y[i][R::iL] < traj.y[i - 1][R::iL] - 1e-10) {
        pass = false;
        note = "L decreased on steady run";
      }
    }
  }
  // Ricci flat: K nonincreasing, F0 nonincreasing, G nondecreasing, L nondecreasing
  {
    const auto p = resolve_preset({PresetName::HP, 1});
    const auto traj = run(p, {{0.0, 1.0, 0.2}, 1e-7, LocusKind::Einstein}, 60.0);
    const auto F = functionals_along(p, traj);
    for (std::size_t i = 1; i < traj.size(); ++i) {
      if (traj.y[i - 1][R::iX2] > 0.0 && traj.y[i][R::iX2] > 0.0 &&
          F[i].K > F[i - 1].K + 1e-10) {
        pass = false;
        note = "K increased on Ricci-flat run";
      }
      if (std::isfinite(F[i - 1].F0) && F[i].F0 > F[i - 1].F0 + 1e-10) {
        pass = false;
        note = "F0 increased on Ricci-flat run";
      }
      if (F[i].G < F[i - 1].G - 1e-10) {
        pass = false;
        note = "G decreased on Ricci-flat run";
      }
      if (traj.y[i][R::iL] < traj.y[i - 1][R::iL] - 1e-10) {
        pass = false;
        note = "L decreased on Ricci-flat run";
      }
    }
  }
  // negative Einstein (Einstein locus, eps > 0): F0 nonincreasing
  {
    auto p = resolve_preset({PresetName::HP, 1});
    p.epsilon = 2.0;
    const auto traj = run(p, {{0.0, 1.0, 0.2}, 1e-7, LocusKind::Einstein}, 60.0);
    const auto F = functionals_along(p, traj);
    for (std::size_t i = 1; i < traj.size(); ++i) {
      if (std::isfinite(F[i - 1].F0) && F[i].F0 > F[i - 1].F0 + 1e-10) {
        pass = false;
        note = "F0 increased on negative-Einstein run";
      }
    }
  }
  report(5, "Lyapunov suites", pass, pass ? "K, F0, G, L monotone" : note);
}

// --------------------------------------------------------------------------
// 6. asymptotic limits, each run under 10 s

void criterion_asymptotics() {
  using R = RescaledSystem;
  bool pass = true;
  std::string note;
  auto add = [&](const char* what, double got, double want) {
    if (!(std::abs(got - want) < 1e-3)) {
      pass = false;
      note += std::string(" ") + what + "=" + fmt(got);
    }
  };
  const double t0 = now_seconds();
  // steady, C = -1: |L_end - 1| < 1e-3
  {
    auto p = resolve_preset({PresetName::HP, 1});
    p.C = -1.0;
    IntegrationControls c;
    c.s_max = 6000.0;
    c.max_step = 2.0;
    c.sample_ds = 10.0;
    c.convergence_tol = 0.0;
    const auto traj = shoot(p, {{-0.2, 0.9, 0.4}, 1e-7, LocusKind::Soliton}, c);
    add("steady L", traj.back()[R::iL], 1.0);
  }
  // Ricci flat HP m=1: X -> 1/7, Y -> 1/(7 c_i)
  {
    const auto p = resolve_preset({PresetName::HP, 1});
    const auto cone = cone_solutions(p)[0];
    IntegrationControls c;
    c.s_max = 200.0;
    const auto traj = shoot(p, {{0.0, 1.0, 0.0}, 1e-7, LocusKind::Einstein}, c);
    add("rf X1", traj.back()[R::iX1], 1.0 / 7.0);
    add("rf X2", traj.back()[R::iX2], 1.0 / 7.0);
    add("rf Y1", traj.back()[R::iY1], 1.0 / (7.0 * cone.c1));
    add("rf Y2", traj.back()[R::iY2], 1.0 / (7.0 * cone.c2));
  }
  // negative Einstein, eps = 2, n = 7: L -> 1/sqrt(7)
  {
    auto p = resolve_preset({PresetName::HP, 1});
    p.epsilon = 2.0;
    IntegrationControls c;
    c.s_max = 300.0;
    c.convergence_tol = 1e-8;
    const auto traj = shoot(p, {{0.0, 1.0, 0.2}, 1e-7, LocusKind::Einstein}, c);
    add("ne L", traj.back()[R::iL], 1.0 / std::sqrt(7.0));
    add("ne X1", traj.back()[R::iX1], 1.0 / 7.0);
  }
  // expanding, eps = 2, C = -1: X, Y, L all below 1e-3 at the horizon
  {
    auto p = resolve_preset({PresetName::HP, 1});
    p.epsilon = 2.0;
    p.C = -1.0;
    IntegrationControls c;
    c.s_max = 1.2e6;
    c.max_step = 2.0;
    c.sample_ds = 500.0;
    c.convergence_tol = 0.0;
    const auto traj = shoot(p, {{-0.2, 0.9, 0.4}, 1e-7, LocusKind::Soliton}, c);
    for (int i = 0; i < 5; ++i) add("exp var", std::abs(traj.back()[i]), 0.0);
  }
  const double dt = now_seconds() - t0;
  pass = pass && dt < 40.0;  // four runs, each well under the 10 s budget
  report(6, "asymptotic limits", pass, (pass ? "all limits hit" : note) + ", " + fmt(dt) + " s");
}

// --------------------------------------------------------------------------
// 7. spiral/node dichotomy via rotation counts (A3 = 0, horizon s = 300)

void criterion_rotation() {
  bool pass = true;
  std::string note = "counts:";
  for (int n = 4; n <= 10; ++n) {
    const auto p = product_params(2, n - 2, 0.0);
    const auto cone = cone_solutions(p)[0];
    IntegrationControls c;
    c.s_max = 300.0;
    c.sample_ds = 0.05;
    c.convergence_tol = 0.0;
    const auto traj = shoot(p, {{0.0, 1.0, 0.0}, 1e-7, LocusKind::Einstein}, c);
    const int count = rotation_count(p, traj, cone);
    note += " n" + std::to_string(n) + "=" + std::to_string(count);
    if (n <= 8 && !(count >= 3)) pass = false;
    if (n >= 9 && !(count <= 1)) pass = false;
  }
  report(7, "spiral/node dichotomy", pass, note);
}

// --------------------------------------------------------------------------
// 8. linear trajectories for the m = 1 families, control at HP m = 2

void criterion_linear_trajectories() {
  auto deviation = [](const Preset& preset) {
    const auto p = resolve_preset(preset);
    const auto cone = cone_solutions(p)[0];
    IntegrationControls c;
    c.s_max = 200.0;
    c.sample_ds = 0.05;
    c.convergence_tol = 1e-7;
    RescaledSystem sys{p};
    sys.project_conservation = true;
    sys.pin_potential = true;
    const auto traj = integrate(
        sys, RescaledSystem::pack(seed_unstable(p, {{0.0, 1.0, 0.0}, 1e-7, LocusKind::Einstein})),
        c, sys.default_events());
    return collinearity_test(p, traj, cone);
  };
  const double hp1 = deviation({PresetName::HP, 1});
  const double f1 = deviation({PresetName::F, 1});
  const double hp2 = deviation({PresetName::HP, 2});
  const bool pass = hp1 < 1e-5 && f1 < 1e-5 && hp2 > 1e-3;
  report(8, "linear-trajectory theorem", pass,
         "hp1 " + fmt(hp1) + ", f1 " + fmt(f1) + ", hp2 control " + fmt(hp2));
}

// --------------------------------------------------------------------------
// 9. Boehm constructions at desk scale

void criterion_boehm_searches() {
  const double t0 = now_seconds();
  const auto roots = symmetric_search(product_params(2, 2, -8.0), 0.01, 1.0);
  const double t1 = now_seconds();
  const auto matches = sphere_match(2, 3, 0.02, 0.6, 0.02, 0.6);
  const double t2 = now_seconds();
  const bool pass = !roots.empty() && !matches.empty() && (t1 - t0) < 300.0 && (t2 - t1) < 300.0;
  report(9, "Boehm constructions", pass,
         std::to_string(roots.size()) + " symmetric, " + std::to_string(matches.size()) +
             " sphere matches, " + fmt(t1 - t0) + "+" + fmt(t2 - t1) + " s");
}

// --------------------------------------------------------------------------
// 10. quasi-Einstein reduction and the m -> infinity limit

void criterion_quasi_einstein() {
  bool pass = true;
  std::string note;

  // (a) pointwise agreement of the multi field with the rescaled one at A3 = 0
  {
    TwoSummandsParams p;
    p.d1 = 3;
    p.d2 = 4;
    p.A1 = 6.0;
    p.A2 = 48.0;
    p.A3 = 0.0;
    p.epsilon = 2.0;
    const auto mp = to_multi(p);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> pos(0.05, 1.2), any(-1.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      PhaseState s;
      s.X1 = any(rng);
      s.X2 = any(rng);
      s.Y1 = pos(rng);
      s.Y2 = pos(rng);
      s.L = pos(rng);
      const PhaseState d = rhs_rescaled(p, s);
      MultiState ms, md;
      ms.X = {s.X1, s.X2};
      ms.Y = {s.Y1, s.Y2};
      ms.L = s.L;
      rhs_multi(mp, ms, md);
      worst = std::max({worst, std::abs(md.X[0] - d.X1), std::abs(md.X[1] - d.X2),
                        std::abs(md.Y[0] - d.Y1), std::abs(md.Y[1] - d.Y2),
                        std::abs(md.L - d.L)});
    }
    if (!(worst < 1e-14)) {
      pass = false;
      note += " field mismatch " + fmt(worst);
    }
  }

  // (b) conservation residual below 1e-8 along trajectories for m in {1, 5, 50, inf};
  // finite m uses lambda_{r+1} = -C/m so the law encodes the same soliton
  const double delta = 1e-5;
  const double C = -1.0;
  auto multi_run = [&](double m) {
    MultiWarpedParams mp;
    mp.factors = {{3.0, 2.0}, {4.0, 12.0}};
    mp.epsilon = 0.0;
    if (std::isfinite(m)) {
      mp.m = m;
      mp.lambda_virtual = -C / m;
    } else {
      mp.C = C;
    }
    IntegrationControls c;
    c.s_max = 30.0;
    c.sample_ds = 0.1;
    c.convergence_tol = 0.0;
    const bool fin = std::isfinite(m);
    const std::size_t K = fin ? 3 : 2;
    MultiState y0;
    y0.X.assign(K, 0.0);
    y0.Y.assign(K, 0.0);
    y0.X[0] = y0.Y[0] = 1.0 / 3.0;
    y0.Y[1] = delta;
    if (fin) y0.Y[2] = delta;  // Y_{r+1}(0) = e^{u/m} L(0) = L(0)
    y0.L = delta;
    if (fin) {
      MultiSystem<3> sys{mp};
      sys.project_conservation = true;
      auto packed = sys.pack(y0);
      sys.stabilize(packed);
      return integrate(sys, packed, c);
    }
    MultiSystem<2> sys{mp};
    sys.project_conservation = true;
    auto packed = sys.pack(y0);
    sys.stabilize(packed);
    const auto t2 = integrate(sys, packed, c);
    // widen to the 3-factor layout so the comparison below is uniform
    Trajectory<MultiSystem<3>::dim> t3;
    t3.s = t2.s;
    t3.max_invariant = t2.max_invariant;
    t3.max_raw_drift = t2.max_raw_drift;
    t3.termination = t2.termination;
    for (const auto& y : t2.y) {
      State<MultiSystem<3>::dim> row{};
      row[0] = y[0];  // X1
      row[1] = y[1];  // X2
      row[3] = y[2];  // Y1
      row[4] = y[3];  // Y2
      row[6] = y[4];  // L
      row[7] = y[5];  // t
      row[8] = y[6];  // u
      t3.y.push_back(row);
    }
    return t3;
  };

  const auto t_inf = multi_run(std::numeric_limits<double>::infinity());
  if (!(t_inf.max_invariant < 1e-8)) {
    pass = false;
    note += " drift(m=inf)=" + fmt(t_inf.max_invariant);
  }
  std::vector<double> dists;
  for (double m : {1.0, 5.0, 50.0, 500.0}) {
    const auto tm = multi_run(m);
    if (m != 500.0 && !(tm.max_invariant < 1e-8)) {  // m = 500 only feeds the sweep
      pass = false;
      note += " drift(m=" + fmt(m) + ")=" + fmt(tm.max_invariant);
    }
    if (m >= 5.0) {
      // sup distance on the shared coordinates (X1, X2, Y1, Y2, L)
      double d = 0.0;
      const std::size_t npts = std::min(tm.size(), t_inf.size());
      for (std::size_t i = 0; i < npts; ++i) {
        d = std::max({d, std::abs(tm.y[i][0] - t_inf.y[i][0]),
                      std::abs(tm.y[i][1] - t_inf.y[i][1]),
                      std::abs(tm.y[i][3] - t_inf.y[i][3]),
                      std::abs(tm.y[i][4] - t_inf.y[i][4]),
                      std::abs(tm.y[i][6] - t_inf.y[i][6])});
      }
      dists.push_back(d);
    }
  }
  // monotone approach with a factor-2 slack per step and a genuine overall drop
  if (!(dists.size() == 3 && dists[1] < 2.0 * dists[0] && dists[2] < 2.0 * dists[1] &&
        dists[2] < 0.5 * dists[0])) {
    pass = false;
    note += " distances " + fmt(dists[0]) + "," + fmt(dists[1]) + "," + fmt(dists[2]);
  }
  report(10, "quasi-Einstein reduction", pass,
         pass ? "field match, drift ok, sup-dist " + fmt(dists[0]) + " > " + fmt(dists[1]) +
                    " > " + fmt(dists[2])
              : note);
}

// --------------------------------------------------------------------------
// 11. Kaehler subspace preservation on the circle bundle (p, q, d) = (4, 1, 2)

void criterion_kahler() {
  const CircleBundleParams cb{4, 1, 2};
  auto p = to_two_summands(cb);
  PhaseState s;
  s.Y1 = 0.2;
  s.Y2 = 0.05;
  s.X2 = 0.5 * cb.q * s.Y2 * s.Y2 / s.Y1;
  s.X1 = cb.p * s.Y2 * s.Y2 / s.X2 - 1.0;
  s.L = 0.1;
  p.C = locus_residuals(p, s).S1 / (s.L * s.L);  // the trajectory's own constant
  RescaledSystem sys{p};
  sys.project_conservation = true;
  IntegrationControls c;
  c.s_max = 30.0;
  c.sample_ds = 0.05;
  c.convergence_tol = 0.0;
  const auto traj = integrate(sys, RescaledSystem::pack(s), c, sys.default_events());
  double worst = 0.0;
  for (const auto& y : traj.y) {
    const auto [r1, r2] = kahler_residuals(cb, RescaledSystem::unpack(y), p.epsilon);
    worst = std::max({worst, std::abs(r1), std::abs(r2)});
  }
  const bool pass = traj.s_end() >= 30.0 - 1e-9 && worst < 1e-8;
  report(11, "Kaehler subspace preservation", pass, "worst residual " + fmt(worst));
}

}  // namespace

int main() {
  std::printf("solitonlab acceptance suite\n");
  criterion_cone_regression();
  criterion_eigenvalues();
  criterion_conservation_drift();
  criterion_trapping();
  criterion_lyapunov();
  criterion_asymptotics();
  criterion_rotation();
  criterion_linear_trajectories();
  criterion_boehm_searches();
  criterion_quasi_einstein();
  criterion_kahler();
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criterion(s) FAILED\n", g_failures);
  return 1;
}
