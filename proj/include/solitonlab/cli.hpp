#pragma once

// Command-line front end: preset inspection, trajectory integration, the
// symmetric and sphere-matching searches, critical-point counting and
// asymptotics verification, with bit-stable CSV/JSONL export.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "solitonlab/analysis.hpp"
#include "solitonlab/io.hpp"
#include "solitonlab/params.hpp"
#include "solitonlab/shooting.hpp"
#include "solitonlab/systems.hpp"
#include "solitonlab/version.hpp"

namespace solitonlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBlowUp = 2;
inline constexpr int kExitDomainExit = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitIo = 74;

struct RunConfig {
  // parameter source
  std::string preset;
  int m = 1;
  int d1 = 0, d2 = 0;
  double A1 = 0.0, A2 = 0.0, A3 = 0.0;
  double eps = 0.0;
  double C = 0.0;
  // shooting
  std::string system = "rescaled";
  std::string locus;  // einstein | soliton | unconstrained (default by C)
  double delta = 1e-7;
  std::vector<double> coeffs{0.0, 1.0, 0.0};
  // profile seeding
  double fbar = 1.0;
  double t0 = 1e-3;
  // multi-warped configuration
  std::string factors;  // "d:lambda,d:lambda"
  double mq = std::numeric_limits<double>::infinity();
  double lambda_virtual = 0.0;
  // controls
  double s_max = 100.0;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 1.0;
  double sample_ds = 0.0;
  double convergence_tol = 1e-6;
  // search ranges
  double fbar_min = 0.01, fbar_max = 1.0;
  double Fbar_min = 0.01, Fbar_max = 1.0;
  // asymptotics
  std::string regime = "ricciflat";
  // output
  std::string out;
  std::string format = "csv";
};

inline TwoSummandsParams make_params(const RunConfig& cfg) {
  TwoSummandsParams p;
  if (!cfg.preset.empty()) {
    p = resolve_preset({parse_preset_name(cfg.preset), cfg.m});
  } else {
    p.d1 = cfg.d1;
    p.d2 = cfg.d2;
    p.A1 = cfg.A1;
    p.A2 = cfg.A2;
    p.A3 = cfg.A3;
  }
  p.epsilon = cfg.eps;
  p.C = cfg.C;
  validate(p);
  return p;
}

inline IntegrationControls make_controls(const RunConfig& cfg) {
  IntegrationControls c;
  c.s_max = cfg.s_max;
  c.rel_tol = cfg.rel_tol;
  c.abs_tol = cfg.abs_tol;
  c.max_step = cfg.max_step;
  c.sample_ds = cfg.sample_ds;
  c.convergence_tol = cfg.convergence_tol;
  validate(c);
  return c;
}

inline LocusKind parse_locus(const RunConfig& cfg) {
  if (cfg.locus.empty()) return cfg.C == 0.0 ? LocusKind::Einstein : LocusKind::Soliton;
  if (cfg.locus == "einstein") return LocusKind::Einstein;
  if (cfg.locus == "soliton") return LocusKind::Soliton;
  if (cfg.locus == "unconstrained") return LocusKind::Unconstrained;
  throw std::invalid_argument("unknown locus '" + cfg.locus + "'");
}

inline int exit_code_for(EventKind termination) {
  switch (termination) {
    case EventKind::HorizonReached:
    case EventKind::Converged:
    case EventKind::MaxVolumeOrbit:
      return kExitOk;
    case EventKind::BlowUp:
      return kExitBlowUp;
    default:
      return kExitDomainExit;
  }
}

// Applies a JSON config file on top of command-line flags; file values win and
// conflicts are reported on stderr.
inline void apply_config_file(const std::string& path, const CLI::App& app, RunConfig& cfg,
                              std::ostream& err) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  nlohmann::json j;
  in >> j;
  auto override_warn = [&](const char* flag, const char* key) {
    if (app.count(flag) > 0)
      err << "warning: config file overrides command-line " << flag << " (key '" << key << "')\n";
  };
  auto set_d = [&](const char* key, double& slot, const char* flag) {
    if (j.contains(key)) {
      override_warn(flag, key);
      slot = j.at(key).get<double>();
    }
  };
  auto set_i = [&](const char* key, int& slot, const char* flag) {
    if (j.contains(key)) {
      override_warn(flag, key);
      slot = j.at(key).get<int>();
    }
  };
  auto set_s = [&](const char* key, std::string& slot, const char* flag) {
    if (j.contains(key)) {
      override_warn(flag, key);
      slot = j.at(key).get<std::string>();
    }
  };
  set_s("preset", cfg.preset, "--preset");
  set_i("m", cfg.m, "--m");
  set_i("d1", cfg.d1, "--d1");
  set_i("d2", cfg.d2, "--d2");
  set_d("A1", cfg.A1, "--A1");
  set_d("A2", cfg.A2, "--A2");
  set_d("A3", cfg.A3, "--A3");
  set_d("eps", cfg.eps, "--eps");
  set_d("C", cfg.C, "--C");
  set_s("system", cfg.system, "--system");
  set_s("locus", cfg.locus, "--locus");
  set_d("delta", cfg.delta, "--delta");
  if (j.contains("coeffs")) {
    override_warn("--coeffs", "coeffs");
    cfg.coeffs = j.at("coeffs").get<std::vector<double>>();
  }
  set_d("fbar", cfg.fbar, "--fbar");
  set_d("t0", cfg.t0, "--t0");
  set_d("s_max", cfg.s_max, "--s-max");
  set_d("rel_tol", cfg.rel_tol, "--rel-tol");
  set_d("abs_tol", cfg.abs_tol, "--abs-tol");
  set_d("max_step", cfg.max_step, "--max-step");
  set_d("sample_ds", cfg.sample_ds, "--sample-ds");
  set_d("convergence_tol", cfg.convergence_tol, "--convergence-tol");
  set_s("out", cfg.out, "--out");
  set_s("format", cfg.format, "--format");
}

namespace detail {

template <class Writer, std::size_t N>
int finish_run(const RunConfig& cfg, const Trajectory<N>& traj, Writer&& write_csv,
               std::ostream& out, std::ostream& err) {
  if (cfg.out.empty()) {
    write_csv(out);
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      err << "error: cannot open output file '" << cfg.out << "'\n";
      return kExitIo;
    }
    write_csv(file);
    std::ofstream side(cfg.out + ".events.json", std::ios::binary);
    if (!side) {
      err << "error: cannot open events sidecar\n";
      return kExitIo;
    }
    side << events_json(traj).dump(2) << "\n";
  }
  err << "termination: " << to_string(traj.termination) << " at s = " << format_real(traj.s_end())
      << ", max |conservation residual| = " << format_real(traj.max_invariant) << "\n";
  return exit_code_for(traj.termination);
}

inline std::vector<MultiFactor> parse_factors(const std::string& text) {
  std::vector<MultiFactor> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("bad --factors entry '" + item + "' (want d:lambda)");
    out.push_back({std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands

inline int cmd_presets(int m, std::ostream& out) {
  out << version_comment() << "\n";
  out << "preset  m  d1  d2  |A|^2  Ric^Q  A1  A2  A3  D-hat  cones  stability  notes\n";
  for (auto name : {PresetName::CP, PresetName::HP, PresetName::F, PresetName::CaP}) {
    const int mm = (name == PresetName::CaP) ? 1 : m;
    if (name == PresetName::CaP && m != 1) {
      out << "cap     -  (family exists only for m = 1)\n";
      continue;
    }
    const auto p = resolve_preset({name, mm});
    const double dh = d_hat(p);
    out << to_string(name) << "  " << mm << "  " << p.d1 << "  " << p.d2 << "  "
        << format_real(p.A3 / p.d2) << "  " << format_real(p.A2 / p.d2) << "  "
        << format_real(p.A1) << "  " << format_real(p.A2) << "  " << format_real(p.A3) << "  "
        << format_real(dh);
    if (dh == 0.0) out << " (boundary)";
    out << "  ";
    if (p.A1 > 0.0) {
      const auto cones = cone_solutions(p);
      out << "[";
      for (std::size_t i = 0; i < cones.size(); ++i) {
        if (i > 0) out << "; ";
        out << "c1^2=" << format_real(cones[i].c1 * cones[i].c1)
            << " c2^2=" << format_real(cones[i].c2 * cones[i].c2);
      }
      out << "]  ";
      if (!cones.empty()) {
        const auto st = classify_cone_stability(p, cones.front());
        out << (st.kind == ConeStabilityKind::Spiral ? "spiral" : "node");
      } else {
        out << "-";
      }
    } else {
      out << "n/a  -";
    }
    if (p.d1 == 1) out << "  non-hyperbolic critical point";
    out << "\n";
  }
  return kExitOk;
}

inline int cmd_cone(const RunConfig& cfg, std::ostream& out) {
  const auto p = make_params(cfg);
  out << version_comment() << "\n" << params_comment(p) << "\n";
  out << "D-hat = " << format_real(d_hat(p)) << "\n";
  if (p.A3 > 0.0) {
    if (const auto roots = omega_hat_roots(p)) {
      out << "omega-hat roots: " << format_real(roots->first) << " "
          << format_real(roots->second) << "\n";
    } else {
      out << "omega-hat roots: absent (D-hat <= 0)\n";
    }
  }
  const auto cones = cone_solutions(p);
  if (cones.empty()) out << "no real cone solutions\n";
  for (const auto& cone : cones) {
    out << (cone.branch == ConeBranch::First ? "first " : "second") << " cone: c1^2 = "
        << format_real(cone.c1 * cone.c1) << ", c2^2 = " << format_real(cone.c2 * cone.c2);
    if (cone.branch == ConeBranch::First) {
      const auto st = classify_cone_stability(p, cone);
      out << "  [" << (st.kind == ConeStabilityKind::Spiral ? "spiral" : "node")
          << ", eigenvalues " << format_real(st.eig1.real()) << (st.eig1.imag() != 0.0 ? "+-" : "")
          << (st.eig1.imag() != 0.0 ? format_real(std::abs(st.eig1.imag())) + "i" : std::string())
          << (st.eig1.imag() == 0.0 ? ", " + format_real(st.eig2.real()) : std::string()) << "]";
    }
    out << "\n";
  }
  return kExitOk;
}

inline int cmd_integrate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto controls = make_controls(cfg);
  if (cfg.system == "multi") {
    if (cfg.factors.empty()) {
      err << "error: --system multi requires --factors\n";
      return kExitUsage;
    }
    MultiWarpedParams mp;
    mp.factors = detail::parse_factors(cfg.factors);
    mp.m = cfg.mq;
    mp.lambda_virtual = cfg.lambda_virtual;
    mp.epsilon = cfg.eps;
    mp.C = cfg.C;
    validate(mp);
    auto run_k = [&]<std::size_t KK>() -> int {
      MultiSystem<KK> sys{mp};
      sys.project_conservation = true;
      MultiState y0;
      y0.X.assign(KK, 0.0);
      y0.Y.assign(KK, 0.0);
      y0.X[0] = y0.Y[0] = 1.0 / mp.factors[0].d;
      for (std::size_t i = 1; i < KK; ++i) y0.Y[i] = cfg.delta;
      y0.L = cfg.delta;
      auto packed = sys.pack(y0);
      sys.stabilize(packed);  // land on the conservation manifold
      const auto traj = integrate(sys, packed, controls);
      return detail::finish_run(
          cfg, traj, [&](std::ostream& os) { write_multi_csv<KK>(os, mp, traj); }, out, err);
    };
    switch (mp.total_factors()) {
      case 2: return run_k.template operator()<2>();
      case 3: return run_k.template operator()<3>();
      case 4: return run_k.template operator()<4>();
      default:
        err << "error: the CLI supports 2 to 4 factors\n";
        return kExitUsage;
    }
  }

  const auto p = make_params(cfg);
  const LocusKind locus = parse_locus(cfg);
  if (locus == LocusKind::Einstein && cfg.C != 0.0) {
    err << "error: Einstein-locus runs require C = 0\n";
    return kExitUsage;
  }
  if (p.epsilon < 0.0 && (cfg.system == "rescaled" || cfg.system == "polynomial"))
    err << "warning: eps < 0 accepted, but no trapping guarantees apply\n";
  if (cfg.coeffs.size() != 3) {
    err << "error: --coeffs expects three values\n";
    return kExitUsage;
  }
  const ShootSpec spec{{cfg.coeffs[0], cfg.coeffs[1], cfg.coeffs[2]}, cfg.delta, locus};

  if (cfg.system == "rescaled") {
    RescaledSystem sys{p};
    sys.project_conservation = locus != LocusKind::Unconstrained;
    sys.pin_potential = locus == LocusKind::Einstein;
    const auto traj =
        integrate(sys, RescaledSystem::pack(seed_unstable(p, spec)), controls, sys.default_events());
    return detail::finish_run(cfg, traj,
                              [&](std::ostream& os) { write_rescaled_csv(os, p, traj); }, out, err);
  }
  if (cfg.system == "polynomial") {
    PolynomialSystem sys{p};
    const PhaseState seed = seed_unstable(p, spec);
    const PolyState y0{seed, seed.Y2 * seed.Y2 / seed.Y1};
    const auto traj = integrate(sys, PolynomialSystem::pack(y0), controls, sys.default_events());
    return detail::finish_run(cfg, traj,
                              [&](std::ostream& os) { write_polynomial_csv(os, p, traj); }, out,
                              err);
  }
  if (cfg.system == "planar") {
    PlanarSystem sys{p};
    const PhaseState seed = seed_unstable(p, spec);
    const auto traj = integrate(sys, State<3>{seed.X1, seed.Y1, seed.L}, controls,
                                sys.default_events());
    return detail::finish_run(cfg, traj,
                              [&](std::ostream& os) { write_planar_csv(os, p, traj); }, out, err);
  }
  if (cfg.system == "profile" || cfg.system == "hat") {
    const ProfileState seed = seed_profile(p, cfg.fbar, cfg.t0);
    if (cfg.system == "profile") {
      ProfileSystem sys{p};
      sys.residual_baseline = profile_conservation_residual(p, seed);
      const auto traj = integrate(sys, ProfileSystem::pack(seed), controls, sys.default_events());
      return detail::finish_run(
          cfg, traj, [&](std::ostream& os) { write_profile_csv(os, p, traj, cfg.t0); }, out, err);
    }
    HatSystem sys{p};
    const HatState h{seed.df1 / seed.f1, seed.df2 / seed.f2, 1.0 / seed.f1, 1.0 / seed.f2,
                     p.d1 * seed.df1 / seed.f1 + p.d2 * seed.df2 / seed.f2};
    sys.residual_baseline = hat_conservation_residual(p, h);
    const auto traj = integrate(sys, HatSystem::pack(h), controls, sys.default_events());
    return detail::finish_run(cfg, traj,
                              [&](std::ostream& os) { write_hat_csv(os, p, traj); }, out, err);
  }
  err << "error: unknown system '" << cfg.system << "'\n";
  return kExitUsage;
}

inline int cmd_search_symmetric(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto p = make_params(cfg);
  if (p.epsilon == 0.0) p.epsilon = -2.0 * p.n();  // closed Einstein normalisation
  SymmetricSearchOptions opt;
  opt.controls = make_controls(cfg);
  const auto roots = (cfg.fbar_min < cfg.fbar_max)
                         ? symmetric_search(p, cfg.fbar_min, cfg.fbar_max, opt)
                         : std::vector<double>{};
  auto write = [&](std::ostream& os) { write_symmetric_jsonl(os, p, roots); };
  if (cfg.out.empty()) {
    write(out);
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      err << "error: cannot open output file\n";
      return kExitIo;
    }
    write(file);
  }
  err << "found " << roots.size() << " symmetric solution(s)\n";
  return kExitOk;
}

inline int cmd_match_sphere(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  SphereMatchOptions opt;
  opt.controls = make_controls(cfg);
  const auto matches = sphere_match(cfg.d1, cfg.d2, cfg.fbar_min, cfg.fbar_max, cfg.Fbar_min,
                                    cfg.Fbar_max, opt);
  auto write = [&](std::ostream& os) { write_matches_jsonl(os, cfg.d1, cfg.d2, matches); };
  if (cfg.out.empty()) {
    write(out);
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      err << "error: cannot open output file\n";
      return kExitIo;
    }
    write(file);
  }
  err << "found " << matches.size() << " match(es)\n";
  return kExitOk;
}

inline int cmd_count_critical(const RunConfig& cfg, std::ostream& out) {
  const auto p = make_params(cfg);
  ProfileSystem sys{p};
  IntegrationControls c = make_controls(cfg);
  c.convergence_tol = 0.0;
  const auto traj =
      integrate(sys, ProfileSystem::pack(seed_profile(p, cfg.fbar, cfg.t0)), c, sys.default_events());
  out << count_omega_critical(traj) << "\n";
  return traj.termination == EventKind::MaxVolumeOrbit ? kExitOk : kExitDomainExit;
}

inline int cmd_verify_asymptotics(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto p = make_params(cfg);
  Regime regime;
  if (cfg.regime == "steady") regime = Regime::Steady;
  else if (cfg.regime == "ricciflat") regime = Regime::RicciFlat;
  else if (cfg.regime == "expanding") regime = Regime::Expanding;
  else if (cfg.regime == "neg-einstein") regime = Regime::NegEinstein;
  else {
    err << "error: unknown regime '" << cfg.regime << "'\n";
    return kExitUsage;
  }
  const LocusKind locus =
      (regime == Regime::RicciFlat || regime == Regime::NegEinstein) ? LocusKind::Einstein
                                                                     : LocusKind::Soliton;
  RescaledSystem sys{p};
  sys.project_conservation = true;
  sys.pin_potential = locus == LocusKind::Einstein;
  const ShootSpec spec{{cfg.coeffs[0], cfg.coeffs[1], cfg.coeffs[2]}, cfg.delta, locus};
  const auto traj =
      integrate(sys, RescaledSystem::pack(seed_unstable(p, spec)), make_controls(cfg),
                sys.default_events());
  const auto rep = verify_asymptotics(p, traj, regime);
  auto write = [&](std::ostream& os) { write_asymptotics_jsonl(os, p, rep); };
  if (cfg.out.empty()) {
    write(out);
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      err << "error: cannot open output file\n";
      return kExitIo;
    }
    write(file);
  }
  err << (rep.all_pass() ? "all claims pass" : "some claims FAIL") << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"cohomogeneity-one Ricci soliton / Einstein ODE laboratory"};
  app.set_version_flag("--version", std::string("solitonlab ") + kVersion);
  app.require_subcommand(1);
  RunConfig cfg;
  std::string config_path;

  auto add_param_flags = [&](CLI::App* sub) {
    sub->add_option("--preset", cfg.preset, "preset name: cp|hp|f|cap");
    sub->add_option("--m", cfg.m, "preset family index");
    sub->add_option("--d1", cfg.d1);
    sub->add_option("--d2", cfg.d2);
    sub->add_option("--A1", cfg.A1);
    sub->add_option("--A2", cfg.A2);
    sub->add_option("--A3", cfg.A3);
    sub->add_option("--eps", cfg.eps, "soliton constant epsilon");
    sub->add_option("--C", cfg.C, "conservation-law constant");
  };
  auto add_control_flags = [&](CLI::App* sub) {
    sub->add_option("--s-max", cfg.s_max);
    sub->add_option("--rel-tol", cfg.rel_tol);
    sub->add_option("--abs-tol", cfg.abs_tol);
    sub->add_option("--max-step", cfg.max_step);
    sub->add_option("--sample-ds", cfg.sample_ds);
    sub->add_option("--convergence-tol", cfg.convergence_tol);
    sub->add_option("--out", cfg.out, "output file (stdout when omitted)");
    sub->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "jsonl"}));
    sub->add_option("--config", config_path, "JSON config file (overrides flags)");
  };

  auto* presets = app.add_subcommand("presets", "print the preset table");
  presets->add_option("--m", cfg.m, "family index");

  auto* cone = app.add_subcommand("cone", "cone solutions and stability for a parameter set");
  add_param_flags(cone);

  auto* integ = app.add_subcommand("integrate", "integrate a seeded trajectory");
  add_param_flags(integ);
  add_control_flags(integ);
  integ->add_option("--system", cfg.system)
      ->check(CLI::IsMember({"rescaled", "polynomial", "hat", "profile", "planar", "multi"}));
  integ->add_option("--locus", cfg.locus)
      ->check(CLI::IsMember({"einstein", "soliton", "unconstrained"}));
  integ->add_option("--delta", cfg.delta, "seed displacement");
  integ->add_option("--coeffs", cfg.coeffs, "unstable eigenbasis coefficients")->expected(3);
  integ->add_option("--fbar", cfg.fbar, "profile seeding f2(0)");
  integ->add_option("--t0", cfg.t0, "profile seeding time");
  integ->add_option("--factors", cfg.factors, "multi factors d:lambda,...");
  integ->add_option("--mq", cfg.mq, "quasi-Einstein m (inf when omitted)");
  integ->add_option("--lambda-virtual", cfg.lambda_virtual);

  auto* sym = app.add_subcommand("search-symmetric", "scan for symmetric Einstein solutions");
  add_param_flags(sym);
  add_control_flags(sym);
  sym->add_option("--fbar-min", cfg.fbar_min);
  sym->add_option("--fbar-max", cfg.fbar_max);

  auto* match = app.add_subcommand("match-sphere", "double shooting across tr L = 0");
  add_param_flags(match);
  add_control_flags(match);
  match->add_option("--fbar-min", cfg.fbar_min);
  match->add_option("--fbar-max", cfg.fbar_max);
  match->add_option("--Fbar-min", cfg.Fbar_min);
  match->add_option("--Fbar-max", cfg.Fbar_max);

  auto* count = app.add_subcommand("count-critical", "count omega-critical points");
  add_param_flags(count);
  add_control_flags(count);
  count->add_option("--fbar", cfg.fbar);
  count->add_option("--t0", cfg.t0);

  auto* verify = app.add_subcommand("verify-asymptotics", "check the regime limits");
  add_param_flags(verify);
  add_control_flags(verify);
  verify->add_option("--regime", cfg.regime)
      ->check(CLI::IsMember({"steady", "ricciflat", "expanding", "neg-einstein"}));
  verify->add_option("--delta", cfg.delta);
  verify->add_option("--coeffs", cfg.coeffs)->expected(3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "solitonlab " << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!config_path.empty()) apply_config_file(config_path, *sub, cfg, err);
    if (sub == presets) return cmd_presets(cfg.m, out);
    if (sub == cone) return cmd_cone(cfg, out);
    if (sub == integ) return cmd_integrate(cfg, out, err);
    if (sub == sym) return cmd_search_symmetric(cfg, out, err);
    if (sub == match) return cmd_match_sphere(cfg, out, err);
    if (sub == count) return cmd_count_critical(cfg, out);
    if (sub == verify) return cmd_verify_asymptotics(cfg, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainExit;
  }
  return kExitUsage;
}

}  // namespace solitonlab::cli
