#pragma once

// Trajectory analyses: asymptotics verification, rotation counting around cone
// base points, symmetric-solution and sphere double-shooting searches, metric
// reconstruction and completeness diagnostics.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "solitonlab/dynamics.hpp"
#include "solitonlab/ode.hpp"
#include "solitonlab/params.hpp"
#include "solitonlab/shooting.hpp"
#include "solitonlab/systems.hpp"

namespace solitonlab {

using RescaledTrajectory = Trajectory<RescaledSystem::dim>;
using ProfileTrajectory = Trajectory<ProfileSystem::dim>;

// ---------------------------------------------------------------------------
// Asymptotics

enum class Regime { Steady, RicciFlat, Expanding, NegEinstein };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::Steady: return "steady";
    case Regime::RicciFlat: return "ricciflat";
    case Regime::Expanding: return "expanding";
    case Regime::NegEinstein: return "neg-einstein";
  }
  return "?";
}

struct AsymptoticsClaim {
  std::string name;
  double observed = 0.0;
  double target = 0.0;
  bool pass = false;
};

struct AsymptoticsReport {
  Regime regime = Regime::Steady;
  double horizon = 0.0;
  double tolerance = 0.0;
  std::vector<AsymptoticsClaim> claims;
  double omega_end = 0.0;  // measured Y2/Y1 at the end (reported, not asserted)

  bool all_pass() const {
    for (const auto& c : claims)
      if (!c.pass) return false;
    return true;
  }
};

// Compares trailing-window means of the dynamical variables against the
// regime's limit values.  The trajectory must have reached its horizon or
// converged.
inline AsymptoticsReport verify_asymptotics(const TwoSummandsParams& p,
                                            const RescaledTrajectory& traj, Regime regime,
                                            double tolerance = 1e-3, double window = 10.0) {
  if (traj.termination != EventKind::HorizonReached && traj.termination != EventKind::Converged)
    throw std::invalid_argument("verify_asymptotics: trajectory ended in a terminal event");
  switch (regime) {
    case Regime::Steady:
      if (p.epsilon != 0.0 || !(p.C < 0.0))
        throw std::invalid_argument("verify_asymptotics: steady regime needs eps = 0, C < 0");
      break;
    case Regime::RicciFlat:
      if (p.epsilon != 0.0 || p.C != 0.0)
        throw std::invalid_argument("verify_asymptotics: Ricci-flat regime needs eps = 0, C = 0");
      break;
    case Regime::Expanding:
      if (!(p.epsilon > 0.0) || !(p.C < 0.0))
        throw std::invalid_argument("verify_asymptotics: expanding regime needs eps > 0, C < 0");
      break;
    case Regime::NegEinstein:
      if (!(p.epsilon > 0.0) || p.C != 0.0)
        throw std::invalid_argument("verify_asymptotics: negative-Einstein regime needs eps > 0, C = 0");
      break;
  }

  using R = RescaledSystem;
  const double s_end = traj.s_end();
  std::array<double, 5> mean{};
  std::size_t count = 0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (traj.s[i] < s_end - window) continue;
    for (std::size_t k = 0; k < 5; ++k) mean[k] += traj.y[i][k];
    ++count;
  }
  if (count == 0) throw std::invalid_argument("verify_asymptotics: empty trailing window");
  for (auto& v : mean) v /= static_cast<double>(count);

  AsymptoticsReport rep;
  rep.regime = regime;
  rep.horizon = s_end;
  rep.tolerance = tolerance;
  rep.omega_end = traj.back()[R::iY2] / traj.back()[R::iY1];
  auto claim = [&](const std::string& name, double observed, double target) {
    rep.claims.push_back({name, observed, target, std::abs(observed - target) < tolerance});
  };
  const double n = p.n();
  switch (regime) {
    case Regime::Steady:
      claim("L -> 1/sqrt(-C)", mean[R::iL], 1.0 / std::sqrt(-p.C));
      claim("X1 -> 0", mean[R::iX1], 0.0);
      claim("X2 -> 0", mean[R::iX2], 0.0);
      claim("Y1 -> 0", mean[R::iY1], 0.0);
      claim("Y2 -> 0", mean[R::iY2], 0.0);
      break;
    case Regime::RicciFlat: {
      const auto cones = cone_solutions(p);
      if (cones.empty()) throw std::invalid_argument("verify_asymptotics: no cone solutions");
      const auto& cone = cones.front();
      claim("X1 -> 1/n", mean[R::iX1], 1.0 / n);
      claim("X2 -> 1/n", mean[R::iX2], 1.0 / n);
      claim("Y1 -> 1/(n c1)", mean[R::iY1], 1.0 / (n * cone.c1));
      claim("Y2 -> 1/(n c2)", mean[R::iY2], 1.0 / (n * cone.c2));
      break;
    }
    case Regime::Expanding:
      claim("X1 -> 0", mean[R::iX1], 0.0);
      claim("X2 -> 0", mean[R::iX2], 0.0);
      claim("Y1 -> 0", mean[R::iY1], 0.0);
      claim("Y2 -> 0", mean[R::iY2], 0.0);
      claim("L -> 0", mean[R::iL], 0.0);
      break;
    case Regime::NegEinstein:
      claim("X1 -> 1/n", mean[R::iX1], 1.0 / n);
      claim("X2 -> 1/n", mean[R::iX2], 1.0 / n);
      claim("Y1 -> 0", mean[R::iY1], 0.0);
      claim("Y2 -> 0", mean[R::iY2], 0.0);
      claim("L -> sqrt(2/(n eps))", mean[R::iL], std::sqrt(2.0 / (n * p.epsilon)));
      break;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Rotation counting around the cone base point
//
// Counts sign changes of X1 - 1/n over samples inside a disc around
// (1/n, 1/(n c1)) in the (X1, Y1)-plane; crossings below the amplitude floor
// are ignored (the numerical fixed point flickers at roundoff level).
inline int rotation_count(const TwoSummandsParams& p, const RescaledTrajectory& traj,
                          const ConeSolution& cone, double radius = 0.3,
                          double amplitude_floor = 1e-12) {
  using R = RescaledSystem;
  const double n = p.n();
  const double x0 = 1.0 / n, y0 = 1.0 / (n * cone.c1);
  int count = 0;
  int last_sign = 0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double dx = traj.y[i][R::iX1] - x0;
    const double dy = traj.y[i][R::iY1] - y0;
    if (std::hypot(dx, dy) > radius) continue;
    if (std::abs(dx) < amplitude_floor) continue;
    const int sign = dx > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++count;
    last_sign = sign;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Metric reconstruction

struct ProfileSample {
  double t = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  double u = 0.0;
  double du = 0.0;
  double R = 0.0;  // ambient scalar curvature
};

// f_i = L/Y_i, u' = (d1 X1 + d2 X2 - 1)/L and
// R = -C - eps u - u'^2 - ((n+1)/2) eps; samples with L = 0 are skipped.
inline std::vector<ProfileSample> reconstruct_metric(const TwoSummandsParams& p,
                                                     const RescaledTrajectory& traj) {
  using R = RescaledSystem;
  std::vector<ProfileSample> out;
  out.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& y = traj.y[i];
    if (!(y[R::iL] > 1e-300)) continue;
    ProfileSample row;
    row.t = y[R::iT];
    row.f1 = y[R::iL] / y[R::iY1];
    row.f2 = y[R::iL] / y[R::iY2];
    row.u = y[R::iU];
    row.du = (p.d1 * y[R::iX1] + p.d2 * y[R::iX2] - 1.0) / y[R::iL];
    row.R = -p.C - p.epsilon * row.u - row.du * row.du - 0.5 * (p.n() + 1.0) * p.epsilon;
    out.push_back(row);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Completeness diagnostics

enum class CompletenessVerdict { CompleteEvidence, Inconclusive };

struct CompletenessReport {
  CompletenessVerdict verdict = CompletenessVerdict::Inconclusive;
  double t_end = 0.0;
  double growth_rate = 0.0;     // dt/ds averaged over the trailing window
  double worst_linfinity = 0.0; // worst violation of the supporting bound
  std::string detail;
};

// Evidence gathering per the completeness mechanisms: for eps = 0, L is
// nondecreasing and bounded below, so t grows at least linearly; for eps > 0,
// (eps/2) L^2 <= max(1/d1, 1/d2) and L(s) >= L(s0) exp(-int L^2).  Evidence is
// reported when t(s_max) clears the threshold with positive growth rate.
inline CompletenessReport completeness_diagnostic(const TwoSummandsParams& p,
                                                  const RescaledTrajectory& traj,
                                                  double t_threshold = 1e3) {
  if (traj.termination != EventKind::HorizonReached)
    throw std::invalid_argument("completeness_diagnostic: trajectory must reach the horizon");
  using R = RescaledSystem;
  CompletenessReport rep;
  rep.t_end = traj.back()[R::iT];
  const double s_end = traj.s_end();
  double t_tail = rep.t_end;
  for (std::size_t i = traj.size(); i-- > 0;) {
    if (traj.s[i] < s_end - 10.0) break;
    t_tail = traj.y[i][R::iT];
  }
  rep.growth_rate = (rep.t_end - t_tail) / std::min(10.0, s_end);

  bool bound_ok = true;
  if (p.epsilon == 0.0) {
    const double L0 = traj.y[traj.size() / 10][R::iL];
    for (std::size_t i = 1; i < traj.size(); ++i) {
      const double viol = traj.y[i - 1][R::iL] - traj.y[i][R::iL];
      rep.worst_linfinity = std::max(rep.worst_linfinity, viol);
      if (viol > 1e-10) bound_ok = false;
    }
    rep.detail = "L nondecreasing from " + std::to_string(L0);
  } else if (p.epsilon > 0.0) {
    const double cap = std::max(1.0 / p.d1, 1.0 / p.d2);
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const double v = 0.5 * p.epsilon * traj.y[i][R::iL] * traj.y[i][R::iL];
      rep.worst_linfinity = std::max(rep.worst_linfinity, v - cap);
      if (v > cap + 1e-9) bound_ok = false;
    }
    rep.detail = "(eps/2) L^2 within max(1/d1, 1/d2)";
  }
  if (bound_ok && rep.t_end > t_threshold && rep.growth_rate > 0.0)
    rep.verdict = CompletenessVerdict::CompleteEvidence;
  return rep;
}

// ---------------------------------------------------------------------------
// Linear-trajectory deviation (exceptional Ricci-flat metrics)

// Maximal orthogonal deviation of the (X1, Y1)-projection from the line
// through the start point (1/d1 - 1/n, 1/d1 - 1/(n c1)) and the cone base
// point (both in centred coordinates).
inline double collinearity_test(const TwoSummandsParams& p, const RescaledTrajectory& traj,
                                const ConeSolution& cone) {
  using R = RescaledSystem;
  const double n = p.n();
  const double sx = 1.0 / p.d1 - 1.0 / n;
  const double sy = 1.0 / p.d1 - 1.0 / (n * cone.c1);
  const double norm = std::hypot(sx, sy);
  const double ux = sx / norm, uy = sy / norm;
  double dev = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double px = traj.y[i][R::iX1] - 1.0 / n;
    const double py = traj.y[i][R::iY1] - 1.0 / (n * cone.c1);
    dev = std::max(dev, std::abs(px * uy - py * ux));
  }
  return dev;
}

// ---------------------------------------------------------------------------
// Symmetric Einstein solutions (Boehm construction, half-metric doubling)

struct SymmetricSearchOptions {
  double t0_factor = 1e-3;   // seeding time t0 = t0_factor * fbar
  int grid = 24;             // initial log-spaced scan resolution
  double fbar_tol = 1e-12;   // bisection width in fbar
  double deriv_tol = 1e-8;   // |f_i'| at the maximal volume orbit for acceptance
  IntegrationControls controls{};
};

namespace detail {

struct MaxVolSlice {
  bool reached = false;
  double t = 0.0;
  ProfileState state{};
  int critical_count = 0;
  double omega_dot = 0.0;  // f1' f2 - f2' f1 at the slice
};

inline MaxVolSlice profile_to_maxvol(const TwoSummandsParams& p, double fbar, double t0,
                                     const IntegrationControls& controls) {
  ProfileSystem sys{p};
  const ProfileState seed = seed_profile(p, fbar, t0);
  sys.residual_baseline = profile_conservation_residual(p, seed);
  IntegrationControls c = controls;
  c.convergence_tol = 0.0;
  const auto traj = integrate(sys, ProfileSystem::pack(seed), c, sys.default_events(true));
  MaxVolSlice out;
  if (traj.termination != EventKind::MaxVolumeOrbit) return out;
  out.reached = true;
  out.t = t0 + traj.s_end();
  out.state = ProfileSystem::unpack(traj.back());
  out.critical_count = count_omega_critical(traj);
  out.omega_dot = out.state.df1 * out.state.f2 - out.state.df2 * out.state.f1;
  return out;
}

}  // namespace detail

// Scans the critical-point counting function C(fbar) for jumps on a log grid,
// then bisects the sign of omega' at the maximal volume orbit inside each
// bracket (refining brackets whose count jumps by more than one).  Returned
// values are re-integrated and verified |f1'|, |f2'| < deriv_tol at tr L = 0.
inline std::vector<double> symmetric_search(const TwoSummandsParams& p, double fbar_lo,
                                            double fbar_hi,
                                            const SymmetricSearchOptions& opt = {}) {
  if (!(p.epsilon < 0.0))
    throw std::invalid_argument("symmetric_search: requires eps < 0 (closed Einstein case)");
  if (!(0.0 < fbar_lo && fbar_lo < fbar_hi))
    throw std::invalid_argument("symmetric_search: bad fbar range");

  auto slice = [&](double fbar) {
    const auto out = detail::profile_to_maxvol(p, fbar, opt.t0_factor * fbar, opt.controls);
    if (!out.reached)
      throw std::runtime_error("symmetric_search: trajectory missed the maximal volume orbit");
    return out;
  };

  struct Node {
    double fbar;
    detail::MaxVolSlice s;
  };
  std::vector<Node> nodes;
  for (int i = 0; i < opt.grid; ++i) {
    const double f =
        fbar_lo * std::pow(fbar_hi / fbar_lo, static_cast<double>(i) / (opt.grid - 1));
    nodes.push_back({f, slice(f)});
  }

  std::vector<double> found;
  std::vector<std::pair<Node, Node>> stack;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    if (nodes[i].s.critical_count != nodes[i + 1].s.critical_count)
      stack.emplace_back(nodes[i], nodes[i + 1]);

  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    const int jump = std::abs(a.s.critical_count - b.s.critical_count);
    if (jump == 0) continue;
    if (jump > 1 || (a.s.omega_dot > 0.0) == (b.s.omega_dot > 0.0)) {
      // split until each bracket carries a single sign change
      if (b.fbar - a.fbar < opt.fbar_tol) continue;
      Node m{0.5 * (a.fbar + b.fbar), slice(0.5 * (a.fbar + b.fbar))};
      stack.emplace_back(a, m);
      stack.emplace_back(m, b);
      continue;
    }
    // plain bisection on the sign of omega' at the slice
    Node lo = a, hi = b;
    while (hi.fbar - lo.fbar > opt.fbar_tol) {
      Node m{0.5 * (lo.fbar + hi.fbar), slice(0.5 * (lo.fbar + hi.fbar))};
      if ((m.s.omega_dot > 0.0) == (lo.s.omega_dot > 0.0))
        lo = m;
      else
        hi = m;
    }
    const double root = 0.5 * (lo.fbar + hi.fbar);
    const auto v = slice(root);
    if (std::abs(v.state.df1) < opt.deriv_tol && std::abs(v.state.df2) < opt.deriv_tol)
      found.push_back(root);
  }
  std::sort(found.begin(), found.end());
  return found;
}

// ---------------------------------------------------------------------------
// Sphere double-shooting (gluing two singular orbits through tr L = 0)

struct MatchResult {
  double fbar = 0.0;
  double Fbar = 0.0;
  double t0 = 0.0;  // slice time of the c-leg
  double t1 = 0.0;  // slice time of the twisted d-leg
  double residual = 0.0;
};

struct SphereMatchOptions {
  double t0_factor = 1e-3;
  int grid = 21;
  double match_tol = 1e-6;
  double glue_tol = 1e-5;
  int newton_iters = 30;
  IntegrationControls controls{};
};

namespace detail {

inline ProfileState twist(const ProfileState& s) { return {s.f2, -s.df2, s.f1, -s.df1, 0.0, 0.0}; }

template <class Sys>
struct Reversed {
  static constexpr std::size_t dim = Sys::dim;
  static constexpr std::size_t dyn_dim = Sys::dyn_dim;
  Sys inner;
  void rhs(const State<dim>& y, State<dim>& dy) const {
    inner.rhs(y, dy);
    for (auto& v : dy) v = -v;
  }
};

}  // namespace detail

// Shoots c_fbar (collapsing d1-sphere over a d2-dimensional singular orbit)
// against the twisted trajectory of d_Fbar with the roles of the factors
// swapped; both are cut at tr L = 0 and matched there.  Requires the product
// normalisation A_i = d_i (d_i - 1), A3 = 0 and eps/2 = -n.
inline std::vector<MatchResult> sphere_match(int d1, int d2, double fbar_lo, double fbar_hi,
                                             double Fbar_lo, double Fbar_hi,
                                             const SphereMatchOptions& opt = {}) {
  TwoSummandsParams pc;
  pc.d1 = d1;
  pc.d2 = d2;
  pc.A1 = static_cast<double>(d1) * (d1 - 1);
  pc.A2 = static_cast<double>(d2) * (d2 - 1);
  pc.A3 = 0.0;
  pc.epsilon = -2.0 * pc.n();
  pc.sphere_collapse = true;
  TwoSummandsParams pd = pc;  // roles swapped
  std::swap(pd.d1, pd.d2);
  std::swap(pd.A1, pd.A2);
  if (!(pc.A1 > 0.0) || !(pc.A2 > 0.0))
    throw std::invalid_argument("sphere_match: requires d1, d2 >= 2");

  auto c_slice = [&](double fbar) {
    return detail::profile_to_maxvol(pc, fbar, opt.t0_factor * fbar, opt.controls);
  };
  auto d_slice = [&](double Fbar) {
    return detail::profile_to_maxvol(pd, Fbar, opt.t0_factor * Fbar, opt.controls);
  };

  auto residual4 = [&](const detail::MaxVolSlice& a, const detail::MaxVolSlice& b,
                       double* out2 = nullptr) {
    const ProfileState tw = detail::twist(b.state);
    const double r[4] = {a.state.f1 - tw.f1, a.state.df1 - tw.df1, a.state.f2 - tw.f2,
                         a.state.df2 - tw.df2};
    if (out2 != nullptr) {
      out2[0] = r[0];
      out2[1] = r[2];
    }
    return std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2]), std::abs(r[3])});
  };

  // one-dimensional families of slice states, cached on the grid
  std::vector<std::pair<double, detail::MaxVolSlice>> cs, ds;
  for (int i = 0; i < opt.grid; ++i) {
    const double f =
        fbar_lo * std::pow(fbar_hi / fbar_lo, static_cast<double>(i) / (opt.grid - 1));
    const double F =
        Fbar_lo * std::pow(Fbar_hi / Fbar_lo, static_cast<double>(i) / (opt.grid - 1));
    const auto sc = c_slice(f);
    const auto sd = d_slice(F);
    if (sc.reached) cs.emplace_back(f, sc);
    if (sd.reached) ds.emplace_back(F, sd);
  }
  if (cs.empty() || ds.empty())
    throw std::runtime_error("sphere_match: no trajectory reached the tr L = 0 slice");

  // Newton refinement on the (f1, f2) mismatch from every promising cell
  std::vector<MatchResult> found;
  auto refine = [&](double f0, double F0) -> std::optional<MatchResult> {
    double f = f0, F = F0;
    for (int it = 0; it < opt.newton_iters; ++it) {
      const auto a = c_slice(f);
      const auto b = d_slice(F);
      if (!a.reached || !b.reached) return std::nullopt;
      double r[2];
      residual4(a, b, r);
      const double hf = std::max(1e-8, 1e-6 * f);
      const double hF = std::max(1e-8, 1e-6 * F);
      const auto af = c_slice(f + hf);
      const auto bF = d_slice(F + hF);
      if (!af.reached || !bF.reached) return std::nullopt;
      double rf[2], rF[2];
      residual4(af, b, rf);
      residual4(a, bF, rF);
      const double j11 = (rf[0] - r[0]) / hf, j12 = (rF[0] - r[0]) / hF;
      const double j21 = (rf[1] - r[1]) / hf, j22 = (rF[1] - r[1]) / hF;
      const double det = j11 * j22 - j12 * j21;
      if (std::abs(det) < 1e-14) return std::nullopt;
      const double df = (j22 * r[0] - j12 * r[1]) / det;
      const double dF = (-j21 * r[0] + j11 * r[1]) / det;
      f -= df;
      F -= dF;
      if (!(f > 0.0) || !(F > 0.0)) return std::nullopt;
      if (std::abs(df) < 1e-13 && std::abs(dF) < 1e-13) break;
    }
    const auto a = c_slice(f);
    const auto b = d_slice(F);
    if (!a.reached || !b.reached) return std::nullopt;
    const double res = residual4(a, b);
    if (res > opt.match_tol) return std::nullopt;
    return MatchResult{f, F, a.t, b.t, res};
  };

  // seed Newton from the best cells of the product grid
  std::vector<std::pair<double, std::pair<double, double>>> cells;
  for (const auto& [f, sc] : cs)
    for (const auto& [F, sd] : ds) cells.push_back({residual4(sc, sd), {f, F}});
  std::sort(cells.begin(), cells.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  const std::size_t tries = std::min<std::size_t>(cells.size(), 12);
  for (std::size_t i = 0; i < tries; ++i) {
    const auto m = refine(cells[i].second.first, cells[i].second.second);
    if (!m) continue;
    bool duplicate = false;
    for (const auto& prev : found)
      if (std::abs(prev.fbar - m->fbar) < 1e-6 * (1.0 + m->fbar) &&
          std::abs(prev.Fbar - m->Fbar) < 1e-6 * (1.0 + m->Fbar))
        duplicate = true;
    if (!duplicate) found.push_back(*m);
  }

  // gluing check: the glued curve at t0 + dt is twist(d(t1 - dt)), so the
  // forward continuation of the c-leg must match the time-reversed d-leg
  std::vector<MatchResult> verified;
  for (const auto& m : found) {
    IntegrationControls cc = opt.controls;
    cc.convergence_tol = 0.0;
    const double span = 0.2 * std::min(m.t0, m.t1);
    cc.s_max = span;
    cc.sample_ds = span / 32.0;
    ProfileSystem fwd{pc};
    const auto a0 = c_slice(m.fbar);
    const auto contc = integrate(fwd, ProfileSystem::pack(a0.state), cc);
    detail::Reversed<ProfileSystem> bwd{ProfileSystem{pd}};
    const auto b0 = d_slice(m.Fbar);
    const auto contd = integrate(bwd, ProfileSystem::pack(b0.state), cc);
    double worst = 0.0;
    for (std::size_t i = 0; i < std::min(contc.size(), contd.size()); ++i) {
      const ProfileState ca = ProfileSystem::unpack(contc.y[i]);
      const ProfileState tw = detail::twist(ProfileSystem::unpack(contd.y[i]));
      worst = std::max({worst, std::abs(ca.f1 - tw.f1), std::abs(ca.df1 - tw.df1),
                        std::abs(ca.f2 - tw.f2), std::abs(ca.df2 - tw.df2)});
    }
    if (worst < opt.glue_tol) verified.push_back(m);
  }
  return verified;
}

}  // namespace solitonlab
