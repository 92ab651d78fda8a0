#pragma once

// Seeding of trajectories: unstable-manifold displacement from the singular
// orbit critical point with projection onto the Einstein/soliton locus, and
// profile-space seeding at a singular orbit with Taylor-balanced data.

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "solitonlab/dynamics.hpp"
#include "solitonlab/ode.hpp"
#include "solitonlab/params.hpp"
#include "solitonlab/systems.hpp"

namespace solitonlab {

enum class LocusKind { Einstein, Soliton, Unconstrained };

inline const char* to_string(LocusKind k) {
  switch (k) {
    case LocusKind::Einstein: return "einstein";
    case LocusKind::Soliton: return "soliton";
    case LocusKind::Unconstrained: return "unconstrained";
  }
  return "?";
}

// Coefficients live in the unstable eigenbasis of linearization_initial:
// (2,0,1,0,0) for eigenvalue 2/d1 and the Y2- and L-directions for 1/d1.
struct ShootSpec {
  std::array<double, 3> coefficients{0.0, 1.0, 0.0};
  double delta = 1e-7;
  LocusKind locus = LocusKind::Einstein;
};

// Critical point + delta * (eigenbasis combination), then projected onto the
// requested locus by a one-dimensional Newton iteration on the conservation
// residual.  The residual derivative in Y1 degenerates when A1 = 0 (d1 = 1),
// so the circle-bundle case adjusts X1 instead.
inline PhaseState seed_unstable(const TwoSummandsParams& p, const ShootSpec& spec) {
  validate(p);
  if (!(spec.delta >= 1e-10 && spec.delta <= 1e-3))
    throw std::invalid_argument("seed_unstable: delta must lie in [1e-10, 1e-3]");
  double norm = 0.0;
  for (double c : spec.coefficients) norm += c * c;
  norm = std::sqrt(norm);
  if (!(norm > 0.0))
    throw std::invalid_argument("seed_unstable: coefficients orthogonal to the unstable space");
  const double c1 = spec.coefficients[0] / norm;
  const double c4 = spec.coefficients[1] / norm;
  const double c5 = spec.coefficients[2] / norm;

  if (spec.locus == LocusKind::Einstein) {
    if (p.C != 0.0)
      throw std::invalid_argument("seed_unstable: Einstein locus requires C = 0");
    if (std::abs(c1) > 1e-14)
      throw std::invalid_argument(
          "seed_unstable: Einstein locus restricts coefficients to the Y2 and L directions");
  }
  if (spec.locus == LocusKind::Soliton) {
    if (!(p.C < 0.0))
      throw std::invalid_argument("seed_unstable: soliton locus requires C < 0");
    if (!(c5 > 0.0))
      throw std::invalid_argument("seed_unstable: soliton locus requires a positive L coefficient");
  }

  PhaseState s = initial_critical_point(p);
  s.X1 += spec.delta * 2.0 * c1;
  s.Y1 += spec.delta * c1;
  s.Y2 += spec.delta * c4;
  s.L += spec.delta * c5;
  if (s.Y2 < 0.0)
    throw std::invalid_argument("seed_unstable: negative Y2 seeds are rejected (Y2 -> -Y2 symmetry)");
  if (s.L < 0.0) throw std::invalid_argument("seed_unstable: L must be nonnegative");

  if (spec.locus != LocusKind::Unconstrained) {
    // Pick the adjustment variable: Y1 whenever A1 > 0; for d1 = 1 (A1 = 0)
    // the residual no longer depends on Y1 at leading order, so solitons
    // adjust X1 and Einstein seeds fall back to Y2 or L to stay in {S2 = 0}.
    enum class Adjust { Y1, X1, Y2, L } adj;
    if (p.d1 > 1) {
      adj = Adjust::Y1;
    } else if (spec.locus == LocusKind::Soliton) {
      adj = Adjust::X1;
    } else if (s.Y2 > 0.0) {
      adj = Adjust::Y2;
    } else if (p.epsilon != 0.0 && s.L > 0.0) {
      adj = Adjust::L;
    } else {
      throw std::runtime_error(
          "seed_unstable: no usable projection direction for d1 = 1 Einstein seed");
    }
    bool converged = false;
    for (int it = 0; it < 60; ++it) {
      const double res = conservation_residual(p, s);
      if (std::abs(res) < 1e-13) {
        converged = true;
        break;
      }
      const double w = s.Y2 * s.Y2 / s.Y1;
      switch (adj) {
        case Adjust::Y1:
          s.Y1 -= res / (2.0 * p.A1 * s.Y1 + 2.0 * p.A3 * w * w / s.Y1);
          break;
        case Adjust::X1:
          s.X1 -= res / (2.0 * p.d1 * s.X1);
          break;
        case Adjust::Y2:
          s.Y2 -= res / (2.0 * p.A2 * s.Y2 - 4.0 * p.A3 * w * s.Y2 / s.Y1);
          break;
        case Adjust::L:
          s.L -= res / (-2.0 * (p.C + p.epsilon * s.u - (p.n() - 1.0) * p.epsilon / 2.0) * s.L);
          break;
      }
      if (!(s.Y1 > 0.0) || s.Y2 < 0.0 || s.L < 0.0)
        throw std::runtime_error("seed_unstable: locus projection failed to converge");
    }
    if (!converged) throw std::runtime_error("seed_unstable: locus projection failed to converge");
  }

  const LocusResiduals r = locus_residuals(p, s);
  if (spec.locus == LocusKind::Einstein) {
    if (std::abs(r.S1) > 1e-13 || std::abs(r.S2) > 1e-13)
      throw std::runtime_error("seed_unstable: Einstein locus residuals exceed 1e-13");
  } else if (spec.locus == LocusKind::Soliton) {
    if (!(r.S2 < 0.0))
      throw std::invalid_argument(
          "seed_unstable: soliton locus requires S2 < 0 at the seed; "
          "use a negative coefficient along (2,0,1,0,0)");
  }
  return s;
}

// ---------------------------------------------------------------------------
// Profile-space seeding at a singular orbit
//
// (f1, f1', f2, f2')(t0) = (t0, 1, fbar, f2'(t0)) with f2'(t0) from the
// leading Taylor balance (1 + d1) f2''(0) = fbar ((A2/d2)/fbar^2 + eps/2):
// first-order accurate in t0 (use profile_seed_selfcheck to validate a t0).

inline ProfileState seed_profile(const TwoSummandsParams& p, double fbar, double t0) {
  validate(p);
  if (!(fbar > 0.0)) throw std::invalid_argument("seed_profile: fbar must be positive");
  if (!(t0 > 0.0 && t0 <= 1e-2 * fbar))
    throw std::invalid_argument("seed_profile: need 0 < t0 <= 1e-2 * fbar");
  ProfileState s;
  s.f1 = t0;
  s.df1 = 1.0;
  s.f2 = fbar;
  s.df2 = t0 * ((p.A2 / p.d2) / fbar + 0.5 * p.epsilon * fbar) / (1.0 + p.d1);
  s.u = 0.0;
  s.du = 0.0;
  return s;
}

// Richardson-style self-check: integrate from t0 and from t0/2 to a common
// horizon and return the maximal endpoint discrepancy.  A t0 is acceptable
// when the discrepancy is within ~10x the integration tolerance budget.
inline double profile_seed_selfcheck(const TwoSummandsParams& p, double fbar, double t0,
                                     double t_end, const IntegrationControls& controls) {
  ProfileSystem sys{p};
  IntegrationControls c = controls;
  c.convergence_tol = 0.0;
  auto run = [&](double t_start) {
    c.s_max = t_end - t_start;
    auto traj = integrate(sys, ProfileSystem::pack(seed_profile(p, fbar, t_start)), c);
    if (traj.termination != EventKind::HorizonReached)
      throw std::runtime_error("profile_seed_selfcheck: trajectory ended before the horizon");
    return traj.back();
  };
  const auto a = run(t0);
  const auto b = run(0.5 * t0);
  double dev = 0.0;
  for (std::size_t i = 0; i < ProfileSystem::dim; ++i)
    dev = std::max(dev, std::abs(a[i] - b[i]));
  return dev;
}

// ---------------------------------------------------------------------------
// Number of located omega-critical events strictly before the maximal volume
// orbit (all of them if no such orbit was reached).
template <std::size_t N>
int count_omega_critical(const Trajectory<N>& traj) {
  double cutoff = std::numeric_limits<double>::infinity();
  if (const auto* mv = traj.first_event(EventKind::MaxVolumeOrbit)) cutoff = mv->s;
  int count = 0;
  for (const auto& e : traj.events)
    if (e.kind == EventKind::OmegaCritical && e.s < cutoff) ++count;
  return count;
}

}  // namespace solitonlab
