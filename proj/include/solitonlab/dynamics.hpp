#pragma once

// Phase-space state types and the vector fields, conserved-quantity residuals,
// locus residuals, linearizations and Lyapunov/monitor functionals of the
// two-summands soliton, hat/profile Einstein, planar and multi-warped systems.

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "solitonlab/params.hpp"

namespace solitonlab {

// ---------------------------------------------------------------------------
// States

// Rescaled phase space: X_i = (f_i'/f_i)/(-u' + tr L), Y_i = (1/f_i)/(-u' + tr L),
// L = 1/(-u' + tr L), with geometric time t and soliton potential u carried as
// quadratures (dt/ds = L, du/ds = d1 X1 + d2 X2 - 1).
struct PhaseState {
  double X1 = 0.0, X2 = 0.0;
  double Y1 = 0.0, Y2 = 0.0;
  double L = 0.0;
  double t = 0.0;
  double u = 0.0;
};

inline PhaseState initial_critical_point(const TwoSummandsParams& p) {
  PhaseState s;
  s.X1 = s.Y1 = 1.0 / p.d1;
  return s;
}

// Unrescaled profile space used by the Einstein/Boehm constructions.
struct ProfileState {
  double f1 = 0.0, df1 = 0.0;
  double f2 = 0.0, df2 = 0.0;
  double u = 0.0, du = 0.0;
};

// Hat variables: X-hat_i = f_i'/f_i, Y-hat_i = 1/f_i, L-hat = -u' + tr L.
// L-hat is sign-indefinite past the maximal volume orbit.
struct HatState {
  double X1 = 0.0, X2 = 0.0;
  double Y1 = 0.0, Y2 = 0.0;
  double L = 0.0;
};

// Multi-warped state with r factors, plus the virtual factor when m is finite.
struct MultiState {
  std::vector<double> X;
  std::vector<double> Y;
  double L = 0.0;
  double t = 0.0;
  double u = 0.0;
};

struct Functionals {
  double K = 0.0;       // Boehm-type Lyapunov of the nontrivial-bundle case
  double Ktilde = 0.0;  // circle-bundle analogue (NaN unless computed from CircleBundleParams)
  double F0 = 0.0;      // Boehm functional
  double G = 0.0;       // Y1^d1 Y2^d2, inverse of F0 in X-Y coordinates
  double meanCurv = 0.0;  // -u' + tr L = 1/L
};

// ---------------------------------------------------------------------------
// Rescaled two-summands vector field

// Y2^4/Y1^2 evaluated as (Y2^2/Y1)^2; both factors stay bounded in the
// trapping region even as Y1, Y2 -> 0 together.
inline double mixed_term(double Y1, double Y2) {
  const double w = Y2 * Y2 / Y1;
  return w * w;
}

inline PhaseState rhs_rescaled(const TwoSummandsParams& p, const PhaseState& s) {
  if (!(s.Y1 > 0.0)) throw std::domain_error("rhs_rescaled: Y1 must be positive");
  const double eL2 = 0.5 * p.epsilon * s.L * s.L;
  const double sum2 = p.d1 * s.X1 * s.X1 + p.d2 * s.X2 * s.X2;
  const double S = sum2 - eL2;
  const double w2 = mixed_term(s.Y1, s.Y2);
  PhaseState d;
  d.X1 = s.X1 * (S - 1.0) + (p.A1 / p.d1) * s.Y1 * s.Y1 + eL2 + (p.A3 / p.d1) * w2;
  d.X2 = s.X2 * (S - 1.0) + (p.A2 / p.d2) * s.Y2 * s.Y2 + eL2 - (2.0 * p.A3 / p.d2) * w2;
  d.Y1 = s.Y1 * (S - s.X1);
  d.Y2 = s.Y2 * (S - s.X2);
  d.L = s.L * S;
  d.t = s.L;
  d.u = p.d1 * s.X1 + p.d2 * s.X2 - 1.0;
  return d;
}

// Polynomial form with W = Y2^2/Y1 carried as an extra variable; used when Y1
// underflows.  W' = W (S + X1 - 2 X2).
struct PolyState {
  PhaseState ps;
  double W = 0.0;
};

inline PolyState rhs_polynomial(const TwoSummandsParams& p, const PolyState& s) {
  const double eL2 = 0.5 * p.epsilon * s.ps.L * s.ps.L;
  const double sum2 = p.d1 * s.ps.X1 * s.ps.X1 + p.d2 * s.ps.X2 * s.ps.X2;
  const double S = sum2 - eL2;
  const double w2 = s.W * s.W;
  PolyState d;
  d.ps.X1 = s.ps.X1 * (S - 1.0) + (p.A1 / p.d1) * s.ps.Y1 * s.ps.Y1 + eL2 + (p.A3 / p.d1) * w2;
  d.ps.X2 = s.ps.X2 * (S - 1.0) + (p.A2 / p.d2) * s.ps.Y2 * s.ps.Y2 + eL2 - (2.0 * p.A3 / p.d2) * w2;
  d.ps.Y1 = s.ps.Y1 * (S - s.ps.X1);
  d.ps.Y2 = s.ps.Y2 * (S - s.ps.X2);
  d.ps.L = s.ps.L * S;
  d.ps.t = s.ps.L;
  d.ps.u = p.d1 * s.ps.X1 + p.d2 * s.ps.X2 - 1.0;
  d.W = s.W * (S + s.ps.X1 - 2.0 * s.ps.X2);
  return d;
}

// Conservation law residual,
//   sum d_i X_i^2 + sum A_i Y_i^2 - A3 Y2^4/Y1^2 - 1 - (C + eps u - (n-1)eps/2) L^2;
// identically zero along exact solutions with matching (C, u).
inline double conservation_residual(const TwoSummandsParams& p, const PhaseState& s) {
  if (!(s.Y1 > 0.0)) throw std::domain_error("conservation_residual: Y1 must be positive");
  const double sum2 = p.d1 * s.X1 * s.X1 + p.d2 * s.X2 * s.X2;
  const double sumA = p.A1 * s.Y1 * s.Y1 + p.A2 * s.Y2 * s.Y2;
  const double coef = p.C + p.epsilon * s.u - (p.n() - 1.0) * p.epsilon / 2.0;
  return sum2 + sumA - p.A3 * mixed_term(s.Y1, s.Y2) - 1.0 - coef * s.L * s.L;
}

// Locus residuals: S2 = d1 X1 + d2 X2 - 1 and
// S1 = sum d_i X_i^2 + sum A_i Y_i^2 - A3 Y2^4/Y1^2 - 1 + ((n-1)/2) eps L^2.
// Einstein trajectories keep both ~ 0; soliton trajectories keep both < 0.
struct LocusResiduals {
  double S1 = 0.0;
  double S2 = 0.0;
};

inline LocusResiduals locus_residuals(const TwoSummandsParams& p, const PhaseState& s) {
  if (!(s.Y1 > 0.0)) throw std::domain_error("locus_residuals: Y1 must be positive");
  LocusResiduals r;
  const double sum2 = p.d1 * s.X1 * s.X1 + p.d2 * s.X2 * s.X2;
  const double sumA = p.A1 * s.Y1 * s.Y1 + p.A2 * s.Y2 * s.Y2;
  r.S1 = sum2 + sumA - p.A3 * mixed_term(s.Y1, s.Y2) - 1.0 +
         0.5 * (p.n() - 1.0) * p.epsilon * s.L * s.L;
  r.S2 = p.d1 * s.X1 + p.d2 * s.X2 - 1.0;
  return r;
}

// ---------------------------------------------------------------------------
// Linearization at the initial critical point X1 = Y1 = 1/d1, X2 = Y2 = L = 0
//
// Eigenvalues: 2/d1, then 1/d1 - 1 and 1/d1 each with multiplicity two.
// Coordinate order (X1, X2, Y1, Y2, L).

using Mat5 = std::array<std::array<double, 5>, 5>;
using Vec5 = std::array<double, 5>;

struct InitialLinearization {
  Mat5 matrix{};
  std::array<double, 5> eigenvalues{};   // {2/d1, 1/d1-1, 1/d1-1, 1/d1, 1/d1}
  std::array<Vec5, 5> eigenvectors{};    // matching order
};

inline InitialLinearization linearization_initial(const TwoSummandsParams& p) {
  const double d1 = p.d1;
  InitialLinearization L;
  for (auto& row : L.matrix) row.fill(0.0);
  L.matrix[0][0] = 3.0 / d1 - 1.0;
  L.matrix[0][2] = 2.0 * (d1 - 1.0) / d1;
  L.matrix[1][1] = 1.0 / d1 - 1.0;
  L.matrix[2][0] = 1.0 / d1;
  L.matrix[3][3] = 1.0 / d1;
  L.matrix[4][4] = 1.0 / d1;
  L.eigenvalues = {2.0 / d1, 1.0 / d1 - 1.0, 1.0 / d1 - 1.0, 1.0 / d1, 1.0 / d1};
  L.eigenvectors[0] = {2.0, 0.0, 1.0, 0.0, 0.0};
  L.eigenvectors[1] = {0.0, 1.0, 0.0, 0.0, 0.0};
  L.eigenvectors[2] = {d1 - 1.0, 0.0, -1.0, 0.0, 0.0};
  L.eigenvectors[3] = {0.0, 0.0, 0.0, 1.0, 0.0};
  L.eigenvectors[4] = {0.0, 0.0, 0.0, 0.0, 1.0};
  return L;
}

// ---------------------------------------------------------------------------
// Hat (unrescaled Einstein) system, valid across the maximal volume orbit

inline HatState rhs_hat(const TwoSummandsParams& p, const HatState& s) {
  if (!(s.Y1 > 0.0)) throw std::domain_error("rhs_hat: Y1 must be positive");
  const double eps2 = 0.5 * p.epsilon;
  const double w2 = mixed_term(s.Y1, s.Y2);
  HatState d;
  d.X1 = -s.X1 * s.L + (p.A1 / p.d1) * s.Y1 * s.Y1 + eps2 + (p.A3 / p.d1) * w2;
  d.X2 = -s.X2 * s.L + (p.A2 / p.d2) * s.Y2 * s.Y2 + eps2 - (2.0 * p.A3 / p.d2) * w2;
  d.Y1 = -s.X1 * s.Y1;
  d.Y2 = -s.X2 * s.Y2;
  d.L = eps2 - (p.d1 * s.X1 * s.X1 + p.d2 * s.X2 * s.X2);
  return d;
}

// Unrescaled conservation law residual (Einstein locus):
// sum d_i X^2 + sum A_i Y^2 - A3 Y2^4/Y1^2 + (n-1) eps/2 - L^2.
inline double hat_conservation_residual(const TwoSummandsParams& p, const HatState& s) {
  const double sum2 = p.d1 * s.X1 * s.X1 + p.d2 * s.X2 * s.X2;
  const double sumA = p.A1 * s.Y1 * s.Y1 + p.A2 * s.Y2 * s.Y2;
  return sum2 + sumA - p.A3 * mixed_term(s.Y1, s.Y2) + 0.5 * (p.n() - 1.0) * p.epsilon -
         s.L * s.L;
}

inline double hat_constraint_residual(const TwoSummandsParams& p, const HatState& s) {
  return s.L - (p.d1 * s.X1 + p.d2 * s.X2);
}

// ---------------------------------------------------------------------------
// Profile-space vector field
//
// f_i''/f_i = (f_i'/f_i)^2 + r_i - tr L (f_i'/f_i) + u' (f_i'/f_i) + eps/2
// with r1 = (A1/d1)/f1^2 + (A3/d1) f1^2/f2^4 and
//      r2 = (A2/d2)/f2^2 - (2A3/d2) f1^2/f2^4.
// Soliton mode evolves u'' = tr(L') + tr(L^2) - eps/2; Einstein mode keeps u = 0.

enum class ProfileMode { Einstein, Soliton };

inline ProfileState rhs_profile(const TwoSummandsParams& p, const ProfileState& s,
                                ProfileMode mode = ProfileMode::Einstein) {
  if (!(s.f1 > 0.0) || !(s.f2 > 0.0))
    throw std::domain_error("rhs_profile: f1, f2 must be positive (collapse)");
  const double L1 = s.df1 / s.f1, L2 = s.df2 / s.f2;
  const double trL = p.d1 * L1 + p.d2 * L2;
  const double ratio = (s.f1 * s.f1) / (s.f2 * s.f2 * s.f2 * s.f2);
  const double r1 = (p.A1 / p.d1) / (s.f1 * s.f1) + (p.A3 / p.d1) * ratio;
  const double r2 = (p.A2 / p.d2) / (s.f2 * s.f2) - (2.0 * p.A3 / p.d2) * ratio;
  const double du = (mode == ProfileMode::Soliton) ? s.du : 0.0;
  const double eps2 = 0.5 * p.epsilon;
  const double dL1 = r1 - trL * L1 + du * L1 + eps2;  // L_i' = f_i''/f_i - L_i^2
  const double dL2 = r2 - trL * L2 + du * L2 + eps2;
  ProfileState d;
  d.f1 = s.df1;
  d.df1 = s.f1 * (dL1 + L1 * L1);
  d.f2 = s.df2;
  d.df2 = s.f2 * (dL2 + L2 * L2);
  if (mode == ProfileMode::Soliton) {
    const double trL2 = p.d1 * L1 * L1 + p.d2 * L2 * L2;
    const double trdL = p.d1 * dL1 + p.d2 * dL2;
    d.u = s.du;
    d.du = trdL + trL2 - eps2;
  } else {
    d.u = 0.0;
    d.du = 0.0;
  }
  return d;
}

// Profile-space conservation residual (reformulated law):
// tr r + tr L^2 - (-u' + tr L)^2 + (n-1) eps/2 - C - eps u.
inline double profile_conservation_residual(const TwoSummandsParams& p, const ProfileState& s,
                                            ProfileMode mode = ProfileMode::Einstein) {
  const double L1 = s.df1 / s.f1, L2 = s.df2 / s.f2;
  const double trL = p.d1 * L1 + p.d2 * L2;
  const double ratio = (s.f1 * s.f1) / (s.f2 * s.f2 * s.f2 * s.f2);
  const double trr = p.A1 / (s.f1 * s.f1) + p.A2 / (s.f2 * s.f2) - p.A3 * ratio;
  const double trL2 = p.d1 * L1 * L1 + p.d2 * L2 * L2;
  const double du = (mode == ProfileMode::Soliton) ? s.du : 0.0;
  const double u = (mode == ProfileMode::Soliton) ? s.u : 0.0;
  const double gen = -du + trL;
  return trr + trL2 - gen * gen + 0.5 * (p.n() - 1.0) * p.epsilon - p.C - p.epsilon * u;
}

// ---------------------------------------------------------------------------
// Planar reduction on the Einstein locus
//
// X2 = (1 - d1 X1)/d2 and Y2^2 is eliminated through the conservation law,
//   (A3/Y1^2) z^2 - A2 z - sigma' = 0,  z = Y2^2,
//   sigma' = sum d_i X_i^2 + (n-1)(eps/2) L^2 - 1 + A1 Y1^2,
// taking the '-' branch of the quadratic (the one realised by the flow).
// epsL2 carries the combination eps * L^2.

struct PlanarRhs {
  double dX1 = 0.0;
  double dY1 = 0.0;
  double dLogL = 0.0;  // L'/L
  double Y2sq = 0.0;   // eliminated Y2^2 at the input point
  double X2 = 0.0;
};

inline double planar_radicand(const TwoSummandsParams& p, double X1, double Y1, double epsL2) {
  const double X2 = (1.0 - p.d1 * X1) / p.d2;
  const double sum2 = p.d1 * X1 * X1 + p.d2 * X2 * X2;
  const double sigmap = sum2 + 0.5 * (p.n() - 1.0) * epsL2 - 1.0 + p.A1 * Y1 * Y1;
  return p.A2 * p.A2 * Y1 * Y1 * Y1 * Y1 + 4.0 * p.A3 * sigmap * Y1 * Y1;
}

inline PlanarRhs rhs_planar(const TwoSummandsParams& p, double X1, double Y1, double epsL2) {
  const double X2 = (1.0 - p.d1 * X1) / p.d2;
  const double eL2 = 0.5 * epsL2;
  const double sum2 = p.d1 * X1 * X1 + p.d2 * X2 * X2;
  const double sigmap = sum2 + 0.5 * (p.n() - 1.0) * epsL2 - 1.0 + p.A1 * Y1 * Y1;
  double Y2sq;
  if (p.A3 > 0.0) {
    const double rad = p.A2 * p.A2 * Y1 * Y1 * Y1 * Y1 + 4.0 * p.A3 * sigmap * Y1 * Y1;
    if (rad < 0.0) throw std::domain_error("rhs_planar: negative radicand (flow left the domain)");
    Y2sq = (p.A2 * Y1 * Y1 - std::sqrt(rad)) / (2.0 * p.A3);
  } else {
    Y2sq = -sigmap / p.A2;
  }
  // A3 Y2^4/Y1^2 = A2 Y2^2 + sigma' by the elimination, valid for A3 = 0 too.
  const double mixed = p.A2 * Y2sq + sigmap;
  const double S = sum2 - eL2;
  PlanarRhs d;
  d.dX1 = X1 * (S - 1.0) + (p.A1 / p.d1) * Y1 * Y1 + eL2 + mixed / p.d1;
  d.dY1 = Y1 * (S - X1);
  d.dLogL = S;
  d.Y2sq = Y2sq;
  d.X2 = X2;
  return d;
}

// ---------------------------------------------------------------------------
// Multi-warped vector field (r factors, plus virtual factor when m finite)

inline void rhs_multi(const MultiWarpedParams& mp, const MultiState& s, MultiState& d) {
  const std::size_t k = mp.total_factors();
  if (s.X.size() != k || s.Y.size() != k)
    throw std::invalid_argument("rhs_multi: state size does not match parameter set");
  d.X.resize(k);
  d.Y.resize(k);
  auto dim = [&](std::size_t i) { return i < mp.factors.size() ? mp.factors[i].d : mp.m; };
  auto lam = [&](std::size_t i) {
    return i < mp.factors.size() ? mp.factors[i].lambda : mp.lambda_virtual;
  };
  const double eL2 = 0.5 * mp.epsilon * s.L * s.L;
  double sum2 = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum2 += dim(i) * s.X[i] * s.X[i];
  const double S = sum2 - eL2;
  for (std::size_t i = 0; i < k; ++i) {
    d.X[i] = s.X[i] * (S - 1.0) + lam(i) * s.Y[i] * s.Y[i] + eL2;
    d.Y[i] = s.Y[i] * (S - s.X[i]);
  }
  d.L = s.L * S;
  d.t = s.L;
  double sumGeom = 0.0;  // geometric factors only; finite m gives -m X_{r+1}
  for (std::size_t i = 0; i < mp.factors.size(); ++i) sumGeom += mp.factors[i].d * s.X[i];
  d.u = sumGeom - 1.0;
}

// sum d_i X_i^2 + sum d_i lambda_i Y_i^2 + ((n-1)/2) eps L^2 - 1, with the
// soliton constant term (C + eps u) L^2 subtracted for m = infinity runs.
inline double multi_conservation_residual(const MultiWarpedParams& mp, const MultiState& s) {
  const std::size_t k = mp.total_factors();
  auto dim = [&](std::size_t i) { return i < mp.factors.size() ? mp.factors[i].d : mp.m; };
  auto lam = [&](std::size_t i) {
    return i < mp.factors.size() ? mp.factors[i].lambda : mp.lambda_virtual;
  };
  double acc = -1.0 + 0.5 * (mp.n() - 1.0) * mp.epsilon * s.L * s.L;
  for (std::size_t i = 0; i < k; ++i)
    acc += dim(i) * (s.X[i] * s.X[i] + lam(i) * s.Y[i] * s.Y[i]);
  if (!mp.finite_m()) acc -= (mp.C + mp.epsilon * s.u) * s.L * s.L;
  return acc;
}

// Three-summand quasi-Einstein vector field: the multi system for
// (d1, d2, d3 = m) plus the submersion terms in calA.
struct QuasiState {
  double X1 = 0.0, X2 = 0.0, X3 = 0.0;
  double Y1 = 0.0, Y2 = 0.0, Y3 = 0.0;
  double L = 0.0;
};

inline QuasiState rhs_quasi(const QuasiThreeSummands& q, const QuasiState& s) {
  if (!(s.Y1 > 0.0)) throw std::domain_error("rhs_quasi: Y1 must be positive");
  const double eL2 = 0.5 * q.epsilon * s.L * s.L;
  const double sum2 = q.d1 * s.X1 * s.X1 + q.d2 * s.X2 * s.X2 + q.d3 * s.X3 * s.X3;
  const double S = sum2 - eL2;
  const double w2 = mixed_term(s.Y1, s.Y2);
  QuasiState d;
  d.X1 = s.X1 * (S - 1.0) + (q.A1 / q.d1) * s.Y1 * s.Y1 + eL2 + (q.calA / q.d1) * w2;
  d.X2 = s.X2 * (S - 1.0) + (q.A2 / q.d2) * s.Y2 * s.Y2 + eL2 - (2.0 * q.calA / q.d2) * w2;
  d.X3 = s.X3 * (S - 1.0) + (q.A3 / q.d3) * s.Y3 * s.Y3 + eL2;
  d.Y1 = s.Y1 * (S - s.X1);
  d.Y2 = s.Y2 * (S - s.X2);
  d.Y3 = s.Y3 * (S - s.X3);
  d.L = s.L * S;
  return d;
}

inline double quasi_conservation_residual(const QuasiThreeSummands& q, const QuasiState& s) {
  const double sum2 = q.d1 * s.X1 * s.X1 + q.d2 * s.X2 * s.X2 + q.d3 * s.X3 * s.X3;
  const double sumA = q.A1 * s.Y1 * s.Y1 + q.A2 * s.Y2 * s.Y2 + q.A3 * s.Y3 * s.Y3;
  return sum2 + sumA - q.calA * mixed_term(s.Y1, s.Y2) +
         0.5 * (q.n() - 1.0) * q.epsilon * s.L * s.L - 1.0;
}

// ---------------------------------------------------------------------------
// Kaehler residuals on circle bundles
//
// (X2^2 - (q^2/4) Y2^4/Y1^2,  X2(X1+1) - (p Y2^2 + (eps/2) L^2)); the Kaehler
// subspace is where both vanish, and it is preserved by the flow.
inline std::pair<double, double> kahler_residuals(const CircleBundleParams& cb,
                                                  const PhaseState& s, double epsilon) {
  if (!(s.Y1 > 0.0)) throw std::domain_error("kahler_residuals: Y1 must be positive");
  const double q2 = static_cast<double>(cb.q) * cb.q;
  const double r1 = s.X2 * s.X2 - 0.25 * q2 * mixed_term(s.Y1, s.Y2);
  const double r2 =
      s.X2 * (s.X1 + 1.0) - (cb.p * s.Y2 * s.Y2 + 0.5 * epsilon * s.L * s.L);
  return {r1, r2};
}

// ---------------------------------------------------------------------------
// Functionals

// K = (1/2) (Y2/Y1)^{2(d1-1)} ((X1-X2)/Y1)^2 - G-hat(Y2/Y1)
// F0 = prod Y_i^{-2 d_i / n} { sum A_i Y_i^2 - A3 Y2^4/Y1^2
//                              + sum d_i X_i^2 - (1/n)(sum d_i X_i)^2 }
// G  = Y1^{d1} Y2^{d2}
inline Functionals functionals(const TwoSummandsParams& p, const PhaseState& s) {
  if (!(s.Y1 > 0.0)) throw std::domain_error("functionals: Y1 must be positive");
  Functionals F;
  const double omega = s.Y2 / s.Y1;
  const double shear = (s.X1 - s.X2) / s.Y1;
  F.K = 0.5 * std::pow(omega * omega, p.d1 - 1) * shear * shear - g_hat(p, omega);
  F.Ktilde = std::numeric_limits<double>::quiet_NaN();
  const double sum2 = p.d1 * s.X1 * s.X1 + p.d2 * s.X2 * s.X2;
  const double sum1 = p.d1 * s.X1 + p.d2 * s.X2;
  if (s.Y2 > 0.0) {
    const double brace = p.A1 * s.Y1 * s.Y1 +
                         s.Y2 * s.Y2 * (p.A2 - p.A3 * (s.Y2 * s.Y2) / (s.Y1 * s.Y1)) + sum2 -
                         sum1 * sum1 / p.n();
    F.F0 = std::pow(s.Y1, -2.0 * p.d1 / p.n()) * std::pow(s.Y2, -2.0 * p.d2 / p.n()) * brace;
    F.G = std::pow(s.Y1, p.d1) * std::pow(s.Y2, p.d2);
  } else {
    // warped-product limit: G collapses, F0 is reported as a flagged infinity
    F.F0 = std::numeric_limits<double>::infinity();
    F.G = 0.0;
  }
  F.meanCurv = (s.L > 0.0) ? 1.0 / s.L : std::numeric_limits<double>::infinity();
  return F;
}

// K-tilde = (1/2)((X1-X2)/Y1)^2 + (p/2)(Y2/Y1)^2 - ((d+2)/16) q^2 (Y2/Y1)^4 - 1/2
inline double ktilde(const CircleBundleParams& cb, const PhaseState& s) {
  if (!(s.Y1 > 0.0)) throw std::domain_error("ktilde: Y1 must be positive");
  const double omega = s.Y2 / s.Y1;
  const double shear = (s.X1 - s.X2) / s.Y1;
  const double q2 = static_cast<double>(cb.q) * cb.q;
  return 0.5 * shear * shear + 0.5 * cb.p * omega * omega -
         (cb.d + 2.0) / 16.0 * q2 * omega * omega * omega * omega - 0.5;
}

inline Functionals functionals(const CircleBundleParams& cb, const PhaseState& s,
                               double epsilon = 0.0, double C = 0.0) {
  Functionals F = functionals(to_two_summands(cb, epsilon, C), s);
  F.Ktilde = ktilde(cb, s);
  return F;
}

}  // namespace solitonlab
