#pragma once

// Geometric parameter sets for the cohomogeneity-one two-summands systems:
// Hopf-fibration presets, the D-hat criterion and its trapping roots, cone
// solutions with their stability classification, circle-bundle parameters and
// the quasi-Einstein lift to three summands / multiple warped products.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace solitonlab {

// ---------------------------------------------------------------------------
// Two-summands parameter set
//
// Metric dt^2 + f1^2 g_S + f2^2 g_Q with a d1-sphere collapsing over a
// d2-dimensional singular orbit Q.  A1 = d1(d1-1), A2 = d2 Ric^Q,
// A3 = d2 |A|^2 (O'Neill tensor norm of the submersion G/K -> G/H).

struct TwoSummandsParams {
  int d1 = 0;
  int d2 = 0;
  double A1 = 0.0;
  double A2 = 0.0;
  double A3 = 0.0;
  double epsilon = 0.0;  // soliton constant; steady = 0, expanding > 0
  double C = 0.0;        // conservation-law integrability constant
  bool sphere_collapse = false;  // set when A1 = d1(d1-1) is a structural fact

  int n() const { return d1 + d2; }
};

inline void validate(const TwoSummandsParams& p) {
  if (p.d1 < 1 || p.d2 < 1)
    throw std::invalid_argument("two-summands params: d1, d2 must be >= 1");
  if (p.n() < 2) throw std::invalid_argument("two-summands params: n = d1 + d2 must be >= 2");
  if (!(p.A2 > 0.0))
    throw std::invalid_argument("two-summands params: A2 must be positive (singular orbit is not a torus)");
  if (p.A1 < 0.0 || p.A3 < 0.0)
    throw std::invalid_argument("two-summands params: A1, A3 must be nonnegative");
  if (p.sphere_collapse &&
      p.A1 != static_cast<double>(static_cast<std::int64_t>(p.d1) * (p.d1 - 1)))
    throw std::invalid_argument("two-summands params: sphere collapse requires A1 = d1(d1-1)");
}

// ---------------------------------------------------------------------------
// Hopf-fibration presets

enum class PresetName { CP, HP, F, CaP };

struct Preset {
  PresetName name = PresetName::HP;
  int m = 1;  // family index; CaP exists only for m = 1
};

inline const char* to_string(PresetName name) {
  switch (name) {
    case PresetName::CP: return "cp";
    case PresetName::HP: return "hp";
    case PresetName::F: return "f";
    case PresetName::CaP: return "cap";
  }
  return "?";
}

inline PresetName parse_preset_name(const std::string& s) {
  if (s == "cp" || s == "CP") return PresetName::CP;
  if (s == "hp" || s == "HP") return PresetName::HP;
  if (s == "f" || s == "F") return PresetName::F;
  if (s == "cap" || s == "CaP" || s == "CAP") return PresetName::CaP;
  throw std::invalid_argument("unknown preset name '" + s + "' (expected cp|hp|f|cap)");
}

// Table row per preset family: d1, d2(m), |A|^2, Ric^Q(m).  Derived constants
// are computed in integer arithmetic and converted at the end.
inline TwoSummandsParams resolve_preset(const Preset& preset) {
  if (preset.m < 1) throw std::invalid_argument("preset family index m must be >= 1");
  const std::int64_t m = preset.m;
  std::int64_t d1 = 0, d2 = 0, normA2 = 0, ricQ = 0;
  switch (preset.name) {
    case PresetName::CP:
      d1 = 1; d2 = 2 * m; normA2 = 1; ricQ = 2 * m + 2;
      break;
    case PresetName::HP:
      d1 = 3; d2 = 4 * m; normA2 = 3; ricQ = 4 * m + 8;
      break;
    case PresetName::F:
      d1 = 2; d2 = 4 * m; normA2 = 8; ricQ = 4 * m + 8;
      break;
    case PresetName::CaP:
      if (preset.m != 1) throw std::invalid_argument("CaP preset exists only for m = 1");
      d1 = 7; d2 = 8; normA2 = 7; ricQ = 28;
      break;
  }
  TwoSummandsParams p;
  p.d1 = static_cast<int>(d1);
  p.d2 = static_cast<int>(d2);
  p.A1 = static_cast<double>(d1 * (d1 - 1));
  p.A2 = static_cast<double>(d2 * ricQ);
  p.A3 = static_cast<double>(d2 * normA2);
  p.epsilon = 0.0;
  p.C = 0.0;
  p.sphere_collapse = true;
  validate(p);
  return p;
}

// ---------------------------------------------------------------------------
// D-hat criterion and trapping roots
//
// D-hat = (A2/d2)^2 - 4 (A3/d2) (d1/(d1+1)) (2 d1 + d2).  Positivity gives the
// two roots omega_hat_1 < omega_hat_2 of the potential G-hat and with them the
// trapping region {X2 > 0, Y2/Y1 < omega_hat_1}.

inline double d_hat(const TwoSummandsParams& p) {
  if (p.d1 < 1 || p.d2 < 1) throw std::invalid_argument("d_hat: d1, d2 must be >= 1");
  const double d1 = p.d1, d2 = p.d2;
  const double a = p.A2 / d2;
  return a * a - 4.0 * (p.A3 / d2) * (d1 / (d1 + 1.0)) * (2.0 * d1 + d2);
}

// G-hat(w) = A3 (1/d1 + 2/d2) w^{2(d1+1)} / (2(d1+1))
//          - (A2/d2) w^{2 d1} / (2 d1) + w^{2(d1-1)} / 2
inline double g_hat(const TwoSummandsParams& p, double omega) {
  const double d1 = p.d1, d2 = p.d2;
  const double w2 = omega * omega;
  return p.A3 * (1.0 / d1 + 2.0 / d2) * std::pow(w2, d1 + 1) / (2.0 * (d1 + 1.0)) -
         (p.A2 / d2) * std::pow(w2, d1) / (2.0 * d1) + std::pow(w2, d1 - 1) / 2.0;
}

// Positive roots 0 < omega_hat_1 < omega_hat_2 of G-hat, present exactly when
// D-hat > 0 (strict; the boundary D-hat = 0 counts as absent).
// w^2 = (1/2)(A2/A3)((d1+1)/(2d1+d2)) (1 -+ sqrt(1 - 4 (A3/A2^2) d1 d2 (2d1+d2)/(d1+1)))
inline std::optional<std::pair<double, double>> omega_hat_roots(const TwoSummandsParams& p) {
  if (!(p.A3 > 0.0))
    throw std::invalid_argument("omega_hat_roots: not applicable for A3 = 0 (warped-product case)");
  if (!(d_hat(p) > 0.0)) return std::nullopt;
  const double d1 = p.d1, d2 = p.d2;
  const double inner = 1.0 - 4.0 * (p.A3 / (p.A2 * p.A2)) * d1 * d2 * (2.0 * d1 + d2) / (d1 + 1.0);
  const double root = std::sqrt(inner);
  const double pref = 0.5 * (p.A2 / p.A3) * (d1 + 1.0) / (2.0 * d1 + d2);
  return std::make_pair(std::sqrt(pref * (1.0 - root)), std::sqrt(pref * (1.0 + root)));
}

// ---------------------------------------------------------------------------
// Circle bundles over Fano Kaehler-Einstein bases (d1 = 1)

struct CircleBundleParams {
  int p = 1;  // Ric = p g on the base
  int q = 1;  // Euler class multiple, nonzero
  int d = 2;  // real dimension of the base, positive even
};

inline void validate(const CircleBundleParams& cb) {
  if (cb.p < 1) throw std::invalid_argument("circle bundle: p must be a positive integer");
  if (cb.q == 0) throw std::invalid_argument("circle bundle: q must be nonzero");
  if (cb.d < 2 || cb.d % 2 != 0)
    throw std::invalid_argument("circle bundle: d must be a positive even integer");
}

inline TwoSummandsParams to_two_summands(const CircleBundleParams& cb, double epsilon = 0.0,
                                         double C = 0.0) {
  validate(cb);
  TwoSummandsParams p;
  p.d1 = 1;
  p.d2 = cb.d;
  p.A1 = 0.0;
  p.A2 = static_cast<double>(cb.d) * cb.p;
  p.A3 = static_cast<double>(cb.d) * cb.q * cb.q / 4.0;
  p.epsilon = epsilon;
  p.C = C;
  p.sphere_collapse = true;  // d1 = 1 gives A1 = 0 = d1(d1-1)
  validate(p);
  return p;
}

// Positive zeros 0 < omega_tilde_1 < omega_tilde_2 of
// (p/2) w^2 - ((d+2)/16) q^2 w^4 - 1/2, present exactly when 2p^2 > (d+2)q^2.
inline std::optional<std::pair<double, double>> omega_tilde_roots(const CircleBundleParams& cb) {
  validate(cb);
  const double p = cb.p, q2 = static_cast<double>(cb.q) * cb.q, d = cb.d;
  if (!(2.0 * p * p > (d + 2.0) * q2)) return std::nullopt;
  const double r = std::sqrt(p * p - (d + 2.0) * q2 / 2.0);
  const double z1 = 4.0 * (p - r) / ((d + 2.0) * q2);
  const double z2 = 4.0 * (p + r) / ((d + 2.0) * q2);
  return std::make_pair(std::sqrt(z1), std::sqrt(z2));
}

// ---------------------------------------------------------------------------
// Cone solutions
//
// Positive pairs (c1, c2) with
//   (n-1) d1 = A1/c1^2 + A3 c1^2/c2^4
//   (n-1) d2 = A2/c2^2 - 2 A3 c1^2/c2^4
// The "first" solution is the one with the smaller ratio c1/c2.

enum class ConeBranch { First, Second };

struct ConeSolution {
  double c1 = 0.0;
  double c2 = 0.0;
  ConeBranch branch = ConeBranch::First;
};

inline std::pair<double, double> cone_equation_residuals(const TwoSummandsParams& p, double c1,
                                                         double c2) {
  const double n1 = p.n() - 1.0;
  const double c1sq = c1 * c1, c2sq = c2 * c2;
  const double mixed = p.A3 * c1sq / (c2sq * c2sq);
  const double r1 = p.A1 / c1sq + mixed - n1 * p.d1;
  const double r2 = p.A2 / c2sq - 2.0 * mixed - n1 * p.d2;
  return {r1, r2};
}

// Solves the cone equations.  c2^2 comes from the closed form
//   c2^2 = (A2 n +- sqrt(Delta)) / (d2 (2d1+d2)(n-1)),
//   Delta = A2^2 d1^2 - 4 A1 A3 d2 (2d1+d2);
// c1^2 is then recovered from the defining equations (the combination
// 2*(first) + (second) gives (n-1)(2d1+d2) = 2 A1/c1^2 + A2/c2^2), never from
// the printed c1^2 closed form.  Both equations are re-verified afterwards.
inline std::vector<ConeSolution> cone_solutions(const TwoSummandsParams& p) {
  if (!(p.A1 > 0.0) || !(p.A2 > 0.0))
    throw std::invalid_argument("cone_solutions requires A1, A2 > 0");
  const double n = p.n();
  const double n1 = n - 1.0;
  const double d1 = p.d1, d2 = p.d2;
  std::vector<ConeSolution> out;

  auto verify = [&p](double c1, double c2) {
    auto [r1, r2] = cone_equation_residuals(p, c1, c2);
    const double n1d = (p.n() - 1.0);
    if (std::abs(r1) > 1e-12 * n1d * p.d1 || std::abs(r2) > 1e-12 * n1d * p.d2)
      throw std::logic_error("cone_solutions: residual verification failed");
  };

  if (p.A3 == 0.0) {
    const double c1 = std::sqrt(p.A1 / (n1 * d1));
    const double c2 = std::sqrt(p.A2 / (n1 * d2));
    verify(c1, c2);
    out.push_back({c1, c2, ConeBranch::First});
    return out;
  }

  const double delta = p.A2 * p.A2 * d1 * d1 - 4.0 * p.A1 * p.A3 * d2 * (2.0 * d1 + d2);
  if (delta < 0.0) return out;
  const double sq = std::sqrt(delta);
  const int nbranch = (delta == 0.0) ? 1 : 2;
  for (int k = 0; k < nbranch; ++k) {
    const double sign = (k == 0) ? +1.0 : -1.0;
    const double c2sq = (p.A2 * n + sign * sq) / (d2 * (2.0 * d1 + d2) * n1);
    // 2*(first eq) + (second eq): denominator equals (n-1)(2d1+d2)(A2 d1 +- sqrt(Delta)) / (A2 n +- sqrt(Delta)) > 0
    const double c1sq = 2.0 * p.A1 / (n1 * (2.0 * d1 + d2) - p.A2 / c2sq);
    if (!(c1sq > 0.0) || !(c2sq > 0.0))
      throw std::logic_error("cone_solutions: nonpositive square encountered");
    out.push_back({std::sqrt(c1sq), std::sqrt(c2sq), ConeBranch::First});
  }
  std::sort(out.begin(), out.end(),
            [](const ConeSolution& a, const ConeSolution& b) { return a.c1 / a.c2 < b.c1 / b.c2; });
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].branch = (i == 0) ? ConeBranch::First : ConeBranch::Second;
    verify(out[i].c1, out[i].c2);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stability of the cone base point for the planar Ricci-flat system
//
// Eigenvalues solve  l^2 + ((n-1)/n) l + (2/n^2) [n-1 - B] = 0  with
// B = 2 A3 (c1^2/c2^4)(1/d1 + 1/d2).  Spiral exactly when the discriminant
// (n-1)(n-9) + 8B (times 1/n^2) is negative; a vanishing discriminant counts
// as Node (repeated real eigenvalue, no rotation).

enum class ConeStabilityKind { Spiral, Node };

struct ConeStability {
  ConeStabilityKind kind = ConeStabilityKind::Node;
  std::complex<double> eig1;
  std::complex<double> eig2;
  double discriminant = 0.0;
};

inline ConeStability classify_cone_stability(const TwoSummandsParams& p,
                                             const ConeSolution& cone) {
  const double n = p.n();
  const double c1sq = cone.c1 * cone.c1;
  const double c2sq = cone.c2 * cone.c2;
  const double B = 2.0 * p.A3 * (c1sq / (c2sq * c2sq)) * (1.0 / p.d1 + 1.0 / p.d2);
  const double b = (n - 1.0) / n;
  const double c = (2.0 / (n * n)) * (n - 1.0 - B);
  ConeStability st;
  st.discriminant = b * b - 4.0 * c;
  if (st.discriminant < 0.0) {
    st.kind = ConeStabilityKind::Spiral;
    const double im = std::sqrt(-st.discriminant) / 2.0;
    st.eig1 = {-b / 2.0, im};
    st.eig2 = {-b / 2.0, -im};
  } else {
    st.kind = ConeStabilityKind::Node;
    const double rt = std::sqrt(st.discriminant) / 2.0;
    st.eig1 = {-b / 2.0 + rt, 0.0};
    st.eig2 = {-b / 2.0 - rt, 0.0};
  }
  return st;
}

// ---------------------------------------------------------------------------
// Multiple warped products and the quasi-Einstein lift
//
// Factors carry their Einstein constants lambda_i (Ricci eigenvalue numerators
// of r_t = diag(lambda_i / f_i^2)), so d_i lambda_i matches the A_i of the
// two-summands normalisation: lambda_1 = d1 - 1 for a round collapsing sphere.
// A finite m appends the virtual factor (d_{r+1} = m, lambda_{r+1} free).

struct MultiFactor {
  double d = 1.0;       // integer >= 1 for geometric factors
  double lambda = 0.0;  // Einstein constant, > 0 for i >= 2
};

struct MultiWarpedParams {
  std::vector<MultiFactor> factors;  // geometric factors i = 1..r
  double m = std::numeric_limits<double>::infinity();
  double lambda_virtual = 0.0;  // lambda_{r+1}, used when m is finite
  double epsilon = 0.0;
  double C = 0.0;  // conservation constant for m = infinity soliton runs

  bool finite_m() const { return std::isfinite(m); }
  std::size_t total_factors() const { return factors.size() + (finite_m() ? 1 : 0); }
  double n() const {
    double s = finite_m() ? m : 0.0;
    for (const auto& f : factors) s += f.d;
    return s;
  }
};

inline void validate(const MultiWarpedParams& mp) {
  if (mp.factors.empty()) throw std::invalid_argument("multi-warped params: no factors");
  if (!(mp.m > 0.0)) throw std::invalid_argument("multi-warped params: m must be positive");
  const auto& f1 = mp.factors.front();
  if (f1.d < 1.0) throw std::invalid_argument("multi-warped params: d1 must be >= 1");
  if (std::abs(f1.d * f1.lambda - f1.d * (f1.d - 1.0)) > 1e-12 * std::max(1.0, f1.d * f1.d))
    throw std::invalid_argument("multi-warped params: first factor needs d1*lambda1 = d1(d1-1)");
  for (std::size_t i = 1; i < mp.factors.size(); ++i) {
    if (mp.factors[i].d < 1.0) throw std::invalid_argument("multi-warped params: d_i must be >= 1");
    if (!(mp.factors[i].lambda > 0.0))
      throw std::invalid_argument("multi-warped params: lambda_i must be positive for i >= 2");
  }
  if (mp.finite_m() && mp.lambda_virtual < 0.0)
    throw std::invalid_argument("multi-warped params: lambda_{r+1} must be nonnegative");
}

// Two-summands system viewed as a multiple warped product (requires A3 = 0).
inline MultiWarpedParams to_multi(const TwoSummandsParams& p) {
  if (p.A3 != 0.0) throw std::invalid_argument("to_multi requires A3 = 0");
  MultiWarpedParams mp;
  mp.factors = {{static_cast<double>(p.d1), p.A1 / p.d1}, {static_cast<double>(p.d2), p.A2 / p.d2}};
  mp.m = std::numeric_limits<double>::infinity();
  mp.epsilon = p.epsilon;
  mp.C = p.C;
  validate(mp);
  return mp;
}

// Three-summand configuration of the quasi-Einstein two-summands system: the
// submersion constant is renamed calA = d2 |A|^2 and the virtual third factor
// carries d3 = m, A3 = d3 * lambda3.
struct QuasiThreeSummands {
  double d1 = 0.0, d2 = 0.0, d3 = 0.0;
  double A1 = 0.0, A2 = 0.0, A3 = 0.0;
  double calA = 0.0;
  double epsilon = 0.0;
  double n() const { return d1 + d2 + d3; }
};

inline QuasiThreeSummands lift_quasi(const TwoSummandsParams& p, double m, double lambda3) {
  if (!(m > 0.0) || !std::isfinite(m))
    throw std::invalid_argument("lift_quasi: m must be positive and finite (use the plain soliton system for m = infinity)");
  QuasiThreeSummands q;
  q.d1 = p.d1;
  q.d2 = p.d2;
  q.d3 = m;
  q.A1 = p.A1;
  q.A2 = p.A2;
  q.A3 = m * lambda3;
  q.calA = p.A3;
  q.epsilon = p.epsilon;
  return q;
}

}  // namespace solitonlab
