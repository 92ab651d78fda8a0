#pragma once

// Bit-stable serialization of trajectories and search results: CSV for dense
// data, JSON lines for sparse results, a JSON sidecar for events.  Values are
// printed with 17 significant digits and '\n' line endings so identical runs
// produce byte-identical files.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "solitonlab/analysis.hpp"
#include "solitonlab/dynamics.hpp"
#include "solitonlab/ode.hpp"
#include "solitonlab/params.hpp"
#include "solitonlab/systems.hpp"
#include "solitonlab/version.hpp"

namespace solitonlab {

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string params_comment(const TwoSummandsParams& p) {
  std::string s = "# params: d1=" + std::to_string(p.d1) + " d2=" + std::to_string(p.d2) +
                  " A1=" + format_real(p.A1) + " A2=" + format_real(p.A2) +
                  " A3=" + format_real(p.A3) + " eps=" + format_real(p.epsilon) +
                  " C=" + format_real(p.C);
  return s;
}

inline std::string version_comment() { return std::string("# solitonlab ") + kVersion; }

// ---------------------------------------------------------------------------
// Trajectory CSV
//
// Rescaled systems carry the full monitor column set; other systems write the
// columns that are defined for them.

inline void write_rescaled_csv(std::ostream& os, const TwoSummandsParams& p,
                               const Trajectory<RescaledSystem::dim>& traj) {
  using R = RescaledSystem;
  os << version_comment() << "\n" << params_comment(p) << "\n";
  os << "s,X1,X2,Y1,Y2,L,t,u,cons_residual,S1,S2,K,F0,G,omega\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const PhaseState st = R::unpack(traj.y[i]);
    const auto lr = locus_residuals(p, st);
    const auto F = functionals(p, st);
    const double cons = conservation_residual(p, st);
    os << format_real(traj.s[i]) << ',' << format_real(st.X1) << ',' << format_real(st.X2) << ','
       << format_real(st.Y1) << ',' << format_real(st.Y2) << ',' << format_real(st.L) << ','
       << format_real(st.t) << ',' << format_real(st.u) << ',' << format_real(cons) << ','
       << format_real(lr.S1) << ',' << format_real(lr.S2) << ',' << format_real(F.K) << ','
       << format_real(F.F0) << ',' << format_real(F.G) << ',' << format_real(st.Y2 / st.Y1)
       << "\n";
  }
}

inline void write_polynomial_csv(std::ostream& os, const TwoSummandsParams& p,
                                 const Trajectory<PolynomialSystem::dim>& traj) {
  using P = PolynomialSystem;
  os << version_comment() << "\n" << params_comment(p) << "\n";
  os << "s,X1,X2,Y1,Y2,L,W,t,u,omega\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& y = traj.y[i];
    os << format_real(traj.s[i]) << ',' << format_real(y[P::iX1]) << ',' << format_real(y[P::iX2])
       << ',' << format_real(y[P::iY1]) << ',' << format_real(y[P::iY2]) << ','
       << format_real(y[P::iL]) << ',' << format_real(y[P::iW]) << ',' << format_real(y[P::iT])
       << ',' << format_real(y[P::iU]) << ',' << format_real(y[P::iY2] / y[P::iY1]) << "\n";
  }
}

inline void write_hat_csv(std::ostream& os, const TwoSummandsParams& p,
                          const Trajectory<HatSystem::dim>& traj) {
  using H = HatSystem;
  os << version_comment() << "\n" << params_comment(p) << "\n";
  os << "s,X1,X2,Y1,Y2,L,cons_residual,omega\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const HatState st = H::unpack(traj.y[i]);
    os << format_real(traj.s[i]) << ',' << format_real(st.X1) << ',' << format_real(st.X2) << ','
       << format_real(st.Y1) << ',' << format_real(st.Y2) << ',' << format_real(st.L) << ','
       << format_real(hat_conservation_residual(p, st)) << ',' << format_real(st.Y2 / st.Y1)
       << "\n";
  }
}

inline void write_profile_csv(std::ostream& os, const TwoSummandsParams& p,
                              const Trajectory<ProfileSystem::dim>& traj, double t0) {
  using F = ProfileSystem;
  os << version_comment() << "\n" << params_comment(p) << "\n";
  os << "s,f1,df1,f2,df2,trL,cons_residual,omega\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const ProfileState st = F::unpack(traj.y[i]);
    const double trL = p.d1 * st.df1 / st.f1 + p.d2 * st.df2 / st.f2;
    os << format_real(t0 + traj.s[i]) << ',' << format_real(st.f1) << ',' << format_real(st.df1)
       << ',' << format_real(st.f2) << ',' << format_real(st.df2) << ',' << format_real(trL)
       << ',' << format_real(profile_conservation_residual(p, st)) << ','
       << format_real(st.f1 / st.f2) << "\n";
  }
}

inline void write_planar_csv(std::ostream& os, const TwoSummandsParams& p,
                             const Trajectory<PlanarSystem::dim>& traj) {
  using P = PlanarSystem;
  os << version_comment() << "\n" << params_comment(p) << "\n";
  os << "s,X1,X2,Y1,Y2,L,omega\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& y = traj.y[i];
    double X2 = 0.0, Y2 = 0.0;
    try {
      const auto d = rhs_planar(p, y[P::iX1], y[P::iY1], p.epsilon * y[P::iL] * y[P::iL]);
      X2 = d.X2;
      Y2 = d.Y2sq > 0.0 ? std::sqrt(d.Y2sq) : 0.0;
    } catch (const std::domain_error&) {
      X2 = (1.0 - p.d1 * y[P::iX1]) / p.d2;
    }
    os << format_real(traj.s[i]) << ',' << format_real(y[P::iX1]) << ',' << format_real(X2) << ','
       << format_real(y[P::iY1]) << ',' << format_real(Y2) << ',' << format_real(y[P::iL]) << ','
       << format_real(Y2 / y[P::iY1]) << "\n";
  }
}

template <std::size_t K>
void write_multi_csv(std::ostream& os, const MultiWarpedParams& mp,
                     const Trajectory<MultiSystem<K>::dim>& traj) {
  os << version_comment() << "\n";
  os << "# params: multi r=" << mp.factors.size() << " m=" << format_real(mp.m)
     << " lambda_virtual=" << format_real(mp.lambda_virtual) << " eps=" << format_real(mp.epsilon)
     << " C=" << format_real(mp.C) << "\n";
  const MultiSystem<K> sys{mp};
  os << "s";
  for (std::size_t i = 0; i < K; ++i) os << ",X" << i + 1;
  for (std::size_t i = 0; i < K; ++i) os << ",Y" << i + 1;
  os << ",L,t,u,cons_residual\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const MultiState st = sys.unpack(traj.y[i]);
    os << format_real(traj.s[i]);
    for (double v : st.X) os << ',' << format_real(v);
    for (double v : st.Y) os << ',' << format_real(v);
    os << ',' << format_real(st.L) << ',' << format_real(st.t) << ',' << format_real(st.u) << ','
       << format_real(multi_conservation_residual(mp, st)) << "\n";
  }
}

// ---------------------------------------------------------------------------
// Event sidecar (JSON) and search results (JSON lines)

template <std::size_t N>
nlohmann::json events_json(const Trajectory<N>& traj) {
  nlohmann::json out;
  out["version"] = kVersion;
  out["termination"] = to_string(traj.termination);
  out["max_invariant"] = traj.max_invariant;
  out["max_raw_drift"] = traj.max_raw_drift;
  auto& list = out["events"] = nlohmann::json::array();
  for (const auto& e : traj.events) {
    nlohmann::json ev;
    ev["kind"] = to_string(e.kind);
    ev["s"] = e.s;
    ev["state"] = std::vector<double>(e.state.begin(), e.state.end());
    list.push_back(ev);
  }
  return out;
}

inline void write_symmetric_jsonl(std::ostream& os, const TwoSummandsParams& p,
                                  const std::vector<double>& roots) {
  os << version_comment() << "\n" << params_comment(p) << "\n";
  for (double fbar : roots) {
    nlohmann::json row;
    row["fbar"] = fbar;
    os << row.dump() << "\n";
  }
}

inline void write_matches_jsonl(std::ostream& os, int d1, int d2,
                                const std::vector<MatchResult>& matches) {
  os << version_comment() << "\n";
  os << "# params: sphere-match d1=" << d1 << " d2=" << d2 << " A1=" << d1 * (d1 - 1)
     << " A2=" << d2 * (d2 - 1) << " A3=0 eps=" << format_real(-2.0 * (d1 + d2)) << "\n";
  for (const auto& m : matches) {
    nlohmann::json row;
    row["fbar"] = m.fbar;
    row["Fbar"] = m.Fbar;
    row["t0"] = m.t0;
    row["t1"] = m.t1;
    row["residual"] = m.residual;
    os << row.dump() << "\n";
  }
}

inline void write_asymptotics_jsonl(std::ostream& os, const TwoSummandsParams& p,
                                    const AsymptoticsReport& rep) {
  os << version_comment() << "\n" << params_comment(p) << "\n";
  for (const auto& c : rep.claims) {
    nlohmann::json row;
    row["regime"] = to_string(rep.regime);
    row["claim"] = c.name;
    row["observed"] = c.observed;
    row["target"] = c.target;
    row["pass"] = c.pass;
    os << row.dump() << "\n";
  }
  nlohmann::json omega;
  omega["regime"] = to_string(rep.regime);
  omega["claim"] = "Y2/Y1 at horizon (measured, not asserted)";
  omega["observed"] = rep.omega_end;
  os << omega.dump() << "\n";
}

}  // namespace solitonlab
