#pragma once

// Embedded Dormand-Prince 5(4) integrator with dense output, sign-change event
// location by bisection on the interpolant, blow-up / convergence detection and
// per-step invariant monitoring.  All systems here are autonomous.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <deque>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace solitonlab {

template <std::size_t N>
using State = std::array<double, N>;

struct IntegrationControls {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 1.0;
  double s_max = 100.0;
  double norm_cap = 1e8;            // blow-up guard on the max norm
  double convergence_window = 10.0; // trailing window length in s
  double convergence_tol = 1e-6;    // <= 0 disables convergence detection
  double sample_ds = 0.0;           // 0 records every accepted step
};

inline void validate(const IntegrationControls& c) {
  if (!(c.rel_tol >= 1e-14) || !(c.abs_tol >= 1e-14))
    throw std::invalid_argument("integration controls: tolerances must be >= 1e-14");
  if (!(c.max_step > 0.0) || !(c.norm_cap > 0.0))
    throw std::invalid_argument("integration controls: max_step and norm_cap must be positive");
}

enum class EventKind {
  X2Zero,
  OmegaCritical,
  MaxVolumeOrbit,
  F2Critical,
  Collapse,
  BlowUp,
  Converged,
  DomainExit,
  StepUnderflow,
  HorizonReached,
};

inline const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::X2Zero: return "X2Zero";
    case EventKind::OmegaCritical: return "OmegaCritical";
    case EventKind::MaxVolumeOrbit: return "MaxVolumeOrbit";
    case EventKind::F2Critical: return "F2Critical";
    case EventKind::Collapse: return "Collapse";
    case EventKind::BlowUp: return "BlowUp";
    case EventKind::Converged: return "Converged";
    case EventKind::DomainExit: return "DomainExit";
    case EventKind::StepUnderflow: return "StepUnderflow";
    case EventKind::HorizonReached: return "HorizonReached";
  }
  return "?";
}

template <std::size_t N>
struct EventSpec {
  EventKind kind = EventKind::OmegaCritical;
  bool terminal = false;
  std::function<double(const State<N>&)> fn;
};

template <std::size_t N>
struct Event {
  EventKind kind = EventKind::HorizonReached;
  double s = 0.0;
  State<N> state{};
};

template <std::size_t N>
struct Trajectory {
  std::vector<double> s;
  std::vector<State<N>> y;
  std::vector<Event<N>> events;
  EventKind termination = EventKind::HorizonReached;
  std::vector<double> invariant;      // per-sample invariant residual, if monitored
  double max_invariant = 0.0;         // worst |residual| over recorded samples
  double max_raw_drift = 0.0;         // worst pre-stabilization |residual| per accepted step

  std::size_t size() const { return s.size(); }
  const State<N>& front() const { return y.front(); }
  const State<N>& back() const { return y.back(); }
  double s_end() const { return s.back(); }

  const Event<N>* first_event(EventKind kind) const {
    for (const auto& e : events)
      if (e.kind == kind) return &e;
    return nullptr;
  }
};

namespace detail {

// Dense-output coefficients for one accepted step; evaluate with theta in [0, 1].
template <std::size_t N>
struct DenseStep {
  double s0 = 0.0, h = 0.0;
  State<N> r1{}, r2{}, r3{}, r4{}, r5{};

  State<N> eval(double theta) const {
    State<N> out;
    const double th1 = 1.0 - theta;
    for (std::size_t i = 0; i < N; ++i)
      out[i] = r1[i] + theta * (r2[i] + th1 * (r3[i] + theta * (r4[i] + th1 * r5[i])));
    return out;
  }
};

template <std::size_t N, class Rhs>
class Dopri5 {
 public:
  Dopri5(Rhs rhs, const IntegrationControls& c) : rhs_(std::move(rhs)), c_(c) {}

  // One adaptive step from (s, y) with suggested size h_try; returns accepted
  // step size and fills y_new, dense coefficients.  k1 must hold rhs(y).
  bool step(double s, const State<N>& y, const State<N>& k1, double h, State<N>& y_new,
            State<N>& k_new, DenseStep<N>& dense, double& err) {
    State<N> k2, k3, k4, k5, k6, yt;
    auto stage = [&](const State<N>& base, State<N>& out, double hh,
                     std::initializer_list<std::pair<const State<N>*, double>> terms) {
      for (std::size_t i = 0; i < N; ++i) {
        double acc = 0.0;
        for (const auto& [k, a] : terms) acc += a * (*k)[i];
        out[i] = base[i] + hh * acc;
      }
    };
    stage(y, yt, h, {{&k1, 1.0 / 5}});
    rhs_(yt, k2);
    stage(y, yt, h, {{&k1, 3.0 / 40}, {&k2, 9.0 / 40}});
    rhs_(yt, k3);
    stage(y, yt, h, {{&k1, 44.0 / 45}, {&k2, -56.0 / 15}, {&k3, 32.0 / 9}});
    rhs_(yt, k4);
    stage(y, yt, h,
          {{&k1, 19372.0 / 6561}, {&k2, -25360.0 / 2187}, {&k3, 64448.0 / 6561},
           {&k4, -212.0 / 729}});
    rhs_(yt, k5);
    stage(y, yt, h,
          {{&k1, 9017.0 / 3168}, {&k2, -355.0 / 33}, {&k3, 46732.0 / 5247},
           {&k4, 49.0 / 176}, {&k5, -5103.0 / 18656}});
    rhs_(yt, k6);
    stage(y, y_new, h,
          {{&k1, 35.0 / 384}, {&k3, 500.0 / 1113}, {&k4, 125.0 / 192},
           {&k5, -2187.0 / 6784}, {&k6, 11.0 / 84}});
    rhs_(y_new, k_new);  // FSAL
    // embedded error estimate
    err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h * (71.0 / 57600 * k1[i] - 71.0 / 16695 * k3[i] + 71.0 / 1920 * k4[i] -
                            17253.0 / 339200 * k5[i] + 22.0 / 525 * k6[i] - 1.0 / 40 * k_new[i]);
      const double sc = c_.abs_tol + c_.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / N);
    if (!std::isfinite(err)) err = 2.0;  // force rejection on overflow
    if (err > 1.0) return false;

    dense.s0 = s;
    dense.h = h;
    for (std::size_t i = 0; i < N; ++i) {
      const double dy = y_new[i] - y[i];
      dense.r1[i] = y[i];
      dense.r2[i] = dy;
      dense.r3[i] = h * k1[i] - dy;
      dense.r4[i] = dy - h * k_new[i] - dense.r3[i];
      dense.r5[i] = h * (-12715105075.0 / 11282082432 * k1[i] +
                         87487479700.0 / 32700410799 * k3[i] -
                         10690763975.0 / 1880347072 * k4[i] +
                         701980252875.0 / 199316789632 * k5[i] -
                         1453857185.0 / 822651844 * k6[i] + 69997945.0 / 29380423 * k_new[i]);
    }
    return true;
  }

  // Standard initial step-size heuristic.
  double initial_step(const State<N>& y, const State<N>& f) const {
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = c_.abs_tol + c_.rel_tol * std::abs(y[i]);
      dnf += (f[i] / sc) * (f[i] / sc);
      dny += (y[i] / sc) * (y[i] / sc);
    }
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
    return std::min(h, c_.max_step);
  }

 private:
  Rhs rhs_;
  IntegrationControls c_;
};

}  // namespace detail

// Integrates sys.rhs from y0 over s in [0, s_max].  Registered events are
// root-located on the dense output to 1e-10 in s; the first terminal event
// (or blow-up, convergence, step underflow, horizon) stops the run.
template <class System, std::size_t N = System::dim>
Trajectory<N> integrate(const System& sys, const State<N>& y0, const IntegrationControls& c,
                        const std::vector<EventSpec<N>>& events = {}) {
  validate(c);
  constexpr bool kHasInvariant = requires(const System& s, const State<N>& y) {
    { s.invariant(y) } -> std::convertible_to<double>;
  };
  constexpr bool kHasStabilize = requires(const System& s, State<N>& y) { s.stabilize(y); };
  constexpr std::size_t kDyn = System::dyn_dim;

  auto rhs = [&sys](const State<N>& y, State<N>& dy) { sys.rhs(y, dy); };
  detail::Dopri5<N, decltype(rhs)> stepper(rhs, c);

  Trajectory<N> traj;
  auto record = [&](double s, const State<N>& y) {
    if (!traj.s.empty() && !(s > traj.s.back())) return;  // keep samples strictly increasing
    traj.s.push_back(s);
    traj.y.push_back(y);
    if constexpr (kHasInvariant) {
      const double r = sys.invariant(y);
      traj.invariant.push_back(r);
      traj.max_invariant = std::max(traj.max_invariant, std::abs(r));
    }
  };

  double s = 0.0;
  State<N> y = y0, k1, y_new, k_new;
  rhs(y, k1);
  record(s, y);

  std::vector<double> g_prev(events.size());
  for (std::size_t j = 0; j < events.size(); ++j) g_prev[j] = events[j].fn(y);

  std::deque<std::pair<double, State<N>>> window;
  window.emplace_back(s, y);

  double h = stepper.initial_step(y, k1);
  double next_sample = c.sample_ds > 0.0 ? c.sample_ds : 0.0;
  detail::DenseStep<N> dense;

  while (s < c.s_max) {
    h = std::min({h, c.max_step, c.s_max - s});
    if (!(s + h > s)) {
      // step-size collapse with an already large state is a finite-horizon
      // blow-up the norm guard has not caught yet
      double norm = 0.0;
      for (std::size_t i = 0; i < N; ++i) norm = std::max(norm, std::abs(y[i]));
      const EventKind kind =
          norm > std::sqrt(c.norm_cap) ? EventKind::BlowUp : EventKind::StepUnderflow;
      traj.termination = kind;
      traj.events.push_back({kind, s, y});
      return traj;
    }
    double err = 0.0;
    if (!stepper.step(s, y, k1, h, y_new, k_new, dense, err)) {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      continue;
    }
    const double s_new = s + h;

    if constexpr (kHasStabilize) {
      if constexpr (kHasInvariant)
        traj.max_raw_drift = std::max(traj.max_raw_drift, std::abs(sys.invariant(y_new)));
      sys.stabilize(y_new);
      rhs(y_new, k_new);  // refresh the FSAL derivative on the projected state
    }

    // locate sign-change events on the dense interpolant
    std::vector<std::pair<Event<N>, bool>> step_events;  // (event, terminal)
    for (std::size_t j = 0; j < events.size(); ++j) {
      const double g1 = events[j].fn(y_new);
      const double g0 = g_prev[j];
      if ((g0 < 0.0 && g1 >= 0.0) || (g0 > 0.0 && g1 <= 0.0)) {
        double lo = 0.0, hi = 1.0, glo = g0;
        while ((hi - lo) * h > 1e-10) {
          const double mid = 0.5 * (lo + hi);
          const double gm = events[j].fn(dense.eval(mid));
          if ((glo < 0.0) == (gm < 0.0)) {
            lo = mid;
            glo = gm;
          } else {
            hi = mid;
          }
        }
        const double theta = 0.5 * (lo + hi);
        step_events.push_back(
            {Event<N>{events[j].kind, s + theta * h, dense.eval(theta)}, events[j].terminal});
      }
      g_prev[j] = g1;
    }
    std::sort(step_events.begin(), step_events.end(),
              [](const auto& a, const auto& b) { return a.first.s < b.first.s; });
    for (const auto& [ev, terminal] : step_events) {
      traj.events.push_back(ev);
      if (terminal) {
        record(ev.s, ev.state);
        traj.termination = ev.kind;
        return traj;
      }
    }

    // dense sample grid
    if (c.sample_ds > 0.0) {
      while (next_sample <= s_new) {
        if (next_sample > s) record(next_sample, dense.eval((next_sample - s) / h));
        next_sample += c.sample_ds;
      }
    } else {
      record(s_new, y_new);
    }

    s = s_new;
    y = y_new;
    k1 = k_new;

    // blow-up guard
    double norm = 0.0;
    for (std::size_t i = 0; i < N; ++i) norm = std::max(norm, std::abs(y[i]));
    if (norm > c.norm_cap) {
      record(s, y);
      traj.events.push_back({EventKind::BlowUp, s, y});
      traj.termination = EventKind::BlowUp;
      return traj;
    }

    // trailing-window convergence on the dynamical prefix
    if (c.convergence_tol > 0.0) {
      window.emplace_back(s, y);
      while (window.size() > 2 && window.front().first < s - c.convergence_window)
        window.pop_front();
      if (window.size() >= 10 && window.front().first <= s - 0.999 * c.convergence_window) {
        std::array<double, kDyn> mean{};
        for (const auto& [ws, wy] : window)
          for (std::size_t i = 0; i < kDyn; ++i) mean[i] += wy[i];
        for (auto& mval : mean) mval /= window.size();
        double dev = 0.0;
        for (const auto& [ws, wy] : window)
          for (std::size_t i = 0; i < kDyn; ++i) dev = std::max(dev, std::abs(wy[i] - mean[i]));
        if (dev < c.convergence_tol) {
          record(s, y);
          traj.events.push_back({EventKind::Converged, s, y});
          traj.termination = EventKind::Converged;
          return traj;
        }
      }
    }

    h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10), -0.2)));
  }
  record(s, y);
  traj.termination = EventKind::HorizonReached;
  return traj;
}

}  // namespace solitonlab
