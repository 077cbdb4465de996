#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "gradpde/errors.hpp"

namespace gradpde {

// Dormand-Prince 5(4) with the 4th order continuous extension.
template <std::size_t D>
class DormandPrince {
 public:
  using State = std::array<double, D>;
  using Rhs = std::function<State(double, const State&)>;

  // One accepted step with its dense-output polynomial.
  struct Segment {
    double t0 = 0;
    double h = 0;
    std::array<State, 5> rc{};

    double t1() const { return t0 + h; }
    State eval(double t) const {
      double th = (t - t0) / h, th1 = 1 - th;
      State y;
      for (std::size_t i = 0; i < D; ++i)
        y[i] = rc[0][i] + th * (rc[1][i] + th1 * (rc[2][i] + th * (rc[3][i] + th1 * rc[4][i])));
      return y;
    }
    // d/dt of the dense polynomial.
    State deriv(double t) const {
      double th = (t - t0) / h, th1 = 1 - th;
      State y;
      for (std::size_t i = 0; i < D; ++i) {
        double P = rc[2][i] + th * (rc[3][i] + th1 * rc[4][i]);
        double dP = rc[3][i] + (1 - 2 * th) * rc[4][i];
        double Qv = rc[1][i] + th1 * P;
        double dQ = -P + th1 * dP;
        y[i] = (Qv + th * dQ) / h;
      }
      return y;
    }
  };

  struct Options {
    double rtol = 1e-8;
    double atol = 1e-10;
    double h0 = 0;  // 0 picks an initial step
    double hmax = 0;
    double hmax_rel = 0;  // when > 0, h <= hmax_rel * |t|
    std::size_t max_steps = 5'000'000;
    bool fixed = false;  // constant step h0, no error control
  };

  explicit DormandPrince(Rhs f) : f_(std::move(f)) {}

  // Integrates from (t0, y0) towards t_end.  on_step sees each accepted
  // segment and returns false to stop.
  void integrate(double t0, State y0, double t_end, const Options& opt,
                 const std::function<bool(const Segment&, const State&)>& on_step) const {
    double t = t0;
    State y = y0;
    State k1 = f_(t, y);
    double h = opt.h0 > 0 ? opt.h0 : initial_step(t, y, k1, opt);
    double hmax = opt.hmax > 0 ? opt.hmax : std::abs(t_end - t0);
    std::size_t steps = 0;
    double fac_old = 1e-4;
    while (t < t_end) {
      if (++steps > opt.max_steps) throw StepFailure("step limit reached at t = " + std::to_string(t));
      bool last = false;
      if (!opt.fixed && opt.hmax_rel > 0) h = std::min(h, opt.hmax_rel * std::abs(t));
      if (t + h >= t_end) {
        h = t_end - t;
        last = true;
      }
      State k2, k3, k4, k5, k6, k7, y1, yt;
      for (std::size_t i = 0; i < D; ++i) yt[i] = y[i] + h * a21 * k1[i];
      k2 = f_(t + c2 * h, yt);
      for (std::size_t i = 0; i < D; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
      k3 = f_(t + c3 * h, yt);
      for (std::size_t i = 0; i < D; ++i) yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
      k4 = f_(t + c4 * h, yt);
      for (std::size_t i = 0; i < D; ++i)
        yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
      k5 = f_(t + c5 * h, yt);
      for (std::size_t i = 0; i < D; ++i)
        yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
      k6 = f_(t + h, yt);
      for (std::size_t i = 0; i < D; ++i)
        y1[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
      k7 = f_(t + h, y1);

      double err = 0;
      bool finite = true;
      for (std::size_t i = 0; i < D; ++i) {
        double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y1[i]));
        err += (e / sc) * (e / sc);
        if (!std::isfinite(y1[i])) finite = false;
      }
      err = std::sqrt(err / D);
      if (!finite) err = 1e10;

      if (opt.fixed || err <= 1.0) {
        Segment s;
        s.t0 = t;
        s.h = h;
        for (std::size_t i = 0; i < D; ++i) {
          double ydiff = y1[i] - y[i];
          double bspl = h * k1[i] - ydiff;
          s.rc[0][i] = y[i];
          s.rc[1][i] = ydiff;
          s.rc[2][i] = bspl;
          s.rc[3][i] = ydiff - h * k7[i] - bspl;
          s.rc[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
        }
        t = last ? t_end : t + h;
        y = y1;
        k1 = k7;
        if (!finite) throw StepFailure("non-finite state at t = " + std::to_string(t));
        if (!on_step(s, y)) return;
        if (opt.fixed) continue;
        // Lund-stabilised controller
        double fac = std::pow(std::max(err, 1e-10), 0.17) * std::pow(fac_old, -0.04) / 0.9;
        fac = std::clamp(fac, 0.1, 5.0);
        fac_old = std::max(err, 1e-4);
        h = std::min(h / fac, hmax);
      } else {
        h = h / std::min(5.0, std::pow(err, 0.17) / 0.9);
      }
      if (!(h > 1e-14 * std::max(1.0, std::abs(t)))) throw StepFailure("step size underflow at t = " + std::to_string(t));
    }
  }

 private:
  double initial_step(double t, const State& y, const State& f0, const Options& opt) const {
    double d0 = 0, d1n = 0;
    for (std::size_t i = 0; i < D; ++i) {
      double sc = opt.atol + opt.rtol * std::abs(y[i]);
      d0 += (y[i] / sc) * (y[i] / sc);
      d1n += (f0[i] / sc) * (f0[i] / sc);
    }
    d0 = std::sqrt(d0 / D);
    d1n = std::sqrt(d1n / D);
    double h = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h = std::max(h, 1e-12 * std::max(1.0, std::abs(t)));
    return h;
  }

  Rhs f_;

  static constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;
  static constexpr double a21 = 0.2;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                          a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                          a65 = -5103.0 / 18656.0;
  static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                          a76 = 11.0 / 84.0;
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                          e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
  static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                          d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                          d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
};

}  // namespace gradpde
