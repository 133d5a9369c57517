#pragma once

// Dormand-Prince 5(4) with the standard 4th-order continuous extension
// (Hairer, Norsett & Wanner, "Solving ODEs I", routine DOPRI5).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include "tlpulse/errors.hpp"

namespace tlpulse::ode {

struct Tolerance {
  double relative = 1e-9;
  double absolute = 1e-12;
};

template <std::size_t N>
using State = std::array<double, N>;

// One accepted step with its interpolant, valid for t in [t0, t0 + h].
template <std::size_t N>
class DenseStep {
 public:
  double t_begin() const noexcept { return t0_; }
  double t_end() const noexcept { return t0_ + h_; }
  const State<N>& y_begin() const noexcept { return r1_; }
  const State<N>& y_end() const noexcept { return y1_; }
  const State<N>& f_begin() const noexcept { return f0_; }
  const State<N>& f_end() const noexcept { return f1_; }

  State<N> at(double t) const {
    const double theta = (t - t0_) / h_;
    const double theta1 = 1.0 - theta;
    State<N> y;
    for (std::size_t i = 0; i < N; ++i) {
      y[i] = r1_[i] +
             theta * (r2_[i] + theta1 * (r3_[i] + theta * (r4_[i] + theta1 * r5_[i])));
    }
    return y;
  }

 private:
  template <std::size_t M>
  friend class DormandPrince;

  double t0_ = 0.0;
  double h_ = 0.0;
  State<N> r1_{}, r2_{}, r3_{}, r4_{}, r5_{};
  State<N> y1_{};
  State<N> f0_{}, f1_{};
};

template <std::size_t N>
class DormandPrince {
 public:
  explicit DormandPrince(Tolerance tolerance = {}) : tol_(tolerance) {}

  // Integrates y' = rhs(t, y) from t_begin to t_end (t_end > t_begin) and
  // returns y(t_end). `observer(const DenseStep<N>&)` is called after every
  // accepted step. The last step lands exactly on t_end.
  //
  // Throws IntegrationFailure on step-size underflow, a non-finite state or
  // when max_steps is exceeded.
  template <class Rhs, class Observer>
  State<N> integrate(Rhs&& rhs, double t_begin, double t_end, State<N> y,
                     Observer&& observer, std::size_t max_steps = 50'000'000) const {
    double t = t_begin;
    const double span = t_end - t_begin;
    State<N> f = rhs(t, y);
    double h = initial_step(rhs, t, y, f, span);
    bool last_rejected = false;

    DenseStep<N> step;
    std::array<State<N>, 7> k;
    std::size_t steps = 0;

    while (t < t_end) {
      if (++steps > max_steps) throw IntegrationFailure("step budget exhausted", t);
      const double eps = 16.0 * std::numeric_limits<double>::epsilon() *
                         std::max(std::abs(t), std::abs(t_end));
      if (h < eps) throw IntegrationFailure("step size underflow", t);
      bool final_step = false;
      if (t + h >= t_end - eps) {
        h = t_end - t;
        final_step = true;
      }

      k[0] = f;
      State<N> y_new;
      stage(rhs, t, h, y, k, y_new);

      double err = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        const double e = h * (kE1 * k[0][i] + kE3 * k[2][i] + kE4 * k[3][i] +
                              kE5 * k[4][i] + kE6 * k[5][i] + kE7 * k[6][i]);
        const double sk =
            tol_.absolute + tol_.relative * std::max(std::abs(y[i]), std::abs(y_new[i]));
        err += (e / sk) * (e / sk);
      }
      err = std::sqrt(err / static_cast<double>(N));
      if (!std::isfinite(err)) throw IntegrationFailure("non-finite state", t);

      if (err <= 1.0) {
        fill_dense(step, t, h, y, y_new, k);
        t = final_step ? t_end : t + h;
        y = y_new;
        f = k[6];
        observer(static_cast<const DenseStep<N>&>(step));
        double factor = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        factor = std::clamp(factor, 0.2, 5.0);
        if (last_rejected) factor = std::min(factor, 1.0);
        h *= factor;
        last_rejected = false;
      } else {
        h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        last_rejected = true;
      }
    }
    return y;
  }

 private:
  // Butcher tableau.
  static constexpr double kC2 = 1.0 / 5, kC3 = 3.0 / 10, kC4 = 4.0 / 5, kC5 = 8.0 / 9;
  static constexpr double kA21 = 1.0 / 5;
  static constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
  static constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
  static constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                          kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
  static constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33,
                          kA63 = 46732.0 / 5247, kA64 = 49.0 / 176,
                          kA65 = -5103.0 / 18656;
  static constexpr double kA71 = 35.0 / 384, kA73 = 500.0 / 1113, kA74 = 125.0 / 192,
                          kA75 = -2187.0 / 6784, kA76 = 11.0 / 84;
  // Difference between the 5th and embedded 4th order weights.
  static constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                          kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;
  // Continuous extension.
  static constexpr double kD1 = -12715105075.0 / 11282082432.0,
                          kD3 = 87487479700.0 / 32700410799.0,
                          kD4 = -10690763975.0 / 1880347072.0,
                          kD5 = 701980252875.0 / 199316789632.0,
                          kD6 = -1453857185.0 / 822651844.0,
                          kD7 = 69997945.0 / 29380423.0;

  template <class Rhs>
  static void stage(Rhs& rhs, double t, double h, const State<N>& y,
                    std::array<State<N>, 7>& k, State<N>& y_new) {
    State<N> tmp;
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * kA21 * k[0][i];
    k[1] = rhs(t + kC2 * h, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (kA31 * k[0][i] + kA32 * k[1][i]);
    k[2] = rhs(t + kC3 * h, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (kA41 * k[0][i] + kA42 * k[1][i] + kA43 * k[2][i]);
    k[3] = rhs(t + kC4 * h, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (kA51 * k[0][i] + kA52 * k[1][i] + kA53 * k[2][i] +
                           kA54 * k[3][i]);
    k[4] = rhs(t + kC5 * h, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (kA61 * k[0][i] + kA62 * k[1][i] + kA63 * k[2][i] +
                           kA64 * k[3][i] + kA65 * k[4][i]);
    k[5] = rhs(t + h, tmp);
    for (std::size_t i = 0; i < N; ++i)
      y_new[i] = y[i] + h * (kA71 * k[0][i] + kA73 * k[2][i] + kA74 * k[3][i] +
                             kA75 * k[4][i] + kA76 * k[5][i]);
    k[6] = rhs(t + h, y_new);
  }

  static void fill_dense(DenseStep<N>& step, double t, double h, const State<N>& y,
                         const State<N>& y_new, const std::array<State<N>, 7>& k) {
    step.t0_ = t;
    step.h_ = h;
    step.y1_ = y_new;
    step.f0_ = k[0];
    step.f1_ = k[6];
    for (std::size_t i = 0; i < N; ++i) {
      const double dy = y_new[i] - y[i];
      const double bspl = h * k[0][i] - dy;
      step.r1_[i] = y[i];
      step.r2_[i] = dy;
      step.r3_[i] = bspl;
      step.r4_[i] = dy - h * k[6][i] - bspl;
      step.r5_[i] = h * (kD1 * k[0][i] + kD3 * k[2][i] + kD4 * k[3][i] +
                         kD5 * k[4][i] + kD6 * k[5][i] + kD7 * k[6][i]);
    }
  }

  template <class Rhs>
  double initial_step(Rhs& rhs, double t, const State<N>& y, const State<N>& f,
                      double span) const {
    auto scaled_norm = [&](const State<N>& v) {
      double sum = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        const double sk = tol_.absolute + tol_.relative * std::abs(y[i]);
        sum += (v[i] / sk) * (v[i] / sk);
      }
      return std::sqrt(sum / static_cast<double>(N));
    };
    const double d0 = scaled_norm(y);
    const double d1 = scaled_norm(f);
    double h0 = (d0 < 1e-10 || d1 < 1e-10) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    State<N> y1;
    for (std::size_t i = 0; i < N; ++i) y1[i] = y[i] + h0 * f[i];
    State<N> df = rhs(t + h0, y1);
    for (std::size_t i = 0; i < N; ++i) df[i] -= f[i];
    const double d2 = scaled_norm(df) / h0;
    const double dmax = std::max(d1, d2);
    const double h1 =
        dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
    return std::min({100.0 * h0, h1, span});
  }

  Tolerance tol_;
};

}  // namespace tlpulse::ode
