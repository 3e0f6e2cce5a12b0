#pragma once

#include <array>
#include <cstddef>

namespace heisflow {

namespace detail {

template <std::size_t N>
constexpr std::array<double, N> axpy(const std::array<double, N>& y, double a,
                                     const std::array<double, N>& k) {
  std::array<double, N> r = y;
  for (std::size_t i = 0; i < N; ++i) r[i] += a * k[i];
  return r;
}

constexpr double axpy(double y, double a, double k) { return y + a * k; }

}  // namespace detail

/// One classical fourth-order Runge–Kutta step of y' = rhs(u, y).
/// State is a double or a std::array<double, N>.
template <class State, class Rhs>
State rk4_step(const Rhs& rhs, double u, const State& y, double h) {
  using detail::axpy;
  const State k1 = rhs(u, y);
  const State k2 = rhs(u + 0.5 * h, axpy(y, 0.5 * h, k1));
  const State k3 = rhs(u + 0.5 * h, axpy(y, 0.5 * h, k2));
  const State k4 = rhs(u + h, axpy(y, h, k3));
  State r = y;
  r = axpy(r, h / 6.0, k1);
  r = axpy(r, h / 3.0, k2);
  r = axpy(r, h / 3.0, k3);
  r = axpy(r, h / 6.0, k4);
  return r;
}

}  // namespace heisflow
