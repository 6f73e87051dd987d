#pragma once

#include <cmath>

#include "meshgeo/dual.hpp"

namespace meshgeo::reg {

// One-sided profile shared by both branches of g^mu: s is the gap to the
// interval (s >= 0).
template <class T>
T interval_poly(const T& s, double mu) {
  const double m3 = mu * mu * mu, m4 = m3 * mu, m5 = m4 * mu;
  return s * s * s * s * (20.0 * m3 + s * (-48.0 * m4 + s * (32.0 * m5)));
}

template <class T>
T interval_profile(const T& s, double mu) {
  if (value_of(s) >= 0.5 / mu) return s - 0.25 / mu;
  return interval_poly(s, mu);
}

template <class T>
T interval_profile_d1(const T& s, double mu) {
  if (value_of(s) >= 0.5 / mu) return T(1.0);
  const double m3 = mu * mu * mu, m4 = m3 * mu, m5 = m4 * mu;
  return s * s * s * (80.0 * m3 + s * (-240.0 * m4 + s * (192.0 * m5)));
}

// Polynomial part of h^mu on 0 <= a <= 1/(2 mu).
template <class T>
T huber_poly(const T& a, double mu) {
  const double m2 = mu * mu, m3 = m2 * mu, m4 = m3 * mu, m5 = m4 * mu;
  return a * a * (0.5 * mu + a * (-4.0 * m2 + a * (32.0 * m3 + a * (-64.0 * m4 + a * (40.0 * m5)))));
}

template <class T>
T huber_poly_d1(const T& a, double mu) {
  const double m2 = mu * mu, m3 = m2 * mu, m4 = m3 * mu, m5 = m4 * mu;
  return a * (mu + a * (-12.0 * m2 + a * (128.0 * m3 + a * (-320.0 * m4 + a * (240.0 * m5)))));
}

template <class T>
T h_mu(const T& x, double mu) {
  using std::abs;
  T a = abs(x);
  if (value_of(a) >= 0.5 / mu) return a - 0.25 / mu;
  return huber_poly(a, mu);
}

template <class T>
T h_mu_d1(const T& x, double mu) {
  using std::abs;
  T a = abs(x);
  double sign = value_of(x) < 0.0 ? -1.0 : 1.0;
  if (value_of(a) >= 0.5 / mu) return T(sign);
  return sign * huber_poly_d1(a, mu);
}

// g^mu(x; [y, z]) in terms of the two signed gaps u = y - x and w = x - z.
template <class T>
T g_mu_gaps(const T& u, const T& w, double mu) {
  if (value_of(u) > 0.0) return interval_profile(u, mu);
  if (value_of(w) > 0.0) return interval_profile(w, mu);
  return T(0.0);
}

// C^3 cut-off: 0 below lo, identity above hi, degree-7 blend in between.
struct CutoffWindow {
  double lo = 0.0;
  double hi = 0.0;
  bool enabled() const { return hi > 0.0; }
};

template <class T>
T chi_blend(const T& s, const CutoffWindow& c) {
  const double w = c.hi - c.lo;
  T t = (s - c.lo) / w;
  T t4 = t * t * t * t;
  T smooth = t4 * (35.0 + t * (-84.0 + t * (70.0 + t * (-20.0))));
  T ramp = t4 * (-15.0 + t * (39.0 + t * (-34.0 + t * 10.0)));
  return c.hi * smooth + w * ramp;
}

template <class T>
T chi(const T& s, const CutoffWindow& c) {
  if (!c.enabled() || value_of(s) >= c.hi) return s;
  if (value_of(s) <= c.lo) return T(0.0);
  return chi_blend(s, c);
}

template <class T>
T chi_d1(const T& s, const CutoffWindow& c) {
  if (!c.enabled() || value_of(s) >= c.hi) return T(1.0);
  if (value_of(s) <= c.lo) return T(0.0);
  const double w = c.hi - c.lo;
  T t = (s - c.lo) / w;
  T t3 = t * t * t;
  T smooth = t3 * (140.0 + t * (-420.0 + t * (420.0 + t * (-140.0))));
  T ramp = t3 * (-60.0 + t * (195.0 + t * (-204.0 + t * 70.0)));
  return (c.hi * smooth) / w + ramp;
}

}  // namespace meshgeo::reg
