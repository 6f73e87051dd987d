#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "meshgeo/admissibility.hpp"
#include "meshgeo/experiment.hpp"
#include "meshgeo/metric.hpp"
#include "meshgeo/simplicial.hpp"

namespace meshgeo::testkit {

using Point = Eigen::Vector2d;

inline double cross2(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

// Exhaustive pairwise check: two distinct faces may only meet in the convex
// hull of their common vertices. Candidate points of the intersection are the
// vertices of one face lying in the other and the edge/edge crossings.
class IntersectionOracle {
 public:
  IntersectionOracle(const ConnectivityComplex& complex, const VertexConfiguration& Q) : Q_(Q) {
    for (VertexId v = 0; v < complex.num_vertices(); ++v) faces_.push_back({v});
    for (const Edge& e : complex.edges()) faces_.push_back({e.a, e.b});
    for (const Triangle& t : complex.triangles()) {
      Face f{t[0], t[1], t[2]};
      std::sort(f.begin(), f.end());
      faces_.push_back(f);
    }
    scale_ = 1.0;
    for (Eigen::Index j = 0; j < Q.cols(); ++j) scale_ = std::max(scale_, Q.col(j).cwiseAbs().maxCoeff());
  }

  bool admissible() const {
    for (const Face& f : faces_) {
      if (f.size() == 3 && cross2(P(f[1]) - P(f[0]), P(f[2]) - P(f[0])) == 0.0) return false;
    }
    for (std::size_t i = 0; i < faces_.size(); ++i) {
      for (std::size_t j = i + 1; j < faces_.size(); ++j) {
        if (!pair_ok(faces_[i], faces_[j])) return false;
      }
    }
    return true;
  }

 private:
  Point P(VertexId v) const { return Q_.col(v); }

  static bool subset(const Face& a, const Face& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

  bool point_in_face(const Point& p, const Face& f) const {
    if (f.size() == 1) return p == P(f[0]);
    if (f.size() == 2) {
      const Point a = P(f[0]), b = P(f[1]);
      if (cross2(b - a, p - a) != 0.0) return false;
      const double t = (p - a).dot(b - a) / (b - a).squaredNorm();
      return t >= 0.0 && t <= 1.0;
    }
    const Point a = P(f[0]), b = P(f[1]), c = P(f[2]);
    const double det = cross2(b - a, c - a);
    const double l0 = cross2(b - p, c - p) / det;
    const double l1 = cross2(c - p, a - p) / det;
    const double l2 = cross2(a - p, b - p) / det;
    return l0 >= 0.0 && l1 >= 0.0 && l2 >= 0.0;
  }

  std::vector<std::pair<Point, Point>> segments(const Face& f) const {
    std::vector<std::pair<Point, Point>> s;
    if (f.size() == 2) s.push_back({P(f[0]), P(f[1])});
    if (f.size() == 3) {
      s.push_back({P(f[0]), P(f[1])});
      s.push_back({P(f[1]), P(f[2])});
      s.push_back({P(f[2]), P(f[0])});
    }
    return s;
  }

  bool near_hull(const Point& p, const Face& shared) const {
    const double tol = 1e-9 * scale_;
    if (shared.empty()) return false;
    if (shared.size() == 1) return (p - P(shared[0])).norm() <= tol;
    const Point a = P(shared[0]), b = P(shared[1]);
    const double t = std::clamp((p - a).dot(b - a) / (b - a).squaredNorm(), 0.0, 1.0);
    return (p - (a + t * (b - a))).norm() <= tol;
  }

  bool pair_ok(const Face& s, const Face& t) const {
    if (subset(s, t) || subset(t, s)) return true;
    Face shared;
    std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(shared));
    std::vector<Point> candidates;
    for (VertexId v : s) {
      if (point_in_face(P(v), t)) candidates.push_back(P(v));
    }
    for (VertexId v : t) {
      if (point_in_face(P(v), s)) candidates.push_back(P(v));
    }
    for (const auto& [a, b] : segments(s)) {
      for (const auto& [c, d] : segments(t)) {
        const double den = cross2(b - a, d - c);
        if (den == 0.0) continue;
        const double u = cross2(c - a, d - c) / den;
        const double w = cross2(c - a, b - a) / den;
        if (u >= 0.0 && u <= 1.0 && w >= 0.0 && w <= 1.0) candidates.push_back(a + u * (b - a));
      }
    }
    for (const Point& p : candidates) {
      if (!near_hull(p, shared)) return false;
    }
    return true;
  }

  const VertexConfiguration& Q_;
  std::vector<Face> faces_;
  double scale_ = 1.0;
};

inline bool brute_force_intersection_oracle(const ConnectivityComplex& complex, const VertexConfiguration& Q) {
  return IntersectionOracle(complex, Q).admissible();
}

// Structured grid with randomly chosen diagonals, jittered, then moved by a
// random similarity. Retries until the result lies in M+.
inline Mesh random_grid_mesh(std::mt19937_64& rng, int nx, int ny, double jitter = 0.2) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  for (;;) {
    VertexConfiguration Q(2, nx * ny);
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) Q.col(j * nx + i) << i + jitter * unif(rng), j + jitter * unif(rng);
    }
    std::vector<Triangle> tris;
    for (int j = 0; j + 1 < ny; ++j) {
      for (int i = 0; i + 1 < nx; ++i) {
        const int a = j * nx + i, b = a + 1, c = a + nx + 1, d = a + nx;
        if (coin(rng)) {
          tris.push_back({a, b, c});
          tris.push_back({a, c, d});
        } else {
          tris.push_back({a, b, d});
          tris.push_back({b, c, d});
        }
      }
    }
    const double angle = 3.14159 * unif(rng);
    const double s = 0.5 + 0.5 * (unif(rng) + 1.0);
    Eigen::Matrix2d R;
    R << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    Q = (s * R * Q).colwise() + Eigen::Vector2d(unif(rng), unif(rng));
    Mesh m{ConnectivityComplex(nx * ny, std::move(tris)), std::move(Q)};
    if (is_in_Mplus(m.complex, m.vertices).is_admissible_oriented()) return m;
  }
}

inline Eigen::Matrix2d random_rotation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-3.14159, 3.14159);
  const double a = unif(rng);
  Eigen::Matrix2d R;
  R << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return R;
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

// Central differences of a scalar function, step relative to |x_i|.
template <class F>
Eigen::VectorXd fd_gradient(const F& f, const Eigen::VectorXd& x, double rel = 1e-6) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = rel * std::max(1.0, std::abs(x[i]));
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

// Truncated Taylor expansion: value and first three derivatives.
struct Jet {
  double d[4] = {0, 0, 0, 0};

  Jet() = default;
  Jet(double v) { d[0] = v; }
  static Jet variable(double v) {
    Jet j(v);
    j.d[1] = 1.0;
    return j;
  }
};

inline Jet operator+(const Jet& a, const Jet& b) {
  Jet r;
  for (int k = 0; k < 4; ++k) r.d[k] = a.d[k] + b.d[k];
  return r;
}
inline Jet operator-(const Jet& a, const Jet& b) {
  Jet r;
  for (int k = 0; k < 4; ++k) r.d[k] = a.d[k] - b.d[k];
  return r;
}
inline Jet operator-(const Jet& a) { return Jet(0.0) - a; }
inline Jet operator*(const Jet& f, const Jet& g) {
  Jet r;
  r.d[0] = f.d[0] * g.d[0];
  r.d[1] = f.d[1] * g.d[0] + f.d[0] * g.d[1];
  r.d[2] = f.d[2] * g.d[0] + 2 * f.d[1] * g.d[1] + f.d[0] * g.d[2];
  r.d[3] = f.d[3] * g.d[0] + 3 * f.d[2] * g.d[1] + 3 * f.d[1] * g.d[2] + f.d[0] * g.d[3];
  return r;
}
inline Jet operator/(const Jet& f, const Jet& g) {
  const double g0 = g.d[0], g1 = g.d[1], g2 = g.d[2], g3 = g.d[3];
  Jet inv;
  inv.d[0] = 1.0 / g0;
  inv.d[1] = -g1 / (g0 * g0);
  inv.d[2] = 2 * g1 * g1 / (g0 * g0 * g0) - g2 / (g0 * g0);
  inv.d[3] = -6 * g1 * g1 * g1 / (g0 * g0 * g0 * g0) + 6 * g1 * g2 / (g0 * g0 * g0) - g3 / (g0 * g0);
  return f * inv;
}
inline Jet& operator+=(Jet& a, const Jet& b) { return a = a + b; }
inline Jet& operator-=(Jet& a, const Jet& b) { return a = a - b; }
inline Jet abs(const Jet& a) { return a.d[0] < 0 ? -a : a; }
inline double value_of(const Jet& a) { return a.d[0]; }

// Hexagonal fan of n triangles around vertex 0.
inline Mesh fan_mesh(int n) {
  VertexConfiguration Q(2, n + 1);
  Q.col(0).setZero();
  std::vector<Triangle> tris;
  for (int k = 0; k < n; ++k) {
    const double a = 2.0 * 3.141592653589793 * k / n;
    Q.col(k + 1) << std::cos(a), std::sin(a);
    tris.push_back({0, 1 + k, 1 + (k + 1) % n});
  }
  return Mesh{ConnectivityComplex(n + 1, std::move(tris)), std::move(Q)};
}

}  // namespace meshgeo::testkit
