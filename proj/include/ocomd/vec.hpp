#ifndef OCOMD_VEC_HPP
#define OCOMD_VEC_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace ocomd {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double norm1(const Vec& a) {
  double s = 0.0;
  for (double ai : a) s += std::fabs(ai);
  return s;
}

inline double norm_inf(const Vec& a) {
  double m = 0.0;
  for (double ai : a) m = std::max(m, std::fabs(ai));
  return m;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec scale(const Vec& a, double c) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

// a + c*b
inline Vec axpy(const Vec& a, double c, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + c * b[i];
  return r;
}

inline Vec zeros(std::size_t n) { return Vec(n, 0.0); }
inline Vec ones(std::size_t n) { return Vec(n, 1.0); }
inline Vec constant(std::size_t n, double c) { return Vec(n, c); }

inline double sign(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

inline double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

inline Vec soft_threshold(const Vec& z, double t) {
  Vec r(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) r[i] = soft_threshold(z[i], t);
  return r;
}

}  // namespace ocomd

#endif
