#pragma once

// Upper half-space model of hyperbolic 3-space.
//
// Points are (z, t) with z complex and t > 0. Isometries are stored as a
// determinant-one 2x2 complex matrix M plus an orientation flag; an
// orientation-reversing isometry acts as z -> M(conj z). Hyperbolic planes are
// stored as normalized generalized-sphere coefficients (A, B, C):
//
//     A (|z|^2 + t^2) + Re(conj(B) z) + C = 0,   |B|^2 - 4 A C = 1,
//
// so that side(p) = (A(|z|^2+t^2) + Re(conj(B) z) + C) / t is sinh of the
// signed hyperbolic distance from p to the plane.

#include <Eigen/Core>
#include <Eigen/SVD>

#include <algorithm>
#include <utility>
#include <vector>

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace hsm {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using Matrix2c = Eigen::Matrix<Complex<Scalar>, 2, 2>;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Scalar>
struct PointH3 {
  Complex<Scalar> z;
  Scalar t = 1;

  PointH3() = default;
  PointH3(Complex<Scalar> z_, Scalar t_) : z(z_), t(t_) {}
};

/// A point of the sphere at infinity: a complex number or the symbol infinity.
template <typename Scalar>
class BoundaryPoint {
 public:
  BoundaryPoint() = default;
  BoundaryPoint(Complex<Scalar> z) : z_(z) {}  // NOLINT(implicit)
  static BoundaryPoint infinity() { return BoundaryPoint(); }

  bool is_infinite() const { return !z_.has_value(); }
  Complex<Scalar> value() const {
    if (!z_) throw GeometryError("value() of the point at infinity");
    return *z_;
  }

  bool approx_equal(const BoundaryPoint& o, Scalar tol) const {
    if (is_infinite() || o.is_infinite()) {
      if (is_infinite() && o.is_infinite()) return true;
      const Scalar mag = std::abs(is_infinite() ? o.value() : value());
      return mag > 1 / tol;
    }
    return std::abs(value() - o.value()) <= tol * std::max<Scalar>(1, std::abs(value()));
  }

 private:
  std::optional<Complex<Scalar>> z_;
};

template <typename Scalar>
Matrix2c<Scalar> normalize_det(const Matrix2c<Scalar>& m) {
  const Complex<Scalar> det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (std::abs(det) == Scalar(0)) throw GeometryError("singular Mobius matrix");
  return m / std::sqrt(det);
}

template <typename Scalar>
class Isometry {
 public:
  using Mat = Matrix2c<Scalar>;

  Isometry() : m_(Mat::Identity()), orientation_(1) {}
  Isometry(const Mat& m, int orientation) : m_(normalize_det<Scalar>(m)), orientation_(orientation) {
    if (orientation != 1 && orientation != -1) throw GeometryError("orientation must be +1 or -1");
  }

  static Isometry identity() { return Isometry(); }

  static Isometry translation(Complex<Scalar> b) {
    Mat m;
    m << Complex<Scalar>(1), b, Complex<Scalar>(0), Complex<Scalar>(1);
    return Isometry(m, 1);
  }

  /// z -> e^{i angle} (z - center) + center, extended to a rotation about the
  /// vertical geodesic over center.
  static Isometry rotation_about_vertical(Complex<Scalar> center, Scalar angle) {
    const Complex<Scalar> h = std::polar<Scalar>(1, angle / 2);
    Mat m;
    m << h, center * (std::conj(h) - h), Complex<Scalar>(0), std::conj(h);
    return Isometry(m, 1);
  }

  /// Inversion in the sphere |z - c|^2 + t^2 = r^2 (orientation reversing).
  static Isometry sphere_inversion(Complex<Scalar> c, Scalar r) {
    Mat m;
    m << c, Complex<Scalar>(r * r) - c * std::conj(c), Complex<Scalar>(1), -std::conj(c);
    return Isometry(m, -1);
  }

  const Mat& matrix() const { return m_; }
  int orientation() const { return orientation_; }

  Isometry operator*(const Isometry& rhs) const {
    const Mat right = orientation_ < 0 ? Mat(rhs.m_.conjugate()) : rhs.m_;
    return Isometry(m_ * right, orientation_ * rhs.orientation_);
  }

  Isometry inverse() const {
    Mat inv;
    inv << m_(1, 1), -m_(0, 1), -m_(1, 0), m_(0, 0);
    if (orientation_ < 0) inv = inv.conjugate().eval();
    return Isometry(inv, orientation_);
  }

  PointH3<Scalar> apply(const PointH3<Scalar>& p) const {
    const Complex<Scalar> z = orientation_ < 0 ? std::conj(p.z) : p.z;
    const Complex<Scalar> a = m_(0, 0), b = m_(0, 1), c = m_(1, 0), d = m_(1, 1);
    const Complex<Scalar> czd = c * z + d;
    const Scalar t2 = p.t * p.t;
    const Scalar den = std::norm(czd) + std::norm(c) * t2;
    return {((a * z + b) * std::conj(czd) + a * std::conj(c) * t2) / den, p.t / den};
  }

  BoundaryPoint<Scalar> apply(const BoundaryPoint<Scalar>& p) const {
    const Complex<Scalar> a = m_(0, 0), b = m_(0, 1), c = m_(1, 0), d = m_(1, 1);
    if (p.is_infinite()) {
      if (c == Complex<Scalar>(0)) return BoundaryPoint<Scalar>::infinity();
      return BoundaryPoint<Scalar>(a / c);
    }
    const Complex<Scalar> z = orientation_ < 0 ? std::conj(p.value()) : p.value();
    const Complex<Scalar> den = c * z + d;
    if (den == Complex<Scalar>(0)) return BoundaryPoint<Scalar>::infinity();
    return BoundaryPoint<Scalar>((a * z + b) / den);
  }

  /// Trace with the sign ambiguity of PSL(2,C) removed (Re >= 0).
  Complex<Scalar> trace() const {
    Complex<Scalar> tr = m_(0, 0) + m_(1, 1);
    if (tr.real() < 0 || (tr.real() == 0 && tr.imag() < 0)) tr = -tr;
    return tr;
  }

  /// Projective equality M ~ +-N with matching orientation.
  bool approx_equal(const Isometry& o, Scalar tol) const {
    if (orientation_ != o.orientation_) return false;
    const Scalar scale = std::max<Scalar>(1, std::max(m_.cwiseAbs().maxCoeff(), o.m_.cwiseAbs().maxCoeff()));
    return (m_ - o.m_).cwiseAbs().maxCoeff() <= tol * scale ||
           (m_ + o.m_).cwiseAbs().maxCoeff() <= tol * scale;
  }

  bool is_identity(Scalar tol) const { return approx_equal(Isometry(), tol); }

 private:
  Mat m_;
  int orientation_;
};

/// Complex translation length of an orientation-preserving isometry:
/// real part is the translation distance along the axis, imaginary part the
/// rotation angle about it.
template <typename Scalar>
Complex<Scalar> complex_length(const Isometry<Scalar>& g) {
  if (g.orientation() < 0) throw GeometryError("complex_length of an orientation-reversing map");
  Complex<Scalar> l = Scalar(2) * std::acosh(g.trace() / Scalar(2));
  if (l.real() < 0) l = -l;
  return l;
}

template <typename Scalar>
Scalar dist(const PointH3<Scalar>& p, const PointH3<Scalar>& q) {
  const Scalar num = std::norm(p.z - q.z) + (p.t - q.t) * (p.t - q.t);
  return std::acosh(1 + num / (2 * p.t * q.t));
}

template <typename Scalar>
class PlaneH3 {
 public:
  PlaneH3() = default;

  /// Vertical half-plane { Re(conj(normal) z) = offset }.
  static PlaneH3 vertical(Complex<Scalar> normal, Scalar offset) {
    const Scalar n = std::abs(normal);
    if (n == Scalar(0)) throw GeometryError("zero normal");
    return PlaneH3(0, normal / n, -offset / n);
  }

  static PlaneH3 hemisphere(Complex<Scalar> center, Scalar radius) {
    if (!(radius > 0)) throw GeometryError("hemisphere radius must be positive");
    return PlaneH3(1 / (2 * radius), -center / radius, (std::norm(center) - radius * radius) / (2 * radius));
  }

  /// Generalized sphere through three points, each finite or ideal.
  static PlaneH3 through(const PointH3<Scalar>* finite, int n_finite, const BoundaryPoint<Scalar>* ideal,
                         int n_ideal);

  bool is_vertical() const { return a_ == Scalar(0); }
  Scalar a() const { return a_; }
  Complex<Scalar> b() const { return b_; }
  Scalar c() const { return c_; }

  Complex<Scalar> center() const { return -b_ / (2 * a_); }
  Scalar radius() const { return 1 / (2 * std::abs(a_)); }
  Complex<Scalar> normal() const { return b_; }
  Scalar offset() const { return -c_; }

  /// sinh of the signed distance to the plane.
  Scalar side(const PointH3<Scalar>& p) const {
    return (a_ * (std::norm(p.z) + p.t * p.t) + (std::conj(b_) * p.z).real() + c_) / p.t;
  }
  Scalar side(const BoundaryPoint<Scalar>& p) const {
    if (p.is_infinite()) return a_;
    const Complex<Scalar> z = p.value();
    return a_ * std::norm(z) + (std::conj(b_) * z).real() + c_;
  }

  PlaneH3 flipped() const { return PlaneH3(-a_, -b_, -c_); }

  Scalar inner(const PlaneH3& o) const { return (std::conj(b_) * o.b_).real() - 2 * (a_ * o.c_ + o.a_ * c_); }

 private:
  PlaneH3(Scalar a, Complex<Scalar> b, Scalar c) : a_(a), b_(b), c_(c) {}
  Scalar a_ = 0;
  Complex<Scalar> b_{1, 0};
  Scalar c_ = 0;
};

template <typename Scalar>
PlaneH3<Scalar> PlaneH3<Scalar>::through(const PointH3<Scalar>* finite, int n_finite,
                                         const BoundaryPoint<Scalar>* ideal, int n_ideal) {
  if (n_finite + n_ideal != 3) throw GeometryError("a plane needs exactly three points");
  Eigen::Matrix<Scalar, 3, 4> rows;
  int r = 0;
  for (int i = 0; i < n_finite; ++i, ++r) {
    const auto& p = finite[i];
    rows.row(r) << std::norm(p.z) + p.t * p.t, p.z.real(), p.z.imag(), 1;
  }
  for (int i = 0; i < n_ideal; ++i, ++r) {
    if (ideal[i].is_infinite()) {
      rows.row(r) << 1, 0, 0, 0;
    } else {
      const auto z = ideal[i].value();
      rows.row(r) << std::norm(z), z.real(), z.imag(), 1;
    }
  }
  // The coefficient vector spans the kernel; take the last right singular vector.
  Eigen::Matrix<Scalar, 4, 4> sq = Eigen::Matrix<Scalar, 4, 4>::Zero();
  sq.template topRows<3>() = rows;
  Eigen::JacobiSVD<Eigen::Matrix<Scalar, 4, 4>> svd(sq, Eigen::ComputeFullV);
  Eigen::Matrix<Scalar, 4, 1> k = svd.matrixV().col(3);
  Scalar a = k(0);
  const Scalar c = k(3);
  const Complex<Scalar> b(k(1), k(2));
  // Snap numerically vertical planes.
  if (std::abs(a) <= Scalar(1e-13) * std::max<Scalar>(std::abs(b), std::abs(c))) a = 0;
  const Scalar norm = std::norm(b) - 4 * a * c;
  if (!(norm > 0)) throw GeometryError("degenerate plane through given points");
  const Scalar s = std::sqrt(norm);
  return PlaneH3(a / s, b / s, c / s);
}

/// Angle between the oriented normals of two intersecting planes.
template <typename Scalar>
Scalar dihedral_angle(const PlaneH3<Scalar>& p1, const PlaneH3<Scalar>& p2) {
  const Scalar c = p1.inner(p2);
  if (std::abs(c) >= 1) throw GeometryError("planes do not intersect in H^3");
  return std::acos(c);
}

/// Interior angle at the common edge of two half-spaces {side > 0}.
template <typename Scalar>
Scalar interior_angle(const PlaneH3<Scalar>& inward1, const PlaneH3<Scalar>& inward2) {
  return std::numbers::pi_v<Scalar> - dihedral_angle(inward1, inward2);
}

template <typename Scalar>
Isometry<Scalar> reflection_in_plane(const PlaneH3<Scalar>& pl) {
  using C = Complex<Scalar>;
  Matrix2c<Scalar> m;
  if (pl.is_vertical()) {
    const C n = pl.normal();
    const Scalar d = pl.offset();
    m << -n * n, Scalar(2) * d * n, C(0), C(1);
    return Isometry<Scalar>(m, -1);
  }
  return Isometry<Scalar>::sphere_inversion(pl.center(), pl.radius());
}

// -- geodesics --------------------------------------------------------------

/// Endpoints (back, forward) of the geodesic through p heading to q.
template <typename Scalar>
std::pair<BoundaryPoint<Scalar>, BoundaryPoint<Scalar>> geodesic_endpoints(const PointH3<Scalar>& p,
                                                                           const PointH3<Scalar>& q) {
  using BP = BoundaryPoint<Scalar>;
  const Complex<Scalar> dz = q.z - p.z;
  const Scalar len = std::abs(dz);
  if (len <= Scalar(1e-14) * std::max<Scalar>(1, std::abs(p.z))) {
    if (q.t > p.t) return {BP(p.z), BP::infinity()};
    return {BP::infinity(), BP(p.z)};
  }
  const Complex<Scalar> u = dz / len;
  // Circle centre o = p.z + x u with |o - p.z|^2 + tp^2 = |o - q.z|^2 + tq^2.
  const Scalar x = (len * len + q.t * q.t - p.t * p.t) / (2 * len);
  const Scalar r = std::sqrt(x * x + p.t * p.t);
  const Complex<Scalar> o = p.z + x * u;
  return {BP(o - r * u), BP(o + r * u)};
}

/// Endpoints (back, forward) of the geodesic from p towards an ideal point.
template <typename Scalar>
std::pair<BoundaryPoint<Scalar>, BoundaryPoint<Scalar>> geodesic_endpoints(const PointH3<Scalar>& p,
                                                                           const BoundaryPoint<Scalar>& target) {
  using BP = BoundaryPoint<Scalar>;
  if (target.is_infinite()) return {BP(p.z), BP::infinity()};
  const Complex<Scalar> dz = p.z - target.value();
  const Scalar len = std::abs(dz);
  if (len == Scalar(0)) return {BP::infinity(), target};
  const Complex<Scalar> u = dz / len;
  const Scalar x = (len * len + p.t * p.t) / (2 * len);
  return {BP(target.value() + 2 * x * u), target};
}

/// Orientation-preserving isometry sending `back` to 0 and `forward` to infinity.
template <typename Scalar>
Isometry<Scalar> axis_normalizer(const BoundaryPoint<Scalar>& back, const BoundaryPoint<Scalar>& forward) {
  using C = Complex<Scalar>;
  Matrix2c<Scalar> m;
  if (forward.is_infinite()) {
    m << C(1), -back.value(), C(0), C(1);
  } else if (back.is_infinite()) {
    m << C(0), C(-1), C(1), -forward.value();
  } else {
    m << C(1), -back.value(), C(1), -forward.value();
  }
  return Isometry<Scalar>(m, 1);
}

/// Point at signed distance s along the oriented geodesic (back -> forward)
/// measured from the foot of p on it (p must lie on the geodesic).
template <typename Scalar>
PointH3<Scalar> along_geodesic(const BoundaryPoint<Scalar>& back, const BoundaryPoint<Scalar>& forward,
                               const PointH3<Scalar>& p, Scalar s) {
  const auto n = axis_normalizer(back, forward);
  const auto q = n.apply(p);
  const Scalar h = std::sqrt(std::norm(q.z) + q.t * q.t);
  return n.inverse().apply(PointH3<Scalar>(Complex<Scalar>(0), h * std::exp(s)));
}

template <typename Scalar>
PointH3<Scalar> geodesic_point(const PointH3<Scalar>& p, const PointH3<Scalar>& q, Scalar s) {
  const auto [back, fwd] = geodesic_endpoints(p, q);
  return along_geodesic(back, fwd, p, s);
}

template <typename Scalar>
PointH3<Scalar> geodesic_point(const PointH3<Scalar>& p, const BoundaryPoint<Scalar>& target, Scalar s) {
  const auto [back, fwd] = geodesic_endpoints(p, target);
  return along_geodesic(back, fwd, p, s);
}

template <typename Scalar>
PointH3<Scalar> midpoint(const PointH3<Scalar>& p, const PointH3<Scalar>& q) {
  return geodesic_point(p, q, dist(p, q) / 2);
}

/// Unit tangent (x, y, t) at p of the geodesic heading to q.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> tangent_toward(const PointH3<Scalar>& p, const BoundaryPoint<Scalar>& back,
                                           const BoundaryPoint<Scalar>& forward) {
  using V3 = Eigen::Matrix<Scalar, 3, 1>;
  if (forward.is_infinite()) return V3(0, 0, 1);
  if (back.is_infinite()) return V3(0, 0, -1);
  const Complex<Scalar> e1 = back.value(), e2 = forward.value();
  const Complex<Scalar> o = (e1 + e2) / Scalar(2);
  const Complex<Scalar> u = (e2 - e1) / std::abs(e2 - e1);
  const Scalar alpha = ((p.z - o) * std::conj(u)).real();
  const Scalar beta = p.t;
  // Radius vector alpha*u + beta*e_t; tangent rotates it towards forward.
  const Complex<Scalar> horiz = beta * u;
  V3 v(horiz.real(), horiz.imag(), -alpha);
  return v.normalized();
}

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> tangent_toward(const PointH3<Scalar>& p, const PointH3<Scalar>& q) {
  const auto [back, fwd] = geodesic_endpoints(p, q);
  return tangent_toward(p, back, fwd);
}

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> tangent_toward(const PointH3<Scalar>& p, const BoundaryPoint<Scalar>& target) {
  const auto [back, fwd] = geodesic_endpoints(p, target);
  return tangent_toward(p, back, fwd);
}

/// Angle at p between the geodesics towards a and towards b (conformal model).
template <typename Scalar, typename A, typename B>
Scalar angle_at(const PointH3<Scalar>& p, const A& a, const B& b) {
  const auto ta = tangent_toward(p, a);
  const auto tb = tangent_toward(p, b);
  return std::acos(std::clamp<Scalar>(ta.dot(tb), -1, 1));
}

using Pointd = PointH3<double>;
using Boundaryd = BoundaryPoint<double>;
using Isometryd = Isometry<double>;
using Planed = PlaneH3<double>;
using Cd = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kGeomTol = 1e-9;
inline const double kLambda = std::sqrt(2.0 / 3.0);
inline const Cd kOmega = std::polar(1.0, kPi / 3);

// -- characteristic tetrahedron ---------------------------------------------

enum class Face { A = 0, B = 1, C = 2, D = 3 };

/// Tetrahedron with an ideal corner at infinity; faces
/// A = (v0, v1, v2), B = (v1, v2, inf), C = (v0, v2, inf), D = (v0, v1, inf).
struct CharacteristicTetrahedron {
  Pointd v0, v1, v2;
  Planed faces[4];  // oriented inward

  static CharacteristicTetrahedron standard();
  double dihedral(Face x, Face y) const {
    return interior_angle(faces[static_cast<int>(x)], faces[static_cast<int>(y)]);
  }
  const Planed& face(Face f) const { return faces[static_cast<int>(f)]; }
};

struct CoxeterGenerators {
  Isometryd ra, rb, rc, rd;
};

CoxeterGenerators coxeter_generators();

struct HoneycombPatch {
  Pointd a0_begin, a0_end;
  std::vector<Pointd> h0;  // six vertices, counterclockwise from v0
  Pointd center;
};

HoneycombPatch honeycomb_patch();

/// Lobachevsky function  -int_0^theta log|2 sin t| dt.
double lobachevsky(double theta);

/// Volume of the characteristic tetrahedron.
double tetrahedron_volume();

}  // namespace hsm
