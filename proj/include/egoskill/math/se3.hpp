#ifndef EGOSKILL_MATH_SE3_HPP
#define EGOSKILL_MATH_SE3_HPP

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>

#include "egoskill/errors.hpp"

namespace egoskill {

/// Tolerance used for orthonormality and composition checks throughout.
inline constexpr double kRigidTol = 1e-9;

/// Threshold on |beta - pi/2| below which Euler extraction treats the
/// rotation as gimbal-locked.
inline constexpr double kGimbalLockTol = 1e-6;

/// Wraps an angle to the half-open interval [-pi, pi).
///
/// Throws NonFiniteInput for NaN or infinite input.
template <typename Scalar>
Scalar wrapAngle(Scalar theta) {
  if (!std::isfinite(theta)) {
    throw NonFiniteInput("wrapAngle: non-finite angle");
  }
  const Scalar two_pi = Scalar(2) * Scalar(EIGEN_PI);
  Scalar wrapped = theta - two_pi * std::floor((theta + Scalar(EIGEN_PI)) / two_pi);
  // floor rounding can leave the result on the open boundary
  if (wrapped >= Scalar(EIGEN_PI)) wrapped -= two_pi;
  if (wrapped < -Scalar(EIGEN_PI)) wrapped += two_pi;
  return wrapped;
}

/// A 6-DOF pose: translation in meters plus an Euler orientation triple
/// (alpha, beta, gamma) in radians, each stored wrapped to [-pi, pi).
///
/// Euler convention used everywhere in this project: intrinsic Z-Y-X.
/// The rotation matrix is R = Rz(alpha) * Ry(beta) * Rx(gamma); read in the
/// fixed frame, gamma (about x) is applied first, then beta (about y), then
/// alpha (about z).
template <typename Scalar>
struct Pose6 {
  using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
  using Vector6 = Eigen::Matrix<Scalar, 6, 1>;

  Vector3 translation = Vector3::Zero();
  Vector3 euler = Vector3::Zero();  // (alpha, beta, gamma), wrapped

  Pose6() = default;

  template <typename DerivedT, typename DerivedE>
  Pose6(const Eigen::MatrixBase<DerivedT>& t, const Eigen::MatrixBase<DerivedE>& angles)
      : translation(t),
        euler(wrapAngle<Scalar>(angles[0]), wrapAngle<Scalar>(angles[1]),
              wrapAngle<Scalar>(angles[2])) {}

  static Pose6 identity() { return Pose6(); }

  /// (x, y, z, alpha, beta, gamma) as one vector.
  Vector6 asVector() const {
    Vector6 v;
    v << translation, euler;
    return v;
  }

  static Pose6 fromVector(const Vector6& v) {
    return Pose6(v.template head<3>(), v.template tail<3>());
  }
};

/// Rigid transform with an explicit orthonormal 3x3 rotation block.
template <typename Scalar>
struct RigidTransform {
  using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
  using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;
  using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

  Matrix3 rotation = Matrix3::Identity();
  Vector3 translation = Vector3::Zero();

  static RigidTransform identity() { return RigidTransform{}; }

  /// Applies the transform to a point.
  template <typename Derived>
  Vector3 operator*(const Eigen::MatrixBase<Derived>& p) const {
    return rotation * p + translation;
  }

  Matrix4 homogeneous() const {
    Matrix4 m = Matrix4::Identity();
    m.template topLeftCorner<3, 3>() = rotation;
    m.template block<3, 1>(0, 3) = translation;
    return m;
  }
};

using Pose6d = Pose6<double>;
using RigidTransformd = RigidTransform<double>;

/// True when m is orthonormal with determinant +1 within tol.
template <typename Derived>
bool isRotation(const Eigen::MatrixBase<Derived>& m,
                typename Derived::Scalar tol = kRigidTol) {
  using Scalar = typename Derived::Scalar;
  using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
  const Matrix3 r = m;
  return (r.transpose() * r - Matrix3::Identity()).cwiseAbs().maxCoeff() <= tol &&
         std::abs(r.determinant() - Scalar(1)) <= tol;
}

/// Composition: the result applies b first, then a (result = a ∘ b).
template <typename Scalar>
RigidTransform<Scalar> compose(const RigidTransform<Scalar>& a,
                               const RigidTransform<Scalar>& b) {
  return {a.rotation * b.rotation, a.rotation * b.translation + a.translation};
}

template <typename Scalar>
RigidTransform<Scalar> invert(const RigidTransform<Scalar>& p) {
  Eigen::Matrix<Scalar, 3, 3> rt = p.rotation.transpose();
  return {rt, -(rt * p.translation)};
}

/// Change of frame: the target expressed in the reference frame,
/// invert(reference) ∘ target.
template <typename Scalar>
RigidTransform<Scalar> relativePose(const RigidTransform<Scalar>& reference,
                                    const RigidTransform<Scalar>& target) {
  return compose(invert(reference), target);
}

/// Rotation matrix for the intrinsic Z-Y-X triple (alpha, beta, gamma):
/// R = Rz(alpha) * Ry(beta) * Rx(gamma).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 3, 3> eulerToMatrix(
    const Eigen::MatrixBase<Derived>& angles) {
  using Scalar = typename Derived::Scalar;
  using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
  return (Eigen::AngleAxis<Scalar>(angles[0], Vector3::UnitZ()) *
          Eigen::AngleAxis<Scalar>(angles[1], Vector3::UnitY()) *
          Eigen::AngleAxis<Scalar>(angles[2], Vector3::UnitX()))
      .toRotationMatrix();
}

/// Recovers the Z-Y-X Euler triple of a rotation matrix, each angle wrapped
/// to [-pi, pi).
///
/// At gimbal lock (|beta| within kGimbalLockTol of pi/2) gamma is set to 0
/// and the remaining free angle is folded into alpha, so the output triple
/// is canonical. Throws NonOrthonormalInput when m fails the rigidity check.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 3, 1> matrixToEuler(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
  if (!isRotation(m)) {
    throw NonOrthonormalInput("matrixToEuler: input is not a rotation matrix");
  }
  const Scalar sin_beta =
      std::clamp(-Scalar(m(2, 0)), Scalar(-1), Scalar(1));
  const Scalar beta = std::asin(sin_beta);
  if (Scalar(EIGEN_PI) / 2 - std::abs(beta) < Scalar(kGimbalLockTol)) {
    // cos(beta) ~ 0: alpha and gamma act about the same axis
    const Scalar alpha = std::atan2(-Scalar(m(0, 1)), Scalar(m(1, 1)));
    return Vector3(wrapAngle(alpha), wrapAngle(beta), Scalar(0));
  }
  const Scalar alpha = std::atan2(Scalar(m(1, 0)), Scalar(m(0, 0)));
  const Scalar gamma = std::atan2(Scalar(m(2, 1)), Scalar(m(2, 2)));
  return Vector3(wrapAngle(alpha), wrapAngle(beta), wrapAngle(gamma));
}

template <typename Scalar>
RigidTransform<Scalar> toTransform(const Pose6<Scalar>& pose) {
  return {eulerToMatrix(pose.euler), pose.translation};
}

template <typename Scalar>
Pose6<Scalar> toPose(const RigidTransform<Scalar>& t) {
  return Pose6<Scalar>(t.translation, matrixToEuler(t.rotation));
}

/// Geodesic angle of a rotation matrix, in [0, pi]. Computed as
/// atan2(|sin|, cos) from the skew part and the trace, which stays accurate
/// near 0 and pi where plain acos of the trace loses digits.
template <typename Derived>
typename Derived::Scalar rotationAngle(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Matrix<Scalar, 3, 1> skew(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0),
                                         m(1, 0) - m(0, 1));
  return std::atan2(skew.norm() / 2, (Scalar(m.trace()) - 1) / 2);
}

/// Geodesic angle between two rotations.
template <typename Scalar>
Scalar rotationDistance(const Eigen::Matrix<Scalar, 3, 3>& a,
                        const Eigen::Matrix<Scalar, 3, 3>& b) {
  return rotationAngle((a.transpose() * b).eval());
}

/// Constant-angular-velocity blend between two rotations; s in [0, 1].
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> slerpRotation(const Eigen::Matrix<Scalar, 3, 3>& a,
                                          const Eigen::Matrix<Scalar, 3, 3>& b,
                                          Scalar s) {
  const Eigen::AngleAxis<Scalar> delta(Eigen::Matrix<Scalar, 3, 3>(a.transpose() * b));
  return a * Eigen::AngleAxis<Scalar>(s * delta.angle(), delta.axis());
}

/// Rotation about an axis through a pivot point, as a rigid transform.
template <typename Scalar>
RigidTransform<Scalar> rotationAboutLine(const Eigen::Matrix<Scalar, 3, 1>& axis,
                                         const Eigen::Matrix<Scalar, 3, 1>& pivot,
                                         Scalar angle) {
  const Eigen::Matrix<Scalar, 3, 3> r =
      Eigen::AngleAxis<Scalar>(angle, axis.normalized()).toRotationMatrix();
  return {r, pivot - r * pivot};
}

}  // namespace egoskill

#endif  // EGOSKILL_MATH_SE3_HPP
