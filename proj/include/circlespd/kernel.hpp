#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "circlespd/intlat.hpp"
#include "circlespd/support.hpp"

namespace circlespd::kernel {

using intlat::LatticePoint;

/// Finite nonnegative coefficient table a_{k,l}, (k,l) in Z+^2, realizing an
/// isotropic part  K_r = sum a_{k,l} cos(k dtheta) cos(l dphi)  at desk scale
/// (Chebyshev normalization T_k(cos t) = cos kt, so T_k(1) = 1 and the
/// diagonal of every Gram matrix equals the coefficient sum).
class ChebKernel {
 public:
  ChebKernel() = default;
  /// Validates nonnegative indices and coefficients; zero entries are dropped.
  explicit ChebKernel(std::map<LatticePoint, double> coeffs);

  const std::map<LatticePoint, double>& coeffs() const { return coeffs_; }
  std::set<LatticePoint> supportPoints() const;
  bool empty() const { return coeffs_.empty(); }

 private:
  std::map<LatticePoint, double> coeffs_;
};

/// Sum of all coefficients (compensated, (k,l)-lexicographic order).
double schoenbergNorm(const ChebKernel& kernel);

/// sum a_{k,l} cos(k dtheta) cos(l dphi).
double evalKrAngles(const ChebKernel& kernel, double dtheta, double dphi);

/// Check a kernel against a declared support spec: every positive coefficient
/// must be a member, and with a NoTail spec every explicit support point must
/// carry a positive coefficient.  Throws std::invalid_argument on mismatch.
void validateAgainstSupport(const ChebKernel& kernel, const support::SupportSpec& spec);

/// Points on the torus as angle pairs in [0, 2*pi), optionally backed by an
/// exact rational form theta = 2*pi*p/q, phi = 2*pi*r/q with common order q.
struct PointConfig {
  std::vector<std::pair<double, double>> angles;
  struct Exact {
    std::int64_t order = 1;
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  };
  std::optional<Exact> exact;

  std::size_t size() const { return angles.size(); }
};

PointConfig configFromAngles(std::vector<std::pair<double, double>> angles);
PointConfig configFromRational(std::int64_t order,
                               std::vector<std::pair<std::int64_t, std::int64_t>> pairs);
/// Pairs distinct; exact form (when present) reproduces the angles to 1e-12.
void validateConfig(const PointConfig& config);

/// Dense symmetric matrix, row-major.
class GramMatrix {
 public:
  explicit GramMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
  std::size_t size() const { return n_; }
  double& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<double>& data() const { return a_; }

 private:
  std::size_t n_;
  std::vector<double> a_;
};

/// A_{uv} = sum a_{k,l} cos k(theta_u - theta_v) cos l(phi_u - phi_v),
/// computed once per unordered pair; diagonal entries equal schoenbergNorm.
/// Throws on duplicate points.
GramMatrix gram(const ChebKernel& kernel, const PointConfig& config);

/// Samples of a degree-<=M kernel on the uniform (2M+1)^2 angle grid
/// theta_i = 2*pi*i/(2M+1); values row-major with the theta index major.
struct GridSamples {
  std::int64_t degree = 0;  // M
  std::vector<double> values;
};

GridSamples sampleGrid(const ChebKernel& kernel, std::int64_t degree);

class NonPositiveCoefficients : public std::runtime_error {
 public:
  NonPositiveCoefficients(std::string msg, std::vector<std::pair<LatticePoint, double>> bad)
      : std::runtime_error(std::move(msg)), offenders(std::move(bad)) {}
  std::vector<std::pair<LatticePoint, double>> offenders;
};

/// Recover the coefficient table from grid samples by discrete cosine
/// quadrature; exact (up to roundoff) when the data really has degree <= M in
/// each variable — higher frequencies alias silently, so that precondition is
/// the caller's.  Coefficients below -1e-8 raise NonPositiveCoefficients;
/// roundoff-level negatives are clamped to zero.
ChebKernel fitCoefficients(const GridSamples& samples);

}  // namespace circlespd::kernel
