#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "circlespd/intlat.hpp"
#include "circlespd/kernel.hpp"

namespace circlespd::certify {

using Complex = std::complex<double>;
using intlat::LatticePoint;
using kernel::ChebKernel;
using kernel::GramMatrix;
using kernel::PointConfig;

/// The two exponential sums (sum c_u e^{ik theta_u} e^{+il phi_u},
///                            sum c_u e^{ik theta_u} e^{-il phi_u}).
/// Exact configs evaluate through root-of-unity residues.
std::pair<Complex, Complex> expSums(const PointConfig& config, std::span<const double> c,
                                    std::int64_t k, std::int64_t l);

/// c^T A c for a symmetric matrix.
double quadraticForm(const GramMatrix& a, std::span<const double> c);

struct NullEquivalenceReport {
  bool equivalent = false;
  double quadraticFormValue = 0.0;
  double maxSupportSum = 0.0;
  double formThreshold = 0.0;
  double sumThreshold = 0.0;
  explicit operator bool() const { return equivalent; }
};

/// Two-route check of the null equivalence: the quadratic form
/// c^T gram(kernel, config) c is (near) zero iff both exponential sums (near)
/// vanish at every support index of the kernel.  Thresholds scale as
/// tol * (sum|c|)^2 * schoenbergNorm for the form and sqrt(tol) * sum|c| for
/// the sums.  A false result signals an implementation bug.
NullEquivalenceReport checkNullEquivalence(const ChebKernel& kernel, const PointConfig& config,
                                           std::span<const double> c, double tol);

/// A point configuration with challenge weights.
struct WitnessConfig {
  PointConfig config;
  std::vector<double> weights;
};

/// Roots-of-unity null configuration for a translated rectangular lattice
/// (j,j') + (aZ, bZ): the ab points (2 pi u/a, 2 pi v/b) with weights
/// Re(e^{i 2 pi u j / a} e^{i 2 pi v j' / b});  a == 1 or b == 1 degenerates
/// to the single-circle construction.  Requires (a,b) != (1,1), 0 <= j < a,
/// 0 <= j' < b.  Distinctness and a nonvanishing weight are checked loudly.
WitnessConfig juruConfig(std::int64_t a, std::int64_t b, std::int64_t j, std::int64_t jp);

/// Null configuration for a translated general lattice
/// (j,j') + (a,b)Z + (0,d)Z in canonical form (0 <= b < d, ad > 1):
/// ad points with angles theta_{uv} = 2 pi (u - v b/d)/a, phi_v = 2 pi v/d and
/// weights Re(e^{-i2pi u j/a} e^{-i2pi v j'/d} e^{i2pi v j b/(ad)}).
WitnessConfig generalLatticeConfig(std::int64_t a, std::int64_t b, std::int64_t d,
                                   std::int64_t j, std::int64_t jp);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending;
/// converges to off-diagonal norm <= 1e-13 * ||A||_F, at most 100 sweeps.
std::vector<double> symmetricEigenvalues(const GramMatrix& a);
double minEigen(const GramMatrix& a);

struct NullWitness {
  PointConfig config;
  std::vector<double> weights;
  double residual = 0.0;
  intlat::Coset avoided{{0, 0}, intlat::Subgroup::trivial()};
};

struct PositivityReport {
  double minEigenvalue = 0.0;
  int trials = 0;
  PointConfig worstConfig;
};

/// Random-configuration spectral sampling: `trials` draws of nPoints distinct
/// points with pairwise separation >= minSeparation (separation is the max of
/// the two circle distances), deterministic per seed; any injected configs
/// are appended as extra trials.  trials == 0 with no injected configs yields
/// a NaN sentinel.
PositivityReport verifySpdEmpirical(const ChebKernel& kernel, int nPoints, int trials,
                                    std::uint64_t seed, double minSeparation,
                                    std::span<const PointConfig> injected = {});

// --- Complex circle (finite-support Hermitian check) ----------------------

/// Coefficient table over Z^2 for the complex-circle setting.
class ComplexKernel {
 public:
  ComplexKernel() = default;
  explicit ComplexKernel(std::map<LatticePoint, double> coeffs);
  const std::map<LatticePoint, double>& coeffs() const { return coeffs_; }

 private:
  std::map<LatticePoint, double> coeffs_;
};

/// sum c_u e^{ik theta_u} e^{il phi_u} with complex weights.
Complex expSumSingle(const PointConfig& config, std::span<const Complex> c, std::int64_t k,
                     std::int64_t l);

/// Hermitian form conj(c)^T A c with A_{uv} = sum a_{k,l} e^{ik(theta_v - theta_u)}
/// e^{il(phi_v - phi_u)}; real up to roundoff.
double hermitianForm(const ComplexKernel& kernel, const PointConfig& config,
                     std::span<const Complex> c);

/// Hermitian analogue of checkNullEquivalence with the single sum.
NullEquivalenceReport checkNullEquivalenceComplex(const ComplexKernel& kernel,
                                                  const PointConfig& config,
                                                  std::span<const Complex> c, double tol);

}  // namespace circlespd::certify
