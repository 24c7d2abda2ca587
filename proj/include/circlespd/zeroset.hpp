#pragma once

#include <complex>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "circlespd/intlat.hpp"
#include "circlespd/kernel.hpp"

namespace circlespd::zeroset {

using Complex = std::complex<double>;
using intlat::LatticePoint;
using kernel::PointConfig;

/// One period of the double sequence b_{k,l} = sum c_u x_u^k w_u^l for a
/// rational-angle configuration of order q; b depends on (k mod q, l mod q).
struct ExpSumTable {
  std::int64_t order = 1;
  std::vector<Complex> values;  // row-major, (k mod q) * q + (l mod q)

  Complex at(std::int64_t k, std::int64_t l) const {
    return values[static_cast<std::size_t>(intlat::emod(k, order) * order +
                                           intlat::emod(l, order))];
  }
  double maxAbs() const;
};

/// Requires the exact rational form; throws std::invalid_argument otherwise.
ExpSumTable buildTable(const PointConfig& config, std::span<const double> c);
ExpSumTable buildTable(const PointConfig& config, std::span<const Complex> c);

/// Zero set of one period decomposed into translated subgroups of Z^2 (all
/// containing (qZ, qZ)), greedily covered by maximal-stabilizer cosets.
struct ZeroStructure {
  std::int64_t order = 1;
  std::set<LatticePoint> zeros;       // residues in [0,q)^2
  std::vector<intlat::Coset> cosets;  // canonical order, union == zeros exactly

  bool coveredByCosets(LatticePoint p) const;
};

/// Residues with |b| <= tol * max|b| are classified zero (max|b| == 0 means
/// everything); the cover is deterministic and uses at most q^2 cosets.
ZeroStructure detectStructure(const ExpSumTable& table, double tol = 1e-9);

/// All subgroups of Z^2 containing (qZ, qZ), canonically ordered.
std::vector<intlat::Subgroup> subgroupsContaining(std::int64_t q);

/// Contrapositive of the vanishing lemma: for distinct exact points, a nonzero
/// weight vector must leave some b_{k,l} != 0.  When the whole period vanishes
/// the weights are recovered by character orthogonality and must be zero.
/// Returns false only on an implementation bug.
bool verifyNotAllZero(const PointConfig& config, std::span<const double> c);
bool verifyNotAllZero(const PointConfig& config, std::span<const Complex> c);

}  // namespace circlespd::zeroset
