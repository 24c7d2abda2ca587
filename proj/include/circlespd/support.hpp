#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "circlespd/intlat.hpp"

namespace circlespd::support {

using intlat::LatticePoint;

enum class Mode { RealSymmetrized, ComplexDirect };

struct NoTail {};
/// All (k,l) with k >= minIndex and l >= minIndex.
struct MinTail {
  std::int64_t minIndex = 0;
};
/// All (k,l) whose residue pair mod `modulus` lies in `residues`.
struct PeriodicTail {
  std::int64_t modulus = 1;
  std::set<LatticePoint> residues;
};
using TailLaw = std::variant<NoTail, MinTail, PeriodicTail>;

/// Structured description of the support set of a kernel's coefficient table:
/// a finite explicit part, a finite removed part, and a tail law.  In
/// RealSymmetrized mode the stored points live in Z+^2 and membership over Z^2
/// goes through coordinate-wise absolute values (the symmetrized view); in
/// ComplexDirect mode points live in Z^2 and the view is the set itself.
class SupportSpec {
 public:
  SupportSpec(Mode mode, std::set<LatticePoint> explicitPts, std::set<LatticePoint> removed,
              TailLaw tail);

  Mode mode() const { return mode_; }
  const std::set<LatticePoint>& explicitPoints() const { return explicit_; }
  const std::set<LatticePoint>& removedPoints() const { return removed_; }
  const TailLaw& tail() const { return tail_; }

  /// (k,l) in spec iff ((k,l) in explicit or tail law) and (k,l) not removed.
  bool member(LatticePoint p) const;
  /// Membership of the symmetrized view over Z^2.
  bool inSymmetrizedView(LatticePoint p) const;

 private:
  Mode mode_;
  std::set<LatticePoint> explicit_;
  std::set<LatticePoint> removed_;
  TailLaw tail_;
};

enum class SpdOutcome { StrictlyPD, NotStrictlyPD, UnknownUpTo };

struct SpdVerdict {
  SpdOutcome outcome = SpdOutcome::UnknownUpTo;
  std::optional<intlat::Coset> witness;  // set iff NotStrictlyPD
  std::int64_t bound = 0;                // set iff UnknownUpTo
};

/// Exact decision of strict positive definiteness from the support alone.
/// NotStrictlyPD verdicts carry a translated square lattice, verified disjoint
/// from the symmetrized view by exact residue/finite arithmetic before return.
SpdVerdict decideSpd(const SupportSpec& spec);

/// Independent bounded oracle: scans translated rectangular lattices with
/// moduli up to maxModulus (square cosets first within each max-modulus
/// shell), looks for window intersections, and certifies misses exactly.
/// Returns UnknownUpTo(maxModulus) when its certification rules cannot settle
/// the spec within the bound.  Requires window >= 4*maxModulus*max(m, N, 1).
SpdVerdict decideSpdBounded(const SupportSpec& spec, std::int64_t maxModulus,
                            std::int64_t window);

/// Exact check that a coset misses the symmetrized view entirely (not just on
/// a window).  Only NoTail and Periodic tails can certify a miss.
bool verifyWitnessDisjoint(const SupportSpec& spec, const intlat::Coset& coset);

/// First `count` points of (symmetrized view) ∩ coset with nonnegative
/// coordinates, in increasing max-norm order, then lexicographic.  Requires a
/// rank-2 coset group; throws std::runtime_error if enumeration exceeds
/// normCap (a decision bug, not a math failure).
std::vector<LatticePoint> intersectionSampler(const SupportSpec& spec,
                                              const intlat::Coset& coset, int count,
                                              std::int64_t normCap = 10000);

// --- One-dimensional circle analogue -------------------------------------

struct NoTail1D {};
struct MinTail1D {
  std::int64_t minIndex = 0;
};
struct PeriodicTail1D {
  std::int64_t modulus = 1;
  std::set<std::int64_t> residues;
};
using TailLaw1D = std::variant<NoTail1D, MinTail1D, PeriodicTail1D>;

class SupportSpec1D {
 public:
  SupportSpec1D(Mode mode, std::set<std::int64_t> explicitPts, std::set<std::int64_t> removed,
                TailLaw1D tail);
  Mode mode() const { return mode_; }
  bool member(std::int64_t k) const;
  bool inSymmetrizedView(std::int64_t k) const;
  const TailLaw1D& tail() const { return tail_; }
  const std::set<std::int64_t>& explicitPoints() const { return explicit_; }

 private:
  Mode mode_;
  std::set<std::int64_t> explicit_;
  std::set<std::int64_t> removed_;
  TailLaw1D tail_;
};

/// Arithmetic progression offset + step*Z, offset reduced into [0, step).
struct Progression {
  std::int64_t offset = 0;
  std::int64_t step = 1;
  friend auto operator<=>(const Progression&, const Progression&) = default;
};

struct SpdVerdict1D {
  SpdOutcome outcome = SpdOutcome::UnknownUpTo;
  std::optional<Progression> witness;
};

/// S^1 criterion: strictly PD iff {k : |k| in J} meets every progression.
SpdVerdict1D decideSpdCircle(const SupportSpec1D& spec);

}  // namespace circlespd::support
