#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace circlespd::intlat {

struct LatticePoint {
  std::int64_t k = 0;
  std::int64_t l = 0;
  friend constexpr auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

constexpr LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a.k + b.k, a.l + b.l}; }
constexpr LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a.k - b.k, a.l - b.l}; }

/// Subgroup of Z^2 in canonical form, one of four shapes:
///   Trivial               {(0,0)}
///   Vertical(b)           (0,b)Z                 b > 0
///   Rank1(a,b)            (a,b)Z                 a > 0
///   Full2(a,b,d)          (a,b)Z + (0,d)Z        a,d > 0, 0 <= b < d
/// Full2 membership: (k,l) in S  iff  a | k  and  d | (l - (k/a)*b).
class Subgroup {
 public:
  enum class Kind { Trivial, Vertical, Rank1, Full2 };

  static Subgroup trivial();
  static Subgroup vertical(std::int64_t b);
  static Subgroup rank1(std::int64_t a, std::int64_t b);
  static Subgroup full2(std::int64_t a, std::int64_t b, std::int64_t d);

  Kind kind() const { return kind_; }
  int rank() const;
  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t d() const { return d_; }

  bool contains(LatticePoint p) const;
  /// Index in Z^2; nullopt when infinite (rank < 2).
  std::optional<std::int64_t> index() const;
  std::vector<LatticePoint> generators() const;

  friend auto operator<=>(const Subgroup&, const Subgroup&) = default;

 private:
  Subgroup(Kind kind, std::int64_t a, std::int64_t b, std::int64_t d)
      : kind_(kind), a_(a), b_(b), d_(d) {}
  Kind kind_ = Kind::Trivial;
  std::int64_t a_ = 0, b_ = 0, d_ = 0;
};

/// Translate (offset + group) of a subgroup, normalized on construction:
/// for Full2 the offset satisfies 0 <= j < a and 0 <= j' < d, for Rank1 the
/// first coordinate is reduced into [0,a), for Vertical the second into [0,b).
/// Two cosets are equal as sets iff their normalized forms compare equal.
class Coset {
 public:
  Coset(LatticePoint offset, Subgroup group);

  const LatticePoint& offset() const { return offset_; }
  const Subgroup& group() const { return group_; }
  bool contains(LatticePoint p) const { return group_.contains(p - offset_); }

  friend auto operator<=>(const Coset&, const Coset&) = default;

 private:
  LatticePoint offset_;
  Subgroup group_;
};

/// Canonical subgroup generated by an arbitrary (possibly empty or redundant)
/// generator list; Hermite-style column reduction.
Subgroup canonicalize(std::span<const LatticePoint> generators);

/// Exact set intersection of two cosets; nullopt when disjoint.
std::optional<Coset> cosetIntersect(const Coset& c1, const Coset& c2);

/// Decompose a rank-2 lattice L = (a,b)Z + (0,d)Z into its ad cosets of the
/// square lattice (adZ, adZ), offsets taken from L restricted to [0,ad)^2.
/// Throws std::invalid_argument for rank < 2 input.
std::vector<Coset> decomposeToSquare(const Subgroup& lattice);

/// Smallest m > 0 with (mZ, mZ) contained in the rank-2 subgroup; divides the index.
std::int64_t squareContainmentModulus(const Subgroup& lattice);

/// Constructs a translated square lattice anchor + (mZ, mZ) disjoint from all
/// given coset components and from all finiteExtra points.  Precondition: the
/// anchor lies outside all of them (throws std::invalid_argument otherwise).
/// Rank <= 1 components are first boosted to rank 2 by adjoining a small
/// direction whose line avoids the anchor-shifted coset; m is then the lcm of
/// the components' square containment moduli, multiplied up to step over the
/// finite extras.  The result is re-verified disjoint before returning.
Coset avoidingRectLattice(std::span<const Coset> components,
                          std::span<const LatticePoint> finiteExtra,
                          LatticePoint anchor);

// Exact integer helpers shared across modules.
std::int64_t emod(std::int64_t x, std::int64_t m);      // x mod m in [0,m), m > 0
std::int64_t floordiv(std::int64_t x, std::int64_t m);  // floor(x/m), m > 0
std::int64_t lcm64(std::int64_t a, std::int64_t b);

struct Egcd {
  std::int64_t g, x, y;  // g = gcd(a,b) >= 0 and g = a*x + b*y
};
Egcd egcd(std::int64_t a, std::int64_t b);

/// Solutions of x == r1 (mod m1), x == r2 (mod m2) as (r, lcm(m1,m2)); nullopt
/// when incompatible.  m1, m2 > 0.
std::optional<std::pair<std::int64_t, std::int64_t>> crt(std::int64_t r1, std::int64_t m1,
                                                         std::int64_t r2, std::int64_t m2);

/// Solutions of a*t == c (mod m) as (t0, step), t0 in [0,step); nullopt when
/// unsolvable.  m > 0.
std::optional<std::pair<std::int64_t, std::int64_t>> linearCongruence(std::int64_t a,
                                                                      std::int64_t c,
                                                                      std::int64_t m);

}  // namespace circlespd::intlat
