#include "circlespd/intlat.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace circlespd::intlat {

std::int64_t emod(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

std::int64_t floordiv(std::int64_t x, std::int64_t m) {
  std::int64_t q = x / m;
  if ((x % m) != 0 && ((x < 0) != (m < 0))) --q;
  return q;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return std::abs(a / std::gcd(a, b) * b);
}

Egcd egcd(std::int64_t a, std::int64_t b) {
  if (a == 0 && b == 0) return {0, 0, 0};
  std::int64_t r0 = a, r1 = b;
  std::int64_t x0 = 1, x1 = 0, y0 = 0, y1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    std::int64_t x2 = x0 - q * x1;
    std::int64_t y2 = y0 - q * y1;
    r0 = r1; r1 = r2;
    x0 = x1; x1 = x2;
    y0 = y1; y1 = y2;
  }
  if (r0 < 0) { r0 = -r0; x0 = -x0; y0 = -y0; }
  return {r0, x0, y0};
}

std::optional<std::pair<std::int64_t, std::int64_t>> linearCongruence(std::int64_t a,
                                                                      std::int64_t c,
                                                                      std::int64_t m) {
  if (m <= 0) throw std::invalid_argument("linearCongruence: modulus must be positive");
  std::int64_t g = std::gcd(std::abs(a), m);
  if (g == 0) {  // a == 0 mod anything: solvable iff c == 0 mod m
    return emod(c, m) == 0 ? std::optional{std::pair<std::int64_t, std::int64_t>{0, 1}}
                           : std::nullopt;
  }
  if (emod(c, g) != 0) return std::nullopt;
  std::int64_t step = m / g;
  auto e = egcd(emod(a, m), m);  // e.g == g, e.x inverse factor
  std::int64_t t0 = emod(e.x % step * ((c / g) % step), step);
  return std::pair{t0, step};
}

std::optional<std::pair<std::int64_t, std::int64_t>> crt(std::int64_t r1, std::int64_t m1,
                                                         std::int64_t r2, std::int64_t m2) {
  if (m1 <= 0 || m2 <= 0) throw std::invalid_argument("crt: moduli must be positive");
  // x = r1 + m1*t with m1*t == r2 - r1 (mod m2)
  auto t = linearCongruence(m1, r2 - r1, m2);
  if (!t) return std::nullopt;
  std::int64_t mod = lcm64(m1, m2);
  std::int64_t x = emod(r1 + m1 * t->first, mod);
  return std::pair{x, mod};
}

// ---------------------------------------------------------------------------
// Subgroup

Subgroup Subgroup::trivial() { return {Kind::Trivial, 0, 0, 0}; }

Subgroup Subgroup::vertical(std::int64_t b) {
  if (b == 0) return trivial();
  return {Kind::Vertical, 0, std::abs(b), 0};
}

Subgroup Subgroup::rank1(std::int64_t a, std::int64_t b) {
  if (a == 0) return vertical(b);
  if (a < 0) { a = -a; b = -b; }
  return {Kind::Rank1, a, b, 0};
}

Subgroup Subgroup::full2(std::int64_t a, std::int64_t b, std::int64_t d) {
  if (a <= 0 || d <= 0) throw std::invalid_argument("full2: a and d must be positive");
  return {Kind::Full2, a, emod(b, d), d};
}

int Subgroup::rank() const {
  switch (kind_) {
    case Kind::Trivial: return 0;
    case Kind::Vertical:
    case Kind::Rank1: return 1;
    case Kind::Full2: return 2;
  }
  return 0;
}

bool Subgroup::contains(LatticePoint p) const {
  switch (kind_) {
    case Kind::Trivial: return p.k == 0 && p.l == 0;
    case Kind::Vertical: return p.k == 0 && p.l % b_ == 0;
    case Kind::Rank1: return p.k % a_ == 0 && p.l == (p.k / a_) * b_;
    case Kind::Full2: return p.k % a_ == 0 && (p.l - (p.k / a_) * b_) % d_ == 0;
  }
  return false;
}

std::optional<std::int64_t> Subgroup::index() const {
  if (kind_ == Kind::Full2) return a_ * d_;
  return std::nullopt;
}

std::vector<LatticePoint> Subgroup::generators() const {
  switch (kind_) {
    case Kind::Trivial: return {};
    case Kind::Vertical: return {{0, b_}};
    case Kind::Rank1: return {{a_, b_}};
    case Kind::Full2: return {{a_, b_}, {0, d_}};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Coset normalization

Coset::Coset(LatticePoint offset, Subgroup group) : offset_(offset), group_(std::move(group)) {
  switch (group_.kind()) {
    case Subgroup::Kind::Trivial:
      break;
    case Subgroup::Kind::Vertical:
      offset_.l = emod(offset_.l, group_.b());
      break;
    case Subgroup::Kind::Rank1: {
      std::int64_t p = floordiv(offset_.k, group_.a());
      offset_.k -= p * group_.a();
      offset_.l -= p * group_.b();
      break;
    }
    case Subgroup::Kind::Full2: {
      std::int64_t p = floordiv(offset_.k, group_.a());
      offset_.k -= p * group_.a();
      offset_.l = emod(offset_.l - p * group_.b(), group_.d());
      break;
    }
  }
}

// ---------------------------------------------------------------------------
// canonicalize: fold generators into Hermite form (A,B)Z + (0,D)Z.

Subgroup canonicalize(std::span<const LatticePoint> generators) {
  std::int64_t A = 0, B = 0, D = 0;
  for (const auto& g : generators) {
    if (g.k == 0) {
      D = std::gcd(D, std::abs(g.l));
      continue;
    }
    if (A == 0) {
      A = std::abs(g.k);
      B = g.k > 0 ? g.l : -g.l;
      continue;
    }
    auto e = egcd(A, g.k);
    std::int64_t newB = e.x * B + e.y * g.l;
    D = std::gcd(D, std::abs((A / e.g) * g.l - (g.k / e.g) * B));
    A = e.g;
    B = newB;
  }
  if (A == 0 && D == 0) return Subgroup::trivial();
  if (A == 0) return Subgroup::vertical(D);
  if (D == 0) return Subgroup::rank1(A, B);
  return Subgroup::full2(A, B, D);
}

// ---------------------------------------------------------------------------
// cosetIntersect

namespace {

std::optional<Coset> intersectPoint(const Coset& point, const Coset& other) {
  if (other.contains(point.offset())) return Coset(point.offset(), Subgroup::trivial());
  return std::nullopt;
}

LatticePoint direction(const Subgroup& g) {
  return g.kind() == Subgroup::Kind::Vertical ? LatticePoint{0, g.b()}
                                              : LatticePoint{g.a(), g.b()};
}

// Line through P1 with step v1 meets line through P2 with step v2.
std::optional<Coset> intersectLines(LatticePoint p1, LatticePoint v1, LatticePoint p2,
                                    LatticePoint v2) {
  LatticePoint delta = p2 - p1;
  std::int64_t det = v2.k * v1.l - v1.k * v2.l;
  if (det != 0) {
    // unique rational solution of p*v1 - q*v2 = delta
    std::int64_t pNum = -delta.k * v2.l + v2.k * delta.l;
    std::int64_t qNum = v1.k * delta.l - v1.l * delta.k;
    if (pNum % det != 0 || qNum % det != 0) return std::nullopt;
    std::int64_t p = pNum / det;
    LatticePoint x{p1.k + p * v1.k, p1.l + p * v1.l};
    return Coset(x, Subgroup::trivial());
  }
  // parallel directions: both multiples of a primitive u
  std::int64_t c1 = std::gcd(std::abs(v1.k), std::abs(v1.l));
  LatticePoint u{v1.k / c1, v1.l / c1};
  std::int64_t m1 = c1;
  std::int64_t m2;  // v2 = m2 * u
  if (u.k != 0) {
    if (v2.k % u.k != 0) return std::nullopt;
    m2 = v2.k / u.k;
    if (m2 * u.l != v2.l) return std::nullopt;
  } else {
    if (v2.k != 0) return std::nullopt;
    m2 = v2.l / u.l;
  }
  // delta must be an integral multiple of u
  std::int64_t c;
  if (u.k != 0) {
    if (delta.k % u.k != 0) return std::nullopt;
    c = delta.k / u.k;
    if (c * u.l != delta.l) return std::nullopt;
  } else {
    if (delta.k != 0) return std::nullopt;
    if (delta.l % u.l != 0) return std::nullopt;
    c = delta.l / u.l;
  }
  // p*m1 - q*m2 = c
  auto e = egcd(m1, m2);
  if (c % e.g != 0) return std::nullopt;
  std::int64_t p0 = e.x * (c / e.g);
  std::int64_t step = lcm64(m1, m2);
  LatticePoint x{p1.k + p0 * m1 * u.k, p1.l + p0 * m1 * u.l};
  return Coset(x, Subgroup::rank1(step * u.k, step * u.l));
}

// Line P + v*Z meets a Full2 coset (j,j') + (a,b)Z + (0,d)Z.
std::optional<Coset> intersectLinePlane(LatticePoint p, LatticePoint v, const Coset& plane) {
  const Subgroup& g = plane.group();
  std::int64_t a = g.a(), b = g.b(), d = g.d();
  std::int64_t j = plane.offset().k, jp = plane.offset().l;
  // first coordinate: v.k * t == j - p.k (mod a)
  auto first = linearCongruence(v.k, j - p.k, a);
  if (!first) return std::nullopt;
  auto [t0, s] = *first;
  // substitute t = t0 + s*u; second coordinate congruence mod d
  std::int64_t e0 = (p.k + t0 * v.k - j) / a;
  std::int64_t eStep = s * v.k / a;
  std::int64_t coef = v.l * s - eStep * b;
  std::int64_t rhs = jp + e0 * b - p.l - v.l * t0;
  auto second = linearCongruence(coef, rhs, d);
  if (!second) return std::nullopt;
  auto [u0, w] = *second;
  std::int64_t tStar = t0 + s * u0;
  LatticePoint x{p.k + tStar * v.k, p.l + tStar * v.l};
  std::int64_t step = s * w;
  return Coset(x, Subgroup::rank1(step * v.k, step * v.l));
}

std::optional<Coset> intersectPlanes(const Coset& c1, const Coset& c2) {
  const Subgroup &g1 = c1.group(), &g2 = c2.group();
  std::int64_t a1 = g1.a(), b1 = g1.b(), d1 = g1.d();
  std::int64_t a2 = g2.a(), b2 = g2.b(), d2 = g2.d();
  std::int64_t j1 = c1.offset().k, j1p = c1.offset().l;
  std::int64_t j2 = c2.offset().k, j2p = c2.offset().l;
  auto kSol = crt(j1, a1, j2, a2);
  if (!kSol) return std::nullopt;
  auto [k0, A] = *kSol;
  // k = k0 + A*t; per-plane second-coordinate congruence l == alpha_i + t*beta_i (mod d_i)
  std::int64_t alpha1 = j1p + (k0 - j1) / a1 * b1, beta1 = A / a1 * b1;
  std::int64_t alpha2 = j2p + (k0 - j2) / a2 * b2, beta2 = A / a2 * b2;
  std::int64_t gd = std::gcd(d1, d2);
  auto tSol = linearCongruence(beta1 - beta2, alpha2 - alpha1, gd);
  if (!tSol) return std::nullopt;
  auto [t0, G] = *tSol;
  auto lSol = crt(alpha1 + t0 * beta1, d1, alpha2 + t0 * beta2, d2);
  if (!lSol) throw std::logic_error("cosetIntersect: CRT expected compatible");
  std::int64_t kStar = k0 + A * t0;
  std::int64_t lStar = lSol->first;
  std::int64_t D = lSol->second;
  // step t -> t + G shifts l by the CRT combination of (G*beta_i mod d_i)
  auto mu = crt(G * beta1, d1, G * beta2, d2);
  if (!mu) throw std::logic_error("cosetIntersect: step CRT expected compatible");
  std::vector<LatticePoint> gens{{A * G, mu->first}, {0, D}};
  return Coset({kStar, lStar}, canonicalize(gens));
}

}  // namespace

std::optional<Coset> cosetIntersect(const Coset& c1, const Coset& c2) {
  int r1 = c1.group().rank(), r2 = c2.group().rank();
  if (r1 == 0) return intersectPoint(c1, c2);
  if (r2 == 0) return intersectPoint(c2, c1);
  if (r1 == 1 && r2 == 1)
    return intersectLines(c1.offset(), direction(c1.group()), c2.offset(),
                          direction(c2.group()));
  if (r1 == 1) return intersectLinePlane(c1.offset(), direction(c1.group()), c2);
  if (r2 == 1) return intersectLinePlane(c2.offset(), direction(c2.group()), c1);
  return intersectPlanes(c1, c2);
}

// ---------------------------------------------------------------------------
// decomposeToSquare

std::vector<Coset> decomposeToSquare(const Subgroup& lattice) {
  if (lattice.rank() != 2)
    throw std::invalid_argument("decomposeToSquare: lattice must have rank 2");
  std::int64_t ad = lattice.a() * lattice.d();
  Subgroup square = Subgroup::full2(ad, 0, ad);
  std::vector<Coset> out;
  for (std::int64_t x = 0; x < ad; ++x)
    for (std::int64_t y = 0; y < ad; ++y)
      if (lattice.contains({x, y})) out.emplace_back(LatticePoint{x, y}, square);
  if (static_cast<std::int64_t>(out.size()) != ad)
    throw std::logic_error("decomposeToSquare: window count differs from index");
  return out;
}

std::int64_t squareContainmentModulus(const Subgroup& lattice) {
  if (lattice.rank() != 2)
    throw std::invalid_argument("squareContainmentModulus: lattice must have rank 2");
  std::int64_t base = lcm64(lattice.a(), lattice.d());
  for (std::int64_t m = base;; m += base) {
    if (lattice.contains({m, 0}) && lattice.contains({0, m})) return m;
  }
}

// ---------------------------------------------------------------------------
// avoidingRectLattice

namespace {

// Canonical direction candidates (alpha > 0, or alpha == 0 && beta > 0) with
// max-norm exactly n, in lexicographic order.
std::vector<LatticePoint> directionShell(std::int64_t n) {
  std::vector<LatticePoint> out;
  for (std::int64_t a = 0; a <= n; ++a)
    for (std::int64_t b = -n; b <= n; ++b) {
      if (std::max(a, std::abs(b)) != n) continue;
      if (a == 0 && b <= 0) continue;
      out.push_back({a, b});
    }
  std::sort(out.begin(), out.end());
  return out;
}

Coset boostToRank2(const Coset& comp, LatticePoint anchor) {
  LatticePoint v = direction(comp.group());
  Coset shifted(comp.offset() - anchor, comp.group());
  for (std::int64_t n = 1; n <= 64; ++n) {
    for (const auto& w : directionShell(n)) {
      if (w.k * v.l == w.l * v.k) continue;  // parallel, no rank boost
      Coset line({0, 0}, Subgroup::rank1(w.k, w.l));
      if (cosetIntersect(line, shifted)) continue;
      std::vector<LatticePoint> gens = comp.group().generators();
      gens.push_back(w);
      Coset boosted(comp.offset(), canonicalize(gens));
      if (boosted.group().rank() != 2 || boosted.contains(anchor))
        throw std::logic_error("avoidingRectLattice: rank boost postcondition failed");
      return boosted;
    }
  }
  throw std::logic_error("avoidingRectLattice: no boosting direction within search bound");
}

}  // namespace

Coset avoidingRectLattice(std::span<const Coset> components,
                          std::span<const LatticePoint> finiteExtra, LatticePoint anchor) {
  for (const auto& c : components)
    if (c.contains(anchor)) {
      std::ostringstream msg;
      msg << "avoidingRectLattice: anchor (" << anchor.k << "," << anchor.l
          << ") lies inside a component coset";
      throw std::invalid_argument(msg.str());
    }
  for (const auto& e : finiteExtra)
    if (e == anchor)
      throw std::invalid_argument("avoidingRectLattice: anchor listed in finiteExtra");

  std::vector<LatticePoint> extras(finiteExtra.begin(), finiteExtra.end());
  std::vector<Coset> rank2;
  for (const auto& c : components) {
    switch (c.group().rank()) {
      case 0: extras.push_back(c.offset()); break;
      case 1: rank2.push_back(boostToRank2(c, anchor)); break;
      default: rank2.push_back(c); break;
    }
  }

  std::int64_t m = 1;
  for (const auto& c : rank2) m = lcm64(m, squareContainmentModulus(c.group()));

  std::int64_t spread = 0;
  for (const auto& e : extras)
    spread = std::max({spread, std::abs(e.k - anchor.k), std::abs(e.l - anchor.l)});
  std::int64_t mult = m * ((spread / m) + 1);  // smallest multiple of m exceeding spread

  Coset result(anchor, Subgroup::full2(mult, 0, mult));
  for (const auto& c : components)
    if (cosetIntersect(result, c))
      throw std::logic_error("avoidingRectLattice: result intersects a component");
  for (const auto& e : extras)
    if (result.contains(e))
      throw std::logic_error("avoidingRectLattice: result hits a finite extra");
  return result;
}

}  // namespace circlespd::intlat
