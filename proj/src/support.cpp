#include "circlespd/support.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace circlespd::support {

using intlat::Coset;
using intlat::emod;
using intlat::Subgroup;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<std::int64_t> divisorsAscending(std::int64_t m) {
  std::vector<std::int64_t> out;
  for (std::int64_t g = 1; g <= m; ++g)
    if (m % g == 0) out.push_back(g);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// SupportSpec

SupportSpec::SupportSpec(Mode mode, std::set<LatticePoint> explicitPts,
                         std::set<LatticePoint> removed, TailLaw tail)
    : mode_(mode), explicit_(std::move(explicitPts)), removed_(std::move(removed)),
      tail_(std::move(tail)) {
  for (const auto& p : explicit_)
    if (removed_.contains(p))
      throw std::invalid_argument("SupportSpec: explicit and removed sets overlap");
  if (mode_ == Mode::RealSymmetrized) {
    for (const auto& p : explicit_)
      if (p.k < 0 || p.l < 0)
        throw std::invalid_argument("SupportSpec: explicit points must be nonnegative in real mode");
    for (const auto& p : removed_)
      if (p.k < 0 || p.l < 0)
        throw std::invalid_argument("SupportSpec: removed points must be nonnegative in real mode");
  }
  std::visit(Overloaded{
                 [](const NoTail&) {},
                 [](const MinTail& t) {
                   if (t.minIndex < 0)
                     throw std::invalid_argument("SupportSpec: MinTail index must be nonnegative");
                 },
                 [](PeriodicTail& t) {
                   if (t.modulus < 1)
                     throw std::invalid_argument("SupportSpec: periodic modulus must be positive");
                   std::set<LatticePoint> reduced;
                   for (const auto& r : t.residues)
                     reduced.insert({emod(r.k, t.modulus), emod(r.l, t.modulus)});
                   t.residues = std::move(reduced);
                 },
             },
             tail_);
}

bool SupportSpec::member(LatticePoint p) const {
  if (mode_ == Mode::RealSymmetrized && (p.k < 0 || p.l < 0)) return false;
  bool base = explicit_.contains(p);
  if (!base)
    base = std::visit(Overloaded{
                          [](const NoTail&) { return false; },
                          [&](const MinTail& t) { return p.k >= t.minIndex && p.l >= t.minIndex; },
                          [&](const PeriodicTail& t) {
                            return t.residues.contains(
                                {emod(p.k, t.modulus), emod(p.l, t.modulus)});
                          },
                      },
                      tail_);
  return base && !removed_.contains(p);
}

bool SupportSpec::inSymmetrizedView(LatticePoint p) const {
  if (mode_ == Mode::RealSymmetrized) return member({std::abs(p.k), std::abs(p.l)});
  return member(p);
}

// ---------------------------------------------------------------------------
// decideSpd

namespace {

std::vector<LatticePoint> symmetrizedExplicit(const SupportSpec& spec) {
  std::set<LatticePoint> out;
  for (const auto& e : spec.explicitPoints()) {
    if (spec.mode() == Mode::ComplexDirect) {
      out.insert(e);
    } else {
      for (std::int64_t sk : {1, -1})
        for (std::int64_t sl : {1, -1}) out.insert({sk * e.k, sl * e.l});
    }
  }
  return {out.begin(), out.end()};
}

// First point outside the symmetrized view, scanning max-norm shells in
// lexicographic order over all of Z^2.
LatticePoint anchorOutsideView(const SupportSpec& spec) {
  for (std::int64_t s = 0;; ++s) {
    std::vector<LatticePoint> shell;
    for (std::int64_t k = -s; k <= s; ++k)
      for (std::int64_t l = -s; l <= s; ++l)
        if (std::max(std::abs(k), std::abs(l)) == s) shell.push_back({k, l});
    std::sort(shell.begin(), shell.end());
    for (const auto& p : shell)
      if (!spec.inSymmetrizedView(p)) return p;
  }
}

SpdVerdict decideNoTail(const SupportSpec& spec) {
  auto extras = symmetrizedExplicit(spec);
  LatticePoint anchor = anchorOutsideView(spec);
  Coset witness = intlat::avoidingRectLattice({}, extras, anchor);
  if (!verifyWitnessDisjoint(spec, witness))
    throw std::logic_error("decideSpd: finite-support witness failed exact disjointness");
  return {SpdOutcome::NotStrictlyPD, witness, 0};
}

// Does the residue cell (eps*j + gZ_m) x (del*j' + gZ_m) miss R for every
// admissible sign pair?
bool cellAvoided(const PeriodicTail& t, Mode mode, std::int64_t g, std::int64_t j,
                 std::int64_t jp) {
  const auto signs = (mode == Mode::RealSymmetrized) ? std::vector<std::int64_t>{1, -1}
                                                     : std::vector<std::int64_t>{1};
  for (std::int64_t ek : signs)
    for (std::int64_t el : signs) {
      std::int64_t u = emod(ek * j, g), v = emod(el * jp, g);
      for (const auto& r : t.residues)
        if (emod(r.k, g) == u && emod(r.l, g) == v) return false;
    }
  return true;
}

SpdVerdict decidePeriodic(const SupportSpec& spec, const PeriodicTail& t) {
  const std::int64_t m = t.modulus;
  for (std::int64_t g : divisorsAscending(m)) {
    for (std::int64_t jp = 0; jp < g; ++jp)
      for (std::int64_t j = 0; j < g; ++j) {
        if (!cellAvoided(t, spec.mode(), g, j, jp)) continue;
        // refine the candidate (j,j') + (gZ,gZ) past the finite explicit part
        auto extras = symmetrizedExplicit(spec);
        LatticePoint off{j, jp};
        auto hitsExtras = [&](LatticePoint o) {
          return std::find(extras.begin(), extras.end(), o) != extras.end();
        };
        while (hitsExtras(off)) off = off + LatticePoint{m, m};
        std::int64_t c = g;
        Coset candidate(off, Subgroup::full2(c, 0, c));
        bool conflict = std::any_of(extras.begin(), extras.end(),
                                    [&](const LatticePoint& e) { return candidate.contains(e); });
        if (conflict) {
          std::int64_t spread = 0;
          for (const auto& e : extras)
            spread = std::max({spread, std::abs(e.k - off.k), std::abs(e.l - off.l)});
          c = c * (spread / c + 1);
          candidate = Coset(off, Subgroup::full2(c, 0, c));
        }
        if (!verifyWitnessDisjoint(spec, candidate))
          throw std::logic_error("decideSpd: periodic witness failed exact disjointness");
        return {SpdOutcome::NotStrictlyPD, candidate, 0};
      }
  }
  return {SpdOutcome::StrictlyPD, std::nullopt, 0};
}

}  // namespace

SpdVerdict decideSpd(const SupportSpec& spec) {
  return std::visit(Overloaded{
                        [&](const NoTail&) { return decideNoTail(spec); },
                        [&](const MinTail&) {
                          // Every translated lattice has points with both
                          // coordinates arbitrarily large, hence meets the tail.
                          return SpdVerdict{SpdOutcome::StrictlyPD, std::nullopt, 0};
                        },
                        [&](const PeriodicTail& t) { return decidePeriodic(spec, t); },
                    },
                    spec.tail());
}

// ---------------------------------------------------------------------------
// verifyWitnessDisjoint

bool verifyWitnessDisjoint(const SupportSpec& spec, const Coset& coset) {
  if (coset.group().rank() != 2)
    throw std::invalid_argument("verifyWitnessDisjoint: coset group must have rank 2");
  // Explicit additions: any symmetrized explicit point inside the coset meets it.
  for (const auto& e : symmetrizedExplicit(spec))
    if (coset.contains(e)) return false;

  return std::visit(
      Overloaded{
          [](const NoTail&) { return true; },
          [](const MinTail&) { return false; },  // rank-2 cosets always reach the tail
          [&](const PeriodicTail& t) {
            // Enumerate the symmetrized residue pairs realized by the coset's
            // points; finitely many removals cannot empty a realized class.
            const std::int64_t m = t.modulus;
            const std::int64_t a = coset.group().a(), b = coset.group().b(),
                               d = coset.group().d();
            const std::int64_t j = coset.offset().k, jp = coset.offset().l;
            const std::int64_t gd = std::gcd(d, m);
            const auto signs = (spec.mode() == Mode::RealSymmetrized)
                                   ? std::vector<std::int64_t>{1, -1}
                                   : std::vector<std::int64_t>{1};
            for (std::int64_t p = 0; p < m; ++p) {
              std::int64_t u = emod(j + p * a, m);
              for (std::int64_t s = 0; s < m / gd; ++s) {
                std::int64_t v = emod(jp + p * b + s * gd, m);
                for (std::int64_t ek : signs)
                  for (std::int64_t el : signs)
                    if (t.residues.contains({emod(ek * u, m), emod(el * v, m)})) return false;
              }
            }
            return true;
          },
      },
      spec.tail());
}

// ---------------------------------------------------------------------------
// decideSpdBounded

namespace {

std::int64_t tailScale(const SupportSpec& spec) {
  return std::visit(Overloaded{
                        [](const NoTail&) -> std::int64_t { return 1; },
                        [](const MinTail& t) { return std::max<std::int64_t>(t.minIndex, 1); },
                        [](const PeriodicTail& t) { return std::max<std::int64_t>(t.modulus, 1); },
                    },
                    spec.tail());
}

bool windowIntersects(const SupportSpec& spec, std::int64_t a, std::int64_t b, std::int64_t j,
                      std::int64_t jp, std::int64_t window) {
  for (std::int64_t k = j - (j + window) / a * a; k <= window; k += a)
    for (std::int64_t l = jp - (jp + window) / b * b; l <= window; l += b)
      if (spec.inSymmetrizedView({k, l})) return true;
  return false;
}

}  // namespace

SpdVerdict decideSpdBounded(const SupportSpec& spec, std::int64_t maxModulus,
                            std::int64_t window) {
  if (maxModulus < 1) throw std::invalid_argument("decideSpdBounded: maxModulus must be >= 1");
  if (window < 4 * maxModulus * tailScale(spec))
    throw std::invalid_argument("decideSpdBounded: window too small for the tail law");

  bool minTail = std::holds_alternative<MinTail>(spec.tail());
  // Square cosets first within each max-modulus shell, so the canonical
  // witness matches decideSpd's canonical square search.
  for (std::int64_t shell = 1; shell <= maxModulus; ++shell) {
    std::vector<std::pair<std::int64_t, std::int64_t>> moduli{{shell, shell}};
    for (std::int64_t a = 1; a < shell; ++a) moduli.emplace_back(a, shell);
    for (std::int64_t b = 1; b < shell; ++b) moduli.emplace_back(shell, b);
    for (auto [a, b] : moduli) {
      for (std::int64_t jp = 0; jp < b; ++jp)
        for (std::int64_t j = 0; j < a; ++j) {
          if (windowIntersects(spec, a, b, j, jp, window)) continue;
          if (minTail)
            throw std::logic_error(
                "decideSpdBounded: MinTail coset missed the window, window precondition broken");
          Coset coset({j, jp}, Subgroup::full2(a, 0, b));
          if (verifyWitnessDisjoint(spec, coset))
            return {SpdOutcome::NotStrictlyPD, coset, 0};
        }
    }
  }

  // No certified miss within the bound; decide whether exhaustion is conclusive.
  bool conclusive = std::visit(
      Overloaded{
          [](const NoTail&) { return false; },  // finite supports always fail eventually
          [](const MinTail&) { return true; },
          [&](const PeriodicTail& t) {
            return maxModulus >= t.modulus && spec.explicitPoints().empty();
          },
      },
      spec.tail());
  if (conclusive) return {SpdOutcome::StrictlyPD, std::nullopt, 0};
  return {SpdOutcome::UnknownUpTo, std::nullopt, maxModulus};
}

// ---------------------------------------------------------------------------
// intersectionSampler

std::vector<LatticePoint> intersectionSampler(const SupportSpec& spec, const Coset& coset,
                                              int count, std::int64_t normCap) {
  if (coset.group().rank() != 2)
    throw std::invalid_argument("intersectionSampler: coset group must have rank 2");
  std::vector<LatticePoint> out;
  for (std::int64_t s = 0; s <= normCap; ++s) {
    std::vector<LatticePoint> shell;
    for (std::int64_t k = 0; k < s; ++k) shell.push_back({k, s});
    for (std::int64_t l = 0; l <= s; ++l) shell.push_back({s, l});
    std::sort(shell.begin(), shell.end());
    for (const auto& p : shell) {
      if (!coset.contains(p) || !spec.inSymmetrizedView(p)) continue;
      out.push_back(p);
      if (static_cast<int>(out.size()) == count) return out;
    }
  }
  std::ostringstream msg;
  msg << "intersectionSampler: found only " << out.size() << " of " << count
      << " points within max-norm " << normCap
      << "; the spec was decided StrictlyPD so this signals a decision bug";
  throw std::runtime_error(msg.str());
}

// ---------------------------------------------------------------------------
// 1-D circle analogue

SupportSpec1D::SupportSpec1D(Mode mode, std::set<std::int64_t> explicitPts,
                             std::set<std::int64_t> removed, TailLaw1D tail)
    : mode_(mode), explicit_(std::move(explicitPts)), removed_(std::move(removed)),
      tail_(std::move(tail)) {
  for (auto p : explicit_)
    if (removed_.contains(p))
      throw std::invalid_argument("SupportSpec1D: explicit and removed sets overlap");
  if (mode_ == Mode::RealSymmetrized)
    for (auto p : explicit_)
      if (p < 0) throw std::invalid_argument("SupportSpec1D: explicit points must be nonnegative");
  std::visit(Overloaded{
                 [](const NoTail1D&) {},
                 [](const MinTail1D& t) {
                   if (t.minIndex < 0)
                     throw std::invalid_argument("SupportSpec1D: MinTail index must be nonnegative");
                 },
                 [](PeriodicTail1D& t) {
                   if (t.modulus < 1)
                     throw std::invalid_argument("SupportSpec1D: modulus must be positive");
                   std::set<std::int64_t> reduced;
                   for (auto r : t.residues) reduced.insert(emod(r, t.modulus));
                   t.residues = std::move(reduced);
                 },
             },
             tail_);
}

bool SupportSpec1D::member(std::int64_t k) const {
  if (mode_ == Mode::RealSymmetrized && k < 0) return false;
  bool base = explicit_.contains(k);
  if (!base)
    base = std::visit(Overloaded{
                          [](const NoTail1D&) { return false; },
                          [&](const MinTail1D& t) { return k >= t.minIndex; },
                          [&](const PeriodicTail1D& t) {
                            return t.residues.contains(emod(k, t.modulus));
                          },
                      },
                      tail_);
  return base && !removed_.contains(k);
}

bool SupportSpec1D::inSymmetrizedView(std::int64_t k) const {
  return mode_ == Mode::RealSymmetrized ? member(std::abs(k)) : member(k);
}

SpdVerdict1D decideSpdCircle(const SupportSpec1D& spec) {
  const auto signs = (spec.mode() == Mode::RealSymmetrized) ? std::vector<std::int64_t>{1, -1}
                                                            : std::vector<std::int64_t>{1};
  auto symExplicit = [&] {
    std::set<std::int64_t> out;
    for (auto e : spec.explicitPoints())
      for (auto s : signs) out.insert(s * e);
    return std::vector<std::int64_t>(out.begin(), out.end());
  };

  return std::visit(
      Overloaded{
          [&](const NoTail1D&) {
            auto extras = symExplicit();
            std::int64_t anchor = 0;
            for (std::int64_t s = 0;; ++s) {
              if (!spec.inSymmetrizedView(-s)) { anchor = -s; break; }
              if (!spec.inSymmetrizedView(s)) { anchor = s; break; }
            }
            std::int64_t spread = 0;
            for (auto e : extras) spread = std::max(spread, std::abs(e - anchor));
            std::int64_t step = spread + 1;
            return SpdVerdict1D{SpdOutcome::NotStrictlyPD,
                                Progression{emod(anchor, step), step}};
          },
          [&](const MinTail1D&) {
            return SpdVerdict1D{SpdOutcome::StrictlyPD, std::nullopt};
          },
          [&](const PeriodicTail1D& t) {
            const std::int64_t m = t.modulus;
            for (std::int64_t g = 1; g <= m; ++g) {
              if (m % g != 0) continue;
              for (std::int64_t j = 0; j < g; ++j) {
                bool avoided = true;
                for (auto sgn : signs)
                  for (auto r : t.residues)
                    if (emod(r, g) == emod(sgn * j, g)) avoided = false;
                if (!avoided) continue;
                auto extras = symExplicit();
                std::int64_t off = j, step = g;
                while (std::find(extras.begin(), extras.end(), off) != extras.end()) off += m;
                bool conflict = std::any_of(extras.begin(), extras.end(), [&](std::int64_t e) {
                  return (e - off) % step == 0;
                });
                if (conflict) {
                  std::int64_t spread = 0;
                  for (auto e : extras) spread = std::max(spread, std::abs(e - off));
                  step = step * (spread / step + 1);
                }
                return SpdVerdict1D{SpdOutcome::NotStrictlyPD,
                                    Progression{emod(off, step), step}};
              }
            }
            return SpdVerdict1D{SpdOutcome::StrictlyPD, std::nullopt};
          },
      },
      spec.tail());
}

}  // namespace circlespd::support
