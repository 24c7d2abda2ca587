// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one [PASS]/[FAIL] line per criterion.  Exit code is the number
// of failed criteria.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "circlespd/certify.hpp"
#include "circlespd/intlat.hpp"
#include "circlespd/kernel.hpp"
#include "circlespd/support.hpp"
#include "circlespd/zeroset.hpp"
#include "support_catalog.hpp"

using namespace circlespd;
using intlat::Coset;
using intlat::LatticePoint;
using intlat::Subgroup;
using kernel::ChebKernel;
using kernel::PointConfig;

namespace {

bool symmetrizationAvoids(const Coset& coset, LatticePoint p) {
  for (std::int64_t sk : {1, -1})
    for (std::int64_t sl : {1, -1})
      if (coset.contains({sk * p.k, sl * p.l})) return false;
  return true;
}

ChebKernel avoidedSupportKernel(const Coset& coset, std::int64_t degree) {
  std::map<LatticePoint, double> coeffs;
  for (std::int64_t k = 0; k <= degree; ++k)
    for (std::int64_t l = 0; l <= degree; ++l)
      if (symmetrizationAvoids(coset, {k, l})) coeffs[{k, l}] = 1.0;
  return ChebKernel(std::move(coeffs));
}

double residualScale(const std::vector<double>& c, const ChebKernel& kern) {
  double absC = 0.0;
  for (double x : c) absC += std::abs(x);
  return absC * absC * kernel::schoenbergNorm(kern);
}

double quadraticResidual(const ChebKernel& kern, const certify::WitnessConfig& wc) {
  return std::abs(certify::quadraticForm(kernel::gram(kern, wc.config), wc.weights));
}

std::uint64_t splitmix(std::uint64_t& s) {
  s += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t& s) {
  return static_cast<double>(splitmix(s) >> 11) * 0x1.0p-53;
}

ChebKernel randomKernel(std::uint64_t& s, std::int64_t maxDegree, int maxTerms) {
  std::map<LatticePoint, double> coeffs;
  int terms = 1 + static_cast<int>(splitmix(s) % static_cast<std::uint64_t>(maxTerms));
  for (int t = 0; t < terms; ++t) {
    std::int64_t k = static_cast<std::int64_t>(splitmix(s) % (maxDegree + 1));
    std::int64_t l = static_cast<std::int64_t>(splitmix(s) % (maxDegree + 1));
    coeffs[{k, l}] = 0.05 + uniform01(s);
  }
  return ChebKernel(std::move(coeffs));
}

PointConfig randomConfig(std::uint64_t& s, int n) {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < n; ++i)
    pts.emplace_back(2.0 * std::numbers::pi * uniform01(s),
                     2.0 * std::numbers::pi * uniform01(s));
  return kernel::configFromAngles(std::move(pts));
}

// Witnesses produced under criterion 1, reused by criterion 10.
struct RectWitness {
  Coset coset;
  certify::WitnessConfig wc;
};
std::vector<RectWitness> gRectWitnesses;

// --- criteria ---------------------------------------------------------------

bool criterion1(std::string& detail) {
  gRectWitnesses.clear();
  double worst = 0.0;
  for (std::int64_t a = 2; a <= 4; ++a)
    for (std::int64_t b = 2; b <= 4; ++b)
      for (std::int64_t j = 0; j < a; ++j)
        for (std::int64_t jp = 0; jp < b; ++jp) {
          Coset coset({j, jp}, Subgroup::full2(a, 0, b));
          ChebKernel kern = avoidedSupportKernel(coset, 12);
          auto wc = certify::juruConfig(a, b, j, jp);
          double maxW = 0.0;
          for (double w : wc.weights) maxW = std::max(maxW, std::abs(w));
          if (maxW < 1e-9) {
            detail = "degenerate weights at a=" + std::to_string(a);
            return false;
          }
          double residual = quadraticResidual(kern, wc);
          double bound = 1e-10 * residualScale(wc.weights, kern);
          worst = std::max(worst, residual / bound * 1e-10);
          if (residual > bound) {
            std::ostringstream ss;
            ss << "residual " << residual << " > bound " << bound << " at (" << a << "," << b
               << "," << j << "," << jp << ")";
            detail = ss.str();
            return false;
          }
          gRectWitnesses.push_back({coset, wc});
        }
  std::ostringstream ss;
  ss << gRectWitnesses.size() << " rectangular cosets, worst relative residual " << worst;
  detail = ss.str();
  return true;
}

bool criterion2(std::string& detail) {
  int configs = 0;
  double worst = 0.0;
  for (std::int64_t a = 1; a <= 8; ++a)
    for (std::int64_t d = 1; d <= 8; ++d) {
      if (a * d < 2 || a * d > 8) continue;
      for (std::int64_t b = 0; b < d; ++b)
        for (std::int64_t j = 0; j < a; ++j)
          for (std::int64_t jp = 0; jp < d; ++jp) {
            Coset coset({j, jp}, canonicalize(std::vector<LatticePoint>{{a, b}, {0, d}}));
            auto wc = certify::generalLatticeConfig(a, b, d, j, jp);
            if (wc.config.size() != static_cast<std::size_t>(a * d)) {
              detail = "point count mismatch";
              return false;
            }
            double maxW = 0.0;
            for (double w : wc.weights) maxW = std::max(maxW, std::abs(w));
            if (maxW < 1e-9) {
              detail = "degenerate weights";
              return false;
            }
            ChebKernel kern = avoidedSupportKernel(coset, 12);
            double residual = quadraticResidual(kern, wc);
            double bound = 1e-10 * residualScale(wc.weights, kern);
            worst = std::max(worst, residual / bound * 1e-10);
            if (residual > bound) {
              std::ostringstream ss;
              ss << "residual " << residual << " > bound " << bound << " at (" << a << "," << b
                 << "," << d << "," << j << "," << jp << ")";
              detail = ss.str();
              return false;
            }
            ++configs;
          }
    }

  // pinned parity instance: 2 points, residual <= 1e-12 on the degree-4
  // {k+l even} kernel
  auto parity = certify::generalLatticeConfig(1, 1, 2, 0, 1);
  if (parity.config.size() != 2) {
    detail = "parity instance point count";
    return false;
  }
  std::map<LatticePoint, double> coeffs;
  for (std::int64_t k = 0; k <= 4; ++k)
    for (std::int64_t l = 0; l <= 4; ++l)
      if ((k + l) % 2 == 0) coeffs[{k, l}] = 1.0;
  ChebKernel evenSum(std::move(coeffs));
  double parityResidual = quadraticResidual(evenSum, parity);
  if (parityResidual > 1e-12) {
    detail = "parity residual " + std::to_string(parityResidual);
    return false;
  }
  std::ostringstream ss;
  ss << configs << " lattice configs, worst relative residual " << worst
     << ", parity residual " << parityResidual;
  detail = ss.str();
  return true;
}

bool criterion3(std::string& detail) {
  std::uint64_t seed = 0x5eed3;
  for (int trial = 0; trial < 200; ++trial) {
    ChebKernel kern = randomKernel(seed, 10, 16);
    int n = 2 + static_cast<int>(splitmix(seed) % 7);
    PointConfig cfg = randomConfig(seed, n);
    std::vector<double> c;
    for (int i = 0; i < n; ++i) c.push_back(2.0 * uniform01(seed) - 1.0);
    auto rep = certify::checkNullEquivalence(kern, cfg, c, 1e-10);
    if (!rep.equivalent) {
      std::ostringstream ss;
      ss << "trial " << trial << ": form " << rep.quadraticFormValue << " vs sums "
         << rep.maxSupportSum;
      detail = ss.str();
      return false;
    }
  }
  detail = "200 randomized triples";
  return true;
}

bool criterion4(std::string& detail) {
  auto entries = catalog::build();
  if (entries.size() < 12) {
    detail = "catalog too small";
    return false;
  }
  for (const auto& entry : entries) {
    auto exact = support::decideSpd(entry.spec);
    auto bounded =
        support::decideSpdBounded(entry.spec, 12, catalog::oracleWindow(entry.spec, 12));
    if (exact.outcome != entry.expected) {
      detail = entry.name + ": wrong exact verdict";
      return false;
    }
    if (bounded.outcome != exact.outcome) {
      detail = entry.name + ": oracle disagrees";
      return false;
    }
    if (entry.expectedWitness) {
      if (!exact.witness || !(*exact.witness == *entry.expectedWitness)) {
        detail = entry.name + ": wrong canonical witness";
        return false;
      }
      if (!bounded.witness || !(*bounded.witness == *entry.expectedWitness)) {
        detail = entry.name + ": wrong oracle witness";
        return false;
      }
    }
    if (exact.witness && !support::verifyWitnessDisjoint(entry.spec, *exact.witness)) {
      detail = entry.name + ": unsound exact witness";
      return false;
    }
    if (bounded.witness && !support::verifyWitnessDisjoint(entry.spec, *bounded.witness)) {
      detail = entry.name + ": unsound oracle witness";
      return false;
    }
  }
  std::ostringstream ss;
  ss << entries.size() << " catalog supports, exact vs bounded oracle at modulus 12";
  detail = ss.str();
  return true;
}

bool criterion5(std::string& detail) {
  std::uint64_t seed = 0x5eed5;
  double worstRatio = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    ChebKernel kern = randomKernel(seed, 12, 25);
    int n = 2 + static_cast<int>(splitmix(seed) % 29);
    auto g = kernel::gram(kern, randomConfig(seed, n));
    double ev = certify::minEigen(g);
    double floor = -1e-9 * kernel::schoenbergNorm(kern) * n;
    if (ev < floor) {
      std::ostringstream ss;
      ss << "trial " << trial << ": min eigenvalue " << ev << " below floor " << floor;
      detail = ss.str();
      return false;
    }
    if (ev < 0.0) worstRatio = std::max(worstRatio, ev / floor);
  }
  std::ostringstream ss;
  ss << "100 random Gram matrices, worst floor utilization " << worstRatio;
  detail = ss.str();
  return true;
}

bool criterion6(std::string& detail) {
  std::map<LatticePoint, double> coeffs;
  for (std::int64_t k = 0; k <= 8; ++k)
    for (std::int64_t l = 0; l <= 8; ++l) coeffs[{k, l}] = 1.0;
  ChebKernel full(std::move(coeffs));
  auto report = certify::verifySpdEmpirical(full, 12, 50, 0xACCE97, 0.1);
  std::ostringstream ss;
  ss << "minimum observed eigenvalue " << report.minEigenvalue << " over " << report.trials
     << " trials";
  detail = ss.str();
  return report.trials == 50 && report.minEigenvalue > 0.0;
}

bool criterion7(std::string& detail) {
  for (auto [a, b, d] : {std::array<std::int64_t, 3>{1, 1, 2}, std::array<std::int64_t, 3>{2, 1, 3},
                         std::array<std::int64_t, 3>{3, 2, 4}}) {
    Subgroup lattice = Subgroup::full2(a, b, d);
    auto cosets = intlat::decomposeToSquare(lattice);
    std::int64_t ad = a * d;
    if (static_cast<std::int64_t>(cosets.size()) != ad) {
      detail = "wrong coset count";
      return false;
    }
    for (std::int64_t k = -3 * ad; k <= 3 * ad; ++k)
      for (std::int64_t l = -3 * ad; l <= 3 * ad; ++l) {
        int hits = 0;
        for (const auto& c : cosets) hits += c.contains({k, l}) ? 1 : 0;
        int expect = lattice.contains({k, l}) ? 1 : 0;
        if (hits != expect) {
          std::ostringstream ss;
          ss << "coverage mismatch at (" << k << "," << l << ") for (" << a << "," << b << ","
             << d << ")";
          detail = ss.str();
          return false;
        }
      }
  }
  detail = "lattices (1,1,2), (2,1,3), (3,2,4) on their 6ad windows";
  return true;
}

bool criterion8(std::string& detail) {
  std::vector<double> pm{1.0, -1.0};
  auto checker = zeroset::detectStructure(zeroset::buildTable(
      kernel::configFromRational(2, {{0, 0}, {1, 1}}), std::span<const double>(pm)));
  if (checker.cosets.size() != 1 ||
      !(checker.cosets[0] == Coset({0, 0}, Subgroup::full2(1, 1, 2)))) {
    detail = "checkerboard table structure";
    return false;
  }
  auto evenK = zeroset::detectStructure(zeroset::buildTable(
      kernel::configFromRational(2, {{0, 0}, {1, 0}}), std::span<const double>(pm)));
  if (evenK.cosets.size() != 1 ||
      !(evenK.cosets[0] == Coset({0, 0}, Subgroup::full2(2, 0, 1)))) {
    detail = "k-even table structure";
    return false;
  }

  std::uint64_t seed = 0x5eed8;
  int done = 0;
  while (done < 100) {
    std::int64_t q = 2 + static_cast<std::int64_t>(splitmix(seed) % 11);
    int maxN = static_cast<int>(std::min<std::int64_t>(6, q * q));
    int n = 1 + static_cast<int>(splitmix(seed) % maxN);
    std::set<std::pair<std::int64_t, std::int64_t>> used;
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    while (static_cast<int>(pairs.size()) < n) {
      std::pair<std::int64_t, std::int64_t> p{
          static_cast<std::int64_t>(splitmix(seed) % q),
          static_cast<std::int64_t>(splitmix(seed) % q)};
      if (used.insert(p).second) pairs.push_back(p);
    }
    std::vector<double> c;
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
      c.push_back(2.0 * uniform01(seed) - 1.0);
      norm += std::abs(c.back());
    }
    if (norm < 1e-6) continue;
    auto cfg = kernel::configFromRational(q, pairs);
    auto table = zeroset::buildTable(cfg, std::span<const double>(c));
    if (table.maxAbs() <= 1e-9 * norm) {
      detail = "zero set covered the whole period for a nonzero weight vector";
      return false;
    }
    if (!zeroset::verifyNotAllZero(cfg, std::span<const double>(c))) {
      detail = "verifyNotAllZero returned false";
      return false;
    }
    ++done;
  }
  detail = "pinned q=2 structures plus 100 randomized exact configs";
  return true;
}

bool criterion9(std::string& detail) {
  std::uint64_t seed = 0x5eed9;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    ChebKernel kern = randomKernel(seed, 16, 30);
    auto fitted = kernel::fitCoefficients(kernel::sampleGrid(kern, 16));
    std::set<LatticePoint> keys;
    for (const auto& [p, a] : kern.coeffs()) keys.insert(p);
    for (const auto& [p, a] : fitted.coeffs()) keys.insert(p);
    for (const auto& p : keys) {
      auto itK = kern.coeffs().find(p);
      auto itF = fitted.coeffs().find(p);
      double expect = itK == kern.coeffs().end() ? 0.0 : itK->second;
      double got = itF == fitted.coeffs().end() ? 0.0 : itF->second;
      double err = std::abs(expect - got);
      worst = std::max(worst, err);
      if (err > 1e-10) {
        std::ostringstream ss;
        ss << "trial " << trial << ": coefficient (" << p.k << "," << p.l << ") error " << err;
        detail = ss.str();
        return false;
      }
    }
  }
  std::ostringstream ss;
  ss << "20 random degree<=16 kernels, worst coefficient error " << worst;
  detail = ss.str();
  return true;
}

bool criterion10(std::string& detail) {
  if (gRectWitnesses.empty()) {
    detail = "criterion 1 produced no witnesses";
    return false;
  }
  for (const auto& [coset, wc] : gRectWitnesses) {
    auto table = zeroset::buildTable(wc.config, std::span<const double>(wc.weights));
    auto structure = zeroset::detectStructure(table);
    const std::int64_t q = table.order;
    for (std::int64_t k = 0; k < q; ++k)
      for (std::int64_t l = 0; l < q; ++l) {
        if (!symmetrizationAvoids(coset, {k, l})) continue;
        if (!structure.coveredByCosets({k, l})) {
          std::ostringstream ss;
          ss << "residue (" << k << "," << l << ") escaped the zero structure";
          detail = ss.str();
          return false;
        }
      }
  }
  std::ostringstream ss;
  ss << gRectWitnesses.size() << " witnesses checked on one period each";
  detail = ss.str();
  return true;
}

}  // namespace

int main() {
  struct Item {
    int id;
    const char* label;
    std::function<bool(std::string&)> run;
  };
  std::vector<Item> items{
      {1, "null-witness soundness over rectangular cosets", criterion1},
      {2, "general-lattice witnesses over canonical lattices", criterion2},
      {3, "null equivalence on 200 randomized triples", criterion3},
      {4, "decision procedure versus bounded oracle", criterion4},
      {5, "PSD floor over random kernels and configurations", criterion5},
      {6, "empirical strictness of the full-support kernel", criterion6},
      {7, "square-lattice decomposition coverage", criterion7},
      {8, "zero-set structure and the vanishing lemma", criterion8},
      {9, "fit/sample coefficient roundtrip", criterion9},
      {10, "witness containment in the zero structure", criterion10},
  };
  int failures = 0;
  for (auto& item : items) {
    std::string detail;
    bool ok = false;
    try {
      ok = item.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", item.id, item.label,
                detail.c_str());
    std::fflush(stdout);
  }
  if (failures == 0)
    std::printf("all %zu acceptance criteria passed\n", items.size());
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures;
}
