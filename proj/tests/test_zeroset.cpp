#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include "circlespd/certify.hpp"
#include "circlespd/zeroset.hpp"

using namespace circlespd;
using namespace circlespd::zeroset;
using intlat::Coset;
using intlat::LatticePoint;
using intlat::Subgroup;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Independent re-evaluation of b_{k,l} without residue reduction.
Complex directSum(const kernel::PointConfig& cfg, const std::vector<double>& c, std::int64_t k,
                  std::int64_t l) {
  Complex s{0.0, 0.0};
  for (std::size_t u = 0; u < c.size(); ++u) {
    double phase = static_cast<double>(k) * cfg.angles[u].first +
                   static_cast<double>(l) * cfg.angles[u].second;
    s += c[u] * Complex{std::cos(phase), std::sin(phase)};
  }
  return s;
}

}  // namespace

TEST_CASE("buildTable: examples") {
  auto single = kernel::configFromRational(1, {{0, 0}});
  std::vector<double> one{1.0};
  auto t1 = buildTable(single, std::span<const double>(one));
  CHECK(t1.order == 1);
  CHECK(std::abs(t1.at(0, 0) - Complex{1.0, 0.0}) < 1e-15);

  // (0,0),(pi,0): b_{k,l} = 1 - (-1)^k
  auto horiz = kernel::configFromRational(2, {{0, 0}, {1, 0}});
  std::vector<double> pm{1.0, -1.0};
  auto t2 = buildTable(horiz, std::span<const double>(pm));
  CHECK(std::abs(t2.at(0, 0)) < 1e-14);
  CHECK(std::abs(t2.at(0, 1)) < 1e-14);
  CHECK(std::abs(t2.at(1, 0) - Complex{2.0, 0.0}) < 1e-14);
  CHECK(std::abs(t2.at(1, 1) - Complex{2.0, 0.0}) < 1e-14);

  // (0,0),(pi,pi): b_{k,l} = 1 - (-1)^{k+l}
  auto diag = kernel::configFromRational(2, {{0, 0}, {1, 1}});
  auto t3 = buildTable(diag, std::span<const double>(pm));
  CHECK(std::abs(t3.at(0, 0)) < 1e-14);
  CHECK(std::abs(t3.at(1, 1)) < 1e-14);
  CHECK(std::abs(t3.at(1, 0) - Complex{2.0, 0.0}) < 1e-14);
  CHECK(std::abs(t3.at(0, 1) - Complex{2.0, 0.0}) < 1e-14);

  auto noExact = kernel::configFromAngles({{0.3, 0.4}});
  CHECK_THROWS_AS(buildTable(noExact, std::span<const double>(one)), std::invalid_argument);
}

TEST_CASE("buildTable: periodicity spot re-evaluation at shifted indices") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    std::int64_t q = 2 + static_cast<std::int64_t>(rng() % 9);
    int n = 1 + static_cast<int>(rng() % std::min<std::uint64_t>(5, static_cast<std::uint64_t>(q * q)));
    std::set<std::pair<std::int64_t, std::int64_t>> used;
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    while (static_cast<int>(pairs.size()) < n) {
      std::pair<std::int64_t, std::int64_t> p{static_cast<std::int64_t>(rng() % q),
                                              static_cast<std::int64_t>(rng() % q)};
      if (used.insert(p).second) pairs.push_back(p);
    }
    auto cfg = kernel::configFromRational(q, pairs);
    std::vector<double> c;
    for (int i = 0; i < n; ++i) c.push_back(static_cast<double>(rng() % 7) - 3.0);
    auto table = buildTable(cfg, std::span<const double>(c));
    for (int probe = 0; probe < 10; ++probe) {
      std::int64_t k = static_cast<std::int64_t>(rng() % (2 * q));
      std::int64_t l = static_cast<std::int64_t>(rng() % (2 * q));
      CHECK(std::abs(table.at(k, l) - directSum(cfg, c, k, l)) <= 1e-11);
      CHECK(std::abs(table.at(k + q, l) - table.at(k, l)) <= 1e-14);
      CHECK(std::abs(table.at(k, l + q) - table.at(k, l)) <= 1e-14);
    }
  }
}

TEST_CASE("subgroupsContaining: counts and containment") {
  CHECK(subgroupsContaining(1).size() == 1);
  CHECK(subgroupsContaining(2).size() == 5);
  CHECK(subgroupsContaining(3).size() == 6);
  CHECK(subgroupsContaining(4).size() == 15);
  for (std::int64_t q : {2, 3, 4, 6}) {
    for (const auto& g : subgroupsContaining(q)) {
      CHECK(g.contains({q, 0}));
      CHECK(g.contains({0, q}));
    }
  }
}

TEST_CASE("detectStructure: examples") {
  auto horiz = kernel::configFromRational(2, {{0, 0}, {1, 0}});
  std::vector<double> pm{1.0, -1.0};
  auto evenK = detectStructure(buildTable(horiz, std::span<const double>(pm)));
  CHECK(evenK.zeros == std::set<LatticePoint>{{0, 0}, {0, 1}});
  REQUIRE(evenK.cosets.size() == 1);
  CHECK(evenK.cosets[0] == Coset({0, 0}, Subgroup::full2(2, 0, 1)));

  auto diag = kernel::configFromRational(2, {{0, 0}, {1, 1}});
  auto checker = detectStructure(buildTable(diag, std::span<const double>(pm)));
  CHECK(checker.zeros == std::set<LatticePoint>{{0, 0}, {1, 1}});
  REQUIRE(checker.cosets.size() == 1);
  CHECK(checker.cosets[0] == Coset({0, 0}, Subgroup::full2(1, 1, 2)));

  auto single = kernel::configFromRational(3, {{1, 2}});
  std::vector<double> one{1.0};
  auto none = detectStructure(buildTable(single, std::span<const double>(one)));
  CHECK(none.zeros.empty());
  CHECK(none.cosets.empty());
}

TEST_CASE("detectStructure: cover equals the zero set exactly") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 40; ++trial) {
    std::int64_t q = 2 + static_cast<std::int64_t>(rng() % 11);
    int n = 1 + static_cast<int>(rng() % std::min<std::uint64_t>(6, static_cast<std::uint64_t>(q * q)));
    std::set<std::pair<std::int64_t, std::int64_t>> used;
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    while (static_cast<int>(pairs.size()) < n) {
      std::pair<std::int64_t, std::int64_t> p{static_cast<std::int64_t>(rng() % q),
                                              static_cast<std::int64_t>(rng() % q)};
      if (used.insert(p).second) pairs.push_back(p);
    }
    auto cfg = kernel::configFromRational(q, pairs);
    std::vector<double> c;
    for (int i = 0; i < n; ++i) c.push_back(static_cast<double>(rng() % 9) - 4.0);
    auto structure = detectStructure(buildTable(cfg, std::span<const double>(c)));
    CHECK(structure.cosets.size() <= static_cast<std::size_t>(q * q));
    for (std::int64_t k = 0; k < q; ++k)
      for (std::int64_t l = 0; l < q; ++l) {
        bool inZeros = structure.zeros.contains({k, l});
        CHECK(structure.coveredByCosets({k, l}) == inZeros);
      }
    // every emitted coset group contains (qZ, qZ)
    for (const auto& coset : structure.cosets) {
      CHECK(coset.group().contains({q, 0}));
      CHECK(coset.group().contains({0, q}));
    }
  }
}

TEST_CASE("verifyNotAllZero: examples") {
  auto diag = kernel::configFromRational(2, {{0, 0}, {1, 1}});
  std::vector<double> zero{0.0, 0.0};
  CHECK(verifyNotAllZero(diag, std::span<const double>(zero)));

  std::vector<double> pm{1.0, -1.0};
  CHECK(verifyNotAllZero(diag, std::span<const double>(pm)));
  auto table = buildTable(diag, std::span<const double>(pm));
  CHECK(table.maxAbs() > 0.5);  // proper zero set, a nonzero residue exists
}

TEST_CASE("verifyNotAllZero: randomized corpus never sees a full zero set") {
  std::mt19937_64 rng(71);
  int done = 0;
  while (done < 100) {
    std::int64_t q = 2 + static_cast<std::int64_t>(rng() % 11);
    int n = 1 + static_cast<int>(rng() % std::min<std::uint64_t>(6, static_cast<std::uint64_t>(q * q)));
    std::set<std::pair<std::int64_t, std::int64_t>> used;
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    while (static_cast<int>(pairs.size()) < n) {
      std::pair<std::int64_t, std::int64_t> p{static_cast<std::int64_t>(rng() % q),
                                              static_cast<std::int64_t>(rng() % q)};
      if (used.insert(p).second) pairs.push_back(p);
    }
    std::vector<double> c;
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
      c.push_back(static_cast<double>(rng() % 200) / 20.0 - 5.0);
      norm += std::abs(c.back());
    }
    if (norm < 1e-9) continue;
    auto cfg = kernel::configFromRational(q, pairs);
    auto table = buildTable(cfg, std::span<const double>(c));
    CHECK(table.maxAbs() > 1e-9 * norm);  // zero set is proper
    CHECK(verifyNotAllZero(cfg, std::span<const double>(c)));
    ++done;
  }
}

TEST_CASE("complex weights are accepted end to end") {
  auto cfg = kernel::configFromRational(4, {{0, 0}, {1, 2}, {3, 1}});
  std::vector<Complex> c{{1.0, 0.5}, {-0.5, 1.0}, {0.0, -1.0}};
  auto table = buildTable(cfg, std::span<const Complex>(c));
  auto structure = detectStructure(table);
  for (std::int64_t k = 0; k < 4; ++k)
    for (std::int64_t l = 0; l < 4; ++l)
      CHECK(structure.coveredByCosets({k, l}) == structure.zeros.contains({k, l}));
  CHECK(verifyNotAllZero(cfg, std::span<const Complex>(c)));
}

TEST_CASE("witness configurations leave the avoided residues inside the zero structure") {
  // juru(2,2,1,0): order-2 table; indices whose symmetrization avoids the
  // witness coset must be zeros — exactly why the quadratic form vanishes.
  auto wc = certify::juruConfig(2, 2, 1, 0);
  Coset avoided({1, 0}, Subgroup::full2(2, 0, 2));
  auto table = buildTable(wc.config, std::span<const double>(wc.weights));
  auto structure = detectStructure(table);
  const std::int64_t q = table.order;
  for (std::int64_t k = 0; k < q; ++k)
    for (std::int64_t l = 0; l < q; ++l) {
      bool avoids = true;
      for (std::int64_t sk : {1, -1})
        for (std::int64_t sl : {1, -1})
          if (avoided.contains({sk * k, sl * l})) avoids = false;
      if (avoids) CHECK(structure.zeros.contains({k, l}));
    }

  auto gen = certify::generalLatticeConfig(1, 1, 2, 0, 1);
  Coset genAvoided({0, 1}, Subgroup::full2(1, 1, 2));
  auto gtable = buildTable(gen.config, std::span<const double>(gen.weights));
  auto gstructure = detectStructure(gtable);
  for (std::int64_t k = 0; k < gtable.order; ++k)
    for (std::int64_t l = 0; l < gtable.order; ++l) {
      bool avoids = true;
      for (std::int64_t sk : {1, -1})
        for (std::int64_t sl : {1, -1})
          if (genAvoided.contains({sk * k, sl * l})) avoids = false;
      if (avoids) CHECK(gstructure.zeros.contains({k, l}));
    }
}
