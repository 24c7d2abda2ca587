#include "circlespd/zeroset.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace circlespd::zeroset {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex rootOfUnity(std::int64_t t, std::int64_t q) {
  double a = kTwoPi * static_cast<double>(intlat::emod(t, q)) / static_cast<double>(q);
  return {std::cos(a), std::sin(a)};
}

template <typename Weight>
ExpSumTable buildTableImpl(const PointConfig& config, std::span<const Weight> c) {
  if (!config.exact)
    throw std::invalid_argument("buildTable: configuration has no exact rational form");
  if (c.size() != config.size())
    throw std::invalid_argument("buildTable: weight count does not match the configuration");
  kernel::validateConfig(config);
  const std::int64_t q = config.exact->order;
  ExpSumTable table{q, std::vector<Complex>(static_cast<std::size_t>(q * q))};
  for (std::int64_t k = 0; k < q; ++k)
    for (std::int64_t l = 0; l < q; ++l) {
      Complex s{0.0, 0.0};
      for (std::size_t u = 0; u < c.size(); ++u) {
        auto [p, r] = config.exact->pairs[u];
        s += Complex(c[u]) * rootOfUnity(k * p + l * r, q);
      }
      table.values[static_cast<std::size_t>(k * q + l)] = s;
    }
  return table;
}

}  // namespace

double ExpSumTable::maxAbs() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

ExpSumTable buildTable(const PointConfig& config, std::span<const double> c) {
  return buildTableImpl<double>(config, c);
}

ExpSumTable buildTable(const PointConfig& config, std::span<const Complex> c) {
  return buildTableImpl<Complex>(config, c);
}

// ---------------------------------------------------------------------------
// Subgroup enumeration and structure detection

std::vector<intlat::Subgroup> subgroupsContaining(std::int64_t q) {
  if (q < 1) throw std::invalid_argument("subgroupsContaining: order must be positive");
  std::vector<intlat::Subgroup> out;
  for (std::int64_t a = 1; a <= q; ++a) {
    if (q % a != 0) continue;
    for (std::int64_t d = 1; d <= q; ++d) {
      if (q % d != 0) continue;
      for (std::int64_t b = 0; b < d; ++b)
        if ((q / a * b) % d == 0)  // (q,0) in the subgroup
          out.push_back(intlat::Subgroup::full2(a, b, d));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool ZeroStructure::coveredByCosets(LatticePoint p) const {
  return std::any_of(cosets.begin(), cosets.end(),
                     [&](const intlat::Coset& c) { return c.contains(p); });
}

ZeroStructure detectStructure(const ExpSumTable& table, double tol) {
  const std::int64_t q = table.order;
  ZeroStructure out;
  out.order = q;
  const double cutoff = tol * table.maxAbs();  // maxAbs == 0 classifies everything zero
  for (std::int64_t k = 0; k < q; ++k)
    for (std::int64_t l = 0; l < q; ++l)
      if (std::abs(table.at(k, l)) <= cutoff) out.zeros.insert({k, l});

  // Largest-subgroup-first greedy cover: subgroups ordered by cardinality of
  // one period (q^2 / index) descending, canonical order breaking ties.
  auto groups = subgroupsContaining(q);
  std::stable_sort(groups.begin(), groups.end(),
                   [](const intlat::Subgroup& x, const intlat::Subgroup& y) {
                     return x.a() * x.d() < y.a() * y.d();
                   });

  std::set<LatticePoint> uncovered = out.zeros;
  while (!uncovered.empty()) {
    LatticePoint z = *uncovered.begin();
    for (const auto& g : groups) {
      intlat::Coset candidate(z, g);
      bool allZero = true;
      for (std::int64_t p = 0; p < q && allZero; ++p)
        for (std::int64_t s = 0; s < q; ++s) {
          LatticePoint pt{z.k + p * g.a(), z.l + p * g.b() + s * g.d()};
          if (!out.zeros.contains({intlat::emod(pt.k, q), intlat::emod(pt.l, q)})) {
            allZero = false;
            break;
          }
        }
      if (!allZero) continue;
      out.cosets.push_back(candidate);
      for (auto it = uncovered.begin(); it != uncovered.end();)
        it = candidate.contains(*it) ? uncovered.erase(it) : std::next(it);
      break;  // (qZ,qZ) itself always succeeds, so a coset was emitted
    }
  }
  std::sort(out.cosets.begin(), out.cosets.end());
  return out;
}

// ---------------------------------------------------------------------------
// Vanishing lemma check

namespace {

template <typename Weight>
bool verifyNotAllZeroImpl(const PointConfig& config, std::span<const Weight> c) {
  ExpSumTable table = buildTableImpl<Weight>(config, c);
  const std::int64_t q = table.order;
  double scale = 0.0;
  for (const auto& w : c) scale += std::abs(Complex(w));
  bool allZero = table.maxAbs() <= 1e-12 * std::max(scale, 1.0);
  if (!allZero) return true;

  // Character orthogonality over one period recovers each weight exactly:
  // c_u = (1/q^2) sum_{k,l} b_{k,l} conj(chi_u(k,l)) for distinct points.
  double worst = 0.0;
  for (std::size_t u = 0; u < c.size(); ++u) {
    auto [p, r] = config.exact->pairs[u];
    Complex rec{0.0, 0.0};
    for (std::int64_t k = 0; k < q; ++k)
      for (std::int64_t l = 0; l < q; ++l)
        rec += table.at(k, l) * rootOfUnity(-(k * p + l * r), q);
    rec /= static_cast<double>(q) * static_cast<double>(q);
    worst = std::max({worst, std::abs(rec - Complex(c[u]))});
  }
  if (worst > 1e-10 * std::max(scale, 1.0)) return false;  // table inconsistent with weights
  double normC = 0.0;
  for (const auto& w : c) normC = std::max(normC, std::abs(Complex(w)));
  return normC <= 1e-10 * std::max(scale, 1.0);
}

}  // namespace

bool verifyNotAllZero(const PointConfig& config, std::span<const double> c) {
  return verifyNotAllZeroImpl<double>(config, c);
}

bool verifyNotAllZero(const PointConfig& config, std::span<const Complex> c) {
  return verifyNotAllZeroImpl<Complex>(config, c);
}

}  // namespace circlespd::zeroset
