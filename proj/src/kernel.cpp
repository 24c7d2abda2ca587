#include "circlespd/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace circlespd::kernel {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduceAngle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r;
}

struct KahanSum {
  double sum = 0.0, carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

ChebKernel::ChebKernel(std::map<LatticePoint, double> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->first.k < 0 || it->first.l < 0)
      throw std::invalid_argument("ChebKernel: coefficient indices must be nonnegative");
    if (it->second < 0.0)
      throw std::invalid_argument("ChebKernel: coefficients must be nonnegative");
    it = (it->second == 0.0) ? coeffs_.erase(it) : std::next(it);
  }
}

std::set<LatticePoint> ChebKernel::supportPoints() const {
  std::set<LatticePoint> out;
  for (const auto& [p, a] : coeffs_) out.insert(p);
  return out;
}

double schoenbergNorm(const ChebKernel& kernel) {
  KahanSum s;
  for (const auto& [p, a] : kernel.coeffs()) s.add(a);
  return s.sum;
}

double evalKrAngles(const ChebKernel& kernel, double dtheta, double dphi) {
  KahanSum s;
  for (const auto& [p, a] : kernel.coeffs())
    s.add(a * std::cos(static_cast<double>(p.k) * dtheta) *
          std::cos(static_cast<double>(p.l) * dphi));
  return s.sum;
}

void validateAgainstSupport(const ChebKernel& kernel, const support::SupportSpec& spec) {
  for (const auto& [p, a] : kernel.coeffs())
    if (!spec.member(p)) {
      std::ostringstream msg;
      msg << "kernel coefficient at (" << p.k << "," << p.l << ") lies outside the support spec";
      throw std::invalid_argument(msg.str());
    }
  if (std::holds_alternative<support::NoTail>(spec.tail())) {
    for (const auto& p : spec.explicitPoints())
      if (!kernel.coeffs().contains(p) && !spec.removedPoints().contains(p)) {
        std::ostringstream msg;
        msg << "support point (" << p.k << "," << p.l << ") has no positive coefficient";
        throw std::invalid_argument(msg.str());
      }
  }
}

// ---------------------------------------------------------------------------
// PointConfig

PointConfig configFromAngles(std::vector<std::pair<double, double>> angles) {
  PointConfig c;
  c.angles.reserve(angles.size());
  for (auto [t, p] : angles) c.angles.emplace_back(reduceAngle(t), reduceAngle(p));
  validateConfig(c);
  return c;
}

PointConfig configFromRational(std::int64_t order,
                               std::vector<std::pair<std::int64_t, std::int64_t>> pairs) {
  if (order < 1) throw std::invalid_argument("configFromRational: order must be positive");
  PointConfig c;
  PointConfig::Exact exact{order, {}};
  for (auto [p, r] : pairs) {
    std::int64_t pr = intlat::emod(p, order), rr = intlat::emod(r, order);
    exact.pairs.emplace_back(pr, rr);
    c.angles.emplace_back(kTwoPi * static_cast<double>(pr) / static_cast<double>(order),
                          kTwoPi * static_cast<double>(rr) / static_cast<double>(order));
  }
  c.exact = std::move(exact);
  validateConfig(c);
  return c;
}

void validateConfig(const PointConfig& config) {
  const std::size_t n = config.angles.size();
  if (config.exact) {
    if (config.exact->pairs.size() != n)
      throw std::invalid_argument("PointConfig: exact form size mismatch");
    if (config.exact->order < 1)
      throw std::invalid_argument("PointConfig: exact order must be positive");
    auto pairs = config.exact->pairs;
    std::sort(pairs.begin(), pairs.end());
    if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end())
      throw std::invalid_argument("PointConfig: duplicate points");
    for (std::size_t i = 0; i < n; ++i) {
      auto [p, r] = config.exact->pairs[i];
      double t = kTwoPi * static_cast<double>(intlat::emod(p, config.exact->order)) /
                 static_cast<double>(config.exact->order);
      double f = kTwoPi * static_cast<double>(intlat::emod(r, config.exact->order)) /
                 static_cast<double>(config.exact->order);
      if (std::abs(t - config.angles[i].first) > 1e-12 ||
          std::abs(f - config.angles[i].second) > 1e-12)
        throw std::invalid_argument("PointConfig: exact form does not reproduce the angles");
    }
    return;
  }
  auto angles = config.angles;
  std::sort(angles.begin(), angles.end());
  if (std::adjacent_find(angles.begin(), angles.end()) != angles.end())
    throw std::invalid_argument("PointConfig: duplicate points");
}

// ---------------------------------------------------------------------------
// Gram assembly

GramMatrix gram(const ChebKernel& kernel, const PointConfig& config) {
  validateConfig(config);
  const std::size_t n = config.size();
  GramMatrix a(n);
  const double norm = schoenbergNorm(kernel);
  for (std::size_t u = 0; u < n; ++u) {
    a.at(u, u) = norm;
    for (std::size_t v = u + 1; v < n; ++v) {
      double val = evalKrAngles(kernel, config.angles[u].first - config.angles[v].first,
                                config.angles[u].second - config.angles[v].second);
      a.at(u, v) = val;
      a.at(v, u) = val;
    }
  }
  return a;
}

// ---------------------------------------------------------------------------
// Grid sampling and coefficient recovery

GridSamples sampleGrid(const ChebKernel& kernel, std::int64_t degree) {
  if (degree < 0) throw std::invalid_argument("sampleGrid: degree must be nonnegative");
  const std::int64_t q = 2 * degree + 1;
  GridSamples out{degree, {}};
  out.values.resize(static_cast<std::size_t>(q * q));
  for (std::int64_t i = 0; i < q; ++i)
    for (std::int64_t j = 0; j < q; ++j)
      out.values[static_cast<std::size_t>(i * q + j)] =
          evalKrAngles(kernel, kTwoPi * static_cast<double>(i) / static_cast<double>(q),
                       kTwoPi * static_cast<double>(j) / static_cast<double>(q));
  return out;
}

ChebKernel fitCoefficients(const GridSamples& samples) {
  const std::int64_t m = samples.degree;
  if (m < 0) throw std::invalid_argument("fitCoefficients: degree must be nonnegative");
  const std::int64_t q = 2 * m + 1;
  if (samples.values.size() != static_cast<std::size_t>(q * q))
    throw std::invalid_argument("fitCoefficients: sample count does not match the grid");

  // cos(k theta_i) table; orthogonal on the odd uniform grid for k <= m.
  std::vector<double> cosTable(static_cast<std::size_t>((m + 1) * q));
  for (std::int64_t k = 0; k <= m; ++k)
    for (std::int64_t i = 0; i < q; ++i)
      cosTable[static_cast<std::size_t>(k * q + i)] =
          std::cos(kTwoPi * static_cast<double>(k) * static_cast<double>(i) /
                   static_cast<double>(q));

  std::map<LatticePoint, double> raw;
  double maxAbs = 0.0;
  for (std::int64_t k = 0; k <= m; ++k)
    for (std::int64_t l = 0; l <= m; ++l) {
      KahanSum s;
      for (std::int64_t i = 0; i < q; ++i)
        for (std::int64_t j = 0; j < q; ++j)
          s.add(samples.values[static_cast<std::size_t>(i * q + j)] *
                cosTable[static_cast<std::size_t>(k * q + i)] *
                cosTable[static_cast<std::size_t>(l * q + j)]);
      double ck = (k == 0) ? 1.0 : 2.0;
      double cl = (l == 0) ? 1.0 : 2.0;
      double a = s.sum * ck * cl / (static_cast<double>(q) * static_cast<double>(q));
      raw[{k, l}] = a;
      maxAbs = std::max(maxAbs, std::abs(a));
    }

  std::vector<std::pair<LatticePoint, double>> offenders;
  for (const auto& [p, a] : raw)
    if (a < -1e-8) offenders.emplace_back(p, a);
  if (!offenders.empty()) {
    std::ostringstream msg;
    msg << "fitCoefficients: recovered negative coefficients (non-PD sample data):";
    for (const auto& [p, a] : offenders) msg << " (" << p.k << "," << p.l << ")=" << a;
    throw NonPositiveCoefficients(msg.str(), std::move(offenders));
  }

  const double dropTol = 1e-12 * std::max(1.0, maxAbs);
  std::map<LatticePoint, double> coeffs;
  for (const auto& [p, a] : raw)
    if (a > dropTol) coeffs[p] = a;
  return ChebKernel(std::move(coeffs));
}

}  // namespace circlespd::kernel
