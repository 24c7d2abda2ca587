#include "circlespd/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace circlespd::certify {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex unitPhase(double angle) { return {std::cos(angle), std::sin(angle)}; }

// e^{2 pi i t / q} through the reduced residue, exact for roots of unity.
Complex rootOfUnity(std::int64_t t, std::int64_t q) {
  return unitPhase(kTwoPi * static_cast<double>(intlat::emod(t, q)) / static_cast<double>(q));
}

double sumAbs(std::span<const double> c) {
  double s = 0.0;
  for (double x : c) s += std::abs(x);
  return s;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

double circleDistance(double x, double y) {
  double d = std::abs(x - y);
  return std::min(d, kTwoPi - d);
}

}  // namespace

// ---------------------------------------------------------------------------
// Exponential sums

std::pair<Complex, Complex> expSums(const PointConfig& config, std::span<const double> c,
                                    std::int64_t k, std::int64_t l) {
  if (c.size() != config.size())
    throw std::invalid_argument("expSums: weight count does not match the configuration");
  Complex plus{0.0, 0.0}, minus{0.0, 0.0};
  if (config.exact) {
    const std::int64_t q = config.exact->order;
    for (std::size_t u = 0; u < c.size(); ++u) {
      auto [p, r] = config.exact->pairs[u];
      plus += c[u] * rootOfUnity(k * p + l * r, q);
      minus += c[u] * rootOfUnity(k * p - l * r, q);
    }
  } else {
    for (std::size_t u = 0; u < c.size(); ++u) {
      auto [t, f] = config.angles[u];
      plus += c[u] * unitPhase(static_cast<double>(k) * t + static_cast<double>(l) * f);
      minus += c[u] * unitPhase(static_cast<double>(k) * t - static_cast<double>(l) * f);
    }
  }
  return {plus, minus};
}

double quadraticForm(const GramMatrix& a, std::span<const double> c) {
  if (c.size() != a.size())
    throw std::invalid_argument("quadraticForm: dimension mismatch");
  double s = 0.0;
  for (std::size_t u = 0; u < c.size(); ++u)
    for (std::size_t v = 0; v < c.size(); ++v) s += c[u] * c[v] * a.at(u, v);
  return s;
}

NullEquivalenceReport checkNullEquivalence(const ChebKernel& kernel, const PointConfig& config,
                                           std::span<const double> c, double tol) {
  NullEquivalenceReport rep;
  const double absC = sumAbs(c);
  const double norm = kernel::schoenbergNorm(kernel);
  rep.quadraticFormValue = quadraticForm(kernel::gram(kernel, config), c);
  rep.formThreshold = tol * absC * absC * norm;
  rep.sumThreshold = std::sqrt(tol) * absC;
  double worst = 0.0;
  for (const auto& [p, a] : kernel.coeffs()) {
    auto [sp, sm] = expSums(config, c, p.k, p.l);
    worst = std::max({worst, std::abs(sp), std::abs(sm)});
  }
  rep.maxSupportSum = worst;
  bool formVanishes = rep.quadraticFormValue <= rep.formThreshold;
  bool sumsVanish = rep.maxSupportSum <= rep.sumThreshold;
  rep.equivalent = (formVanishes == sumsVanish);
  return rep;
}

// ---------------------------------------------------------------------------
// Null configurations

namespace {

void checkWitnessConfig(const WitnessConfig& wc, const char* who) {
  kernel::validateConfig(wc.config);  // throws on duplicates
  double maxAbs = 0.0;
  for (double w : wc.weights) maxAbs = std::max(maxAbs, std::abs(w));
  if (maxAbs < 1e-9) {
    std::ostringstream msg;
    msg << who << ": weight vector is numerically zero (max |c| = " << maxAbs << ")";
    throw std::logic_error(msg.str());
  }
}

}  // namespace

WitnessConfig juruConfig(std::int64_t a, std::int64_t b, std::int64_t j, std::int64_t jp) {
  if (a < 1 || b < 1 || (a == 1 && b == 1))
    throw std::invalid_argument("juruConfig: need a,b >= 1 and (a,b) != (1,1)");
  if (j < 0 || j >= a || jp < 0 || jp >= b)
    throw std::invalid_argument("juruConfig: offset must satisfy 0 <= j < a, 0 <= j' < b");

  WitnessConfig out;
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  if (a == 1) {
    // single-circle branch on the second factor
    for (std::int64_t v = 1; v <= b; ++v) {
      pairs.emplace_back(0, v);
      out.weights.push_back(std::cos(kTwoPi * static_cast<double>(intlat::emod(v * jp, b)) /
                                     static_cast<double>(b)));
    }
    out.config = kernel::configFromRational(b, std::move(pairs));
  } else if (b == 1) {
    for (std::int64_t u = 1; u <= a; ++u) {
      pairs.emplace_back(u, 0);
      out.weights.push_back(std::cos(kTwoPi * static_cast<double>(intlat::emod(u * j, a)) /
                                     static_cast<double>(a)));
    }
    out.config = kernel::configFromRational(a, std::move(pairs));
  } else {
    const std::int64_t q = intlat::lcm64(a, b);
    for (std::int64_t u = 1; u <= a; ++u)
      for (std::int64_t v = 1; v <= b; ++v) {
        pairs.emplace_back(u * (q / a), v * (q / b));
        std::int64_t phase = intlat::emod(u * j * (q / a) + v * jp * (q / b), q);
        out.weights.push_back(
            std::cos(kTwoPi * static_cast<double>(phase) / static_cast<double>(q)));
      }
    out.config = kernel::configFromRational(q, std::move(pairs));
  }
  checkWitnessConfig(out, "juruConfig");
  return out;
}

WitnessConfig generalLatticeConfig(std::int64_t a, std::int64_t b, std::int64_t d,
                                   std::int64_t j, std::int64_t jp) {
  if (a < 1 || d < 1 || b < 0 || b >= d)
    throw std::invalid_argument("generalLatticeConfig: need canonical a,d >= 1, 0 <= b < d");
  if (a * d == 1) throw std::invalid_argument("generalLatticeConfig: lattice must be proper (ad > 1)");
  if (j < 0 || j >= a || jp < 0 || jp >= d)
    throw std::invalid_argument("generalLatticeConfig: offset must satisfy 0 <= j < a, 0 <= j' < d");

  const std::int64_t q = a * d;
  WitnessConfig out;
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (std::int64_t u = 1; u <= a; ++u)
    for (std::int64_t v = 1; v <= d; ++v) {
      // theta_{uv} = 2 pi (u d - v b) / (a d), phi_v = 2 pi v a / (a d)
      pairs.emplace_back(u * d - v * b, v * a);
      std::int64_t phase = intlat::emod(-u * j * d - v * jp * a + v * j * b, q);
      out.weights.push_back(
          std::cos(kTwoPi * static_cast<double>(phase) / static_cast<double>(q)));
    }
  out.config = kernel::configFromRational(q, std::move(pairs));
  checkWitnessConfig(out, "generalLatticeConfig");
  return out;
}

// ---------------------------------------------------------------------------
// Cyclic Jacobi eigensolver

std::vector<double> symmetricEigenvalues(const GramMatrix& matrix) {
  const std::size_t n = matrix.size();
  if (n == 0) throw std::invalid_argument("symmetricEigenvalues: empty matrix");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (matrix.at(i, j) != matrix.at(j, i))
        throw std::invalid_argument("symmetricEigenvalues: matrix is not symmetric");

  std::vector<double> a(matrix.data());
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

  double frob = 0.0;
  for (double x : a) frob += x * x;
  frob = std::sqrt(frob);
  const double target = 1e-13 * frob;

  auto offNorm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * at(i, j) * at(i, j);
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100; ++sweep) {
    if (offNorm() <= target || frob == 0.0) {
      std::vector<double> eig(n);
      for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
      std::sort(eig.begin(), eig.end());
      return eig;
    }
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = at(p, q);
        if (apq == 0.0) continue;
        double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double cs = 1.0 / std::sqrt(t * t + 1.0);
        double sn = t * cs;
        for (std::size_t i = 0; i < n; ++i) {
          double aip = at(i, p), aiq = at(i, q);
          at(i, p) = cs * aip - sn * aiq;
          at(i, q) = sn * aip + cs * aiq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          double api = at(p, i), aqi = at(q, i);
          at(p, i) = cs * api - sn * aqi;
          at(q, i) = sn * api + cs * aqi;
        }
      }
  }
  throw std::runtime_error("symmetricEigenvalues: Jacobi failed to converge in 100 sweeps");
}

double minEigen(const GramMatrix& a) { return symmetricEigenvalues(a).front(); }

// ---------------------------------------------------------------------------
// Empirical verification

PositivityReport verifySpdEmpirical(const ChebKernel& kernel, int nPoints, int trials,
                                    std::uint64_t seed, double minSeparation,
                                    std::span<const PointConfig> injected) {
  if (nPoints < 1 || nPoints > 40)
    throw std::invalid_argument("verifySpdEmpirical: nPoints must be in [1, 40]");
  if (trials < 0 || trials > 200)
    throw std::invalid_argument("verifySpdEmpirical: trials must be in [0, 200]");
  if (minSeparation < 0) throw std::invalid_argument("verifySpdEmpirical: negative separation");

  PositivityReport report;
  report.minEigenvalue = std::numeric_limits<double>::quiet_NaN();

  auto consider = [&](const PointConfig& config) {
    double ev = minEigen(kernel::gram(kernel, config));
    if (report.trials == 0 || ev < report.minEigenvalue) {
      report.minEigenvalue = ev;
      report.worstConfig = config;
    }
    ++report.trials;
  };

  for (int trial = 0; trial < trials; ++trial) {
    std::uint64_t state = seed;
    for (int burn = 0; burn <= trial; ++burn) splitmix64(state);  // per-trial sub-seed
    std::vector<std::pair<double, double>> pts;
    std::int64_t attempts = 0;
    const std::int64_t maxAttempts = 10000LL * nPoints;
    while (static_cast<int>(pts.size()) < nPoints) {
      if (++attempts > maxAttempts) {
        std::ostringstream msg;
        msg << "verifySpdEmpirical: could not place " << nPoints
            << " points with separation " << minSeparation;
        throw std::runtime_error(msg.str());
      }
      double t = kTwoPi * uniform01(state);
      double f = kTwoPi * uniform01(state);
      bool ok = true;
      for (auto [t0, f0] : pts)
        if (std::max(circleDistance(t, t0), circleDistance(f, f0)) < minSeparation) {
          ok = false;
          break;
        }
      if (ok) pts.emplace_back(t, f);
    }
    consider(kernel::configFromAngles(std::move(pts)));
  }
  for (const auto& config : injected) consider(config);
  return report;
}

// ---------------------------------------------------------------------------
// Complex circle

ComplexKernel::ComplexKernel(std::map<LatticePoint, double> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->second < 0.0)
      throw std::invalid_argument("ComplexKernel: coefficients must be nonnegative");
    it = (it->second == 0.0) ? coeffs_.erase(it) : std::next(it);
  }
}

Complex expSumSingle(const PointConfig& config, std::span<const Complex> c, std::int64_t k,
                     std::int64_t l) {
  if (c.size() != config.size())
    throw std::invalid_argument("expSumSingle: weight count does not match the configuration");
  Complex s{0.0, 0.0};
  if (config.exact) {
    const std::int64_t q = config.exact->order;
    for (std::size_t u = 0; u < c.size(); ++u) {
      auto [p, r] = config.exact->pairs[u];
      s += c[u] * rootOfUnity(k * p + l * r, q);
    }
  } else {
    for (std::size_t u = 0; u < c.size(); ++u) {
      auto [t, f] = config.angles[u];
      s += c[u] * unitPhase(static_cast<double>(k) * t + static_cast<double>(l) * f);
    }
  }
  return s;
}

double hermitianForm(const ComplexKernel& kernel, const PointConfig& config,
                     std::span<const Complex> c) {
  if (c.size() != config.size())
    throw std::invalid_argument("hermitianForm: weight count does not match the configuration");
  kernel::validateConfig(config);
  Complex s{0.0, 0.0};
  const std::size_t n = c.size();
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      Complex entry{0.0, 0.0};
      double dt = config.angles[v].first - config.angles[u].first;
      double df = config.angles[v].second - config.angles[u].second;
      for (const auto& [p, a] : kernel.coeffs())
        entry += a * unitPhase(static_cast<double>(p.k) * dt + static_cast<double>(p.l) * df);
      s += std::conj(c[u]) * c[v] * entry;
    }
  return s.real();
}

NullEquivalenceReport checkNullEquivalenceComplex(const ComplexKernel& kernel,
                                                  const PointConfig& config,
                                                  std::span<const Complex> c, double tol) {
  NullEquivalenceReport rep;
  double absC = 0.0, norm = 0.0;
  for (const auto& w : c) absC += std::abs(w);
  for (const auto& [p, a] : kernel.coeffs()) norm += a;
  rep.quadraticFormValue = hermitianForm(kernel, config, c);
  rep.formThreshold = tol * absC * absC * norm;
  rep.sumThreshold = std::sqrt(tol) * absC;
  double worst = 0.0;
  for (const auto& [p, a] : kernel.coeffs())
    worst = std::max(worst, std::abs(expSumSingle(config, c, p.k, p.l)));
  rep.maxSupportSum = worst;
  rep.equivalent =
      (rep.quadraticFormValue <= rep.formThreshold) == (rep.maxSupportSum <= rep.sumThreshold);
  return rep;
}

}  // namespace circlespd::certify
