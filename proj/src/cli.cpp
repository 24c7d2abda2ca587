#include "circlespd/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "circlespd/json_io.hpp"

namespace circlespd::cli {

namespace {

using io::json;

constexpr const char* kSchema = "circlespd/run-report/1";

struct MalformedInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResidualFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parseJsonFile(const std::string& path, json& digests, const char* role) {
  std::string raw = readFile(path);
  char hex[32];
  std::snprintf(hex, sizeof hex, "fnv1a:%016llx",
                static_cast<unsigned long long>(io::fnv1aDigest(raw)));
  digests[role] = hex;
  try {
    return json::parse(raw);
  } catch (const json::exception& e) {
    throw MalformedInput(std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

void writeAtomically(const std::string& path, const std::string& content) {
  std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
  }
  std::filesystem::rename(tmp, target);
}

void emitReport(const std::string& command, const json& digests, const json& tolerances,
                const json& result, std::chrono::steady_clock::time_point start) {
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  json report{{"schema", kSchema},      {"command", command}, {"inputs", digests},
              {"tolerances", tolerances}, {"result", result},  {"wallTimeMs", elapsed}};
  std::cout << report.dump(2) << "\n";
}

// Unit-coefficient kernel on the support window [0,W]^2 whose symmetrization
// avoids the witness coset.
kernel::ChebKernel witnessKernel(const support::SupportSpec& spec, const intlat::Coset& coset,
                                 std::int64_t window) {
  std::map<intlat::LatticePoint, double> coeffs;
  for (std::int64_t k = 0; k <= window; ++k)
    for (std::int64_t l = 0; l <= window; ++l) {
      bool avoided = true;
      for (std::int64_t sk : {1, -1})
        for (std::int64_t sl : {1, -1})
          if (coset.contains({sk * k, sl * l})) avoided = false;
      if (spec.mode() == support::Mode::ComplexDirect) avoided = !coset.contains({k, l});
      if (avoided) coeffs[{k, l}] = 1.0;
    }
  return kernel::ChebKernel(std::move(coeffs));
}

std::int64_t tailPeriod(const support::SupportSpec& spec) {
  if (const auto* t = std::get_if<support::PeriodicTail>(&spec.tail())) return t->modulus;
  if (const auto* t = std::get_if<support::MinTail>(&spec.tail())) return t->minIndex;
  std::int64_t ext = 0;
  for (const auto& p : spec.explicitPoints()) ext = std::max({ext, p.k, p.l});
  return ext;
}

std::string verdictName(support::SpdOutcome o) {
  switch (o) {
    case support::SpdOutcome::StrictlyPD: return "strictly_pd";
    case support::SpdOutcome::NotStrictlyPD: return "not_strictly_pd";
    case support::SpdOutcome::UnknownUpTo: return "unknown_up_to";
  }
  return "unknown";
}

// --- subcommand bodies ----------------------------------------------------

int cmdDecide(const std::string& supportFile, std::int64_t maxModulus, std::int64_t window,
              const std::string& outPath, const std::string& command,
              std::chrono::steady_clock::time_point start) {
  json digests = json::object();
  support::SupportSpec spec = [&] {
    try {
      return io::supportSpecFromJson(parseJsonFile(supportFile, digests, "support"));
    } catch (const std::invalid_argument& e) {
      throw MalformedInput(e.what());
    }
  }();

  auto verdict = support::decideSpd(spec);
  json result{{"verdict", verdictName(verdict.outcome)}};
  if (verdict.witness) {
    result["witness"] = io::toJson(*verdict.witness);
    result["witnessSound"] = support::verifyWitnessDisjoint(spec, *verdict.witness);
  } else {
    result["witness"] = nullptr;
  }
  if (maxModulus > 0) {
    std::int64_t w = window > 0 ? window : 4 * maxModulus * std::max<std::int64_t>(tailPeriod(spec), 1);
    auto oracle = support::decideSpdBounded(spec, maxModulus, w);
    json o{{"verdict", verdictName(oracle.outcome)}, {"maxModulus", maxModulus}, {"window", w}};
    if (oracle.witness) o["witness"] = io::toJson(*oracle.witness);
    if (oracle.outcome == support::SpdOutcome::UnknownUpTo) o["bound"] = oracle.bound;
    result["oracle"] = o;
  }
  if (!outPath.empty()) writeAtomically(outPath, result.dump(2) + "\n");
  emitReport(command, digests, json::object(), result, start);
  return verdict.outcome == support::SpdOutcome::StrictlyPD ? 0 : 1;
}

// Complex-circle variant: complex unit weights on the same root-of-unity grid
// make the single exponential sum vanish off the avoided coset exactly.
struct ComplexWitness {
  kernel::PointConfig config;
  std::vector<certify::Complex> weights;
};

ComplexWitness complexWitnessConfig(const intlat::Coset& coset) {
  const std::int64_t c = coset.group().a();
  const std::int64_t j = coset.offset().k, jp = coset.offset().l;
  ComplexWitness out;
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (std::int64_t u = 1; u <= c; ++u)
    for (std::int64_t v = 1; v <= c; ++v) {
      pairs.emplace_back(u, v);
      double phase = -2.0 * std::numbers::pi *
                     static_cast<double>(intlat::emod(u * j + v * jp, c)) /
                     static_cast<double>(c);
      out.weights.emplace_back(std::cos(phase), std::sin(phase));
    }
  out.config = kernel::configFromRational(c, std::move(pairs));
  return out;
}

int cmdCounterexample(const std::string& supportFile, double tol, const std::string& outPath,
                      const std::string& command, std::chrono::steady_clock::time_point start) {
  json digests = json::object();
  support::SupportSpec spec = [&] {
    try {
      return io::supportSpecFromJson(parseJsonFile(supportFile, digests, "support"));
    } catch (const std::invalid_argument& e) {
      throw MalformedInput(e.what());
    }
  }();

  auto verdict = support::decideSpd(spec);
  if (verdict.outcome == support::SpdOutcome::StrictlyPD)
    throw PreconditionFailure("support is strictly positive definite; nothing to refute");
  const intlat::Coset& coset = *verdict.witness;
  const std::int64_t c = coset.group().a();  // square witness modulus
  std::int64_t window = 2 * (c + tailPeriod(spec));

  json payload, result;
  double residual = 0.0, scale = 0.0;
  bool equivalenceHolds = false;

  if (spec.mode() == support::Mode::ComplexDirect && c > 1) {
    ComplexWitness wc = complexWitnessConfig(coset);
    std::map<intlat::LatticePoint, double> coeffs;
    for (std::int64_t k = 0; k <= window; ++k)
      for (std::int64_t l = 0; l <= window; ++l)
        if (!coset.contains({k, l})) coeffs[{k, l}] = 1.0;
    certify::ComplexKernel kern(std::move(coeffs));
    residual = std::abs(certify::hermitianForm(kern, wc.config, wc.weights));
    double absC = 0.0, norm = 0.0;
    for (const auto& w : wc.weights) absC += std::abs(w);
    for (const auto& [p, a] : kern.coeffs()) norm += a;
    scale = absC * absC * norm;
    equivalenceHolds =
        static_cast<bool>(certify::checkNullEquivalenceComplex(kern, wc.config, wc.weights, tol));
    json pts = json::array(), ws = json::array();
    for (auto [t, f] : wc.config.angles) pts.push_back(json::array({t, f}));
    for (const auto& w : wc.weights) ws.push_back(json::array({w.real(), w.imag()}));
    payload = json{{"avoided", io::toJson(coset)},
                   {"points", pts},
                   {"c", ws},
                   {"residual", residual}};
  } else {
    certify::WitnessConfig wc;
    if (c == 1) {
      // Empty view: the zero kernel is annihilated by any single weight.
      wc.config = kernel::configFromAngles({{0.0, 0.0}});
      wc.weights = {1.0};
    } else {
      wc = certify::juruConfig(c, c, coset.offset().k, coset.offset().l);
    }
    kernel::ChebKernel kern = witnessKernel(spec, coset, window);
    residual = std::abs(certify::quadraticForm(kernel::gram(kern, wc.config), wc.weights));
    double absC = 0.0;
    for (double x : wc.weights) absC += std::abs(x);
    scale = absC * absC * kernel::schoenbergNorm(kern);
    equivalenceHolds =
        static_cast<bool>(certify::checkNullEquivalence(kern, wc.config, wc.weights, tol));
    certify::NullWitness witness{wc.config, wc.weights, residual, coset};
    payload = io::toJson(witness);
  }

  if (!outPath.empty()) writeAtomically(outPath, payload.dump(2) + "\n");
  result = json{{"witness", payload},
                {"kernelWindow", window},
                {"residual", residual},
                {"residualScale", scale},
                {"equivalenceHolds", equivalenceHolds}};
  emitReport(command, digests, json{{"tol", tol}}, result, start);
  if (scale > 0.0 && residual > tol * scale)
    throw ResidualFailure("null witness residual exceeds tolerance");
  return 0;
}

int cmdGram(const std::string& kernelFile, const std::string& pointsFile,
            const std::string& outPath, const std::string& command,
            std::chrono::steady_clock::time_point start) {
  json digests = json::object();
  kernel::ChebKernel kern = [&] {
    try {
      return io::kernelFromJson(parseJsonFile(kernelFile, digests, "kernel"));
    } catch (const std::invalid_argument& e) {
      throw MalformedInput(e.what());
    }
  }();
  kernel::PointConfig config = [&] {
    try {
      return io::configFromJson(parseJsonFile(pointsFile, digests, "points"));
    } catch (const std::invalid_argument& e) {
      throw MalformedInput(e.what());
    }
  }();

  kernel::GramMatrix a = kernel::gram(kern, config);
  std::string csv = io::gramToCsv(a);
  if (!outPath.empty()) writeAtomically(outPath, csv);
  json result{{"n", a.size()}, {"minEigenvalue", certify::minEigen(a)}, {"csv", csv}};
  emitReport(command, digests, json::object(), result, start);
  return 0;
}

int cmdZeroset(const std::string& pointsFile, const std::string& coeffsFile, double tol,
               const std::string& outPath, const std::string& command,
               std::chrono::steady_clock::time_point start) {
  json digests = json::object();
  kernel::PointConfig config = [&] {
    try {
      return io::configFromJson(parseJsonFile(pointsFile, digests, "points"));
    } catch (const std::invalid_argument& e) {
      throw MalformedInput(e.what());
    }
  }();
  if (!config.exact) throw MalformedInput("zeroset requires a configuration with exact angles");
  json cj = parseJsonFile(coeffsFile, digests, "coefficients");
  if (!cj.is_object() || !cj.contains("c") || !cj.at("c").is_array())
    throw MalformedInput("coefficients file must be {\"c\":[...]}");
  std::vector<double> c;
  for (const auto& x : cj.at("c")) {
    if (!x.is_number()) throw MalformedInput("coefficients must be numbers");
    c.push_back(x.get<double>());
  }
  if (c.size() != config.size())
    throw MalformedInput("coefficient count does not match the point count");

  auto table = zeroset::buildTable(config, std::span<const double>(c));
  auto structure = zeroset::detectStructure(table, tol);
  json payload = io::toJson(structure);
  if (!outPath.empty()) writeAtomically(outPath, payload.dump(2) + "\n");
  json result{{"structure", payload},
              {"notAllZero", zeroset::verifyNotAllZero(config, std::span<const double>(c))}};
  emitReport(command, digests, json{{"tol", tol}}, result, start);
  return 0;
}

int cmdFit(const std::string& samplesFile, std::int64_t degree, const std::string& outPath,
           const std::string& command, std::chrono::steady_clock::time_point start) {
  json digests = json::object();
  json sj = parseJsonFile(samplesFile, digests, "samples");
  if (!sj.is_object() || !sj.contains("samples") || !sj.at("samples").is_array())
    throw MalformedInput("samples file must be {\"samples\":[[...],...]}");
  const std::int64_t q = 2 * degree + 1;
  kernel::GridSamples samples{degree, {}};
  const auto& rows = sj.at("samples");
  if (static_cast<std::int64_t>(rows.size()) != q)
    throw MalformedInput("samples grid does not match the requested degree");
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<std::int64_t>(row.size()) != q)
      throw MalformedInput("samples grid does not match the requested degree");
    for (const auto& x : row) {
      if (!x.is_number()) throw MalformedInput("samples must be numbers");
      samples.values.push_back(x.get<double>());
    }
  }

  kernel::ChebKernel kern = [&] {
    try {
      return kernel::fitCoefficients(samples);
    } catch (const kernel::NonPositiveCoefficients& e) {
      throw MalformedInput(e.what());
    }
  }();
  json payload = io::toJson(kern);
  if (!outPath.empty()) writeAtomically(outPath, payload.dump(2) + "\n");
  json result{{"kernel", payload},
              {"terms", kern.coeffs().size()},
              {"schoenbergNorm", kernel::schoenbergNorm(kern)}};
  emitReport(command, digests, json{{"degree", degree}}, result, start);
  return 0;
}

int cmdVerify(const std::string& kernelFile, const std::string& supportFile, int nPoints,
              int trials, std::uint64_t seed, double minSeparation, const std::string& outPath,
              const std::string& command, std::chrono::steady_clock::time_point start) {
  json digests = json::object();
  kernel::ChebKernel kern = [&] {
    try {
      return io::kernelFromJson(parseJsonFile(kernelFile, digests, "kernel"));
    } catch (const std::invalid_argument& e) {
      throw MalformedInput(e.what());
    }
  }();
  if (!supportFile.empty()) {
    support::SupportSpec spec = [&] {
      try {
        return io::supportSpecFromJson(parseJsonFile(supportFile, digests, "support"));
      } catch (const std::invalid_argument& e) {
        throw MalformedInput(e.what());
      }
    }();
    try {
      kernel::validateAgainstSupport(kern, spec);
    } catch (const std::invalid_argument& e) {
      throw MalformedInput(e.what());
    }
    if (support::decideSpd(spec).outcome != support::SpdOutcome::StrictlyPD)
      throw PreconditionFailure("declared support is not strictly positive definite");
  }

  auto report = certify::verifySpdEmpirical(kern, nPoints, trials, seed, minSeparation);
  json payload = io::toJson(report);
  if (!outPath.empty()) writeAtomically(outPath, payload.dump(2) + "\n");
  emitReport(command, digests,
             json{{"minSeparation", minSeparation}, {"seed", seed}}, payload, start);
  return 0;
}

}  // namespace

int run(std::vector<std::string> args) {
  auto start = std::chrono::steady_clock::now();
  std::string command;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (i > 1) command += ' ';
    command += args[i];
  }

  CLI::App app{"strictly-positive-definiteness toolkit for kernels on a product of circles"};
  app.require_subcommand(1);

  std::string supportFile, kernelFile, pointsFile, coeffsFile, samplesFile, outPath;
  std::int64_t maxModulus = 0, window = 0, degree = 0;
  double tol = 1e-10, zeroTol = 1e-9, minSeparation = 0.0;
  int nPoints = 12, trials = 50;
  std::uint64_t seed = 0;

  auto* decide = app.add_subcommand("decide", "decide strict positive definiteness of a support");
  decide->add_option("support", supportFile, "SupportSpec JSON file")->required();
  decide->add_option("--max-modulus", maxModulus, "also run the bounded oracle up to this modulus");
  decide->add_option("--window", window, "window for the bounded oracle");
  decide->add_option("--out", outPath, "write the verdict JSON here");

  auto* cx = app.add_subcommand("counterexample", "emit a null witness for a non-SPD support");
  cx->add_option("support", supportFile, "SupportSpec JSON file")->required();
  cx->add_option("--tol", tol, "relative residual tolerance (default 1e-10)");
  cx->add_option("--out", outPath, "write the NullWitness JSON here");

  auto* gramCmd = app.add_subcommand("gram", "assemble a Gram matrix");
  gramCmd->add_option("kernel", kernelFile, "kernel JSON file")->required();
  gramCmd->add_option("points", pointsFile, "PointConfig JSON file")->required();
  gramCmd->add_option("--out", outPath, "write the CSV matrix here");

  auto* zs = app.add_subcommand("zeroset", "zero-set structure of an exponential sum");
  zs->add_option("points", pointsFile, "PointConfig JSON file (exact angles required)")->required();
  zs->add_option("coefficients", coeffsFile, "weights JSON file {\"c\":[...]}")->required();
  zs->add_option("--tol", zeroTol, "relative zero classification threshold (default 1e-9)");
  zs->add_option("--out", outPath, "write the ZeroStructure JSON here");

  auto* fit = app.add_subcommand("fit", "recover kernel coefficients from grid samples");
  fit->add_option("samples", samplesFile, "grid samples JSON file")->required();
  fit->add_option("--degree", degree, "maximum degree M (grid is (2M+1)^2)")->required();
  fit->add_option("--out", outPath, "write the kernel JSON here");

  auto* verify = app.add_subcommand("verify", "random-configuration spectral verification");
  verify->add_option("kernel", kernelFile, "kernel JSON file")->required();
  verify->add_option("--support", supportFile, "optional SupportSpec; must decide StrictlyPD");
  verify->add_option("--points", nPoints, "points per trial (default 12)");
  verify->add_option("--trials", trials, "number of trials (default 50)");
  verify->add_option("--seed", seed, "RNG seed")->required();
  verify->add_option("--min-separation", minSeparation, "pairwise separation (default 0)");
  verify->add_option("--out", outPath, "write the PositivityReport JSON here");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (decide->parsed()) return cmdDecide(supportFile, maxModulus, window, outPath, command, start);
    if (cx->parsed()) return cmdCounterexample(supportFile, tol, outPath, command, start);
    if (gramCmd->parsed()) return cmdGram(kernelFile, pointsFile, outPath, command, start);
    if (zs->parsed()) return cmdZeroset(pointsFile, coeffsFile, zeroTol, outPath, command, start);
    if (fit->parsed()) return cmdFit(samplesFile, degree, outPath, command, start);
    if (verify->parsed())
      return cmdVerify(kernelFile, supportFile, nPoints, trials, seed, minSeparation, outPath,
                       command, start);
  } catch (const MalformedInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ResidualFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 5;
  }
  return 2;
}

int run(int argc, const char* const* argv) {
  return run(std::vector<std::string>(argv, argv + argc));
}

}  // namespace circlespd::cli
