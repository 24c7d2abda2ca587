#include "circlespd/json_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <stdexcept>

namespace circlespd::io {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::int64_t asInt(const json& j, const char* what) {
  require(j.is_number_integer(), what);
  return j.get<std::int64_t>();
}

std::vector<intlat::LatticePoint> pointList(const json& j, const char* what) {
  require(j.is_array(), what);
  std::vector<intlat::LatticePoint> out;
  for (const auto& e : j) {
    require(e.is_array() && e.size() == 2, what);
    out.push_back({asInt(e[0], what), asInt(e[1], what)});
  }
  return out;
}

json pointArray(const intlat::LatticePoint& p) { return json::array({p.k, p.l}); }

}  // namespace

json toJson(const intlat::Subgroup& s) {
  json gens = json::array();
  for (const auto& g : s.generators()) gens.push_back(pointArray(g));
  return gens;
}

intlat::Subgroup subgroupFromJson(const json& j) {
  auto gens = pointList(j, "subgroup: gens must be an array of [a,b] pairs");
  return intlat::canonicalize(gens);
}

json toJson(const intlat::Coset& c) {
  return json{{"offset", pointArray(c.offset())}, {"gens", toJson(c.group())}};
}

intlat::Coset cosetFromJson(const json& j) {
  require(j.is_object() && j.contains("offset") && j.contains("gens"),
          "coset: expected {\"offset\":[j,j'],\"gens\":[...]}");
  const auto& off = j.at("offset");
  require(off.is_array() && off.size() == 2, "coset: offset must be [j,j']");
  return {{asInt(off[0], "coset offset"), asInt(off[1], "coset offset")},
          subgroupFromJson(j.at("gens"))};
}

json toJson(const support::SupportSpec& s) {
  json out;
  out["mode"] = s.mode() == support::Mode::RealSymmetrized ? "real" : "complex";
  json expl = json::array(), rem = json::array();
  for (const auto& p : s.explicitPoints()) expl.push_back(pointArray(p));
  for (const auto& p : s.removedPoints()) rem.push_back(pointArray(p));
  out["explicit"] = expl;
  out["removed"] = rem;
  if (std::holds_alternative<support::NoTail>(s.tail())) {
    out["tail"] = json{{"kind", "none"}};
  } else if (const auto* mt = std::get_if<support::MinTail>(&s.tail())) {
    out["tail"] = json{{"kind", "min"}, {"N", mt->minIndex}};
  } else {
    const auto& pt = std::get<support::PeriodicTail>(s.tail());
    json res = json::array();
    for (const auto& r : pt.residues) res.push_back(pointArray(r));
    out["tail"] = json{{"kind", "periodic"}, {"m", pt.modulus}, {"residues", res}};
  }
  return out;
}

support::SupportSpec supportSpecFromJson(const json& j) {
  require(j.is_object(), "support spec: expected an object");
  require(j.contains("mode") && j.at("mode").is_string(), "support spec: missing mode");
  std::string modeStr = j.at("mode").get<std::string>();
  require(modeStr == "real" || modeStr == "complex", "support spec: mode must be real|complex");
  support::Mode mode = modeStr == "real" ? support::Mode::RealSymmetrized
                                         : support::Mode::ComplexDirect;
  auto expl = pointList(j.value("explicit", json::array()), "support spec: bad explicit list");
  auto rem = pointList(j.value("removed", json::array()), "support spec: bad removed list");
  require(j.contains("tail") && j.at("tail").is_object(), "support spec: missing tail");
  const auto& t = j.at("tail");
  require(t.contains("kind") && t.at("kind").is_string(), "support spec: tail kind missing");
  std::string kind = t.at("kind").get<std::string>();
  support::TailLaw tail;
  if (kind == "none") {
    tail = support::NoTail{};
  } else if (kind == "min") {
    require(t.contains("N"), "support spec: min tail needs N");
    tail = support::MinTail{asInt(t.at("N"), "support spec: N must be an integer")};
  } else if (kind == "periodic") {
    require(t.contains("m") && t.contains("residues"), "support spec: periodic tail needs m, residues");
    support::PeriodicTail p;
    p.modulus = asInt(t.at("m"), "support spec: m must be an integer");
    for (const auto& r : pointList(t.at("residues"), "support spec: bad residues")) p.residues.insert(r);
    tail = std::move(p);
  } else {
    throw std::invalid_argument("support spec: tail kind must be none|min|periodic");
  }
  return {mode, {expl.begin(), expl.end()}, {rem.begin(), rem.end()}, std::move(tail)};
}

json toJson(const kernel::ChebKernel& k) {
  json coeffs = json::array();
  for (const auto& [p, a] : k.coeffs()) coeffs.push_back(json::array({p.k, p.l, a}));
  return json{{"coeffs", coeffs}};
}

kernel::ChebKernel kernelFromJson(const json& j) {
  require(j.is_object() && j.contains("coeffs") && j.at("coeffs").is_array(),
          "kernel: expected {\"coeffs\":[[k,l,a],...]}");
  std::map<intlat::LatticePoint, double> coeffs;
  for (const auto& e : j.at("coeffs")) {
    require(e.is_array() && e.size() == 3 && e[2].is_number(), "kernel: entries must be [k,l,a]");
    coeffs[{asInt(e[0], "kernel index"), asInt(e[1], "kernel index")}] = e[2].get<double>();
  }
  return kernel::ChebKernel(std::move(coeffs));
}

json toJson(const kernel::PointConfig& c) {
  if (c.exact) {
    json pairs = json::array();
    for (auto [p, r] : c.exact->pairs) pairs.push_back(json::array({p, r}));
    return json{{"exact", json{{"q", c.exact->order}, {"pairs", pairs}}}};
  }
  json angles = json::array();
  for (auto [t, f] : c.angles) angles.push_back(json::array({t, f}));
  return json{{"angles", angles}};
}

kernel::PointConfig configFromJson(const json& j) {
  require(j.is_object(), "point config: expected an object");
  if (j.contains("exact")) {
    const auto& e = j.at("exact");
    require(e.is_object() && e.contains("q") && e.contains("pairs"),
            "point config: exact needs q and pairs");
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    for (const auto& p : pointList(e.at("pairs"), "point config: bad exact pairs"))
      pairs.emplace_back(p.k, p.l);
    return kernel::configFromRational(asInt(e.at("q"), "point config: q"), std::move(pairs));
  }
  require(j.contains("angles") && j.at("angles").is_array(),
          "point config: expected angles or exact");
  std::vector<std::pair<double, double>> angles;
  for (const auto& a : j.at("angles")) {
    require(a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number(),
            "point config: angles must be [theta,phi] pairs");
    angles.emplace_back(a[0].get<double>(), a[1].get<double>());
  }
  return kernel::configFromAngles(std::move(angles));
}

json toJson(const certify::NullWitness& w) {
  json pts = json::array();
  for (auto [t, f] : w.config.angles) pts.push_back(json::array({t, f}));
  return json{{"avoided", toJson(w.avoided)},
              {"points", pts},
              {"c", w.weights},
              {"residual", w.residual}};
}

json toJson(const certify::PositivityReport& r) {
  json out{{"trials", r.trials}, {"worstConfig", toJson(r.worstConfig)}};
  if (std::isnan(r.minEigenvalue))
    out["minEigenvalue"] = nullptr;
  else
    out["minEigenvalue"] = r.minEigenvalue;
  return out;
}

json toJson(const zeroset::ZeroStructure& z) {
  json zeros = json::array(), cosets = json::array();
  for (const auto& p : z.zeros) zeros.push_back(pointArray(p));
  for (const auto& c : z.cosets) cosets.push_back(toJson(c));
  return json{{"q", z.order}, {"zeros", zeros}, {"cosets", cosets}};
}

std::string gramToCsv(const kernel::GramMatrix& g) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", g.at(i, j));
      out += buf;
      out += (j + 1 < g.size()) ? "," : "\n";
    }
  }
  return out;
}

std::uint64_t fnv1aDigest(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace circlespd::io
