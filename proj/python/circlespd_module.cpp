#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "circlespd/certify.hpp"
#include "circlespd/intlat.hpp"
#include "circlespd/json_io.hpp"
#include "circlespd/kernel.hpp"
#include "circlespd/support.hpp"
#include "circlespd/zeroset.hpp"

namespace py = pybind11;
using namespace circlespd;

namespace {

using IntPair = std::pair<std::int64_t, std::int64_t>;

intlat::LatticePoint toPoint(const IntPair& p) { return {p.first, p.second}; }
IntPair fromPoint(const intlat::LatticePoint& p) { return {p.k, p.l}; }

std::vector<intlat::LatticePoint> toPoints(const std::vector<IntPair>& ps) {
  std::vector<intlat::LatticePoint> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back(toPoint(p));
  return out;
}

std::string outcomeName(support::SpdOutcome o) {
  switch (o) {
    case support::SpdOutcome::StrictlyPD: return "strictly_pd";
    case support::SpdOutcome::NotStrictlyPD: return "not_strictly_pd";
    case support::SpdOutcome::UnknownUpTo: return "unknown_up_to";
  }
  return "unknown";
}

kernel::GramMatrix matrixFromRows(const std::vector<std::vector<double>>& rows) {
  kernel::GramMatrix a(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size())
      throw std::invalid_argument("matrix rows must form a square matrix");
    for (std::size_t j = 0; j < rows.size(); ++j) a.at(i, j) = rows[i][j];
  }
  return a;
}

std::vector<std::vector<double>> rowsFromMatrix(const kernel::GramMatrix& a) {
  std::vector<std::vector<double>> rows(a.size(), std::vector<double>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) rows[i][j] = a.at(i, j);
  return rows;
}

}  // namespace

PYBIND11_MODULE(circlespd, m) {
  m.doc() = "Strict positive definiteness of isotropic kernels on a product of circles: "
            "lattice-support decision procedures, null-witness constructions, Gram/spectral "
            "verification, and exponential-sum zero-set structure.";

  // --- intlat ---------------------------------------------------------------
  py::class_<intlat::Subgroup>(m, "Subgroup")
      .def_property_readonly("rank", &intlat::Subgroup::rank)
      .def_property_readonly("index",
                             [](const intlat::Subgroup& s) -> py::object {
                               auto i = s.index();
                               return i ? py::cast(*i) : py::none();
                             })
      .def_property_readonly("generators",
                             [](const intlat::Subgroup& s) {
                               std::vector<IntPair> out;
                               for (const auto& g : s.generators()) out.push_back(fromPoint(g));
                               return out;
                             })
      .def("contains", [](const intlat::Subgroup& s, IntPair p) { return s.contains(toPoint(p)); })
      .def(py::self == py::self)
      .def("to_json", [](const intlat::Subgroup& s) { return io::toJson(s).dump(); })
      .def("__repr__", [](const intlat::Subgroup& s) {
        return "Subgroup(gens=" + io::toJson(s).dump() + ")";
      });

  py::class_<intlat::Coset>(m, "Coset")
      .def(py::init([](IntPair offset, const intlat::Subgroup& g) {
             return intlat::Coset(toPoint(offset), g);
           }),
           py::arg("offset"), py::arg("group"))
      .def_property_readonly("offset",
                             [](const intlat::Coset& c) { return fromPoint(c.offset()); })
      .def_property_readonly("group", &intlat::Coset::group)
      .def("contains", [](const intlat::Coset& c, IntPair p) { return c.contains(toPoint(p)); })
      .def(py::self == py::self)
      .def("to_json", [](const intlat::Coset& c) { return io::toJson(c).dump(); })
      .def("__repr__", [](const intlat::Coset& c) {
        return "Coset(" + io::toJson(c).dump() + ")";
      });

  m.def("canonicalize",
        [](const std::vector<IntPair>& gens) { return intlat::canonicalize(toPoints(gens)); },
        py::arg("generators"), "Canonical subgroup generated by a list of (k, l) pairs.");
  m.def("coset_intersect",
        [](const intlat::Coset& a, const intlat::Coset& b) -> py::object {
          auto r = intlat::cosetIntersect(a, b);
          return r ? py::cast(*r) : py::none();
        },
        py::arg("a"), py::arg("b"), "Exact coset intersection; None when disjoint.");
  m.def("decompose_to_square", &intlat::decomposeToSquare, py::arg("lattice"));
  m.def("avoiding_rect_lattice",
        [](const std::vector<intlat::Coset>& comps, const std::vector<IntPair>& extras,
           IntPair anchor) {
          return intlat::avoidingRectLattice(comps, toPoints(extras), toPoint(anchor));
        },
        py::arg("components"), py::arg("finite_extra"), py::arg("anchor"));

  // --- support --------------------------------------------------------------
  py::class_<support::SupportSpec>(m, "SupportSpec")
      .def_static("from_json",
                  [](const std::string& s) {
                    return io::supportSpecFromJson(io::json::parse(s));
                  })
      .def("member",
           [](const support::SupportSpec& s, IntPair p) { return s.member(toPoint(p)); })
      .def("in_symmetrized_view",
           [](const support::SupportSpec& s, IntPair p) {
             return s.inSymmetrizedView(toPoint(p));
           })
      .def("to_json", [](const support::SupportSpec& s) { return io::toJson(s).dump(); });

  py::class_<support::SpdVerdict>(m, "SpdVerdict")
      .def_property_readonly("outcome",
                             [](const support::SpdVerdict& v) { return outcomeName(v.outcome); })
      .def_property_readonly("witness",
                             [](const support::SpdVerdict& v) -> py::object {
                               return v.witness ? py::cast(*v.witness) : py::none();
                             })
      .def_readonly("bound", &support::SpdVerdict::bound)
      .def("__repr__", [](const support::SpdVerdict& v) {
        std::string s = "SpdVerdict(" + outcomeName(v.outcome);
        if (v.witness) s += ", witness=" + io::toJson(*v.witness).dump();
        return s + ")";
      });

  m.def("decide_spd", &support::decideSpd, py::arg("spec"));
  m.def("decide_spd_bounded", &support::decideSpdBounded, py::arg("spec"),
        py::arg("max_modulus"), py::arg("window"));
  m.def("verify_witness_disjoint", &support::verifyWitnessDisjoint, py::arg("spec"),
        py::arg("coset"));
  m.def("intersection_sampler",
        [](const support::SupportSpec& spec, const intlat::Coset& coset, int count,
           std::int64_t cap) {
          std::vector<IntPair> out;
          for (const auto& p : support::intersectionSampler(spec, coset, count, cap))
            out.push_back(fromPoint(p));
          return out;
        },
        py::arg("spec"), py::arg("coset"), py::arg("count"), py::arg("norm_cap") = 10000);

  m.def("decide_spd_circle_periodic",
        [](std::int64_t modulus, const std::vector<std::int64_t>& residues, bool realMode) {
          support::PeriodicTail1D t{modulus, {residues.begin(), residues.end()}};
          support::SupportSpec1D spec(realMode ? support::Mode::RealSymmetrized
                                               : support::Mode::ComplexDirect,
                                      {}, {}, t);
          auto v = support::decideSpdCircle(spec);
          py::object witness = py::none();
          if (v.witness) witness = py::make_tuple(v.witness->offset, v.witness->step);
          return py::make_tuple(outcomeName(v.outcome), witness);
        },
        py::arg("modulus"), py::arg("residues"), py::arg("real_mode") = true,
        "1-D circle criterion on a periodic support; returns (outcome, witness progression).");

  // --- kernel ---------------------------------------------------------------
  py::class_<kernel::ChebKernel>(m, "ChebKernel")
      .def(py::init([](const std::map<IntPair, double>& coeffs) {
             std::map<intlat::LatticePoint, double> c;
             for (const auto& [p, a] : coeffs) c[toPoint(p)] = a;
             return kernel::ChebKernel(std::move(c));
           }),
           py::arg("coeffs"))
      .def_static("from_json",
                  [](const std::string& s) { return io::kernelFromJson(io::json::parse(s)); })
      .def_property_readonly("coeffs",
                             [](const kernel::ChebKernel& k) {
                               std::map<IntPair, double> out;
                               for (const auto& [p, a] : k.coeffs()) out[fromPoint(p)] = a;
                               return out;
                             })
      .def("to_json", [](const kernel::ChebKernel& k) { return io::toJson(k).dump(); });

  py::class_<kernel::PointConfig>(m, "PointConfig")
      .def_property_readonly("angles", [](const kernel::PointConfig& c) { return c.angles; })
      .def_property_readonly("exact",
                             [](const kernel::PointConfig& c) -> py::object {
                               if (!c.exact) return py::none();
                               return py::make_tuple(c.exact->order, c.exact->pairs);
                             })
      .def("__len__", [](const kernel::PointConfig& c) { return c.size(); })
      .def("to_json", [](const kernel::PointConfig& c) { return io::toJson(c).dump(); });

  m.def("config_from_angles", &kernel::configFromAngles, py::arg("angles"));
  m.def("config_from_rational",
        [](std::int64_t q, const std::vector<IntPair>& pairs) {
          return kernel::configFromRational(q, {pairs.begin(), pairs.end()});
        },
        py::arg("order"), py::arg("pairs"));

  m.def("schoenberg_norm", &kernel::schoenbergNorm, py::arg("kernel"));
  m.def("eval_kr", &kernel::evalKrAngles, py::arg("kernel"), py::arg("dtheta"), py::arg("dphi"));
  m.def("gram",
        [](const kernel::ChebKernel& k, const kernel::PointConfig& c) {
          return rowsFromMatrix(kernel::gram(k, c));
        },
        py::arg("kernel"), py::arg("config"), "Gram matrix as nested lists.");
  m.def("sample_grid",
        [](const kernel::ChebKernel& k, std::int64_t degree) {
          auto s = kernel::sampleGrid(k, degree);
          std::int64_t q = 2 * degree + 1;
          std::vector<std::vector<double>> rows(q, std::vector<double>(q));
          for (std::int64_t i = 0; i < q; ++i)
            for (std::int64_t j = 0; j < q; ++j) rows[i][j] = s.values[i * q + j];
          return rows;
        },
        py::arg("kernel"), py::arg("degree"));
  m.def("fit_coefficients",
        [](const std::vector<std::vector<double>>& rows, std::int64_t degree) {
          kernel::GridSamples s{degree, {}};
          for (const auto& r : rows) s.values.insert(s.values.end(), r.begin(), r.end());
          return kernel::fitCoefficients(s);
        },
        py::arg("samples"), py::arg("degree"));

  // --- certify --------------------------------------------------------------
  py::class_<certify::NullEquivalenceReport>(m, "NullEquivalenceReport")
      .def_readonly("equivalent", &certify::NullEquivalenceReport::equivalent)
      .def_readonly("quadratic_form", &certify::NullEquivalenceReport::quadraticFormValue)
      .def_readonly("max_support_sum", &certify::NullEquivalenceReport::maxSupportSum)
      .def_readonly("form_threshold", &certify::NullEquivalenceReport::formThreshold)
      .def_readonly("sum_threshold", &certify::NullEquivalenceReport::sumThreshold)
      .def("__bool__",
           [](const certify::NullEquivalenceReport& r) { return r.equivalent; });

  py::class_<certify::PositivityReport>(m, "PositivityReport")
      .def_readonly("min_eigenvalue", &certify::PositivityReport::minEigenvalue)
      .def_readonly("trials", &certify::PositivityReport::trials)
      .def_readonly("worst_config", &certify::PositivityReport::worstConfig)
      .def("to_json", [](const certify::PositivityReport& r) { return io::toJson(r).dump(); });

  m.def("exp_sums",
        [](const kernel::PointConfig& c, const std::vector<double>& w, std::int64_t k,
           std::int64_t l) { return certify::expSums(c, w, k, l); },
        py::arg("config"), py::arg("c"), py::arg("k"), py::arg("l"));
  m.def("quadratic_form",
        [](const kernel::ChebKernel& k, const kernel::PointConfig& cfg,
           const std::vector<double>& c) {
          return certify::quadraticForm(kernel::gram(k, cfg), c);
        },
        py::arg("kernel"), py::arg("config"), py::arg("c"));
  m.def("check_null_equivalence",
        [](const kernel::ChebKernel& k, const kernel::PointConfig& cfg,
           const std::vector<double>& c, double tol) {
          return certify::checkNullEquivalence(k, cfg, c, tol);
        },
        py::arg("kernel"), py::arg("config"), py::arg("c"), py::arg("tol") = 1e-10);
  m.def("juru_config",
        [](std::int64_t a, std::int64_t b, std::int64_t j, std::int64_t jp) {
          auto wc = certify::juruConfig(a, b, j, jp);
          return py::make_tuple(wc.config, wc.weights);
        },
        py::arg("a"), py::arg("b"), py::arg("j"), py::arg("jp"));
  m.def("general_lattice_config",
        [](std::int64_t a, std::int64_t b, std::int64_t d, std::int64_t j, std::int64_t jp) {
          auto wc = certify::generalLatticeConfig(a, b, d, j, jp);
          return py::make_tuple(wc.config, wc.weights);
        },
        py::arg("a"), py::arg("b"), py::arg("d"), py::arg("j"), py::arg("jp"));
  m.def("min_eigen",
        [](const std::vector<std::vector<double>>& rows) {
          return certify::minEigen(matrixFromRows(rows));
        },
        py::arg("matrix"));
  m.def("gram_min_eigen",
        [](const kernel::ChebKernel& k, const kernel::PointConfig& c) {
          return certify::minEigen(kernel::gram(k, c));
        },
        py::arg("kernel"), py::arg("config"));
  m.def("verify_spd_empirical",
        [](const kernel::ChebKernel& k, int nPoints, int trials, std::uint64_t seed,
           double minSeparation) {
          return certify::verifySpdEmpirical(k, nPoints, trials, seed, minSeparation);
        },
        py::arg("kernel"), py::arg("n_points"), py::arg("trials"), py::arg("seed"),
        py::arg("min_separation") = 0.0);

  // --- zeroset ----------------------------------------------------------------
  py::class_<zeroset::ZeroStructure>(m, "ZeroStructure")
      .def_property_readonly("order",
                             [](const zeroset::ZeroStructure& z) { return z.order; })
      .def_property_readonly("zeros",
                             [](const zeroset::ZeroStructure& z) {
                               std::vector<IntPair> out;
                               for (const auto& p : z.zeros) out.push_back(fromPoint(p));
                               return out;
                             })
      .def_property_readonly("cosets",
                             [](const zeroset::ZeroStructure& z) { return z.cosets; })
      .def("to_json", [](const zeroset::ZeroStructure& z) { return io::toJson(z).dump(); });

  m.def("zero_structure",
        [](const kernel::PointConfig& cfg, const std::vector<double>& c, double tol) {
          return zeroset::detectStructure(zeroset::buildTable(cfg, std::span<const double>(c)),
                                          tol);
        },
        py::arg("config"), py::arg("c"), py::arg("tol") = 1e-9,
        "Build the exponential-sum table and decompose its zero set.");
  m.def("verify_not_all_zero",
        [](const kernel::PointConfig& cfg, const std::vector<double>& c) {
          return zeroset::verifyNotAllZero(cfg, std::span<const double>(c));
        },
        py::arg("config"), py::arg("c"));
}
