#pragma once

// Shared catalog of support specs with hand-checked expected verdicts, used by
// the unit suite and the acceptance suite.

#include <optional>
#include <string>
#include <vector>

#include "circlespd/support.hpp"

namespace catalog {

using circlespd::intlat::Coset;
using circlespd::intlat::LatticePoint;
using circlespd::intlat::Subgroup;
namespace sup = circlespd::support;

struct Entry {
  std::string name;
  sup::SupportSpec spec;
  sup::SpdOutcome expected;
  std::optional<Coset> expectedWitness;  // pinned canonical witness, when stated
};

inline Coset square(std::int64_t j, std::int64_t jp, std::int64_t c) {
  return {{j, jp}, Subgroup::full2(c, 0, c)};
}

inline std::vector<Entry> build() {
  using sup::Mode;
  using sup::SpdOutcome;
  std::vector<Entry> out;
  auto real = Mode::RealSymmetrized;

  out.push_back({"full",
                 sup::SupportSpec(real, {}, {}, sup::PeriodicTail{1, {{0, 0}}}),
                 SpdOutcome::StrictlyPD, std::nullopt});
  out.push_back({"both even",
                 sup::SupportSpec(real, {}, {}, sup::PeriodicTail{2, {{0, 0}}}),
                 SpdOutcome::NotStrictlyPD, square(1, 0, 2)});
  out.push_back({"k+l even",
                 sup::SupportSpec(real, {}, {},
                                  sup::PeriodicTail{2, {{0, 0}, {1, 1}}}),
                 SpdOutcome::NotStrictlyPD, std::nullopt});
  out.push_back({"min tail 0", sup::SupportSpec(real, {}, {}, sup::MinTail{0}),
                 SpdOutcome::StrictlyPD, std::nullopt});
  out.push_back({"min tail 3", sup::SupportSpec(real, {}, {}, sup::MinTail{3}),
                 SpdOutcome::StrictlyPD, std::nullopt});
  out.push_back({"min tail 10", sup::SupportSpec(real, {}, {}, sup::MinTail{10}),
                 SpdOutcome::StrictlyPD, std::nullopt});
  out.push_back({"min tail 10 minus (10,10)",
                 sup::SupportSpec(real, {}, {{{10, 10}}}, sup::MinTail{10}),
                 SpdOutcome::StrictlyPD, std::nullopt});
  out.push_back({"finite origin",
                 sup::SupportSpec(real, {{{0, 0}}}, {}, sup::NoTail{}),
                 SpdOutcome::NotStrictlyPD, std::nullopt});
  out.push_back({"finite three points",
                 sup::SupportSpec(real, {{{0, 0}, {1, 2}, {3, 1}}}, {}, sup::NoTail{}),
                 SpdOutcome::NotStrictlyPD, std::nullopt});
  out.push_back({"mod 3 sparse",
                 sup::SupportSpec(real, {}, {},
                                  sup::PeriodicTail{3, {{0, 0}, {1, 2}, {2, 1}}}),
                 SpdOutcome::NotStrictlyPD, std::nullopt});
  out.push_back({"both even complex",
                 sup::SupportSpec(Mode::ComplexDirect, {}, {},
                                  sup::PeriodicTail{2, {{0, 0}}}),
                 SpdOutcome::NotStrictlyPD, square(1, 0, 2)});
  out.push_back({"full mod 2",
                 sup::SupportSpec(real, {}, {},
                                  sup::PeriodicTail{2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}}),
                 SpdOutcome::StrictlyPD, std::nullopt});
  out.push_back({"mod 4 diagonal-ish",
                 sup::SupportSpec(real, {}, {},
                                  sup::PeriodicTail{4, {{0, 0}, {2, 2}, {1, 3}}}),
                 SpdOutcome::NotStrictlyPD, square(1, 0, 2)});
  out.push_back({"both even plus explicit (1,0)",
                 sup::SupportSpec(real, {{{1, 0}}}, {}, sup::PeriodicTail{2, {{0, 0}}}),
                 SpdOutcome::NotStrictlyPD, std::nullopt});
  out.push_back({"mod 4 full minus residue removals",
                 sup::SupportSpec(real, {}, {{{1, 1}, {2, 3}}},
                                  sup::PeriodicTail{1, {{0, 0}}}),
                 SpdOutcome::StrictlyPD, std::nullopt});
  return out;
}

inline std::int64_t oracleWindow(const sup::SupportSpec& spec, std::int64_t maxModulus) {
  std::int64_t scale = 1;
  if (const auto* t = std::get_if<sup::MinTail>(&spec.tail()))
    scale = std::max<std::int64_t>(t->minIndex, 1);
  if (const auto* t = std::get_if<sup::PeriodicTail>(&spec.tail()))
    scale = std::max<std::int64_t>(t->modulus, 1);
  return 4 * maxModulus * scale;
}

}  // namespace catalog
