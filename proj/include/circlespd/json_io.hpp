#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "circlespd/certify.hpp"
#include "circlespd/intlat.hpp"
#include "circlespd/kernel.hpp"
#include "circlespd/support.hpp"
#include "circlespd/zeroset.hpp"

namespace circlespd::io {

using nlohmann::json;

// Wire formats.  Parsers throw std::invalid_argument on schema violations.

json toJson(const intlat::Subgroup& s);
intlat::Subgroup subgroupFromJson(const json& j);

json toJson(const intlat::Coset& c);            // {"offset":[j,j'],"gens":[[a,b],[0,d]]}
intlat::Coset cosetFromJson(const json& j);

json toJson(const support::SupportSpec& s);
support::SupportSpec supportSpecFromJson(const json& j);

json toJson(const kernel::ChebKernel& k);       // {"coeffs":[[k,l,a],...]}
kernel::ChebKernel kernelFromJson(const json& j);

json toJson(const kernel::PointConfig& c);      // {"angles":...} or {"exact":...}
kernel::PointConfig configFromJson(const json& j);

json toJson(const certify::NullWitness& w);
json toJson(const certify::PositivityReport& r);
json toJson(const zeroset::ZeroStructure& z);

std::string gramToCsv(const kernel::GramMatrix& g);  // row-major, 17 significant digits

std::uint64_t fnv1aDigest(std::string_view data);

}  // namespace circlespd::io
