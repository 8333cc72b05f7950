#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "vdt/vecset.hpp"

namespace vdt {

// fvecs layout: repeated records of a little-endian int32 dimension followed
// by that many little-endian float32 values. All records must agree on the
// dimension. head_limit == 0 loads everything.
VectorSet load_fvecs(const std::string& path, std::size_t head_limit = 0);
VectorSet read_fvecs(std::istream& in, std::size_t head_limit = 0);

void write_fvecs(const std::string& path, const VectorSet& vectors);
void write_fvecs(std::ostream& out, const VectorSet& vectors);

}  // namespace vdt
