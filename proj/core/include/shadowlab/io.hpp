#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "shadowlab/polytope.hpp"

namespace shadowlab {

// Plain-text formats, bit-exact round trip at 17 significant digits:
//   hpoly m d      followed by m lines of d+1 floats (row entries, then rhs)
//   cloud n d      followed by n lines of d floats

std::string format_double(double v);  // 17-significant-digit shortest form

void write_hpolytope(std::ostream& os, const HPolytope& p);
HPolytope read_hpolytope(std::istream& is);

void write_cloud(std::ostream& os, const PointCloud& cloud);
PointCloud read_cloud(std::istream& is);

void save_text(const std::string& path, const std::string& content);
std::string load_text(const std::string& path);

/// FNV-1a over the serialized bytes; used in emitted filenames.
std::uint64_t content_hash(const std::string& bytes);

}  // namespace shadowlab
