#pragma once

#include <cstdint>
#include <string>

#include "cns/field.hpp"

namespace cns {

// Binary field dumps: <base>.f64 holds the raw row-major N*N doubles
// (little endian), <base>.json the sidecar {"L", "N", "t", "name"}.
void dump_field(const std::string& base, const ScalarField& f, const Grid& g, double t,
                const std::string& name);

struct LoadedField {
  ScalarField f;
  Grid grid;
  double t = 0.0;
  std::string name;
};

LoadedField load_field(const std::string& base);

// FNV-1a over raw bytes, used for the run manifests.
std::uint64_t fnv1a(const void* data, std::size_t n,
                    std::uint64_t h = 14695981039346656037ULL);
std::uint64_t fnv1a_file(const std::string& path);

}  // namespace cns
