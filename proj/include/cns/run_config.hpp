#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cns/condition_a.hpp"
#include "cns/measures.hpp"
#include "cns/picard.hpp"

namespace cns {

// The potential enters through its gradient.  Either phi is a Gaussian
// mixture (gradient taken analytically) or grad phi is supplied as two
// field dumps whose smoothness the config must vouch for.
struct PotentialSpec {
  std::vector<GaussianBlob> gaussians;
  std::string file_x, file_y;
  bool smooth = true;
  bool present() const { return !gaussians.empty() || !file_x.empty(); }
};

struct RunConfig {
  Grid grid{4.0, 128};
  IndexSet indices;
  double horizon = 0.1;
  RadonMeasureSpec n0, c0, zeta0;
  PotentialSpec potential;
  std::string solver = "picard";  // picard | oracle | both
  PicardParams picard;
  double imex_dt = 1e-4;
  std::string output_dir = "out";
  std::uint64_t seed = 0;
};

RunConfig config_from_json_text(const std::string& text);
RunConfig config_from_json_file(const std::string& path);

// Canonical serialization (keys sorted, full precision); the manifest hash
// is FNV-1a over exactly this text.
std::string config_to_json_text(const RunConfig& cfg);
std::uint64_t config_hash(const RunConfig& cfg);

VectorField potential_gradient(const PotentialSpec& pot, const Grid& g);

// Writes <dir>/manifest.json: the canonical config, its hash and one
// FNV-1a per emitted file.  Deliberately carries no timestamps so repeated
// runs of the same config produce identical bytes.
void write_manifest(const std::string& dir, const RunConfig& cfg,
                    const std::vector<std::string>& files);

}  // namespace cns
