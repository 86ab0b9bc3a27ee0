#include "cns/run_config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cns/field_io.hpp"

namespace cns {

namespace {

double parse_exponent(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    throw std::invalid_argument("unrecognized exponent string: " + s);
  }
  return j.get<double>();
}

nlohmann::json exponent_to_json(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

RadonMeasureSpec parse_measure(const nlohmann::json& j) {
  return measure_from_json_text(j.dump());
}

}  // namespace

RunConfig config_from_json_text(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  RunConfig cfg;

  if (j.contains("grid")) {
    cfg.grid.extent = j["grid"].value("extent", cfg.grid.extent);
    cfg.grid.size = j["grid"].value("size", cfg.grid.size);
  }
  if (j.contains("indices")) {
    const auto& ix = j["indices"];
    cfg.indices.p1 = parse_exponent(ix.at("p1"));
    cfg.indices.p2 = parse_exponent(ix.at("p2"));
    cfg.indices.p3 = parse_exponent(ix.at("p3"));
    cfg.indices.alpha1 = ix.at("alpha1").get<double>();
    cfg.indices.alpha2 = ix.at("alpha2").get<double>();
    cfg.indices.alpha3 = ix.at("alpha3").get<double>();
  }
  cfg.horizon = j.value("horizon", cfg.horizon);

  if (j.contains("data")) {
    const auto& d = j["data"];
    if (d.contains("n0")) cfg.n0 = parse_measure(d["n0"]);
    if (d.contains("c0")) cfg.c0 = parse_measure(d["c0"]);
    if (d.contains("zeta0")) cfg.zeta0 = parse_measure(d["zeta0"]);
    if (d.contains("grad_phi")) {
      const auto& gp = d["grad_phi"];
      for (const auto& gb : gp.value("gaussians", nlohmann::json::array()))
        cfg.potential.gaussians.push_back({{gb.at("center")[0].get<double>(),
                                            gb.at("center")[1].get<double>()},
                                           gb.at("mass").get<double>(),
                                           gb.at("variance").get<double>()});
      if (gp.contains("files")) {
        cfg.potential.file_x = gp["files"].at("x").get<std::string>();
        cfg.potential.file_y = gp["files"].at("y").get<std::string>();
        cfg.potential.smooth = gp.value("smooth", false);
        if (!cfg.potential.smooth)
          throw std::invalid_argument(
              "gridded potential gradients must declare smoothness; rough potentials are outside "
              "the admissible class");
      }
    }
  }

  if (j.contains("picard")) {
    const auto& p = j["picard"];
    cfg.picard.nodes = p.value("nodes", cfg.picard.nodes);
    cfg.picard.grading = p.value("grading", cfg.picard.grading);
    cfg.picard.quad_panels = p.value("quad_panels", cfg.picard.quad_panels);
    cfg.picard.tol = p.value("tol", cfg.picard.tol);
    cfg.picard.max_iter = p.value("max_iter", cfg.picard.max_iter);
    cfg.picard.c_master = p.value("c_master", cfg.picard.c_master);
    cfg.picard.mollification = p.value("mollification", cfg.picard.mollification);
  }
  cfg.picard.horizon = cfg.horizon;
  if (j.contains("imex")) cfg.imex_dt = j["imex"].value("dt", cfg.imex_dt);
  cfg.solver = j.value("solver", cfg.solver);
  if (cfg.solver != "picard" && cfg.solver != "oracle" && cfg.solver != "both")
    throw std::invalid_argument("solver must be picard, oracle or both; got " + cfg.solver);
  cfg.output_dir = j.value("output_dir", cfg.output_dir);
  cfg.seed = j.value("seed", cfg.seed);
  return cfg;
}

RunConfig config_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json_text(ss.str());
}

std::string config_to_json_text(const RunConfig& cfg) {
  nlohmann::json j;
  j["grid"] = {{"extent", cfg.grid.extent}, {"size", cfg.grid.size}};
  j["indices"] = {{"p1", exponent_to_json(cfg.indices.p1)},
                  {"p2", exponent_to_json(cfg.indices.p2)},
                  {"p3", exponent_to_json(cfg.indices.p3)},
                  {"alpha1", cfg.indices.alpha1},
                  {"alpha2", cfg.indices.alpha2},
                  {"alpha3", cfg.indices.alpha3}};
  j["horizon"] = cfg.horizon;
  j["data"]["n0"] = nlohmann::json::parse(measure_to_json_text(cfg.n0));
  j["data"]["c0"] = nlohmann::json::parse(measure_to_json_text(cfg.c0));
  j["data"]["zeta0"] = nlohmann::json::parse(measure_to_json_text(cfg.zeta0));
  if (cfg.potential.present()) {
    nlohmann::json gp;
    gp["gaussians"] = nlohmann::json::array();
    for (const auto& gb : cfg.potential.gaussians)
      gp["gaussians"].push_back({{"center", {gb.center.x(), gb.center.y()}},
                                 {"mass", gb.mass},
                                 {"variance", gb.variance}});
    if (!cfg.potential.file_x.empty()) {
      gp["files"] = {{"x", cfg.potential.file_x}, {"y", cfg.potential.file_y}};
      gp["smooth"] = cfg.potential.smooth;
    }
    j["data"]["grad_phi"] = gp;
  }
  j["picard"] = {{"nodes", cfg.picard.nodes},       {"grading", cfg.picard.grading},
                 {"quad_panels", cfg.picard.quad_panels}, {"tol", cfg.picard.tol},
                 {"max_iter", cfg.picard.max_iter}, {"c_master", cfg.picard.c_master},
                 {"mollification", cfg.picard.mollification}};
  j["imex"] = {{"dt", cfg.imex_dt}};
  j["solver"] = cfg.solver;
  j["output_dir"] = cfg.output_dir;
  j["seed"] = cfg.seed;
  return j.dump(2);
}

std::uint64_t config_hash(const RunConfig& cfg) {
  const std::string text = config_to_json_text(cfg);
  return fnv1a(text.data(), text.size());
}

VectorField potential_gradient(const PotentialSpec& pot, const Grid& g) {
  check_grid(g);
  VectorField out = zero_vector_field(g);
  for (const auto& gb : pot.gaussians) {
    if (!(gb.variance > 0.0)) throw std::invalid_argument("potential blob needs positive variance");
    const double inv_v = 1.0 / gb.variance;
    for (int i = 0; i < g.size; ++i) {
      const double dx = g.coord(i) - gb.center.x();
      for (int jj = 0; jj < g.size; ++jj) {
        const double dy = g.coord(jj) - gb.center.y();
        const double gauss =
            gb.mass / (2.0 * M_PI * gb.variance) * std::exp(-0.5 * (dx * dx + dy * dy) * inv_v);
        out.x(i, jj) += -dx * inv_v * gauss;
        out.y(i, jj) += -dy * inv_v * gauss;
      }
    }
  }
  if (!pot.file_x.empty()) {
    LoadedField fx = load_field(pot.file_x);
    LoadedField fy = load_field(pot.file_y);
    if (!(fx.grid == g) || !(fy.grid == g))
      throw std::invalid_argument("potential gradient fields live on a different grid");
    out.x += fx.f;
    out.y += fy.f;
  }
  return out;
}

void write_manifest(const std::string& dir, const RunConfig& cfg,
                    const std::vector<std::string>& files) {
  nlohmann::json j;
  j["config"] = nlohmann::json::parse(config_to_json_text(cfg));
  {
    std::ostringstream hex;
    hex << std::hex << config_hash(cfg);
    j["config_hash"] = hex.str();
  }
  j["format_version"] = 1;
  j["files"] = nlohmann::json::array();
  for (const auto& f : files) {
    std::ostringstream hex;
    hex << std::hex << fnv1a_file(f);
    j["files"].push_back({{"path", f}, {"fnv1a", hex.str()}});
  }
  std::ofstream out(dir + "/manifest.json");
  if (!out) throw std::runtime_error("cannot write manifest in " + dir);
  out << j.dump(2) << "\n";
}

}  // namespace cns
