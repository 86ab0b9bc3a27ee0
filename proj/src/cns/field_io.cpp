#include "cns/field_io.hpp"

#include <bit>
#include <fstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace cns {

static_assert(std::endian::native == std::endian::little,
              "field dumps are defined little endian");

void dump_field(const std::string& base, const ScalarField& f, const Grid& g, double t,
                const std::string& name) {
  check_grid(g);
  check_field(f, g);
  {
    std::ofstream out(base + ".f64", std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + base + ".f64 for writing");
    out.write(reinterpret_cast<const char*>(f.data()),
              static_cast<std::streamsize>(sizeof(double)) * f.size());
    if (!out) throw std::runtime_error("short write on " + base + ".f64");
  }
  nlohmann::json side{{"L", g.extent}, {"N", g.size}, {"t", t}, {"name", name}};
  std::ofstream js(base + ".json");
  if (!js) throw std::runtime_error("cannot open " + base + ".json for writing");
  js << side.dump(2) << "\n";
}

LoadedField load_field(const std::string& base) {
  std::ifstream js(base + ".json");
  if (!js) throw std::runtime_error("cannot open " + base + ".json");
  nlohmann::json side = nlohmann::json::parse(js);
  LoadedField out;
  out.grid.extent = side.at("L").get<double>();
  out.grid.size = side.at("N").get<int>();
  out.t = side.at("t").get<double>();
  out.name = side.value("name", "");
  check_grid(out.grid);

  const int N = out.grid.size;
  out.f.resize(N, N);
  std::ifstream in(base + ".f64", std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + base + ".f64");
  in.read(reinterpret_cast<char*>(out.f.data()),
          static_cast<std::streamsize>(sizeof(double)) * out.f.size());
  if (in.gcount() != static_cast<std::streamsize>(sizeof(double)) * out.f.size())
    throw std::runtime_error("short read on " + base + ".f64");
  return out;
}

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::uint64_t h = 14695981039346656037ULL;
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    h = fnv1a(buf.data(), static_cast<std::size_t>(in.gcount()), h);
  }
  return h;
}

}  // namespace cns
