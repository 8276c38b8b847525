#include "nsreg/fields/snapshot_io.hpp"

#include <bit>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace nsreg {

static_assert(std::endian::native == std::endian::little,
              "snapshot IO assumes a little-endian host");

void write_snapshot(const std::filesystem::path& path, const SnapshotHeader& header,
                    const std::vector<const ScalarField*>& components) {
  if (static_cast<int>(components.size()) != header.components) {
    throw std::invalid_argument("snapshot header component count mismatch");
  }
  nlohmann::json h;
  h["byte_order"] = "little";
  h["components"] = header.components;
  h["grid"] = header.grid;
  h["name"] = header.name;
  h["scalar"] = "float64";
  h["time"] = header.time;

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << h.dump() << '\n';
  for (const ScalarField* c : components) {
    if (c->grid().n() != header.grid) throw std::invalid_argument("snapshot grid mismatch");
    out.write(reinterpret_cast<const char*>(c->values().data()),
              static_cast<std::streamsize>(c->size() * sizeof(double)));
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_snapshot(const std::filesystem::path& path, const std::string& name, double time,
                    const VectorField& v) {
  write_snapshot(path, SnapshotHeader{v.grid().n(), name, 3, time}, {&v[0], &v[1], &v[2]});
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open snapshot " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty snapshot " + path.string());

  Snapshot snap;
  try {
    const auto h = nlohmann::json::parse(line);
    if (h.at("byte_order") != "little" || h.at("scalar") != "float64") {
      throw std::runtime_error("unsupported byte order or scalar type");
    }
    snap.header.grid = h.at("grid").get<int>();
    snap.header.name = h.at("name").get<std::string>();
    snap.header.components = h.at("components").get<int>();
    snap.header.time = h.at("time").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("bad snapshot header in " + path.string() + ": " + e.what());
  }
  if (snap.header.components < 1) throw std::runtime_error("bad component count");

  const PeriodicGrid grid(snap.header.grid);
  for (int c = 0; c < snap.header.components; ++c) {
    ScalarField f(grid);
    in.read(reinterpret_cast<char*>(f.values().data()),
            static_cast<std::streamsize>(f.size() * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(f.size() * sizeof(double))) {
      throw std::runtime_error("truncated snapshot " + path.string());
    }
    snap.components.push_back(std::move(f));
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw std::runtime_error("trailing bytes in snapshot " + path.string());
  }
  return snap;
}

VectorField read_vector_snapshot(const std::filesystem::path& path, double* time) {
  Snapshot s = read_snapshot(path);
  if (s.header.components != 3) {
    throw std::runtime_error("expected a 3-component snapshot: " + path.string());
  }
  if (time) *time = s.header.time;
  return VectorField(std::move(s.components[0]), std::move(s.components[1]),
                     std::move(s.components[2]));
}

}  // namespace nsreg
