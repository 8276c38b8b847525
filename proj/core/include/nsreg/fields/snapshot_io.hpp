#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nsreg/fields/field.hpp"

namespace nsreg {

/// Snapshot file: one JSON header line, then raw little-endian float64
/// values, component-contiguous, each component row-major over the grid.
///
///   {"byte_order":"little","components":3,"grid":32,"name":"u","scalar":"float64","time":0.5}\n
///   <components * n^3 doubles>
struct SnapshotHeader {
  int grid = 0;
  std::string name;
  int components = 0;
  double time = 0.0;
};

void write_snapshot(const std::filesystem::path& path, const SnapshotHeader& header,
                    const std::vector<const ScalarField*>& components);
void write_snapshot(const std::filesystem::path& path, const std::string& name, double time,
                    const VectorField& v);

struct Snapshot {
  SnapshotHeader header;
  std::vector<ScalarField> components;
};

/// Throws std::runtime_error on malformed headers or truncated payloads.
Snapshot read_snapshot(const std::filesystem::path& path);
VectorField read_vector_snapshot(const std::filesystem::path& path, double* time = nullptr);

}  // namespace nsreg
