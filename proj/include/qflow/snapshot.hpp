#pragma once

// "QFLD v1" field snapshots:
//
//   # QFLD v1
//   # dim = 2
//   # n = 128
//   # t = 5.0000000000000000e-01
//   # model = c=1 alpha=-1 beta=0 gamma=2.25
//   # columns = x,y,q11,q12
//   0.0000000000000000e+00,0.0000000000000000e+00,5.0000000000000000e-01,0.0000000000000000e+00
//   ...
//
// One row per lattice point, x fastest. Values carry 17 significant digits so
// a written field reads back bit-identically.

#include <filesystem>
#include <optional>

#include "qflow/grid_field.hpp"
#include "qflow/nonlinearity.hpp"

namespace qflow {

struct Snapshot {
  TensorField field;
  double time = 0.0;
  std::optional<ModelParams> model;
};

void write_snapshot(const std::filesystem::path& path, const TensorField& field, double time,
                    const std::optional<ModelParams>& model = std::nullopt);

/// Throws ConfigError on I/O or format errors.
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace qflow
