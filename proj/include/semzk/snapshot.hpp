#pragma once

#include <cstdint>
#include <filesystem>

#include "semzk/dynamics.hpp"
#include "semzk/field.hpp"

namespace semzk {

/// Binary field snapshot, little-endian throughout:
///
///   offset  size  content
///        0     6  magic "SEMZK1"
///        6     4  format version (u32, currently 1)
///       10     4  nx (u32)
///       14     4  ny (u32)
///       18     8  lx (f64)
///       26     8  ly (f64)
///       34     8  time (f64)
///       42     1  equation tag (u8, Equation::Tag)
///       43  8nxny payload, f64 values in row-major (i * ny + j) order
struct Snapshot {
    RealField field;
    double time = 0.0;
    Equation::Tag equation = Equation::Tag::zk;
};

inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 43;

void write_snapshot(const std::filesystem::path& path, const RealField& field, double time, Equation::Tag equation);
/// Throws on a missing, truncated or corrupt file; never returns a partial field.
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace semzk
