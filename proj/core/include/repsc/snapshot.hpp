#pragma once

#include <filesystem>

#include "repsc/wavefunction.hpp"

namespace repsc {

/// Wavefunction snapshot: header line "REPSC1 n N L s" followed by
/// little-endian float64 interleaved (re, im) pairs in row-major order.
void write_snapshot(const std::filesystem::path& path, const WaveFunction& psi);
WaveFunction read_snapshot(const std::filesystem::path& path);

/// Real field written in the same container (imaginary parts zero).
void write_field_snapshot(const std::filesystem::path& path, const RealField& f);

} // namespace repsc
