#pragma once

#include <filesystem>
#include <iosfwd>

#include "tzeig/tensor.hpp"

namespace tzeig {

// "tenz v1" text format:
//
//   tenz v1
//   order <m> dim <n>
//   dense
//   <n^m whitespace-separated values, row-major>

CubicTensor read_tenz(std::istream& in);
CubicTensor read_tenz(const std::filesystem::path& path);
void write_tenz(std::ostream& out, const CubicTensor& t);
void write_tenz(const std::filesystem::path& path, const CubicTensor& t);

/// Plain vector file: whitespace-separated finite decimals.
Vector read_vector(std::istream& in);
Vector read_vector(const std::filesystem::path& path);
void write_vector(std::ostream& out, const Vector& v);

}  // namespace tzeig
