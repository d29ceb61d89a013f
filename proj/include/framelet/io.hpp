#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "framelet/grid.hpp"

namespace framelet {

// Sampled grid with axis metadata, as stored in the binary grid format:
// magic "FRMG", u32 version 1, u8 dtype (0 real64, 1 complex128 interleaved),
// u8 ndim, per axis u32 count + f64 origin + f64 step, then the row-major
// little-endian payload. Values are held as complex; real files carry zero
// imaginary parts and are written back out as real.
struct GridData {
  std::vector<GridAxis> axes;
  bool complex_valued = false;
  std::vector<std::complex<double>> values;

  std::size_t total() const;
};

void write_frmg(const std::string& path, const GridData& data);
GridData read_frmg(const std::string& path);

// 8-bit binary PGM. Export scales magnitudes to the full byte range
// (constant images map to 0); import returns the raw byte values as doubles.
struct PgmImage {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
};

void write_pgm(const std::string& path, const std::vector<double>& values, std::size_t rows,
               std::size_t cols);
PgmImage read_pgm(const std::string& path);

// Flat key=value configuration text, one pair per line, '#' comments.
// Order is preserved so rewrites are byte identical.
using Manifest = std::vector<std::pair<std::string, std::string>>;

void write_manifest(const std::string& path, const Manifest& entries);
Manifest read_manifest(const std::string& path);
const std::string* manifest_find(const Manifest& m, const std::string& key);

// Shortest round-trippable decimal form.
std::string format_double(double v);

}  // namespace framelet
