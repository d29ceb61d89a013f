#include "framelet/io.hpp"

#include <bit>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>

namespace framelet {

namespace {

constexpr char kMagic[4] = {'F', 'R', 'M', 'G'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) {
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(char((bits >> (8 * i)) & 0xff));
}

struct Reader {
  std::string data;
  std::size_t pos = 0;
  const std::string& path;

  explicit Reader(const std::string& p) : path(p) {}

  void need(std::size_t n) {
    if (pos + n > data.size()) fail(Errc::IoError, "truncated grid file: " + path);
  }
  std::uint8_t u8() {
    need(1);
    return std::uint8_t(data[pos++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(std::uint8_t(data[pos++])) << (8 * i);
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(std::uint8_t(data[pos++])) << (8 * i);
    return std::bit_cast<double>(v);
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) fail(Errc::IoError, "cannot read " + path);
  return data;
}

void spill(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::IoError, "cannot open " + path + " for writing");
  out.write(bytes.data(), std::streamsize(bytes.size()));
  out.flush();
  if (!out) fail(Errc::IoError, "cannot write " + path);
}

}  // namespace

std::size_t GridData::total() const {
  std::size_t t = 1;
  for (const auto& ax : axes) t *= ax.count;
  return t;
}

void write_frmg(const std::string& path, const GridData& data) {
  if (data.axes.empty() || data.axes.size() > 8)
    fail(Errc::IoError, "grid files carry 1 to 8 axes");
  if (data.values.size() != data.total())
    fail(Errc::IoError, "grid payload does not match the axis counts");
  std::string bytes;
  bytes.append(kMagic, sizeof kMagic);
  put_u32(bytes, kVersion);
  bytes.push_back(char(data.complex_valued ? 1 : 0));
  bytes.push_back(char(data.axes.size()));
  for (const auto& ax : data.axes) {
    put_u32(bytes, std::uint32_t(ax.count));
    put_f64(bytes, ax.origin);
    put_f64(bytes, ax.step);
  }
  for (const auto& v : data.values) {
    put_f64(bytes, v.real());
    if (data.complex_valued) put_f64(bytes, v.imag());
  }
  spill(path, bytes);
}

GridData read_frmg(const std::string& path) {
  Reader r(path);
  r.data = slurp(path);
  r.need(4);
  for (char c : kMagic)
    if (r.data[r.pos++] != c) fail(Errc::IoError, "bad magic in " + path);
  if (r.u32() != kVersion) fail(Errc::IoError, "unsupported grid version in " + path);
  const std::uint8_t dtype = r.u8();
  if (dtype > 1) fail(Errc::IoError, "unknown element type in " + path);
  const std::uint8_t ndim = r.u8();
  if (ndim == 0 || ndim > 8) fail(Errc::IoError, "bad axis count in " + path);

  GridData out;
  out.complex_valued = dtype == 1;
  out.axes.resize(ndim);
  for (auto& ax : out.axes) {
    ax.count = r.u32();
    ax.origin = r.f64();
    ax.step = r.f64();
    if (ax.count == 0) fail(Errc::IoError, "empty axis in " + path);
  }
  out.values.resize(out.total());
  for (auto& v : out.values) {
    const double re = r.f64();
    const double im = out.complex_valued ? r.f64() : 0.0;
    v = {re, im};
  }
  if (r.pos != r.data.size()) fail(Errc::IoError, "trailing bytes in " + path);
  return out;
}

void write_pgm(const std::string& path, const std::vector<double>& values, std::size_t rows,
               std::size_t cols) {
  if (values.size() != rows * cols || rows == 0 || cols == 0)
    fail(Errc::IoError, "image payload does not match its dimensions");
  double lo = values[0], hi = values[0];
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double span = hi - lo;
  std::string bytes;
  char header[64];
  std::snprintf(header, sizeof header, "P5\n%zu %zu\n255\n", cols, rows);
  bytes.append(header);
  for (double v : values) {
    const double scaled = span > 0.0 ? (v - lo) / span * 255.0 : 0.0;
    bytes.push_back(char(static_cast<unsigned char>(scaled + 0.5)));
  }
  spill(path, bytes);
}

PgmImage read_pgm(const std::string& path) {
  const std::string data = slurp(path);
  std::size_t pos = 0;
  auto token = [&]() -> std::string {
    while (pos < data.size()) {
      if (data[pos] == '#') {
        while (pos < data.size() && data[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(data[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
    const std::size_t start = pos;
    while (pos < data.size() && !std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
    if (start == pos) fail(Errc::IoError, "truncated image header in " + path);
    return data.substr(start, pos - start);
  };

  if (token() != "P5") fail(Errc::IoError, "not a binary graymap: " + path);
  PgmImage img;
  try {
    img.cols = std::stoul(token());
    img.rows = std::stoul(token());
    const unsigned long maxval = std::stoul(token());
    if (maxval == 0 || maxval > 255) fail(Errc::IoError, "unsupported sample depth in " + path);
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail(Errc::IoError, "bad image header in " + path);
  }
  if (img.rows == 0 || img.cols == 0) fail(Errc::IoError, "empty image: " + path);
  ++pos;  // single whitespace byte after maxval
  if (pos + img.rows * img.cols > data.size())
    fail(Errc::IoError, "truncated image payload in " + path);
  img.values.resize(img.rows * img.cols);
  for (auto& v : img.values) v = double(std::uint8_t(data[pos++]));
  return img;
}

void write_manifest(const std::string& path, const Manifest& entries) {
  std::string bytes;
  for (const auto& [key, value] : entries) {
    bytes += key;
    bytes += '=';
    bytes += value;
    bytes += '\n';
  }
  spill(path, bytes);
}

Manifest read_manifest(const std::string& path) {
  const std::string data = slurp(path);
  Manifest out;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t eol = data.find('\n', pos);
    if (eol == std::string::npos) eol = data.size();
    std::string line = data.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start]))) ++start;
    if (start == line.size() || line[start] == '#') continue;
    const std::size_t eq = line.find('=', start);
    if (eq == std::string::npos)
      fail(Errc::IoError, "configuration line without '=' in " + path + ": " + line);
    std::string key = line.substr(start, eq - start);
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
    if (key.empty()) fail(Errc::IoError, "configuration line without a key in " + path);
    out.emplace_back(std::move(key), line.substr(eq + 1));
  }
  return out;
}

const std::string* manifest_find(const Manifest& m, const std::string& key) {
  for (const auto& [k, v] : m)
    if (k == key) return &v;
  return nullptr;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace framelet
