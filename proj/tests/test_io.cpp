#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "framelet/io.hpp"

using namespace framelet;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(std::string p) : path(std::move(p)) {}
  ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void spill_bytes(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), std::streamsize(bytes.size()));
  REQUIRE(out.good());
}

GridData sample_grid(bool complex_valued) {
  GridData g;
  g.axes = {{-M_PI, 0.1, 4}, {0.25, 0.5, 3}};
  g.complex_valued = complex_valued;
  g.values.resize(12);
  for (std::size_t i = 0; i < g.values.size(); ++i)
    g.values[i] = {0.125 * double(i) - 0.3,
                   complex_valued ? -1.75 + 0.0625 * double(i) : 0.0};
  return g;
}

}  // namespace

TEST_CASE("grid files round-trip bit-exactly") {
  for (bool cplx : {false, true}) {
    TempFile tmp("io_grid_roundtrip.frmg");
    const GridData g = sample_grid(cplx);
    write_frmg(tmp.path, g);
    const GridData back = read_frmg(tmp.path);
    CHECK(back.complex_valued == cplx);
    REQUIRE(back.axes.size() == g.axes.size());
    for (std::size_t a = 0; a < g.axes.size(); ++a) {
      CHECK(back.axes[a].count == g.axes[a].count);
      CHECK(back.axes[a].origin == g.axes[a].origin);
      CHECK(back.axes[a].step == g.axes[a].step);
    }
    REQUIRE(back.values.size() == g.values.size());
    for (std::size_t i = 0; i < g.values.size(); ++i) CHECK(back.values[i] == g.values[i]);

    // rewriting what was read yields identical bytes
    TempFile tmp2("io_grid_rewrite.frmg");
    write_frmg(tmp2.path, back);
    CHECK(slurp_bytes(tmp.path) == slurp_bytes(tmp2.path));
  }
}

TEST_CASE("grid reader rejects malformed files") {
  TempFile tmp("io_grid_bad.frmg");
  const GridData g = sample_grid(true);
  write_frmg(tmp.path, g);
  const std::string good = slurp_bytes(tmp.path);

  auto expect_rejected = [&](std::string bytes) {
    spill_bytes(tmp.path, bytes);
    CHECK_THROWS_AS((void)read_frmg(tmp.path), Error);
  };

  std::string wrong_magic = good;
  wrong_magic[0] = 'X';
  expect_rejected(wrong_magic);

  std::string wrong_version = good;
  wrong_version[4] = 9;
  expect_rejected(wrong_version);

  std::string wrong_dtype = good;
  wrong_dtype[8] = 7;
  expect_rejected(wrong_dtype);

  std::string wrong_ndim = good;
  wrong_ndim[9] = 0;
  expect_rejected(wrong_ndim);

  expect_rejected(good.substr(0, good.size() - 5));
  expect_rejected(good + "??");
  CHECK_THROWS_AS((void)read_frmg("io_grid_missing.frmg"), Error);

  GridData empty_axis = g;
  empty_axis.axes[0].count = 0;
  CHECK_THROWS_AS(write_frmg(tmp.path, empty_axis), Error);
  GridData short_payload = g;
  short_payload.values.pop_back();
  CHECK_THROWS_AS(write_frmg(tmp.path, short_payload), Error);
}

TEST_CASE("images export scaled and import verbatim") {
  TempFile tmp("io_image.pgm");
  const std::vector<double> values{0.0, 0.5, -1.0, 3.0, 1.5, 2.25};
  write_pgm(tmp.path, values, 2, 3);
  const PgmImage img = read_pgm(tmp.path);
  REQUIRE(img.rows == 2);
  REQUIRE(img.cols == 3);
  REQUIRE(img.values.size() == 6);
  // magnitudes scaled onto 0..255 with the extremes pinned
  CHECK(img.values[2] == 0.0);    // min
  CHECK(img.values[3] == 255.0);  // max
  for (double v : img.values) {
    CHECK(v >= 0.0);
    CHECK(v <= 255.0);
  }

  // constant images map to black
  write_pgm(tmp.path, {4.0, 4.0, 4.0, 4.0}, 2, 2);
  for (double v : read_pgm(tmp.path).values) CHECK(v == 0.0);

  CHECK_THROWS_AS(write_pgm(tmp.path, values, 2, 2), Error);
}

TEST_CASE("image reader accepts comments and rejects junk") {
  TempFile tmp("io_image_manual.pgm");
  spill_bytes(tmp.path, "P5 # binary\n# full comment line\n 2 2\n255\nabcd");
  const PgmImage img = read_pgm(tmp.path);
  REQUIRE(img.values.size() == 4);
  CHECK(img.values[0] == double('a'));
  CHECK(img.values[3] == double('d'));

  spill_bytes(tmp.path, "P2\n2 2\n255\nabcd");
  CHECK_THROWS_AS((void)read_pgm(tmp.path), Error);
  spill_bytes(tmp.path, "P5\n2 2\n255\nabc");
  CHECK_THROWS_AS((void)read_pgm(tmp.path), Error);
  spill_bytes(tmp.path, "P5\n2 two\n255\nabcd");
  CHECK_THROWS_AS((void)read_pgm(tmp.path), Error);
  spill_bytes(tmp.path, "P5\n2 2\n0\nabcd");
  CHECK_THROWS_AS((void)read_pgm(tmp.path), Error);
}

TEST_CASE("manifests preserve order and survive rewrites byte for byte") {
  TempFile tmp("io_manifest.cfg");
  const Manifest m{{"matrix", "2,0;0,2"},
                   {"lambda0", format_double(0.8)},
                   {"grid", "512"},
                   {"out", "results/run one"}};
  write_manifest(tmp.path, m);
  const Manifest back = read_manifest(tmp.path);
  REQUIRE(back.size() == m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(back[i].first == m[i].first);
    CHECK(back[i].second == m[i].second);
  }
  TempFile tmp2("io_manifest_rewrite.cfg");
  write_manifest(tmp2.path, back);
  CHECK(slurp_bytes(tmp.path) == slurp_bytes(tmp2.path));
}

TEST_CASE("manifest parsing skips comments and flags missing separators") {
  TempFile tmp("io_manifest_comments.cfg");
  spill_bytes(tmp.path, "# leading comment\n\nkey=value\n  spaced = padded value \n");
  const Manifest m = read_manifest(tmp.path);
  REQUIRE(m.size() == 2);
  CHECK(m[0].first == "key");
  CHECK(m[0].second == "value");
  CHECK(m[1].first == "spaced");
  CHECK(m[1].second == " padded value ");

  CHECK(manifest_find(m, "key") != nullptr);
  CHECK(*manifest_find(m, "spaced") == " padded value ");
  CHECK(manifest_find(m, "absent") == nullptr);

  spill_bytes(tmp.path, "key_without_separator\n");
  CHECK_THROWS_AS((void)read_manifest(tmp.path), Error);
  CHECK_THROWS_AS((void)read_manifest("io_manifest_missing.cfg"), Error);
}

TEST_CASE("doubles format to their shortest exact form") {
  for (double v : {0.8, 1.0 / 3.0, -2.5e-17, 6.02214076e23, 0.0}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(0.8) == "0.80000000000000004");
}
