#include <cstdio>
#include <filesystem>
#include <fstream>

#include "core/bootstrap.hpp"
#include "core/distances.hpp"
#include "core/error.hpp"
#include "core/io.hpp"
#include "core/marker_matrix.hpp"
#include "core/rng.hpp"
#include "doctest.h"

using namespace nclust;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  auto path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path);
  out << content;
  return path;
}

MarkerMatrix random_binary(size_t n, size_t p, uint64_t seed) {
  MarkerMatrix m;
  m.cells.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  Rng rng(seed);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < p; ++j)
      m.cells(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rng.bernoulli(0.5) ? 1.0 : 0.0;
  m.imputed = true;
  return m;
}

}  // namespace

TEST_CASE("load_markers parses a small file with a missing cell") {
  auto path = write_temp("nclust_load1.tsv",
                         "id\tmA\tmB\tmC\n"
                         "l1\t0\t1\tNA\n"
                         "l2\t1\t1\t0\n"
                         "l3\t0\t0\t1\n");
  MarkerMatrix m = load_markers(path);
  CHECK(m.n_rows() == 3);
  CHECK(m.n_cols() == 3);
  CHECK(m.missing_count() == 1);
  CHECK(m.is_missing(0, 2));
  CHECK_FALSE(m.imputed);
  CHECK(m.row_ids[1] == "l2");
  CHECK(m.marker_names[2] == "mC");
  std::remove(path.c_str());
}

TEST_CASE("load_markers rejects out-of-domain cells with a location") {
  auto path = write_temp("nclust_load2.tsv",
                         "id\tmA\tmB\n"
                         "l1\t0\t2\n"
                         "l2\t1\t0\n");
  try {
    load_markers(path);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::parse);
    CHECK(std::string(e.what()).find("mB") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("load_markers rejects an all-missing column") {
  auto path = write_temp("nclust_load3.tsv",
                         "id\tmA\tmB\n"
                         "l1\t0\tNA\n"
                         "l2\t1\tNA\n");
  CHECK_THROWS_AS(load_markers(path), Error);
  std::remove(path.c_str());
}

TEST_CASE("load_markers detects comma delimiter and custom missing token") {
  auto path = write_temp("nclust_load4.csv",
                         "id,mA,mB\n"
                         "l1,0,-\n"
                         "l2,1,1\n");
  TextFormat fmt;
  fmt.missing_token = "-";
  MarkerMatrix m = load_markers(path, fmt);
  CHECK(m.missing_count() == 1);
  std::remove(path.c_str());
}

TEST_CASE("marker round-trip through save and load") {
  MarkerMatrix m = random_binary(6, 9, 7);
  m.cells(2, 3) = std::numeric_limits<double>::quiet_NaN();
  m.imputed = false;
  fill_default_labels(m);
  auto path = (std::filesystem::temp_directory_path() / "nclust_round.tsv").string();
  save_markers(m, path);
  MarkerMatrix back = load_markers(path);
  CHECK(back.n_rows() == m.n_rows());
  CHECK(back.n_cols() == m.n_cols());
  CHECK(back.missing_count() == 1);
  for (size_t i = 0; i < m.n_rows(); ++i)
    for (size_t j = 0; j < m.n_cols(); ++j) {
      if (m.is_missing(i, j)) continue;
      CHECK(back.cells(i, j) == m.cells(i, j));
    }
  std::remove(path.c_str());
}

TEST_CASE("impute_mean fills the column mean") {
  MarkerMatrix m;
  m.cells.resize(4, 1);
  m.cells << 1, 0, std::numeric_limits<double>::quiet_NaN(), 1;
  MarkerMatrix imp = impute_mean(m);
  CHECK(imp.imputed);
  CHECK(imp.cells(2, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(imp.cells(0, 0) == 1.0);
  CHECK(imp.missing_count() == 0);
}

TEST_CASE("impute_mean is the identity on fully observed input") {
  MarkerMatrix m = random_binary(5, 8, 11);
  MarkerMatrix imp = impute_mean(m);
  CHECK(imp.imputed);
  CHECK((imp.cells - m.cells).cwiseAbs().maxCoeff() == 0.0);
  // idempotent
  MarkerMatrix again = impute_mean(imp);
  CHECK((again.cells - imp.cells).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("impute_mean rejects an all-missing column") {
  MarkerMatrix m;
  m.cells.resize(2, 1);
  m.cells << std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(impute_mean(m), Error);
}

TEST_CASE("manhattan distance basics") {
  MarkerMatrix m;
  m.cells.resize(3, 2);
  m.cells << 0, 0, 1, 1, 0, 0;
  m.imputed = true;
  CondensedDistances d = manhattan_distances(m);
  CHECK(d.at(0, 1) == 2.0);
  CHECK(d.at(0, 2) == 0.0);  // identical rows
  CHECK(d.at(1, 2) == 2.0);
  CHECK(d.at(2, 1) == d.at(1, 2));
  CHECK(d.at(1, 1) == 0.0);
}

TEST_CASE("manhattan distances match a double-loop recomputation") {
  MarkerMatrix m = random_binary(6, 10, 21);
  CondensedDistances d = manhattan_distances(m);
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = 0; j < 6; ++j) {
      double direct = 0;
      for (size_t c = 0; c < 10; ++c) direct += std::fabs(m.cells(i, c) - m.cells(j, c));
      CHECK(d.at(i, j) == doctest::Approx(direct).epsilon(1e-14));
    }
}

TEST_CASE("manhattan distances satisfy the triangle inequality") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    MarkerMatrix raw = random_binary(8, 12, 100 + seed);
    // fractional cells exercise the post-imputation value domain
    Rng rng(seed);
    for (int t = 0; t < 10; ++t)
      raw.cells(static_cast<Eigen::Index>(rng.below(8)), static_cast<Eigen::Index>(rng.below(12))) =
          rng.uniform01();
    CondensedDistances d = manhattan_distances(raw);
    for (size_t a = 0; a < 8; ++a)
      for (size_t b = 0; b < 8; ++b)
        for (size_t c = 0; c < 8; ++c)
          CHECK(d.at(a, b) <= d.at(a, c) + d.at(c, b) + 1e-12);
  }
}

TEST_CASE("manhattan distance equals hamming count on binary rows") {
  MarkerMatrix m = random_binary(10, 30, 33);
  CondensedDistances d = manhattan_distances(m);
  for (size_t i = 0; i < 10; ++i)
    for (size_t j = i + 1; j < 10; ++j) {
      int hamming = 0;
      for (size_t c = 0; c < 30; ++c)
        if (m.cells(i, c) != m.cells(j, c)) ++hamming;
      CHECK(d.at(i, j) == static_cast<double>(hamming));
    }
}

TEST_CASE("bootstrap_rows is deterministic per (seed, replicate)") {
  MarkerMatrix m = random_binary(12, 5, 3);
  BootstrapSample a = bootstrap_rows(m, 4, 99);
  BootstrapSample b = bootstrap_rows(m, 4, 99);
  CHECK(a.source_indices == b.source_indices);
  BootstrapSample c = bootstrap_rows(m, 5, 99);
  CHECK(a.source_indices != c.source_indices);
  for (size_t idx : a.source_indices) CHECK(idx < 12);
  CHECK(a.data.n_rows() == 12);
}

TEST_CASE("bootstrap of a single-row matrix repeats that row") {
  MarkerMatrix m;
  m.cells.resize(1, 3);
  m.cells << 1, 0, 1;
  m.imputed = true;
  BootstrapSample s = bootstrap_rows(m, 1, 5);
  CHECK(s.source_indices == std::vector<size_t>{0});
  CHECK(s.data.cells.row(0) == m.cells.row(0));
}

TEST_CASE("bootstrap index frequencies stay within binomial bounds") {
  MarkerMatrix m = random_binary(4, 2, 17);
  size_t counts[4] = {0, 0, 0, 0};
  const int reps = 2500;  // 2500 draws of 4 indices = 10000 samples
  for (int r = 1; r <= reps; ++r) {
    BootstrapSample s = bootstrap_rows(m, r, 123);
    for (size_t idx : s.source_indices) ++counts[idx];
  }
  const double expect = 2500.0;
  const double sigma = std::sqrt(10000.0 * 0.25 * 0.75);
  for (size_t i = 0; i < 4; ++i) {
    CHECK(static_cast<double>(counts[i]) > expect - 3 * sigma);
    CHECK(static_cast<double>(counts[i]) < expect + 3 * sigma);
  }
}

TEST_CASE("distinct replicates do not share full index sequences") {
  MarkerMatrix m = random_binary(25, 4, 9);
  std::vector<std::vector<size_t>> seen;
  for (int r = 1; r <= 40; ++r) seen.push_back(bootstrap_rows(m, r, 7).source_indices);
  for (size_t a = 0; a < seen.size(); ++a)
    for (size_t b = a + 1; b < seen.size(); ++b) CHECK(seen[a] != seen[b]);
}

TEST_CASE("save_distances writes the three-column layout") {
  MarkerMatrix m = random_binary(4, 6, 2);
  CondensedDistances d = manhattan_distances(m);
  auto path = (std::filesystem::temp_directory_path() / "nclust_dist.tsv").string();
  save_distances(d, path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "i\tj\tdistance");
  int lines = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++lines;
  CHECK(lines == 6);
  std::remove(path.c_str());
}
