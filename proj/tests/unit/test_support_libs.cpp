#include <cstdlib>
#include <filesystem>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "nlqm/errors.hpp"
#include "nlqm/io.hpp"
#include "nlqm/parallel.hpp"

using namespace nlqm;

TEST(Format, RoundTripsExactly) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int trial = 0; trial < 1000; ++trial) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(u(rng)) % 40);
    EXPECT_EQ(std::stod(io::fmt(v)), v);
  }
  EXPECT_EQ(io::fmt(0.0), "0");
  EXPECT_EQ(io::fmt(1.0), "1");
}

TEST(Csv, WriteReadRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "nlqm_io_test.csv";
  io::CsvTable t;
  t.comments = {"g=1 eps=0.2"};
  t.header = {"t", "E"};
  t.rows = {{0.0, 0.0}, {0.1, 1.0 / 3.0}};
  io::write_csv(path, t);
  const io::CsvTable r = io::read_csv(path);
  EXPECT_EQ(r.comments, t.comments);
  EXPECT_EQ(r.header, t.header);
  EXPECT_EQ(r.rows, t.rows);
  EXPECT_EQ(r.column("E")[1], 1.0 / 3.0);
  EXPECT_THROW(r.column("missing"), ShapeError);
  std::filesystem::remove(path);
}

TEST(Threads, Resolution) {
  ::unsetenv("NLQM_THREADS");
  EXPECT_EQ(parallel::resolve_threads(std::nullopt), 1);
  EXPECT_EQ(parallel::resolve_threads(3), 3);
  ::setenv("NLQM_THREADS", "4", 1);
  EXPECT_EQ(parallel::resolve_threads(std::nullopt), 4);
  EXPECT_EQ(parallel::resolve_threads(2), 2);
  ::setenv("NLQM_THREADS", "four", 1);
  EXPECT_THROW(parallel::resolve_threads(std::nullopt), ConfigError);
  ::unsetenv("NLQM_THREADS");
  EXPECT_THROW(parallel::resolve_threads(0), ConfigError);
}

TEST(ParallelMap, OrderAndErrors) {
  for (int threads : {1, 3, 8}) {
    const auto out = parallel::parallel_map(17, threads, [](std::size_t i) { return i * i; });
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], i * i);
  }
  EXPECT_TRUE(parallel::parallel_map(0, 4, [](std::size_t i) { return i; }).empty());
  try {
    parallel::parallel_map(10, 4, [](std::size_t i) -> int {
      if (i == 3 || i == 7) throw std::runtime_error("unit " + std::to_string(i));
      return 0;
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "unit 3");
  }
}
