#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <sstream>

#include "descentlab/batch_plan.hpp"
#include "descentlab/csv.hpp"
#include "descentlab/dataset.hpp"
#include "descentlab/error.hpp"
#include "descentlab/synthetic.hpp"

namespace dl = descentlab;

TEST(Dataset, ShapeAndAccess) {
  dl::Dataset d({1, 2, 3, 4, 5, 6}, {0, 1, 1, 0, 0, 1}, 3, 2, 2, dl::Task::Classification);
  EXPECT_EQ(d.size(), 3u);
  EXPECT_EQ(d.x(1)[0], 3);
  EXPECT_EQ(d.label_index(0), 1u);
  const std::size_t rows[] = {2, 0};
  const dl::Dataset s = d.subset(rows);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.x(0)[1], 6);
  EXPECT_EQ(s.y(1)[1], 1);
}

TEST(Dataset, RejectsBadShapesAndLabels) {
  EXPECT_THROW(dl::Dataset({}, {}, 0, 1, 1, dl::Task::Regression), dl::InvalidArgument);
  EXPECT_THROW(dl::Dataset({1, 2}, {1}, 2, 1, 1, dl::Task::Regression), dl::InvalidArgument);
  EXPECT_THROW(dl::Dataset({1}, {0.5, 0.5}, 1, 1, 2, dl::Task::Classification),
               dl::InvalidArgument);
  EXPECT_THROW(dl::Dataset({1}, {1, 1}, 1, 1, 2, dl::Task::Classification), dl::InvalidArgument);
  EXPECT_NO_THROW(dl::Dataset({1}, {0.5, 0.5}, 1, 1, 2, dl::Task::Regression));
}

TEST(Dataset, CsvRoundTripIsLossless) {
  const dl::Dataset d = dl::gaussian_blobs({.n = 30, .d_x = 3, .classes = 3, .seed = 4});
  const auto path = std::filesystem::temp_directory_path() / "descentlab_blobs_roundtrip.csv";
  dl::save_dataset_csv(d, path);
  const dl::Dataset back = dl::load_dataset_csv(path, dl::Task::Classification);
  EXPECT_EQ(back.features(), d.features());
  EXPECT_EQ(back.labels(), d.labels());
  const auto table = dl::read_csv(path);
  EXPECT_EQ(table.header, (std::vector<std::string>{"x_0", "x_1", "x_2", "y_0", "y_1", "y_2"}));
  std::filesystem::remove(path);
}

TEST(Csv, StrictParsing) {
  EXPECT_DOUBLE_EQ(dl::parse_double("1.5e-3"), 1.5e-3);
  EXPECT_THROW(dl::parse_double("1.5x"), dl::InvalidArgument);
  EXPECT_THROW(dl::parse_double(""), dl::InvalidArgument);
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300}) {
    EXPECT_EQ(dl::parse_double(dl::format_double(v)), v);
  }
  std::istringstream in("a,b\n1,2\n3,4\n");
  const auto table = dl::read_csv(in);
  EXPECT_EQ(table.rows.size(), 2u);
  EXPECT_EQ(table.column("b"), 1u);
  EXPECT_THROW(table.column("c"), dl::InvalidArgument);
}

TEST(Synthetic, BlobsAreOneHotAndDeterministic) {
  const auto a = dl::gaussian_blobs({.n = 60, .classes = 3, .seed = 1});
  const auto b = dl::gaussian_blobs({.n = 60, .classes = 3, .seed = 1});
  EXPECT_EQ(a.features(), b.features());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.label_index(i), i % 3);
  const auto r = dl::linear_with_noise({.n = 20, .d_x = 2, .d_y = 2, .seed = 3});
  EXPECT_EQ(r.label_dim(), 2u);
  EXPECT_EQ(r.task(), dl::Task::Regression);
}

TEST(BatchPlan, SingleBatch) {
  dl::Prng rng(1);
  const auto plan = dl::shuffle_and_partition(4, 4, rng);
  ASSERT_EQ(plan.batch_count(), 1u);
  std::vector<std::size_t> rows(plan.batch(0).begin(), plan.batch(0).end());
  std::sort(rows.begin(), rows.end());
  EXPECT_EQ(rows, (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(BatchPlan, RemainderBatch) {
  dl::Prng rng(1);
  const auto plan = dl::shuffle_and_partition(5, 2, rng);
  ASSERT_EQ(plan.batch_count(), 3u);
  EXPECT_EQ(plan.batch(0).size(), 2u);
  EXPECT_EQ(plan.batch(1).size(), 2u);
  EXPECT_EQ(plan.batch(2).size(), 1u);
}

TEST(BatchPlan, RejectsBadBatchSize) {
  dl::Prng rng(1);
  EXPECT_THROW(dl::shuffle_and_partition(5, 0, rng), dl::InvalidArgument);
  EXPECT_THROW(dl::shuffle_and_partition(5, 6, rng), dl::InvalidArgument);
}

TEST(BatchPlan, EpochCoverage) {
  dl::Prng rng(8);
  for (std::size_t n : {1u, 7u, 64u, 101u}) {
    for (std::size_t b : {1u, 3u, 64u}) {
      if (b > n) continue;
      const auto plan = dl::shuffle_and_partition(n, b, rng);
      std::vector<std::size_t> all;
      for (std::size_t i = 0; i < plan.batch_count(); ++i) {
        const auto batch = plan.batch(i);
        if (i + 1 < plan.batch_count()) EXPECT_EQ(batch.size(), b);
        all.insert(all.end(), batch.begin(), batch.end());
      }
      std::sort(all.begin(), all.end());
      std::vector<std::size_t> expected(n);
      std::iota(expected.begin(), expected.end(), 0);
      EXPECT_EQ(all, expected);
    }
  }
}

TEST(BatchPlan, ShuffleIsUniform) {
  // Position of index 0 after a shuffle of n items, histogrammed over many
  // shuffles, with a chi-square test at α = 0.01. A smaller n than 10⁴ keeps
  // the expected bin counts large enough for the test to be meaningful.
  const std::size_t n = 20;
  const int trials = 100000;
  std::vector<int> counts(n, 0);
  dl::Prng rng(77);
  for (int t = 0; t < trials; ++t) {
    const auto order = dl::shuffled_indices(n, rng);
    ++counts[std::find(order.begin(), order.end(), 0u) - order.begin()];
  }
  double chi2 = 0;
  const double expected = static_cast<double>(trials) / n;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 36.19);  // 0.99 quantile, 19 degrees of freedom
}

TEST(BatchPlan, PositionOfZeroUniformAtLargeN) {
  // The n = 10⁴, b = 1 case: position of index 0 over many seeds, binned into
  // 10 deciles.
  const std::size_t n = 10000;
  const int trials = 5000;
  std::vector<int> bins(10, 0);
  for (int t = 0; t < trials; ++t) {
    dl::Prng rng = dl::Prng::derive(123, t);
    const auto plan = dl::shuffle_and_partition(n, 1, rng);
    const auto& order = plan.order();
    const auto pos = std::find(order.begin(), order.end(), 0u) - order.begin();
    ++bins[pos * 10 / n];
  }
  double chi2 = 0;
  for (int c : bins) chi2 += (c - trials / 10.0) * (c - trials / 10.0) / (trials / 10.0);
  EXPECT_LT(chi2, 21.67);  // 0.99 quantile, 9 degrees of freedom
}
