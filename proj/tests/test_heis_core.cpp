#include <gtest/gtest.h>

#include <random>

#include "heisflow/heisenberg.hpp"
#include "heisflow/verify.hpp"
#include "oracles.hpp"

using namespace heisflow;

namespace {

std::vector<Point> sample_points(int n, unsigned seed = 11) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) pts.push_back({d(rng), d(rng), d(rng)});
  return pts;
}

}  // namespace

TEST(Metric, MatchesOneFormExpansion) {
  for (const Point& p : sample_points(50)) {
    const auto g = metric_at(p);
    const auto o = oracle::metric(p);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_NEAR(g[i][j], o[i][j], 1e-15);
    EXPECT_NEAR(oracle::det_brute(o), 1.0, 1e-12);
  }
}

TEST(Metric, ExampleAtOrigin) {
  const auto g = metric_at({0, 0, 0});
  EXPECT_EQ(g[0][0], 1.0);
  EXPECT_EQ(g[1][1], 1.0);
  EXPECT_EQ(g[2][2], 1.0);
  EXPECT_EQ(g[0][1], 0.0);
  EXPECT_EQ(g[0][2], 0.0);
}

TEST(Frame, OrthonormalEverywhere) {
  for (const Point& p : sample_points(100))
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        EXPECT_NEAR(inner(p, frame_field(p, i), frame_field(p, j)), i == j ? 1.0 : 0.0, 1e-12);
}

TEST(Frame, CoordinateRoundTrip) {
  for (const Point& p : sample_points(30)) {
    const CoordVector v{p.z, -p.x, 0.7};
    const CoordVector back = frame_to_coord(p, coord_to_frame(p, v));
    EXPECT_NEAR(max_abs(back - v), 0.0, 1e-15);
    // The frame inner product agrees with the coordinate one.
    const CoordVector w{0.3, p.y, -1.1};
    EXPECT_NEAR(inner(coord_to_frame(p, v), coord_to_frame(p, w)), oracle::g_inner(p, v, w), 1e-12);
  }
}

TEST(Frame, ChangeOfBasisExample) {
  // ∂x = E1 + (y/2)E3 at (x, y) = (2, 4).
  const FrameVector a = coord_to_frame({2, 4, 0}, {1, 0, 0});
  EXPECT_EQ(a, (FrameVector{1, 0, 2}));
  const FrameVector b = coord_to_frame({2, 4, 0}, {0, 1, 0});
  EXPECT_EQ(b, (FrameVector{0, 1, -1}));
}

TEST(Frame, CrossProductTable) {
  const FrameVector e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};
  EXPECT_EQ(frame_cross(e1, e2), e3);
  EXPECT_EQ(frame_cross(e2, e3), e1);
  EXPECT_EQ(frame_cross(e3, e1), e2);
  EXPECT_EQ(frame_cross(e2, e1), -e3);
}

TEST(Connection, TableEntries) {
  EXPECT_EQ(covderiv_frame(1, 2), (FrameVector{0, 0, 0.5}));
  EXPECT_EQ(covderiv_frame(2, 1), (FrameVector{0, 0, -0.5}));
  EXPECT_EQ(covderiv_frame(1, 3), (FrameVector{0, -0.5, 0}));
  EXPECT_EQ(covderiv_frame(3, 1), (FrameVector{0, -0.5, 0}));
  EXPECT_EQ(covderiv_frame(2, 3), (FrameVector{0.5, 0, 0}));
  EXPECT_EQ(covderiv_frame(3, 2), (FrameVector{0.5, 0, 0}));
  for (int i = 1; i <= 3; ++i) EXPECT_EQ(covderiv_frame(i, i), (FrameVector{0, 0, 0}));
}

TEST(Connection, IndexOutOfRangeThrows) {
  EXPECT_THROW(covderiv_frame(0, 1), Error);
  EXPECT_THROW(covderiv_frame(1, 4), Error);
}

TEST(Connection, MetricCompatibleAndTorsionFree) {
  // ⟨∇_{Ei}Ej, Ek⟩ + ⟨Ej, ∇_{Ei}Ek⟩ = 0 for the constant frame.
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      for (int k = 1; k <= 3; ++k) {
        const double a = covderiv_frame(i, j)[static_cast<std::size_t>(k - 1)];
        const double b = covderiv_frame(i, k)[static_cast<std::size_t>(j - 1)];
        EXPECT_EQ(a + b, 0.0);
      }
  const FrameVector bracket12 = covderiv_frame(1, 2) - covderiv_frame(2, 1);
  EXPECT_EQ(bracket12, (FrameVector{0, 0, 1}));
  EXPECT_EQ(covderiv_frame(1, 3) - covderiv_frame(3, 1), (FrameVector{0, 0, 0}));
  EXPECT_EQ(covderiv_frame(2, 3) - covderiv_frame(3, 2), (FrameVector{0, 0, 0}));
}

TEST(Connection, CovariantDerivativeOfFrameField) {
  // W = E2 constant coefficients, dir = E1: ∇_{E1}E2 = ½E3.
  EXPECT_EQ(covariant_derivative({0, 1, 0}, {0, 0, 0}, {1, 0, 0}), (FrameVector{0, 0, 0.5}));
  // Linear in the direction.
  const FrameVector r = covariant_derivative({0, 0, 1}, {0, 0, 0}, {2, 3, 0});
  EXPECT_EQ(r, (FrameVector{1.5, -1.0, 0}));
}

TEST(Christoffel, AgreesWithKoszulOracle) {
  for (const Point& p : sample_points(100, 3)) {
    const auto a = christoffel_at(p);
    const auto b = oracle::christoffel(p);
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_NEAR(a[k][i][j], b[k][i][j], 1e-9) << k << i << j;
  }
}

TEST(Christoffel, Symmetric) {
  const auto G = christoffel_at({0.3, -1.2, 0.8});
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_EQ(G[k][i][j], G[k][j][i]);
}

TEST(Christoffel, RecoverFrameTable) {
  const ConnectionTable exact = connection_table();
  for (const Point& p : sample_points(50, 5)) {
    const ConnectionTable t = connection_from_christoffel(p);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(max_abs(t[i][j] - exact[i][j]), 0.0, 1e-8);
  }
}

TEST(Christoffel, LibraryKoszulMatchesClosedForm) {
  for (const Point& p : sample_points(20, 9)) {
    const auto a = christoffel_at(p), b = christoffel_koszul_fd(p);
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_NEAR(a[k][i][j], b[k][i][j], 1e-8);
  }
}

TEST(Inverse, MatchesGaussJordan) {
  const Point p{1.1, -0.4, 2.0};
  const Mat3 a = inverse(metric_at(p));
  const auto b = oracle::inverse_gj(oracle::metric(p));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(a[i][j], b[i][j], 1e-12);
  EXPECT_THROW(inverse(Mat3{}), Error);
}
