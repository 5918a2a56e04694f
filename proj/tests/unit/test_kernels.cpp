#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "epr/kernels.hpp"
#include "epr/qcore.hpp"
#include "epr/rng.hpp"
#include "epr/sources.hpp"

using namespace epr;

namespace {

// Odd length so every vector width leaves a scalar tail.
constexpr std::size_t kN = 4099;

std::vector<double> uniform(RandomStream& rng, std::size_t n, double scale, double offset = 0.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = offset + scale * rng.uniform();
  return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST(Kernels, ScalarAlwaysSupported) {
  EXPECT_TRUE(isa_supported(Isa::Scalar));
  EXPECT_EQ(Kernels::for_isa(Isa::Scalar).isa(), Isa::Scalar);
  EXPECT_TRUE(isa_supported(best_isa()));
  EXPECT_EQ(Kernels::best().isa(), best_isa());
}

TEST(Kernels, UnsupportedIsaRejected) {
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (!isa_supported(isa)) EXPECT_THROW(Kernels::for_isa(isa), std::exception);
  }
}

TEST(Kernels, PhaseAcceptScalarMatchesDefinition) {
  RandomStream rng(1);
  const auto p2 = uniform(rng, kN, kTwoPi);
  const auto p3 = uniform(rng, kN, kTwoPi);
  const double w = 0.3;
  std::vector<std::uint8_t> acc(kN);
  Kernels::for_isa(Isa::Scalar).phase_accept(p2, p3, w, acc);
  for (std::size_t i = 0; i < kN; ++i) {
    double d = std::remainder(p3[i] - p2[i], kTwoPi);
    ASSERT_EQ(acc[i] != 0, std::fabs(d) < w) << i;
  }
}

TEST(Kernels, PhaseAcceptEquivalentAcrossIsas) {
  RandomStream rng(2);
  const auto p2 = uniform(rng, kN, 4 * kTwoPi, -2 * kTwoPi);
  const auto p3 = uniform(rng, kN, 4 * kTwoPi, -2 * kTwoPi);
  std::vector<std::uint8_t> ref(kN);
  Kernels::for_isa(Isa::Scalar).phase_accept(p2, p3, 0.7, ref);
  for (Isa isa : supported_isas()) {
    std::vector<std::uint8_t> got(kN);
    Kernels::for_isa(isa).phase_accept(p2, p3, 0.7, got);
    EXPECT_EQ(got, ref) << to_string(isa);
  }
}

TEST(Kernels, PhaseAcceptWrapAround) {
  const std::vector<double> p2{0.01}, p3{kTwoPi + 0.005};
  for (Isa isa : supported_isas()) {
    std::vector<std::uint8_t> acc(1);
    Kernels::for_isa(isa).phase_accept(p2, p3, 0.01, acc);
    EXPECT_EQ(acc[0], 1) << to_string(isa);
  }
}

TEST(Kernels, MalusTallyEquivalentAcrossIsas) {
  RandomStream rng(3);
  std::vector<double> c(kN), s(kN);
  for (std::size_t i = 0; i < kN; ++i) {
    const double t = kPi * rng.uniform();
    c[i] = std::cos(2 * t);
    s[i] = std::sin(2 * t);
  }
  const auto u1 = uniform(rng, kN, 1.0);
  const auto u2 = uniform(rng, kN, 1.0);
  std::vector<std::uint8_t> acc(kN);
  for (auto& a : acc) a = rng.uniform() < 0.7;
  const MalusBatch batch{c, s, u1, u2, acc};
  const AnalyzerPair an{std::cos(0.8), std::sin(0.8), std::cos(0.1), std::sin(0.1), -1.0};

  ChannelTally ref{};
  Kernels::for_isa(Isa::Scalar).malus_tally(batch, an, ref);
  std::uint64_t accepted = 0;
  for (auto a : acc) accepted += a;
  EXPECT_EQ(ref[0] + ref[1] + ref[2] + ref[3], accepted);

  for (Isa isa : supported_isas()) {
    ChannelTally got{};
    Kernels::for_isa(isa).malus_tally(batch, an, got);
    EXPECT_EQ(got, ref) << to_string(isa);
  }
}

TEST(Kernels, MalusTallyAccumulates) {
  const std::vector<double> c{1.0}, s{0.0}, u1{0.5}, u2{0.5};
  const std::vector<std::uint8_t> acc{1};
  ChannelTally t{};
  const auto k = Kernels::best();
  k.malus_tally({c, s, u1, u2, acc}, {}, t);
  k.malus_tally({c, s, u1, u2, acc}, {}, t);
  // Axis along both polarizers with anticorrelated partner: first '+', second '-'.
  EXPECT_EQ(t[1], 2u);
}

TEST(Kernels, ProductBornMatchesDensityOperatorOracle) {
  RandomStream rng(4);
  const std::size_t n = 37;
  std::vector<double> in[8];
  std::vector<PureState> s2, s3;
  for (std::size_t i = 0; i < n; ++i) {
    const PairSample p = sample_disentangled_pair(rng);
    s2.push_back(p.state2);
    s3.push_back(p.state3);
  }
  for (int k = 0; k < 8; ++k) in[k].resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    in[0][i] = s2[i][0].real();
    in[1][i] = s2[i][0].imag();
    in[2][i] = s2[i][1].real();
    in[3][i] = s2[i][1].imag();
    in[4][i] = s3[i][0].real();
    in[5][i] = s3[i][0].imag();
    in[6][i] = s3[i][1].real();
    in[7][i] = s3[i][1].imag();
  }
  const ProductBatch batch{in[0], in[1], in[2], in[3], in[4], in[5], in[6], in[7]};

  // Random measured state and Alice state; M_jk = sum_i conj(Phi_ijk) alice_i.
  Eigen::VectorXcd phi(8);
  for (int i = 0; i < 8; ++i) phi(i) = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
  const PureState measured(phi / phi.norm());
  const PureState alice = linear_polarization_state(0.37);
  ProductContraction m;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      Complex acc = 0.0;
      for (int i = 0; i < 2; ++i) acc += std::conj(measured[4 * i + 2 * j + k]) * alice[i];
      m.m[2 * j + k] = acc;
    }
  }

  std::vector<double> ref(n);
  Kernels::for_isa(Isa::Scalar).product_born(batch, m, ref);
  for (std::size_t i = 0; i < n; ++i) {
    const DensityOperator rho =
        tensor(projector(alice), tensor(projector(s2[i]), projector(s3[i])));
    EXPECT_NEAR(ref[i], born_expectation(rho, measured), 1e-12) << i;
  }
  for (Isa isa : supported_isas()) {
    std::vector<double> got(n);
    Kernels::for_isa(isa).product_born(batch, m, got);
    EXPECT_TRUE(bit_equal(got, ref)) << to_string(isa);
  }
}

TEST(Kernels, SpanLengthMismatchRejected) {
  const std::vector<double> a(4), b(3);
  std::vector<std::uint8_t> acc(4);
  EXPECT_THROW(Kernels::best().phase_accept(a, b, 0.1, acc), std::exception);
}
