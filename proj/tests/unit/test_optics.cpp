#include <gtest/gtest.h>

#include <cmath>

#include "epr/optics.hpp"
#include "epr/rng.hpp"

using namespace epr;

namespace {

PureState random_state(RandomStream& rng, int dim) {
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
  return PureState(v / v.norm());
}

}  // namespace

TEST(Optics, PolarizerReducedToHalfTurn) {
  EXPECT_NEAR(PolarizerSetting(kPi + 0.25).angle(), 0.25, 1e-15);
  EXPECT_NEAR(PolarizerSetting(-0.25).angle(), kPi - 0.25, 1e-15);
  EXPECT_NEAR(PolarizerSetting::degrees(45).angle(), kPi / 4, 1e-15);
}

TEST(Optics, MalusAnchors) {
  EXPECT_NEAR(malus_probability(0.0, PolarizerSetting(0.0)), 1.0, 1e-15);
  EXPECT_NEAR(malus_probability(kPi / 2, PolarizerSetting(0.0)), 0.0, 1e-15);
  EXPECT_NEAR(malus_probability(kPi / 4, PolarizerSetting(0.0)), 0.5, 1e-15);
}

TEST(Optics, MalusOrthogonalChannelsComplete) {
  RandomStream rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double x = kPi * rng.uniform();
    const double a = kPi * rng.uniform();
    EXPECT_NEAR(malus_probability(x, PolarizerSetting(a)) +
                    malus_probability(x, PolarizerSetting(a + kPi / 2)),
                1.0, 1e-15);
  }
}

TEST(Optics, SfgTypeIMapsPlusPlusToMinusMinus) {
  const PureState out = sfg_transform(SfgType::TypeI, PureState::basis(4, 0));
  EXPECT_EQ(out[3], Complex(1.0));
}

TEST(Optics, SfgTypeIINegatesSinglet) {
  const PureState psi = bell_state(BellKind::PsiMinus);
  const PureState out = sfg_transform(SfgType::TypeII, psi);
  EXPECT_TRUE(out.amplitudes().isApprox(-psi.amplitudes(), 1e-15));
}

TEST(Optics, SfgIsUnitaryInvolutionAndTypesCommute) {
  RandomStream rng(7);
  for (int i = 0; i < 100; ++i) {
    const PureState s = random_state(rng, 4);
    for (SfgType t : {SfgType::TypeI, SfgType::TypeII}) {
      const PureState once = sfg_transform(t, s);
      EXPECT_NEAR(once.amplitudes().norm(), 1.0, 1e-12);
      EXPECT_TRUE(sfg_transform(t, once).amplitudes().isApprox(s.amplitudes(), 1e-15));
    }
    const PureState ab = sfg_transform(SfgType::TypeI, sfg_transform(SfgType::TypeII, s));
    const PureState ba = sfg_transform(SfgType::TypeII, sfg_transform(SfgType::TypeI, s));
    EXPECT_TRUE(ab.amplitudes().isApprox(ba.amplitudes(), 1e-15));
  }
  EXPECT_THROW(sfg_transform(SfgType::TypeI, PureState::basis(2, 0)), ValidationError);
}

TEST(Optics, SfgAxisTransformTypeI) {
  const AxisSample out = sfg_axis_transform(SfgType::TypeI, {1.0, 0.0, 0.0});
  EXPECT_EQ(out.theta, 1.0);
  EXPECT_NEAR(out.phi2, kPi, 1e-15);
  EXPECT_NEAR(out.phi3, kPi, 1e-15);
  const AxisSample back = sfg_axis_transform(SfgType::TypeI, out);
  EXPECT_NEAR(back.phi2, 0.0, 1e-15);
  EXPECT_NEAR(back.phi3, 0.0, 1e-15);
  EXPECT_THROW(sfg_axis_transform(SfgType::TypeII, {}), UnsupportedError);
}

TEST(Optics, BsmProjector) {
  const Operator p = bsm_projector(BellKind::PsiMinus);
  EXPECT_NEAR(p.trace().real(), 2.0, 1e-12);
  const Eigen::VectorXd ev = hermitian_eigenvalues(p);
  for (int i = 0; i < ev.size(); ++i) {
    EXPECT_TRUE(std::abs(ev(i)) < 1e-12 || std::abs(ev(i) - 1.0) < 1e-12) << ev(i);
  }
  RandomStream rng(4);
  const PureState chi = random_state(rng, 2);
  const PureState in = tensor(bell_state(BellKind::PsiMinus), chi);
  EXPECT_TRUE(apply(p, in).isApprox(in.amplitudes(), 1e-12));
  const PureState orth = tensor(bell_state(BellKind::PhiPlus), chi);
  EXPECT_LT(apply(p, orth).norm(), 1e-12);
  EXPECT_THROW(bsm_projector(BellKind::PsiMinus, {2, 3}), UnsupportedError);
}
