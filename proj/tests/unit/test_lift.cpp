#include <gtest/gtest.h>

#include <random>

#include "brute_force.hpp"
#include "domp/errors.hpp"
#include "domp/harness.hpp"
#include "domp/lift.hpp"
#include "domp/objective.hpp"
#include "domp/qform.hpp"

namespace domp::lift {
namespace {

using testing::e1;

PhiVector e1_optimum(const Instance& inst) {
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(3, 3), X = Eigen::MatrixXd::Zero(3, 3);
  X.col(0).setOnes();
  return qform::complete_slacks(inst, P, X, Eigen::Vector3d(1, 0, 0));
}

TEST(Matrices, FAndG) {
  const Instance inst = e1();
  const Eigen::MatrixXd F(build_F(inst));
  EXPECT_EQ(F.rows(), 9);
  EXPECT_DOUBLE_EQ(F(0 * 3 + 1, 0 * 3 + 2), 7.0);
  EXPECT_DOUBLE_EQ(F(1 * 3 + 2, 1 * 3 + 0), 2.0);
  EXPECT_DOUBLE_EQ(F(0, 4), 0.0);
  const Eigen::MatrixXd G(build_G(inst));
  EXPECT_EQ(G.rows(), 39);
  EXPECT_TRUE(G.isApprox(G.transpose()));
  EXPECT_EQ(G.block(0, 9, 9, 9), F);
  EXPECT_EQ(G.block(9, 0, 9, 9), F.transpose());
  EXPECT_EQ(G.block(18, 0, 21, 39).norm(), 0.0);
  const Eigen::VectorXd g = build_g(inst);
  EXPECT_EQ(g.segment(21, 3), Eigen::Vector3d(1, 1, 1));
  EXPECT_EQ(g.sum(), 3.0);
  const Eigen::VectorXd a = alpha_vector(qform::PhiLayout(3));
  EXPECT_EQ(a.sum(), 3.0);
  EXPECT_EQ(a.head(3), Eigen::Vector3d(1, 1, 1));
}

TEST(Lift, ExactLiftOfOptimum) {
  const Instance inst = e1();
  const PhiVector phi = e1_optimum(inst);
  const LiftedMatrix L = lift(phi);
  EXPECT_EQ(L.dimension(), 40);
  EXPECT_EQ(L.corner(), 1.0);
  EXPECT_EQ(L.border(), phi.values);
  EXPECT_DOUBLE_EQ(L.block(NamedBlock::kQ).trace(), 3.0);
  EXPECT_DOUBLE_EQ(half_G_inner(inst, L), 7.0);
  EXPECT_DOUBLE_EQ(build_g(inst).dot(phi.values), 7.0);
  EXPECT_DOUBLE_EQ(inner_FV(inst, L), 7.0);
  const Eigen::VectorXd a = alpha_vector(phi.layout);
  EXPECT_DOUBLE_EQ(a.dot(phi.values), 1.0);
  EXPECT_DOUBLE_EQ(a.dot(L.inner() * a), 1.0);
  for (int i = 0; i < 21; ++i) EXPECT_EQ(L.phi(i, i), phi[i]);
  EXPECT_EQ(recover_phi(L).values, phi.values);
  for (double mu : {0.0, 0.25, 0.5, 1.0}) EXPECT_DOUBLE_EQ(objective_mu(inst, L, mu), 7.0);
  EXPECT_THROW(objective_mu(inst, L, 1.5), InvalidArgument);
  PhiVector neg = phi;
  neg[0] = -1;
  EXPECT_THROW(lift(neg), InvalidArgument);
}

TEST(Lift, NamedBlocksCoverUpperTriangle) {
  const qform::PhiLayout layout(3);
  int entries = 0;
  for (const auto& b : named_blocks()) {
    const int r = layout.length(b.row), c = layout.length(b.col);
    entries += b.row == b.col ? r * (r + 1) / 2 : r * c;
    EXPECT_EQ(info(b.id).name, b.name);
  }
  EXPECT_EQ(entries, 39 * 40 / 2);
  const LiftedMatrix L = lift(e1_optimum(e1()));
  EXPECT_EQ(L.block(NamedBlock::kV).rows(), 9);
  EXPECT_EQ(L.block(NamedBlock::kyW).cols(), 3);
}

TEST(ConvexHull, CornerAveragesAndCertificate) {
  const Instance inst = e1();
  const auto pts = qform::enumerate_feasible_points(inst);
  ASSERT_GE(pts.size(), 2u);
  const CertifiedLift single = convex_hull_lift({pts[0]}, {1.0});
  EXPECT_EQ(single.lifted.matrix(), lift(pts[0]).matrix());
  const CertifiedLift mix = convex_hull_lift({pts[0], pts[1]}, {0.5, 0.5});
  EXPECT_EQ(mix.lifted.corner(), 1.0);
  EXPECT_TRUE(recover_phi(mix.lifted).values.isApprox(0.5 * (pts[0].values + pts[1].values)));
  EXPECT_EQ(mix.points.size(), 2u);
  EXPECT_THROW(convex_hull_lift({pts[0], pts[1]}, {0.6, 0.6}), InvalidArgument);
  EXPECT_THROW(convex_hull_lift({pts[0], pts[1]}, {1.5, -0.5}), InvalidArgument);
  EXPECT_THROW(convex_hull_lift({pts[0]}, {0.5, 0.5}), InvalidArgument);
}

TEST(ObjectiveMu, AgreesOnEveryExactLift) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto inst = harness::gen_instance(3, 1 + static_cast<int>(seed % 2), seed,
                                            harness::WeightPreset::parse("trimmed:1,0"));
    for (const auto& phi : qform::enumerate_feasible_points(inst)) {
      const LiftedMatrix L = lift(phi);
      const double ref = qform::miqp_objective(inst, phi);
      EXPECT_NEAR(half_G_inner(inst, L), ref, 1e-9);
      for (double mu : {0.0, 0.25, 0.5, 0.75, 1.0}) EXPECT_NEAR(objective_mu(inst, L, mu), ref, 1e-9);
    }
  }
}

TEST(ObjectiveMu, IncludesInteractionTerms) {
  Eigen::MatrixXd C(2, 2);
  C << 0, 1, 1, 0;
  InteractionMatrix D(4);
  D.set(pair_index(2, 0, 0), pair_index(2, 1, 1), 4.0);
  const Instance inst(1, C, Eigen::Vector2d::Zero(), D);
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(2, 2);
  X.col(0).setOnes();
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(2, 2);
  const auto phi = qform::complete_slacks(inst, P, X, Eigen::Vector2d(1, 0));
  const LiftedMatrix L = lift(phi);
  EXPECT_DOUBLE_EQ(objective_mu(inst, L, 0.3), 4.0);
  EXPECT_DOUBLE_EQ(half_G_inner(inst, L), 4.0);
}

}  // namespace
}  // namespace domp::lift
