#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "brute_force.hpp"
#include "domp/errors.hpp"
#include "domp/harness.hpp"
#include "domp/instance_io.hpp"

namespace domp::harness {
namespace {

TEST(WeightPreset, ParseAndLambda) {
  EXPECT_EQ(WeightPreset::parse("median").lambda(3), Eigen::Vector3d(1, 1, 1));
  EXPECT_EQ(WeightPreset::parse("center").lambda(3), Eigen::Vector3d(0, 0, 1));
  EXPECT_EQ(WeightPreset::parse("trimmed:1,1").lambda(4), Eigen::Vector4d(0, 1, 1, 0));
  EXPECT_EQ(WeightPreset::parse("custom:1,2.5,0").lambda(3), Eigen::Vector3d(1, 2.5, 0));
  EXPECT_EQ(WeightPreset::parse("trimmed:1,1").to_string(), "trimmed:1,1");
  EXPECT_THROW(WeightPreset::parse("median:3"), InvalidArgument);
  EXPECT_THROW(WeightPreset::parse("bogus"), InvalidArgument);
  EXPECT_THROW(WeightPreset::parse("trimmed:2,2").lambda(4), InvalidArgument);
  EXPECT_THROW(WeightPreset::parse("custom:1,2").lambda(3), InvalidArgument);
}

TEST(GenInstance, DeterministicAndInRange) {
  const Instance a = gen_instance(4, 2, 17, WeightPreset{});
  const Instance b = gen_instance(4, 2, 17, WeightPreset{});
  EXPECT_EQ(a.costs(), b.costs());
  EXPECT_NE(a.costs(), gen_instance(4, 2, 18, WeightPreset{}).costs());
  for (int j = 0; j < 4; ++j)
    for (int l = 0; l < 4; ++l) {
      if (j == l) {
        EXPECT_EQ(a.cost(j, l), 0.0);
      } else {
        EXPECT_GE(a.cost(j, l), 1.0);
        EXPECT_LE(a.cost(j, l), 100.0);
        EXPECT_EQ(a.cost(j, l), std::floor(a.cost(j, l)));
      }
    }
  EXPECT_THROW(gen_instance(3, 3, 1, WeightPreset{}), InvalidArgument);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 1000; ++t) {
    const auto v = uniform_int(rng, -2, 2);
    EXPECT_GE(v, -2);
    EXPECT_LE(v, 2);
  }
}

TEST(Verification, E1PassesEveryCheck) {
  const Report r = run_verification(testing::e1(), VerificationFlags{});
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.checks.size(), all_checks().size());
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
  const std::string json = report_to_json(r);
  EXPECT_NE(json.find("\"instance\""), std::string::npos);
}

TEST(Verification, UnknownCheckAndGuards) {
  VerificationFlags f;
  f.checks = {"nonsense"};
  EXPECT_THROW(run_verification(testing::e1(), f), InvalidArgument);
  f.checks = {"surrogate"};
  const Instance big = gen_instance(5, 2, 1, WeightPreset{});
  const Report r = run_verification(big, f);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_FALSE(r.checks[0].pass);
  EXPECT_NE(r.checks[0].detail.find("resource"), std::string::npos) << r.checks[0].detail;
}

TEST(Verification, CorruptedFileFailsLoad) {
  const auto path = std::filesystem::temp_directory_path() / "domp_corrupt_instance.json";
  write_text_file(path, R"({"n":2,"p":1,"lambda":[1,1],"C":[[0,-3],[1,0]]})");
  const Report r = verify_file(path, VerificationFlags{});
  EXPECT_FALSE(r.pass());
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_EQ(r.checks[0].name, "load");
  std::filesystem::remove(path);
  EXPECT_FALSE(verify_file(path, VerificationFlags{}).pass());
}

TEST(Campaign, TwentySeedsPass) {
  VerificationFlags f;
  f.checks = {"sort", "surrogate", "lift", "recover", "mu", "explicit"};
  f.hull_samples = 5;
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 20; s >= 1; --s) seeds.push_back(s);
  seeds.push_back(3);
  const auto entries = run_campaign(3, 1, seeds, WeightPreset{}, f);
  ASSERT_EQ(entries.size(), 20u);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    EXPECT_EQ(entries[i].seed, i + 1);
    EXPECT_TRUE(entries[i].report.pass()) << "seed " << entries[i].seed;
  }
  EXPECT_EQ(campaign_to_json(entries), campaign_to_json(run_campaign(3, 1, seeds, WeightPreset{}, f)));
}

}  // namespace
}  // namespace domp::harness
