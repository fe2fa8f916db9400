// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "brute_force.hpp"
#include "domp/conic_program.hpp"
#include "domp/dnn.hpp"
#include "domp/harness.hpp"
#include "domp/lift.hpp"
#include "domp/oracle.hpp"
#include "domp/qform.hpp"
#include "domp/sortperm.hpp"

namespace {

using namespace domp;
using harness::WeightPreset;

struct Outcome {
  bool pass = true;
  std::string detail;
};

WeightPreset preset_for(std::uint64_t seed, int n) {
  switch (seed % 4) {
    case 0: return WeightPreset::parse("median");
    case 1: return WeightPreset::parse("center");
    case 2: return WeightPreset::parse(n > 3 ? "trimmed:1,1" : "trimmed:1,0");
    default: {
      std::mt19937_64 rng(seed * 7919);
      std::string text = "custom:";
      for (int k = 0; k < n; ++k)
        text += (k ? "," : "") + std::to_string(harness::uniform_int(rng, 0, 5));
      return WeightPreset::parse(text);
    }
  }
}

// The shared pool for criteria 2-7: 50 instances with n in {3, 4}.
struct PoolEntry {
  Instance instance;
  std::vector<qform::PhiVector> points;
};

std::vector<PoolEntry> build_pool() {
  std::vector<PoolEntry> pool;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const int n = seed % 2 ? 3 : 4;
    const int p = 1 + static_cast<int>((seed / 2) % (n - 1));
    Instance inst = harness::gen_instance(n, p, seed, preset_for(seed, n));
    auto pts = qform::enumerate_feasible_points(inst);
    pool.push_back({std::move(inst), std::move(pts)});
  }
  return pool;
}

// Three random feasible points with Dirichlet(1,1,1) weights.
std::vector<lift::CertifiedLift> hull_samples(const PoolEntry& e, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<lift::CertifiedLift> out;
  for (int t = 0; t < count; ++t) {
    std::vector<qform::PhiVector> pts;
    std::vector<double> w;
    double s = 0;
    for (int r = 0; r < 3; ++r) {
      pts.push_back(e.points[harness::uniform_int(rng, 0, static_cast<std::int64_t>(e.points.size()) - 1)]);
      w.push_back(-std::log((harness::uniform_int(rng, 1, 1 << 30) + 0.5) / (1 << 30)));
      s += w.back();
    }
    for (double& x : w) x /= s;
    w[2] = 1.0 - w[0] - w[1];
    out.push_back(lift::convex_hull_lift(pts, w));
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

constexpr int kHullsPerInstance = 10;

Outcome criterion1() {
  Outcome o;
  int count = 0;
  double worst = 0;
  for (std::uint64_t seed = 1; count < 200; ++seed) {
    const int n = 3 + static_cast<int>(seed % 3);
    for (int p = 1; p < n && count < 200; ++p, ++count) {
      const Instance inst = harness::gen_instance(n, p, seed * 31 + p, preset_for(seed + p, n));
      const double a = oracle::solve_enumerate(inst).value;
      const double b = oracle::solve_enumerate_extended(inst, {false}).value;
      worst = std::max(worst, std::abs(a - b));
    }
  }
  o.pass = worst <= 1e-12;
  o.detail = "200 instances, max |diff| " + fmt(worst);
  return o;
}

Outcome criterion2(const std::vector<PoolEntry>& pool) {
  double worst = 0;
  for (const auto& e : pool) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& phi : e.points) best = std::min(best, lift::half_G_inner(e.instance, lift::lift(phi)));
    worst = std::max(worst, std::abs(best - oracle::solve_enumerate(e.instance).value));
  }
  return {worst <= 1e-9, "50 instances, max |min lifted - optimum| " + fmt(worst)};
}

struct LiftSweep {
  long exact = 0, hulls = 0;
  double eq = 0, neg = 0, eig = 0;  // worst values
  double recover_exact = 0, recover_slack = 0, recover_hull = 0;
  double mu_spread = 0;
};

LiftSweep sweep_lifts(const std::vector<PoolEntry>& pool) {
  LiftSweep s;
  const double mus[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  auto visit = [&](const Instance& inst, const lift::ConicProgram& prog, const lift::LiftedMatrix& L,
                   const Eigen::VectorXd& phi) {
    const lift::LiftReport r = lift::check_lift_feasible(prog, L);
    s.eq = std::max(s.eq, r.max_equality_residual);
    s.neg = std::max(s.neg, r.negativity);
    s.eig = std::min(s.eig, r.min_eigenvalue);
    const Eigen::VectorXd diff = (lift::recover_phi(L).values - phi).cwiseAbs();
    double lo = 1e300, hi = -1e300;
    for (double mu : mus) {
      const double v = lift::objective_mu(inst, L, mu);
      lo = std::min(lo, v), hi = std::max(hi, v);
    }
    s.mu_spread = std::max(s.mu_spread, hi - lo);
    return diff;
  };
  std::uint64_t seed = 1000;
  for (const auto& e : pool) {
    const auto prog = lift::build_cp0(e.instance);
    const int slack = e.points.front().layout.offset(qform::Block::kW);
    for (const auto& phi : e.points) {
      const Eigen::VectorXd diff = visit(e.instance, prog, lift::lift(phi), phi.values);
      s.recover_exact = std::max(s.recover_exact, diff.head(slack).maxCoeff());
      s.recover_slack = std::max(s.recover_slack, diff.tail(diff.size() - slack).maxCoeff());
      ++s.exact;
    }
    for (const auto& h : hull_samples(e, ++seed, kHullsPerInstance)) {
      Eigen::VectorXd avg = Eigen::VectorXd::Zero(h.points[0].values.size());
      for (std::size_t r = 0; r < h.points.size(); ++r) avg += h.weights[r] * h.points[r].values;
      s.recover_hull = std::max(s.recover_hull, visit(e.instance, prog, h.lifted, avg).maxCoeff());
      ++s.hulls;
    }
  }
  return s;
}

Outcome criterion3(const LiftSweep& s) {
  const bool pass = s.eq <= 1e-9 && s.neg == 0.0 && s.eig >= -1e-10;
  return {pass, std::to_string(s.exact) + " exact lifts + " + std::to_string(s.hulls) +
                    " hulls, max eq residual " + fmt(s.eq) + ", negativity " + fmt(s.neg) +
                    ", min eigenvalue " + fmt(s.eig)};
}

Outcome criterion4(const LiftSweep& s) {
  // Binary blocks of an exact lift must come back bit for bit, slacks within
  // 1e-15. Hulls recover the weighted average of their points only up to
  // rounding, which is reported but not judged.
  const bool pass = s.recover_exact == 0.0 && s.recover_slack <= 1e-15;
  return {pass, "binary blocks max diff " + fmt(s.recover_exact) + ", slack max diff " +
                    fmt(s.recover_slack) + " (hull vs weighted average " + fmt(s.recover_hull) + ")"};
}

Outcome criterion5() {
  long cases = 0, failures = 0;
  for (int n = 2; n <= 4; ++n)
    for (int p = 1; p < n; ++p)
      for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        ++cases;
        if (!qform::surrogate_equivalence_check(harness::gen_instance(n, p, seed, WeightPreset{}))
                 .equivalent)
          ++failures;
      }
  return {failures == 0, std::to_string(cases) + " instances, " + std::to_string(failures) + " not equivalent"};
}

Outcome criterion6(const LiftSweep& s) {
  return {s.mu_spread <= 1e-9, "max spread over mu " + fmt(s.mu_spread)};
}

Outcome criterion7(const std::vector<PoolEntry>& pool, std::string& log_json) {
  long lifts = 0;
  double worst_explicit = 0, worst_cp0 = 0;
  bool stable = true;
  for (const auto& e : pool) {
    const auto corrected = lift::build_cp_explicit(e.instance, true);
    const auto again = lift::build_cp_explicit(e.instance, true);
    const std::string log = lift::discrepancy_log_to_json(corrected.log);
    stable &= log == lift::discrepancy_log_to_json(again.log);
    if (log_json.empty()) log_json = log;
    const auto cp0 = lift::build_cp0(e.instance);
    for (const auto& phi : e.points) {
      const auto L = lift::lift(phi);
      worst_explicit = std::max(worst_explicit, lift::check_lift_feasible(corrected.program, L).max_equality_residual);
      worst_cp0 = std::max(worst_cp0, lift::check_lift_feasible(cp0, L).max_equality_residual);
      ++lifts;
    }
  }
  const bool pass = stable && worst_explicit <= 1e-9 && worst_cp0 <= 1e-9 && !log_json.empty();
  return {pass, std::to_string(lifts) + " exact lifts, corrected explicit " + fmt(worst_explicit) +
                    ", cp0 " + fmt(worst_cp0) + ", log stable: " + (stable ? "yes" : "no")};
}

Outcome criterion8() {
  long converged = 0, violations = 0;
  double max_gap = -1e300, min_bound = 1e300, max_bound = -1e300;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const int n = seed % 2 ? 3 : 4;
    const int p = 1 + static_cast<int>((seed / 2) % (n - 1));
    const Instance inst = harness::gen_instance(n, p, 5000 + seed, preset_for(seed, n));
    const auto r = dnn::solve_dnn(lift::build_cp0(inst));
    const double opt = oracle::solve_enumerate(inst).value;
    if (r.status == dnn::DnnStatus::kConverged) ++converged;
    if (r.status != dnn::DnnStatus::kConverged || r.bound > opt + 1e-4) ++violations;
    max_gap = std::max(max_gap, r.bound - opt);
    min_bound = std::min(min_bound, r.bound);
    max_bound = std::max(max_bound, r.bound);
  }
  double zero_bound = 0;
  bool zero_ok = true;
  for (int n = 3; n <= 4; ++n) {
    const Instance z(1, Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Ones(n));
    const auto r = dnn::solve_dnn(lift::build_cp0(z));
    zero_ok &= r.status == dnn::DnnStatus::kConverged && std::abs(r.bound) <= 1e-6;
    zero_bound = std::max(zero_bound, std::abs(r.bound));
  }
  return {violations == 0 && zero_ok,
          std::to_string(converged) + "/100 converged, max bound - optimum " + fmt(max_gap) +
              ", bounds in [" + fmt(min_bound) + ", " + fmt(max_bound) + "], zero-cost |bound| " +
              fmt(zero_bound)};
}

Outcome criterion9() {
  std::mt19937_64 rng(2024);
  long checks = 0, mismatches = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 5;
    Eigen::VectorXd r(n);
    for (int i = 0; i < n; ++i) r(i) = static_cast<double>(harness::uniform_int(rng, -3, 3));
    for (const auto& perm : testing::all_permutations(n)) {
      Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
      for (int k = 0; k < n; ++k) P(perm[k], k) = 1;
      ++checks;
      if (sortperm::check_sort_feasible(r, P).feasible != testing::is_nondecreasing(r, perm))
        ++mismatches;
    }
  }
  return {mismatches == 0, std::to_string(checks) + " (r, P) pairs, " + std::to_string(mismatches) + " mismatches"};
}

Outcome criterion10() {
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const int n = 3 + static_cast<int>(seed % 4);
    const int p = 1 + static_cast<int>(seed % (n - 1));
    const Instance base = harness::gen_instance(n, p, 9000 + seed, WeightPreset{});
    const Eigen::MatrixXd& C = base.costs();
    const int k1 = static_cast<int>(seed % 2), k2 = n > 3 ? 1 : 0;
    const double med = oracle::solve_enumerate(base.with_lambda(WeightPreset::parse("median").lambda(n))).value;
    const double cen = oracle::solve_enumerate(base.with_lambda(WeightPreset::parse("center").lambda(n))).value;
    WeightPreset trimmed;
    trimmed.kind = WeightPreset::Kind::kTrimmed;
    trimmed.k1 = k1;
    trimmed.k2 = k2;
    const double tri = oracle::solve_enumerate(base.with_lambda(trimmed.lambda(n))).value;
    worst = std::max({worst, std::abs(med - testing::p_median(C, p)),
                      std::abs(cen - testing::p_center(C, p)),
                      std::abs(tri - testing::trimmed_mean(C, p, k1, k2))});
  }
  return {worst <= 1e-12, "50 instances x 3 presets, max |diff| " + fmt(worst)};
}

int failures = 0;

template <typename F>
void run(int id, const char* name, double limit_s, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o = body();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    o.pass = false;
    o.detail += ", over time limit " + fmt(limit_s) + " s";
  }
  failures += !o.pass;
  std::printf("%s [%d] %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

}  // namespace

int main() {
  std::vector<PoolEntry> pool;
  LiftSweep sweep;

  run(1, "plain and extended enumeration agree", 60, criterion1);
  run(2, "min lifted objective equals optimum", 120, [&] {
    pool = build_pool();
    return criterion2(pool);
  });
  // The lift sweep also feeds criteria 4 and 6.
  run(3, "exact lifts and hulls satisfy cp0", 60, [&] {
    sweep = sweep_lifts(pool);
    return criterion3(sweep);
  });
  run(4, "recover_phi inverts lift", 0, [&] { return criterion4(sweep); });
  run(5, "surrogate equivalence", 120, criterion5);
  run(6, "objective_mu invariant in mu", 0, [&] { return criterion6(sweep); });
  std::string log;
  run(7, "corrected explicit program and cp0 hold together", 0, [&] { return criterion7(pool, log); });
  std::printf("discrepancy log:\n%s\n", log.c_str());
  run(8, "DNN bound below optimum", 900, criterion8);
  run(9, "sorting feasibility exhaustive", 60, criterion9);
  run(10, "weight presets match independent oracles", 0, criterion10);

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
