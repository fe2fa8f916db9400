#include "domp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "domp/conic_program.hpp"
#include "domp/errors.hpp"
#include "domp/instance_io.hpp"
#include "domp/lift.hpp"
#include "domp/oracle.hpp"
#include "domp/qform.hpp"
#include "domp/sortperm.hpp"

namespace domp::harness {

namespace {

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("not a number: '" + item + "'");
    }
    if (used != item.size()) throw InvalidArgument("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

WeightPreset WeightPreset::parse(const std::string& text) {
  WeightPreset preset;
  if (text == "median") return preset;
  if (text == "center") {
    preset.kind = Kind::kCenter;
    return preset;
  }
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "trimmed" && colon != std::string::npos) {
    const auto ks = parse_numbers(tail);
    if (ks.size() != 2 || ks[0] < 0 || ks[1] < 0 || ks[0] != std::floor(ks[0]) ||
        ks[1] != std::floor(ks[1])) {
      throw InvalidArgument("trimmed preset needs two nonnegative integers: trimmed:k1,k2");
    }
    preset.kind = Kind::kTrimmed;
    preset.k1 = static_cast<int>(ks[0]);
    preset.k2 = static_cast<int>(ks[1]);
    return preset;
  }
  if (head == "custom" && colon != std::string::npos) {
    preset.kind = Kind::kCustom;
    preset.custom = parse_numbers(tail);
    if (preset.custom.empty()) throw InvalidArgument("custom preset needs weights");
    return preset;
  }
  throw InvalidArgument("unknown weight preset '" + text + "'");
}

std::string WeightPreset::to_string() const {
  switch (kind) {
    case Kind::kMedian: return "median";
    case Kind::kCenter: return "center";
    case Kind::kTrimmed: return "trimmed:" + std::to_string(k1) + "," + std::to_string(k2);
    case Kind::kCustom: {
      std::ostringstream os;
      os.precision(17);
      os << "custom:";
      for (std::size_t i = 0; i < custom.size(); ++i) os << (i ? "," : "") << custom[i];
      return os.str();
    }
  }
  return "?";
}

Eigen::VectorXd WeightPreset::lambda(int n) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  switch (kind) {
    case Kind::kMedian:
      out.setOnes();
      break;
    case Kind::kCenter:
      out(n - 1) = 1.0;
      break;
    case Kind::kTrimmed:
      if (k1 + k2 >= n) throw InvalidArgument("trimmed preset removes every position");
      for (int k = k1; k < n - k2; ++k) out(k) = 1.0;
      break;
    case Kind::kCustom:
      if (static_cast<int>(custom.size()) != n) {
        throw InvalidArgument("custom weights need exactly n entries");
      }
      for (int k = 0; k < n; ++k) out(k) = custom[k];
      break;
  }
  return out;
}

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InvalidArgument("uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(rng());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return lo + static_cast<std::int64_t>(draw % span);
}

Instance gen_instance(int n, int p, std::uint64_t seed, const WeightPreset& preset) {
  if (n < 2 || p < 1 || p >= n) throw InvalidArgument("gen_instance needs 1 <= p < n");
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      if (j != l) C(j, l) = static_cast<double>(uniform_int(rng, 1, 100));
    }
  }
  return Instance(p, std::move(C), preset.lambda(n));
}

bool Report::pass() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

using lift::LiftedMatrix;
using qform::PhiVector;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Shared, lazily computed data for one verification run.
class Context {
 public:
  Context(const Instance& instance, const VerificationFlags& flags)
      : instance_(instance), flags_(flags) {}

  const Instance& instance() const { return instance_; }

  const std::vector<PhiVector>& points() {
    if (!points_) points_ = lift::witness_points(instance_);
    return *points_;
  }
  bool points_complete() const { return instance_.n() <= 4; }

  const lift::ConicProgram& cp0() {
    if (!cp0_) cp0_ = lift::build_cp0(instance_);
    return *cp0_;
  }

  double optimum() {
    if (!optimum_) {
      if (instance_.n() <= oracle::kMaxExtendedSites) {
        optimum_ = oracle::solve_enumerate_extended(instance_).value;
      } else {
        optimum_ = oracle::solve_enumerate(instance_).value;
      }
    }
    return *optimum_;
  }

 private:
  const Instance& instance_;
  const VerificationFlags& flags_;
  std::optional<std::vector<PhiVector>> points_;
  std::optional<lift::ConicProgram> cp0_;
  std::optional<double> optimum_;
};

CheckResult check_sort(Context& ctx, const VerificationFlags& flags) {
  const int n = ctx.instance().n();
  if (n > 8) throw ResourceLimit("sort check enumerates n! permutations; n must be <= 8");
  std::vector<Eigen::VectorXd> probes;
  for (const auto& phi : ctx.points()) {
    const Eigen::MatrixXd X = phi.X();
    Eigen::VectorXd r(n);
    for (int j = 0; j < n; ++j) r(j) = ctx.instance().costs().row(j).dot(X.row(j));
    probes.push_back(r);
    if (probes.size() >= 10) break;
  }
  std::mt19937_64 rng(flags.seed);
  for (int t = 0; t < 10; ++t) {
    Eigen::VectorXd r(n);
    for (int j = 0; j < n; ++j) r(j) = static_cast<double>(uniform_int(rng, 0, 3));
    probes.push_back(r);
  }
  long mismatches = 0;
  long sorted_fail = 0;
  for (const auto& r : probes) {
    if (!sortperm::check_sort_feasible(r, sortperm::sort_permutation_matrix(r)).feasible) {
      ++sorted_fail;
    }
    oracle::for_each_permutation(n, [&](const std::vector<int>& client_at) {
      Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
      for (int k = 0; k < n; ++k) P(client_at[k], k) = 1.0;
      bool direct = true;
      for (int k = 0; k + 1 < n; ++k) direct = direct && r(client_at[k]) <= r(client_at[k + 1]);
      if (sortperm::check_sort_feasible(r, P).feasible != direct) ++mismatches;
    });
  }
  CheckResult out{"sort", mismatches == 0 && sorted_fail == 0,
                  static_cast<double>(mismatches + sorted_fail), ""};
  out.detail = std::to_string(probes.size()) + " cost vectors, " + std::to_string(mismatches) +
               " permutation mismatches, " + std::to_string(sorted_fail) +
               " sorting matrices rejected";
  return out;
}

CheckResult check_surrogate(Context& ctx) {
  const auto rep = qform::surrogate_equivalence_check(ctx.instance());
  CheckResult out{"surrogate", rep.equivalent, static_cast<double>(rep.mismatches), ""};
  out.detail = std::to_string(rep.domain_size) + " configurations, " +
               std::to_string(rep.mismatches) + " mismatches (" +
               std::to_string(rep.mismatches_without_self_service) +
               " without the self-service premise)";
  return out;
}

std::vector<double> random_weights(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  std::vector<double> w(count);
  double total = 0.0;
  for (auto& v : w) total += (v = unit(rng));
  double partial = 0.0;
  for (int i = 0; i + 1 < count; ++i) partial += (w[i] /= total);
  w[count - 1] = 1.0 - partial;
  return w;
}

CheckResult check_lift(Context& ctx, const VerificationFlags& flags) {
  const auto& points = ctx.points();
  const auto& cp0 = ctx.cp0();
  double worst = 0.0;
  double min_eig = std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  long failures = 0;
  auto inspect = [&](const LiftedMatrix& M) {
    const auto rep = lift::check_lift_feasible(cp0, M, flags.tol);
    worst = std::max({worst, rep.max_equality_residual, rep.negativity, rep.symmetry_residual});
    min_eig = std::min(min_eig, rep.min_eigenvalue);
    if (!rep.pass) ++failures;
  };
  for (const auto& phi : points) {
    const LiftedMatrix M = lift::lift(phi);
    inspect(M);
    best = std::min(best, lift::half_G_inner(ctx.instance(), M));
  }
  std::mt19937_64 rng(flags.seed);
  const int hulls = points.size() >= 3 ? flags.hull_samples : 0;
  for (int t = 0; t < hulls; ++t) {
    std::vector<PhiVector> picks;
    for (int i = 0; i < 3; ++i) {
      picks.push_back(points[uniform_int(rng, 0, static_cast<std::int64_t>(points.size()) - 1)]);
    }
    inspect(lift::convex_hull_lift(picks, random_weights(rng, 3)).lifted);
  }
  CheckResult out{"lift", failures == 0, worst, ""};
  out.detail = std::to_string(points.size()) + " exact lifts, " + std::to_string(hulls) +
               " hull mixtures, min eigenvalue " + fmt(min_eig);
  if (ctx.points_complete()) {
    const double gap = std::abs(best - ctx.optimum());
    out.pass = out.pass && gap <= flags.tol;
    out.residual = std::max(out.residual, gap);
    out.detail += ", min lifted objective " + fmt(best) + " vs optimum " + fmt(ctx.optimum());
  } else {
    out.detail += ", sampled points only (optimum comparison needs n <= 4)";
  }
  return out;
}

CheckResult check_recover(Context& ctx) {
  double worst = 0.0;
  for (const auto& phi : ctx.points()) {
    const PhiVector back = lift::recover_phi(lift::lift(phi));
    worst = std::max(worst, (back.values - phi.values).cwiseAbs().maxCoeff());
  }
  CheckResult out{"recover", worst == 0.0, worst, ""};
  out.detail = std::to_string(ctx.points().size()) + " lifts, max |Phi alpha - phi| = " + fmt(worst);
  return out;
}

CheckResult check_mu(Context& ctx, const VerificationFlags& flags) {
  static constexpr double kMus[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  double worst = 0.0;
  for (const auto& phi : ctx.points()) {
    const LiftedMatrix M = lift::lift(phi);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double mu : kMus) {
      const double v = lift::objective_mu(ctx.instance(), M, mu);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    worst = std::max(worst, hi - lo);
  }
  CheckResult out{"mu", worst <= flags.tol, worst, ""};
  out.detail = "max spread over mu in {0,0.25,0.5,0.75,1}: " + fmt(worst);
  return out;
}

CheckResult check_bound(Context& ctx, const VerificationFlags& flags) {
  const auto result = dnn::solve_dnn(ctx.cp0(), flags.dnn);
  const double opt = ctx.optimum();
  const double excess = std::max(0.0, result.bound - opt);
  const bool converged = result.status == dnn::DnnStatus::kConverged;
  CheckResult out{"bound", converged && excess <= 1e-4, excess, ""};
  out.detail = "status " + dnn::to_string(result.status) + ", bound " + fmt(result.bound) +
               ", optimum " + fmt(opt) + ", gap " + fmt(opt - result.bound) + ", iters " +
               std::to_string(result.iterations);
  return out;
}

CheckResult check_explicit(Context& ctx, const VerificationFlags& flags) {
  const auto corrected = lift::build_cp_explicit(ctx.instance(), true);
  const auto& cp0 = ctx.cp0();
  double worst = 0.0;
  long disagreements = 0;
  for (const auto& phi : ctx.points()) {
    const Eigen::MatrixXd M = lift::lift(phi).matrix();
    double r_explicit = 0.0;
    double r_cp0 = 0.0;
    for (const auto& e : corrected.program.equalities) {
      r_explicit = std::max(r_explicit, std::abs(e.form.evaluate(M) - e.rhs));
    }
    for (const auto& e : cp0.equalities) r_cp0 = std::max(r_cp0, std::abs(e.form.evaluate(M) - e.rhs));
    worst = std::max({worst, r_explicit, r_cp0});
    if (r_explicit > flags.tol || r_cp0 > flags.tol) ++disagreements;
  }
  CheckResult out{"explicit", disagreements == 0, worst, ""};
  std::string replaced;
  for (const auto& d : corrected.log) {
    if (d.replaced) replaced += (replaced.empty() ? "" : ",") + d.family;
  }
  out.detail = std::to_string(ctx.points().size()) + " lifts; replaced families: " +
               (replaced.empty() ? "none" : replaced);
  return out;
}

}  // namespace

Report run_verification(const Instance& instance, const VerificationFlags& flags) {
  for (const auto& name : flags.checks) {
    if (std::find(all_checks().begin(), all_checks().end(), name) == all_checks().end()) {
      throw InvalidArgument("unknown check '" + name + "'");
    }
  }
  Report report;
  report.instance_json = instance_to_json(instance, -1);
  Context ctx(instance, flags);
  for (const auto& name : all_checks()) {
    if (!flags.checks.count(name)) continue;
    CheckResult result{name, false, 0.0, ""};
    try {
      if (name == "sort") result = check_sort(ctx, flags);
      else if (name == "surrogate") result = check_surrogate(ctx);
      else if (name == "lift") result = check_lift(ctx, flags);
      else if (name == "recover") result = check_recover(ctx);
      else if (name == "mu") result = check_mu(ctx, flags);
      else if (name == "bound") result = check_bound(ctx, flags);
      else if (name == "explicit") result = check_explicit(ctx, flags);
    } catch (const Error& e) {
      result = CheckResult{name, false, std::numeric_limits<double>::infinity(),
                           std::string(to_string(e.kind())) + ": " + e.what()};
    }
    report.checks.push_back(std::move(result));
  }
  return report;
}

Report verify_file(const std::filesystem::path& path, const VerificationFlags& flags) {
  std::optional<Instance> instance;
  try {
    instance.emplace(load_instance(path));
  } catch (const Error& e) {
    Report report;
    report.checks.push_back({"load", false, std::numeric_limits<double>::infinity(),
                             std::string(to_string(e.kind())) + ": " + e.what()});
    return report;
  }
  return run_verification(*instance, flags);
}

std::vector<CampaignEntry> run_campaign(int n, int p, const std::vector<std::uint64_t>& seeds,
                                        const WeightPreset& preset,
                                        const VerificationFlags& flags) {
  std::vector<std::uint64_t> sorted = seeds;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<CampaignEntry> out;
  for (std::uint64_t seed : sorted) {
    out.push_back({seed, run_verification(gen_instance(n, p, seed, preset), flags)});
  }
  return out;
}

namespace {

nlohmann::json report_json(const Report& report) {
  nlohmann::json doc;
  doc["instance"] = report.instance_json.empty() ? nlohmann::json(nullptr)
                                                 : nlohmann::json::parse(report.instance_json);
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back(
        {{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}, {"detail", c.detail}});
  }
  doc["checks"] = std::move(checks);
  return doc;
}

}  // namespace

std::string report_to_json(const Report& report, int indent) {
  return report_json(report).dump(indent);
}

std::string campaign_to_json(const std::vector<CampaignEntry>& entries, int indent) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : entries) arr.push_back({{"seed", e.seed}, {"report", report_json(e.report)}});
  return arr.dump(indent);
}

}  // namespace domp::harness
