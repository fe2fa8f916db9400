// domp: command-line front end for the library.
//
//   domp gen --n 4 --p 2 --seed 7 --preset center --out inst.json
//   domp solve-exact --instance inst.json [--extended] [--json]
//   domp build-miqp --instance inst.json --out system.json
//   domp build-cp --instance inst.json --variant explicit-corrected --log log.json
//   domp relax-dnn --instance inst.json --json --matrix-out X.csv
//   domp verify --instance inst.json --checks lift,recover,bound
//   domp verify --n 3 --p 1 --seeds 1-20
//   domp export --instance inst.json --out dir/
//
// Exit codes: 0 success, 1 a check or solve failed, 2 bad input.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "domp/conic_program.hpp"
#include "domp/dnn.hpp"
#include "domp/errors.hpp"
#include "domp/harness.hpp"
#include "domp/instance_io.hpp"
#include "domp/oracle.hpp"
#include "domp/qform.hpp"

namespace {

using namespace domp;
namespace fs = std::filesystem;

struct Common {
  std::string instance;
  std::string out;
  std::uint64_t seed = 1;
  std::optional<double> tol;
  bool json = false;
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    write_text_file(c.out, text + (text.empty() || text.back() == '\n' ? "" : "\n"));
  }
}

std::string format_sites(const SiteSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

lift::ConicProgram build_variant(const Instance& inst, const std::string& variant,
                                 std::vector<lift::Discrepancy>* log) {
  if (variant == "cp0") return lift::build_cp0(inst);
  auto ex = lift::build_cp_explicit(inst, variant == "explicit-corrected");
  if (log) *log = ex.log;
  return std::move(ex.program);
}

// The explicit families live on the Phi block only; the solver needs the
// corner pinned to 1.
void ensure_corner(lift::ConicProgram& prog) {
  for (const auto& e : prog.equalities)
    if (e.label == "corner") return;
  lift::Equality corner;
  corner.form.add(0, 0, 1.0);
  corner.rhs = 1.0;
  corner.label = "corner";
  prog.equalities.insert(prog.equalities.begin(), std::move(corner));
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    try {
      if (dash == std::string::npos) {
        seeds.push_back(std::stoull(item));
      } else {
        const auto lo = std::stoull(item.substr(0, dash)), hi = std::stoull(item.substr(dash + 1));
        if (hi < lo) throw InvalidArgument("empty seed range " + item);
        for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
      }
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad seed list '" + text + "'");
    }
  }
  if (seeds.empty()) throw InvalidArgument("empty seed list");
  return seeds;
}

std::set<std::string> parse_checks(const std::string& text) {
  std::set<std::string> out;
  if (text == "all") return {harness::all_checks().begin(), harness::all_checks().end()};
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(item);
  return out;
}

std::string summarize(const harness::Report& r) {
  std::string out;
  char line[256];
  for (const auto& c : r.checks) {
    std::snprintf(line, sizeof line, "%-10s %s  residual %.3g  ", c.name.c_str(),
                  c.pass ? "pass" : "FAIL", c.residual);
    out += line + c.detail + "\n";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete ordered median problem: exact enumeration, lifted programs and DNN bounds"};
  app.require_subcommand(1);
  Common c;
  auto add_common = [&c](CLI::App* sub, bool needs_instance) {
    auto* opt = sub->add_option("--instance", c.instance, "Instance JSON file");
    if (needs_instance) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--out", c.out, "Write output here instead of stdout");
    sub->add_option("--seed", c.seed, "Random seed");
    sub->add_option("--tol", c.tol, "Tolerance (verify 1e-9, relax-dnn 1e-7)");
    sub->add_flag("--json", c.json, "Machine-readable output");
  };

  int n = 3, p = 1;
  std::string preset = "median";
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  add_common(gen, false);
  gen->add_option("--n", n, "Number of sites")->required();
  gen->add_option("--p", p, "Facilities to open")->required();
  gen->add_option("--preset", preset, "median | center | trimmed:k1,k2 | custom:v1,...");

  bool extended = false;
  auto* solve = app.add_subcommand("solve-exact", "Exact optimum by enumeration");
  add_common(solve, true);
  solve->add_flag("--extended", extended, "Enumerate the extended formulation (n <= 5)");

  auto* miqp = app.add_subcommand("build-miqp", "Export the linear system of the quadratic formulation");
  add_common(miqp, true);

  std::string variant = "cp0", log_path;
  auto* cp = app.add_subcommand("build-cp", "Export a lifted conic program");
  add_common(cp, true);
  cp->add_option("--variant", variant)->check(CLI::IsMember({"cp0", "explicit", "explicit-corrected"}));
  cp->add_option("--log", log_path, "Write the discrepancy log of the explicit variants here");

  dnn::DnnSettings settings;
  std::string matrix_out;
  auto* relax = app.add_subcommand("relax-dnn", "Doubly nonnegative lower bound");
  add_common(relax, true);
  relax->add_option("--variant", variant)->check(CLI::IsMember({"cp0", "explicit", "explicit-corrected"}));
  relax->add_option("--max-iter", settings.max_iter);
  relax->add_option("--rho", settings.rho);
  relax->add_option("--matrix-out", matrix_out, "Dense CSV dump of the solution matrix");

  std::string checks = "all", seeds_text;
  int hull_samples = 20;
  auto* verify = app.add_subcommand("verify", "Run verification checks on a file or a seeded campaign");
  add_common(verify, false);
  verify->add_option("--checks", checks, "Comma list of sort,surrogate,lift,recover,mu,bound,explicit or 'all'");
  verify->add_option("--hull-samples", hull_samples);
  verify->add_option("--n", n, "Campaign instance size");
  verify->add_option("--p", p, "Campaign facility count");
  verify->add_option("--seeds", seeds_text, "Campaign seeds, e.g. 1-20 or 1,4,9");
  verify->add_option("--preset", preset);

  auto* exp = app.add_subcommand("export", "Write every artifact for an instance into a directory");
  add_common(exp, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const Instance inst = harness::gen_instance(n, p, c.seed, harness::WeightPreset::parse(preset));
      emit(c, instance_to_json(inst));
      return 0;
    }

    if (*verify) {
      harness::VerificationFlags flags;
      flags.checks = parse_checks(checks);
      flags.tol = c.tol.value_or(flags.tol);
      flags.seed = c.seed;
      flags.hull_samples = hull_samples;
      if (!seeds_text.empty()) {
        if (!c.instance.empty()) throw InvalidArgument("--instance and --seeds are exclusive");
        const auto entries = harness::run_campaign(n, p, parse_seeds(seeds_text),
                                                   harness::WeightPreset::parse(preset), flags);
        bool ok = true;
        std::string text;
        for (const auto& e : entries) {
          ok &= e.report.pass();
          text += "seed " + std::to_string(e.seed) + (e.report.pass() ? ": pass\n" : ": FAIL\n");
          if (!c.json) text += summarize(e.report);
        }
        emit(c, c.json ? harness::campaign_to_json(entries) : text);
        return ok ? 0 : 1;
      }
      if (c.instance.empty()) throw InvalidArgument("verify needs --instance or --seeds");
      const harness::Report r = harness::verify_file(c.instance, flags);
      emit(c, c.json ? harness::report_to_json(r) : summarize(r));
      return r.pass() ? 0 : 1;
    }

    const Instance inst = load_instance(c.instance);

    if (*solve) {
      nlohmann::json doc;
      if (extended) {
        const auto r = oracle::solve_enumerate_extended(inst);
        doc = {{"value", r.value}, {"open_sites", r.witness.open_sites}};
      } else {
        const auto r = oracle::solve_enumerate(inst);
        doc = {{"value", r.value}, {"optimal_sets", r.optimal_sets}};
      }
      if (c.json) {
        emit(c, doc.dump(2));
      } else {
        std::ostringstream os;
        os.precision(17);
        os << "optimum " << doc["value"].get<double>() << "\n";
        if (extended) {
          os << "open " << format_sites(doc["open_sites"].get<SiteSet>()) << "\n";
        } else {
          for (const auto& s : doc["optimal_sets"]) os << "open " << format_sites(s.get<SiteSet>()) << "\n";
        }
        emit(c, os.str());
      }
      return 0;
    }

    if (*miqp) {
      emit(c, qform::linear_system_to_json(qform::build_linear_system(inst), c.json ? 2 : -1));
      return 0;
    }

    if (*cp) {
      std::vector<lift::Discrepancy> log;
      const auto prog = build_variant(inst, variant, &log);
      if (!log_path.empty()) write_text_file(log_path, lift::discrepancy_log_to_json(log) + "\n");
      emit(c, lift::conic_program_to_json(prog, c.json ? 2 : -1));
      return 0;
    }

    if (*relax) {
      auto prog = build_variant(inst, variant, nullptr);
      ensure_corner(prog);
      settings.seed = c.seed;
      settings.tol_primal = settings.tol_dual = c.tol.value_or(settings.tol_primal);
      const auto r = dnn::solve_dnn(prog, settings);
      if (!matrix_out.empty()) write_text_file(matrix_out, dnn::matrix_to_csv(r.solution.matrix()));
      if (c.json) {
        emit(c, dnn::result_to_json(r, 2));
      } else {
        char buf[256];
        std::snprintf(buf, sizeof buf, "bound %.10g  status %s  iters %d  primal %.2e  dual %.2e\n",
                      r.bound, dnn::to_string(r.status).c_str(), r.iterations, r.primal_residual,
                      r.dual_residual);
        emit(c, buf);
      }
      return r.status == dnn::DnnStatus::kConverged ? 0 : 1;
    }

    if (*exp) {
      const fs::path dir = c.out.empty() ? fs::path(".") : fs::path(c.out);
      fs::create_directories(dir);
      write_text_file(dir / "instance.json", instance_to_json(inst) + "\n");
      write_text_file(dir / "miqp.json", qform::linear_system_to_json(qform::build_linear_system(inst)) + "\n");
      write_text_file(dir / "cp0.json", lift::conic_program_to_json(lift::build_cp0(inst)) + "\n");
      const auto literal = lift::build_cp_explicit(inst, false);
      const auto corrected = lift::build_cp_explicit(inst, true);
      write_text_file(dir / "explicit.json", lift::conic_program_to_json(literal.program) + "\n");
      write_text_file(dir / "explicit_corrected.json", lift::conic_program_to_json(corrected.program) + "\n");
      write_text_file(dir / "discrepancy_log.json", lift::discrepancy_log_to_json(corrected.log) + "\n");
      std::cout << "wrote 6 files to " << dir.string() << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return 2;
  }
  return 0;
}
