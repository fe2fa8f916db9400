#include "domp/conic_program.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <unordered_map>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "domp/errors.hpp"
#include "domp/objective.hpp"
#include "domp/oracle.hpp"
#include "domp/qform.hpp"

namespace domp::lift {

void SymmetricForm::add(int r, int c, double coef) {
  if (coef == 0.0) return;
  if (r == c) {
    upper_[{r, r}] += coef;
  } else {
    upper_[{std::min(r, c), std::max(r, c)}] += 0.5 * coef;
  }
}

void SymmetricForm::add_square(const std::vector<std::pair<int, double>>& a, double scale) {
  for (const auto& [r, ar] : a) {
    for (const auto& [c, ac] : a) add(r, c, scale * ar * ac);
  }
}

double SymmetricForm::evaluate(const Eigen::MatrixXd& M) const {
  double total = 0.0;
  for (const auto& [rc, b] : upper_) {
    const auto [r, c] = rc;
    total += (r == c ? 1.0 : 2.0) * b * M(r, c);
  }
  return total;
}

std::vector<SymmetricForm::Entry> SymmetricForm::entries() const {
  std::vector<Entry> out;
  out.reserve(upper_.size());
  for (const auto& [rc, b] : upper_) {
    if (b != 0.0) out.push_back({rc.first, rc.second, b});
  }
  return out;
}

bool SymmetricForm::approx_equal(const SymmetricForm& other, double tol) const {
  const auto a = entries();
  const auto b = other.entries();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].row != b[i].row || a[i].col != b[i].col) return false;
    if (std::abs(a[i].value - b[i].value) > tol * (1.0 + std::abs(a[i].value))) return false;
  }
  return true;
}

std::string equality_family(const std::string& label) {
  return label.substr(0, label.find('['));
}

namespace {

using qform::LinearSystem;

std::string indexed(const std::string& family,
                    std::initializer_list<std::pair<char, int>> idx) {
  std::ostringstream os;
  os << family << '[';
  bool first = true;
  for (const auto& [name, value] : idx) {
    if (!first) os << ',';
    os << name << '=' << value;
    first = false;
  }
  os << ']';
  return os.str();
}

// Adds coef * Phi(a, b) on phi indices; row/column 0 of the lifted matrix is
// the border, so Phi entries live one step down and right.
void phi_term(SymmetricForm& f, int a, int b, double coef) { f.add(a + 1, b + 1, coef); }

std::vector<std::pair<int, double>> shifted(const qform::SparseRow& row) {
  std::vector<std::pair<int, double>> out;
  out.reserve(row.size());
  for (const auto& [col, v] : row) out.emplace_back(col + 1, v);
  return out;
}

// a^T Phi alpha = b for the given linear row.
Equality contraction(const PhiLayout& L, const LinearSystem& sys, int i, std::string label) {
  Equality e;
  for (const auto& [col, v] : sys.row(i)) {
    for (int l = 0; l < L.n(); ++l) phi_term(e.form, col, L.P(0, l), v);
  }
  e.rhs = sys.rhs()(i);
  e.label = std::move(label);
  return e;
}

// a^T Phi a = b^2 for the given linear row.
Equality square(const LinearSystem& sys, int i, std::string label) {
  Equality e;
  e.form.add_square(shifted(sys.row(i)));
  e.rhs = sys.rhs()(i) * sys.rhs()(i);
  e.label = std::move(label);
  return e;
}

class RowIndex {
 public:
  explicit RowIndex(const LinearSystem& sys) {
    for (int i = 0; i < sys.rows(); ++i) index_.emplace(sys.labels()[i], i);
  }
  int operator()(const std::string& label) const { return index_.at(label); }

 private:
  std::unordered_map<std::string, int> index_;
};

void add_objective(const Instance& instance, const PhiLayout& L, SymmetricForm& obj) {
  const int n = instance.n();
  auto interaction = [&](const InteractionMatrix& m, int offset) {
    for (const auto& e : m.upper_entries()) {
      // 1/2 sum over ordered pairs; both orders of an off-diagonal pair.
      phi_term(obj, offset + e.row, offset + e.col, e.row == e.col ? 0.5 * e.value : e.value);
    }
  };
  interaction(instance.ordering_interaction(), L.offset(Block::kP));
  interaction(instance.allocation_interaction(), L.offset(Block::kX));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double lk = instance.lambda()(k);
      for (int l = 0; l < n; ++l) phi_term(obj, L.P(j, k), L.X(j, l), lk * instance.cost(j, l));
    }
  }
}

Equality sorted_cost_row(const Instance& instance, const PhiLayout& L, int k) {
  Equality e;
  e.form.add(0, L.W(k) + 1, 1.0);
  for (int j = 0; j < L.n(); ++j) {
    for (int l = 0; l < L.n(); ++l) phi_term(e.form, L.P(j, k), L.X(j, l), -instance.cost(j, l));
  }
  e.label = indexed("sorted_cost", {{'k', k}});
  return e;
}

Equality binary_row(const PhiLayout& L, Block block, const std::string& label) {
  Equality e;
  const int off = L.offset(block);
  for (int i = 0; i < L.length(block); ++i) {
    e.form.add(0, off + i + 1, 1.0);
    phi_term(e.form, off + i, off + i, -1.0);
  }
  e.label = label;
  return e;
}

}  // namespace

Eigen::VectorXd magnitude_scale(const Instance& instance) {
  const int n = instance.n();
  const PhiLayout L(n);
  const double cmax = std::max(1.0, instance.costs().maxCoeff());
  const double rmax = instance.costs().rowwise().sum().maxCoeff();
  Eigen::VectorXd s = Eigen::VectorXd::Ones(L.size() + 1);
  for (int i = 0; i < n; ++i) {
    s(1 + L.W(i)) = cmax;
    s(1 + L.xi(i)) = cmax;
    s(1 + L.zeta(i)) = static_cast<double>(n - instance.p() + 1);
    for (int k = 0; k < n; ++k) s(1 + L.eta(i, k)) = cmax + rmax;
  }
  return s;
}

ConicProgram build_cp0(const Instance& instance, ConeKind cone) {
  const PhiLayout L(instance.n());
  const LinearSystem sys = qform::build_linear_system(instance);
  ConicProgram prog{L, {}, {}, cone, {}, {}};
  add_objective(instance, L, prog.objective);

  Equality corner;
  corner.form.add(0, 0, 1.0);
  corner.rhs = 1.0;
  corner.label = "corner";
  prog.equalities.push_back(std::move(corner));
  for (int i = 0; i < sys.rows(); ++i) {
    Equality e;
    for (const auto& [col, v] : sys.row(i)) e.form.add(0, col + 1, v);
    e.rhs = sys.rhs()(i);
    e.label = "linear:" + sys.labels()[i];
    prog.equalities.push_back(std::move(e));
  }
  for (int i = 0; i < sys.rows(); ++i) {
    prog.equalities.push_back(square(sys, i, "square:" + sys.labels()[i]));
  }
  for (int k = 0; k < L.n(); ++k) prog.equalities.push_back(sorted_cost_row(instance, L, k));
  prog.equalities.push_back(binary_row(L, Block::kP, "perm_binary"));
  prog.equalities.push_back(binary_row(L, Block::kX, "assign_binary"));
  prog.exposing = Eigen::MatrixXd::Zero(sys.rows(), L.size() + 1);
  for (int i = 0; i < sys.rows(); ++i) {
    prog.exposing(i, 0) = -sys.rhs()(i);
    for (const auto& [col, v] : sys.row(i)) prog.exposing(i, col + 1) = v;
  }
  prog.scale = magnitude_scale(instance);
  return prog;
}

std::vector<PhiVector> witness_points(const Instance& instance) {
  const int n = instance.n();
  if (n <= 4) return qform::enumerate_feasible_points(instance);
  constexpr int kMaxSampled = 64;
  std::vector<PhiVector> points;
  oracle::for_each_subset(n, instance.p(), [&](const SiteSet& open) {
    if (static_cast<int>(points.size()) >= kMaxSampled) return;
    const Allocation alloc = allocate(instance, open);
    const std::vector<int> client_at = sorting_permutation(alloc.cost);
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < n; ++k) P(client_at[k], k) = 1.0;
    for (int j = 0; j < n; ++j) X(j, alloc.site[j]) = 1.0;
    for (int l : open) y(l) = 1.0;
    points.push_back(qform::complete_slacks(instance, P, X, y));
  });
  return points;
}

namespace {

struct Family {
  std::string name;
  std::vector<Equality> literal;
  std::vector<Equality> symbolic;
};

std::vector<Family> explicit_families(const Instance& instance) {
  const int n = instance.n();
  const int p = instance.p();
  const PhiLayout L(n);
  const LinearSystem sys = qform::build_linear_system(instance);
  const RowIndex row(sys);
  const Eigen::MatrixXd& C = instance.costs();
  const double cap = static_cast<double>(n - p + 1);
  auto S = [&](int j) { return C.row(j).sum(); };

  std::vector<Family> fams;
  auto family = [&](const std::string& name) -> Family& {
    fams.push_back(Family{name, {}, {}});
    return fams.back();
  };
  auto literal = [](Family& f, std::string label, double rhs) -> Equality& {
    f.literal.push_back(Equality{{}, rhs, std::move(label)});
    return f.literal.back();
  };
  auto t = [](Equality& e, int a, int b, double coef) { phi_term(e.form, a, b, coef); };

  {
    Family& f = family("perm_row_contract");
    for (int i = 0; i < n; ++i) {
      const std::string label = indexed(f.name, {{'j', i}});
      Equality& e = literal(f, label, 1.0);
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) t(e, L.P(i, j), L.P(0, l), 1.0);
      f.symbolic.push_back(contraction(L, sys, row(indexed("perm_row", {{'j', i}})), label));
    }
  }
  {
    Family& f = family("perm_col_contract");
    for (int i = 0; i < n; ++i) {
      const std::string label = indexed(f.name, {{'k', i}});
      Equality& e = literal(f, label, 1.0);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) t(e, L.P(k, i), L.P(0, l), 1.0);
      f.symbolic.push_back(contraction(L, sys, row(indexed("perm_col", {{'k', i}})), label));
    }
  }
  {
    Family& f = family("open_count_contract");
    Equality& e = literal(f, f.name, static_cast<double>(p));
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) t(e, L.P(0, k), L.y(l), 1.0);
    f.symbolic.push_back(contraction(L, sys, row("open_count"), f.name));
  }
  {
    Family& f = family("assign_contract");
    for (int i = 0; i < n; ++i) {
      const std::string label = indexed(f.name, {{'j', i}});
      Equality& e = literal(f, label, 1.0);
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) t(e, L.P(i, j), L.X(0, l), 1.0);
      f.symbolic.push_back(contraction(L, sys, row(indexed("assign", {{'j', i}})), label));
    }
  }
  {
    Family& f = family("surrogate_contract");
    for (int l = 0; l < n; ++l) {
      const std::string label = indexed(f.name, {{'l', l}});
      Equality& e = literal(f, label, 0.0);
      for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) t(e, L.P(0, k), L.X(j, l), 1.0);
        t(e, L.P(0, k), L.y(l), -cap);
        t(e, L.P(0, k), L.zeta(l), 1.0);
      }
      f.symbolic.push_back(contraction(L, sys, row(indexed("surrogate", {{'l', l}})), label));
    }
  }
  {
    Family& f = family("order_contract");
    for (int k = 0; k + 1 < n; ++k) {
      const std::string label = indexed(f.name, {{'k', k}});
      Equality& e = literal(f, label, 0.0);
      for (int l = 0; l < n; ++l) {
        t(e, L.P(0, l), L.W(k), 1.0);
        t(e, L.P(0, l), L.W(k + 1), -1.0);
        t(e, L.P(0, l), L.xi(k), 1.0);
      }
      f.symbolic.push_back(contraction(L, sys, row(indexed("order", {{'k', k}})), label));
    }
  }
  {
    // Constant sum_l C_jl sits on the right-hand side; eta enters with +.
    Family& f = family("sorted_lb_contract");
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const std::string label = indexed(f.name, {{'j', j}, {'k', k}});
        Equality& e = literal(f, label, -S(j));
        for (int l = 0; l < n; ++l) {
          t(e, L.P(0, l), L.W(k), 1.0);
          for (int r = 0; r < n; ++r) t(e, L.P(0, r), L.X(j, l), -C(j, l));
        }
        for (int r = 0; r < n; ++r) {
          t(e, L.P(j, k), L.P(0, r), -S(j));
          t(e, L.P(0, r), L.eta(j, k), 1.0);
        }
        f.symbolic.push_back(
            contraction(L, sys, row(indexed("sorted_lb", {{'j', j}, {'k', k}})), label));
      }
    }
  }
  {
    Family& f = family("perm_col_diag");
    for (int k = 0; k < n; ++k) {
      const std::string label = indexed(f.name, {{'k', k}});
      Equality& e = literal(f, label, 1.0);
      for (int i = 0; i < n; ++i) t(e, L.P(i, k), L.P(i, k), 1.0);
      f.symbolic.push_back(square(sys, row(indexed("perm_col", {{'k', k}})), label));
    }
  }
  {
    Family& f = family("perm_row_diag");
    for (int i = 0; i < n; ++i) {
      const std::string label = indexed(f.name, {{'j', i}});
      Equality& e = literal(f, label, 1.0);
      for (int k = 0; k < n; ++k) t(e, L.P(i, k), L.P(i, k), 1.0);
      f.symbolic.push_back(square(sys, row(indexed("perm_row", {{'j', i}})), label));
    }
  }
  {
    Family& f = family("open_count_sq");
    Equality& e = literal(f, f.name, static_cast<double>(p) * p);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t(e, L.y(i), L.y(j), 1.0);
    f.symbolic.push_back(square(sys, row("open_count"), f.name));
  }
  {
    Family& f = family("assign_sq");
    for (int j = 0; j < n; ++j) {
      const std::string label = indexed(f.name, {{'j', j}});
      Equality& e = literal(f, label, 1.0);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) t(e, L.X(j, k), L.X(j, l), 1.0);
      f.symbolic.push_back(square(sys, row(indexed("assign", {{'j', j}})), label));
    }
  }
  {
    Family& f = family("order_sq");
    for (int k = 0; k + 1 < n; ++k) {
      const std::string label = indexed(f.name, {{'k', k}});
      Equality& e = literal(f, label, 0.0);
      t(e, L.W(k), L.W(k), 1.0);
      t(e, L.W(k), L.W(k + 1), -2.0);
      t(e, L.W(k), L.xi(k), 2.0);
      t(e, L.W(k + 1), L.W(k + 1), 1.0);
      t(e, L.W(k), L.xi(k + 1), -2.0);
      t(e, L.xi(k), L.xi(k), 1.0);
      f.symbolic.push_back(square(sys, row(indexed("order", {{'k', k}})), label));
    }
  }
  {
    Family& f = family("surrogate_sq");
    for (int l = 0; l < n; ++l) {
      const std::string label = indexed(f.name, {{'l', l}});
      Equality& e = literal(f, label, 0.0);
      for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) t(e, L.X(r, l), L.X(s, l), 1.0);
        t(e, L.X(r, l), L.y(l), -2.0 * cap);
        t(e, L.X(r, l), L.zeta(l), 2.0);
      }
      t(e, L.y(l), L.zeta(l), -2.0 * cap);
      t(e, L.y(l), L.y(l), cap * cap);
      t(e, L.zeta(l), L.zeta(l), 1.0);
      f.symbolic.push_back(square(sys, row(indexed("surrogate", {{'l', l}})), label));
    }
  }
  {
    // Diagonal weighted by c rather than c^2.
    Family& f = family("sorted_sum_sq");
    Equality& e = literal(f, f.name, 0.0);
    for (int r = 0; r < n; ++r) {
      for (int s = 0; s < n; ++s) {
        t(e, L.X(r, s), L.X(r, s), C(r, s));
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            if (i == r && j == s) continue;
            t(e, L.X(i, j), L.X(r, s), C(i, j) * C(r, s));
          }
        }
        t(e, L.W(r), L.W(s), 1.0);
      }
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) t(e, L.X(i, j), L.W(l), -2.0 * C(i, j));
    f.symbolic.push_back(square(sys, row("sorted_sum"), f.name));
  }
  {
    Family& f = family("sorted_lb_sq");
    for (int j = 0; j < n; ++j) {
      const double s = S(j);
      for (int k = 0; k < n; ++k) {
        const std::string label = indexed(f.name, {{'j', j}, {'k', k}});
        Equality& e = literal(f, label, s * s);
        t(e, L.P(j, k), L.P(j, k), s * s);
        for (int l = 0; l < n; ++l) {
          t(e, L.X(j, l), L.X(j, l), C(j, l) * C(j, l));
          t(e, L.P(j, k), L.X(j, l), -2.0 * s * C(j, l));
          t(e, L.X(j, l), L.W(k), -2.0 * C(j, l));
          t(e, L.X(j, l), L.eta(j, k), -2.0 * C(j, l));
          for (int r2 = l + 1; r2 < n; ++r2) t(e, L.X(j, l), L.X(j, r2), 2.0 * C(j, l) * C(j, r2));
        }
        t(e, L.P(j, k), L.W(k), 2.0 * s);
        t(e, L.P(j, k), L.eta(j, k), 2.0 * s);
        t(e, L.W(k), L.eta(j, k), 2.0);
        t(e, L.W(k), L.W(k), 1.0);
        t(e, L.eta(j, k), L.eta(j, k), 1.0);
        f.symbolic.push_back(
            square(sys, row(indexed("sorted_lb", {{'j', j}, {'k', k}})), label));
      }
    }
  }
  {
    Family& f = family("sorted_cost_contract");
    for (int k = 0; k < n; ++k) {
      const std::string label = indexed(f.name, {{'k', k}});
      Equality& e = literal(f, label, 0.0);
      for (int l = 0; l < n; ++l) t(e, L.P(0, l), L.W(k), 1.0);
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) t(e, L.P(j, k), L.X(j, l), -C(j, l));
      Equality sym;
      sym.label = label;
      for (int l = 0; l < n; ++l) t(sym, L.W(k), L.P(0, l), 1.0);
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) t(sym, L.P(j, k), L.X(j, l), -C(j, l));
      f.symbolic.push_back(std::move(sym));
    }
  }
  auto binary_family = [&](const std::string& name, Block block, bool literal_form) {
    Family& f = family(name);
    Equality& e = literal(f, name, 0.0);
    Equality sym;
    sym.label = name;
    const int off = L.offset(block);
    for (int i = 0; i < L.length(block); ++i) {
      for (int r = 0; r < n; ++r) {
        // The literal allocation family contracts X rows against P.
        if (literal_form) {
          t(e, L.P(i / n, i % n), L.X(0, r), 1.0);
        } else {
          t(e, L.P(0, r), off + i, 1.0);
        }
        t(sym, off + i, L.P(0, r), 1.0);
      }
      t(e, off + i, off + i, -1.0);
      t(sym, off + i, off + i, -1.0);
    }
    f.symbolic.push_back(std::move(sym));
  };
  binary_family("perm_binary_contract", Block::kP, false);
  binary_family("assign_binary_contract", Block::kX, true);
  return fams;
}

}  // namespace

ExplicitProgram build_cp_explicit(const Instance& instance, bool corrected, ConeKind cone) {
  const PhiLayout L(instance.n());
  ExplicitProgram out{ConicProgram{L, {}, {}, cone, {}, {}}, {}, 0};
  add_objective(instance, L, out.program.objective);
  out.program.scale = magnitude_scale(instance);

  const std::vector<PhiVector> witnesses = witness_points(instance);
  out.witness_count = static_cast<int>(witnesses.size());
  std::vector<Eigen::MatrixXd> lifts;
  lifts.reserve(witnesses.size());
  for (const auto& phi : witnesses) lifts.push_back(lift(phi).matrix());

  for (Family& f : explicit_families(instance)) {
    bool differs = false;
    for (std::size_t i = 0; i < f.literal.size(); ++i) {
      if (!f.literal[i].form.approx_equal(f.symbolic[i].form) ||
          f.literal[i].rhs != f.symbolic[i].rhs) {
        differs = true;
      }
    }
    Discrepancy d;
    d.family = f.name;
    for (const auto& M : lifts) {
      for (const auto& e : f.literal) {
        const double r = std::abs(e.form.evaluate(M) - e.rhs);
        if (r > d.max_violation) d.max_violation = r;
        if (r > qform::kDefaultTolerance && d.first_violation.empty()) {
          d.first_violation = e.label;
        }
      }
    }
    d.violated = !d.first_violation.empty();
    d.replaced = corrected && d.violated;
    if (differs || d.violated) out.log.push_back(d);
    auto& rows = d.replaced ? f.symbolic : f.literal;
    for (auto& e : rows) out.program.equalities.push_back(std::move(e));
  }
  return out;
}

double LiftReport::family_residual(const std::string& family) const {
  for (const auto& f : families) {
    if (f.family == family) return f.residual;
  }
  throw InvalidArgument("unknown equality family: " + family);
}

double min_eigenvalue(const Eigen::MatrixXd& M) {
  using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const MatrixL A = M.cast<long double>();
  Eigen::SelfAdjointEigenSolver<MatrixL> solver(A, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericFailure("eigensolver did not converge");
  return static_cast<double>(solver.eigenvalues().minCoeff());
}

LiftReport check_lift_feasible(const ConicProgram& program, const LiftedMatrix& lifted,
                               double tol, double eig_tol) {
  if (!(program.layout == lifted.layout())) {
    throw InvalidArgument("program and lifted matrix have different layouts");
  }
  const Eigen::MatrixXd& M = lifted.matrix();
  LiftReport report;
  for (const auto& e : program.equalities) {
    const double r = std::abs(e.form.evaluate(M) - e.rhs);
    const std::string fam = equality_family(e.label);
    auto it = std::find_if(report.families.begin(), report.families.end(),
                           [&](const FamilyResidual& f) { return f.family == fam; });
    if (it == report.families.end()) {
      report.families.push_back({fam, 0.0, 0});
      it = std::prev(report.families.end());
    }
    it->residual = std::max(it->residual, r);
    ++it->rows;
    report.max_equality_residual = std::max(report.max_equality_residual, r);
  }
  report.symmetry_residual = (M - M.transpose()).cwiseAbs().maxCoeff();
  report.negativity = std::max(0.0, -M.minCoeff());
  report.min_eigenvalue = min_eigenvalue(M);
  report.pass = report.max_equality_residual <= tol && report.symmetry_residual <= tol &&
                report.negativity <= tol && report.min_eigenvalue >= -eig_tol;
  return report;
}

namespace {

nlohmann::json triplets_json(const SymmetricForm& form) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : form.entries()) arr.push_back(nlohmann::json::array({e.row, e.col, e.value}));
  return arr;
}

}  // namespace

std::string conic_program_to_json(const ConicProgram& program, int indent) {
  nlohmann::json doc;
  doc["N1"] = program.dimension();
  doc["objective"] = triplets_json(program.objective);
  nlohmann::json eqs = nlohmann::json::array();
  for (const auto& e : program.equalities) {
    eqs.push_back({{"label", e.label}, {"rhs", e.rhs}, {"triplets", triplets_json(e.form)}});
  }
  doc["equalities"] = std::move(eqs);
  doc["cone"] = program.cone == ConeKind::kDnn ? "dnn" : "exact-lift";
  return doc.dump(indent);
}

std::string discrepancy_log_to_json(const std::vector<Discrepancy>& log, int indent) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& d : log) {
    arr.push_back({{"family", d.family},
                   {"violated", d.violated},
                   {"replaced", d.replaced},
                   {"max_violation", d.max_violation},
                   {"first_violation", d.first_violation}});
  }
  return arr.dump(indent);
}

}  // namespace domp::lift
