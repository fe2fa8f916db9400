#pragma once

#include <array>
#include <string_view>

#include <Eigen/Dense>

namespace domp::qform {

/// Variable blocks of the flat vector phi, in storage order.
enum class Block { kP, kX, kY, kW, kXi, kEta, kZeta };

inline constexpr std::array<Block, 7> kAllBlocks = {Block::kP,  Block::kX,   Block::kY,
                                                    Block::kW,  Block::kXi,  Block::kEta,
                                                    Block::kZeta};

std::string_view block_name(Block block);

/// Index map of phi = (rvec(P), rvec(X), y, W, xi, rvec(eta), zeta).
/// Length N = 3n^2 + 4n; matrix blocks are flattened row-major.
class PhiLayout {
 public:
  /// Throws InvalidArgument for n < 2.
  explicit PhiLayout(int n);

  int n() const { return n_; }
  int size() const { return size_; }

  int offset(Block block) const;
  int length(Block block) const;
  Block block_of(int index) const;

  int P(int j, int k) const { return j * n_ + k; }
  int X(int j, int l) const { return n_ * n_ + j * n_ + l; }
  int y(int l) const { return 2 * n_ * n_ + l; }
  int W(int k) const { return 2 * n_ * n_ + n_ + k; }
  int xi(int k) const { return 2 * n_ * n_ + 2 * n_ + k; }
  int eta(int j, int k) const { return 2 * n_ * n_ + 3 * n_ + j * n_ + k; }
  int zeta(int l) const { return 3 * n_ * n_ + 3 * n_ + l; }

  friend bool operator==(const PhiLayout& a, const PhiLayout& b) { return a.n_ == b.n_; }

 private:
  int n_;
  int size_;
};

PhiLayout build_phi_layout(int n);

/// Flat variable vector phi together with its layout.
struct PhiVector {
  PhiLayout layout;
  Eigen::VectorXd values;

  explicit PhiVector(PhiLayout l) : layout(l), values(Eigen::VectorXd::Zero(l.size())) {}
  PhiVector(PhiLayout l, Eigen::VectorXd v);

  double& operator[](int i) { return values(i); }
  double operator[](int i) const { return values(i); }

  Eigen::MatrixXd P() const;
  Eigen::MatrixXd X() const;
  Eigen::VectorXd y() const;
  Eigen::VectorXd W() const;
  Eigen::VectorXd xi() const;
  Eigen::MatrixXd eta() const;
  Eigen::VectorXd zeta() const;

  bool is_nonnegative() const { return values.size() == 0 || values.minCoeff() >= 0.0; }
};

}  // namespace domp::qform
