#include "domp/phi_layout.hpp"

#include "domp/errors.hpp"

namespace domp::qform {

std::string_view block_name(Block block) {
  switch (block) {
    case Block::kP: return "P";
    case Block::kX: return "X";
    case Block::kY: return "y";
    case Block::kW: return "W";
    case Block::kXi: return "xi";
    case Block::kEta: return "eta";
    case Block::kZeta: return "zeta";
  }
  return "?";
}

PhiLayout::PhiLayout(int n) : n_(n), size_(3 * n * n + 4 * n) {
  if (n < 2) throw InvalidArgument("phi layout needs n >= 2");
}

int PhiLayout::offset(Block block) const {
  const int n2 = n_ * n_;
  switch (block) {
    case Block::kP: return 0;
    case Block::kX: return n2;
    case Block::kY: return 2 * n2;
    case Block::kW: return 2 * n2 + n_;
    case Block::kXi: return 2 * n2 + 2 * n_;
    case Block::kEta: return 2 * n2 + 3 * n_;
    case Block::kZeta: return 3 * n2 + 3 * n_;
  }
  return -1;
}

int PhiLayout::length(Block block) const {
  switch (block) {
    case Block::kP:
    case Block::kX:
    case Block::kEta:
      return n_ * n_;
    default:
      return n_;
  }
}

Block PhiLayout::block_of(int index) const {
  if (index < 0 || index >= size_) throw InvalidArgument("phi index out of range");
  for (Block b : kAllBlocks) {
    if (index < offset(b) + length(b)) return b;
  }
  return Block::kZeta;
}

PhiLayout build_phi_layout(int n) { return PhiLayout(n); }

PhiVector::PhiVector(PhiLayout l, Eigen::VectorXd v) : layout(l), values(std::move(v)) {
  if (values.size() != layout.size()) throw InvalidArgument("phi length does not match layout");
}

namespace {

Eigen::MatrixXd square_block(const PhiVector& phi, Block b) {
  const int n = phi.layout.n();
  const int off = phi.layout.offset(b);
  Eigen::MatrixXd out(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) out(r, c) = phi.values(off + r * n + c);
  }
  return out;
}

}  // namespace

Eigen::MatrixXd PhiVector::P() const { return square_block(*this, Block::kP); }
Eigen::MatrixXd PhiVector::X() const { return square_block(*this, Block::kX); }
Eigen::MatrixXd PhiVector::eta() const { return square_block(*this, Block::kEta); }
Eigen::VectorXd PhiVector::y() const { return values.segment(layout.offset(Block::kY), layout.n()); }
Eigen::VectorXd PhiVector::W() const { return values.segment(layout.offset(Block::kW), layout.n()); }
Eigen::VectorXd PhiVector::xi() const { return values.segment(layout.offset(Block::kXi), layout.n()); }
Eigen::VectorXd PhiVector::zeta() const {
  return values.segment(layout.offset(Block::kZeta), layout.n());
}

}  // namespace domp::qform
