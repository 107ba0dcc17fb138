#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "rlan/design.hpp"

namespace rlan {

using Matrix4 = std::array<std::array<double, 4>, 4>;

// Rows (x_j^0, x_j^1, x_j^2, x_j^3) with x_j = j * spacing, j = -J..J.
struct DesignMatrix {
  std::vector<std::array<double, 4>> rows;
  double spacing = 0.0;
  int half_width = 0;
};

struct AdjDiagonals {
  double adj22;  // cofactor of the linear coefficient (1-indexed (2,2))
  double adj33;  // cofactor of the quadratic coefficient (1-indexed (3,3))
};

// Least-squares cubic in the offset x = theta - center:
//   value ~ beta[0] + beta[1] x + beta[2] x^2 + beta[3] x^3.
struct CubicFit {
  std::array<double, 4> beta{};
  Matrix4 xtx{};
  double xtx_det = 0.0;
  double adj22 = 0.0;
  double adj33 = 0.0;
  double residual_ss = 0.0;
};

inline constexpr double kMaxCondition = 1e12;

DesignMatrix build_design(const GridSpec& grid);

Matrix4 gram(const DesignMatrix& design);
double determinant(const Matrix4& a);
Matrix4 adjugate(const Matrix4& a);

double det_xtx(const DesignMatrix& design);
AdjDiagonals adj_diagonals(const DesignMatrix& design);

// Normal equations solved through the explicit adjugate. Throws SingularDesign
// when the 1-norm condition number of X^T X exceeds kMaxCondition.
CubicFit lsq_fit(const DesignMatrix& design, std::span<const double> values);

// Columns: n,J,delta,beta0,beta1,beta2,beta3,det,adj22,adj33,residual_ss
void write_fit_csv_header(std::ostream& out);
void write_fit_csv_row(std::ostream& out, const GridSpec& grid,
                       const CubicFit& fit);

}  // namespace rlan
