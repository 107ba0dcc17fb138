#include "rlan/polyfit.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "rlan/csv.hpp"
#include "rlan/errors.hpp"

namespace rlan {

namespace {

Matrix4 gram_of_powers(int J, double spacing) {
  // Power sums S_k = sum_j (j h)^k; X^T X has entry S_{r+c}.
  std::array<double, 7> sums{};
  for (int j = -J; j <= J; ++j) {
    const double x = j * spacing;
    double p = 1.0;
    for (double& s : sums) {
      s += p;
      p *= x;
    }
  }
  Matrix4 a{};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) a[r][c] = sums[r + c];
  }
  return a;
}

double minor3(const Matrix4& a, int skip_row, int skip_col) {
  int rows[3];
  int cols[3];
  for (int i = 0, k = 0; i < 4; ++i) {
    if (i != skip_row) rows[k++] = i;
  }
  for (int i = 0, k = 0; i < 4; ++i) {
    if (i != skip_col) cols[k++] = i;
  }
  const auto m = [&](int r, int c) { return a[rows[r]][cols[c]]; };
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

double norm1(const Matrix4& a) {
  double best = 0.0;
  for (int c = 0; c < 4; ++c) {
    double s = 0.0;
    for (int r = 0; r < 4; ++r) s += std::abs(a[r][c]);
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

DesignMatrix build_design(const GridSpec& grid) {
  DesignMatrix d;
  d.spacing = grid.spacing;
  d.half_width = grid.half_width;
  d.rows.reserve(grid.size());
  for (int j = -grid.half_width; j <= grid.half_width; ++j) {
    const double x = j * grid.spacing;
    d.rows.push_back({1.0, x, x * x, x * x * x});
  }
  return d;
}

Matrix4 gram(const DesignMatrix& design) {
  return gram_of_powers(design.half_width, design.spacing);
}

double determinant(const Matrix4& a) {
  double det = 0.0;
  for (int c = 0; c < 4; ++c) {
    const double sign = (c % 2 == 0) ? 1.0 : -1.0;
    det += sign * a[0][c] * minor3(a, 0, c);
  }
  return det;
}

Matrix4 adjugate(const Matrix4& a) {
  Matrix4 adj{};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const double sign = ((r + c) % 2 == 0) ? 1.0 : -1.0;
      adj[c][r] = sign * minor3(a, r, c);
    }
  }
  return adj;
}

double det_xtx(const DesignMatrix& design) { return determinant(gram(design)); }

AdjDiagonals adj_diagonals(const DesignMatrix& design) {
  const Matrix4 a = gram(design);
  return {minor3(a, 1, 1), minor3(a, 2, 2)};
}

CubicFit lsq_fit(const DesignMatrix& design, std::span<const double> values) {
  const int J = design.half_width;
  if (values.size() != design.rows.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "value count does not match the design rows");
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "fit values must be finite");
    }
  }

  CubicFit fit;
  fit.xtx = gram(design);
  fit.xtx_det = determinant(fit.xtx);
  const Matrix4 adj = adjugate(fit.xtx);
  fit.adj22 = adj[1][1];
  fit.adj33 = adj[2][2];
  const double condition =
      fit.xtx_det > 0.0 ? norm1(fit.xtx) * norm1(adj) / fit.xtx_det
                        : std::numeric_limits<double>::infinity();
  if (!(condition <= kMaxCondition)) {
    std::ostringstream msg;
    msg << "condition number of X^T X is " << condition;
    throw Error(ErrorCode::kSingularDesign, msg.str());
  }

  // Solve in index units u = j (x = u * spacing) about the center value:
  // the unit-spacing Gram matrix does not degrade as spacing shrinks.
  const double shift = values[static_cast<std::size_t>(J)];
  const Matrix4 unit = gram_of_powers(J, 1.0);
  const Matrix4 unit_adj = adjugate(unit);
  const double unit_det = determinant(unit);
  std::array<double, 4> rhs{};
  for (int j = -J; j <= J; ++j) {
    const double v = values[static_cast<std::size_t>(j + J)] - shift;
    double p = 1.0;
    for (double& r : rhs) {
      r += p * v;
      p *= j;
    }
  }
  double scale = 1.0;
  for (int k = 0; k < 4; ++k) {
    double b = 0.0;
    for (int c = 0; c < 4; ++c) b += unit_adj[k][c] * rhs[c];
    fit.beta[k] = b / unit_det / scale;
    scale *= design.spacing;
  }
  fit.beta[0] += shift;

  for (std::size_t i = 0; i < design.rows.size(); ++i) {
    const auto& row = design.rows[i];
    double pred = 0.0;
    for (int k = 0; k < 4; ++k) pred += row[k] * fit.beta[k];
    const double r = values[i] - pred;
    fit.residual_ss += r * r;
  }
  return fit;
}

void write_fit_csv_header(std::ostream& out) {
  CsvWriter(out).header({"n", "J", "delta", "beta0", "beta1", "beta2", "beta3",
                         "det", "adj22", "adj33", "residual_ss"});
}

void write_fit_csv_row(std::ostream& out, const GridSpec& grid,
                       const CubicFit& fit) {
  CsvWriter(out).row(grid.n, grid.half_width, grid.spacing, fit.beta[0],
                     fit.beta[1], fit.beta[2], fit.beta[3], fit.xtx_det,
                     fit.adj22, fit.adj33, fit.residual_ss);
}

}  // namespace rlan
