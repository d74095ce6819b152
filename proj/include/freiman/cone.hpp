#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "freiman/caps.hpp"
#include "freiman/gap.hpp"
#include "freiman/numeric.hpp"

namespace freiman {

/// Strict homogeneous system {x : a.x > 0 for every row a}.
///
/// Rows are primitive (gcd of entries is one), distinct and sorted. When the
/// system comes from a GAP, `coords` lists which GAP coordinates the axes
/// stand for (coordinates with bound zero carry no inequality and are left
/// out) and `bounds` holds their L_i.
struct ConeSystem {
  Eigen::Index dim = 0;
  MatrixXz rows;
  std::optional<VectorXz> witness;
  std::vector<std::size_t> coords;
  std::vector<std::int64_t> bounds;

  Eigen::Index row_count() const { return rows.rows(); }
  /// a.x > 0 for every row.
  bool strictly_feasible(const VectorXz& x) const;
  /// a.x >= 0 for every row.
  bool feasible(const VectorXz& x) const;
};

/// gcd-normalize, deduplicate and sort. Zero rows are rejected.
MatrixXz canonical_rows(const MatrixXz& rows);

/// All primitive a with |a_i| <= 4 L_i and a.d > 0, over the coordinates with
/// L_i > 0. Requires d_i > 0 there, and both g and scaled(g, 4) proper.
ConeSystem build_system(const Gap& g, const Caps& caps = {});

struct ExtremeRay {
  VectorXz point;                      // primitive, a.point >= 0 for all rows
  std::vector<Eigen::Index> active;    // rows with a.point == 0
};

/// Extreme rays of the closed cone {a.x >= 0}, in lexicographic order of
/// their points. Each is the signed-minor kernel of some rank k-1 set of k-1
/// rows, oriented into the cone and reduced to primitive form.
std::vector<ExtremeRay> extreme_rays(const ConeSystem& s, const Caps& caps = {});

struct InteriorPoint {
  VectorXz point;
  std::size_t ray_count = 0;
  std::vector<VectorXz> rays;
  /// sum L_i |d'_i|, when the system carries bounds.
  std::optional<Integer> radius;
  /// (k+1)! 4^k prod L_j, when the system carries bounds.
  std::optional<Integer> reference_bound;

  /// True when the ray count is at most k+1, where radius <= reference_bound
  /// is guaranteed.
  bool reference_applies = false;
};

/// Sum of the points of all extreme rays; strict feasibility is checked and
/// a VerificationError is raised if it fails.
InteriorPoint interior_integer_point(const ConeSystem& s, const Caps& caps = {});

/// Exhaustive search of the box max|x_i| <= box for a strictly feasible point
/// of least max-norm, ties broken lexicographically.
std::optional<VectorXz> oracle_min_point(const ConeSystem& s, std::int64_t box,
                                         const Caps& caps = {});

/// 4^k k! prod_{j != i} L_j for each coordinate i.
std::vector<Integer> determinant_bounds(const std::vector<std::int64_t>& bounds);

/// Text dump: comment lines "# dim k", "# witness ...", then one row per line.
void write_system(std::ostream& os, const ConeSystem& s);
ConeSystem read_system(std::istream& is);

}  // namespace freiman
