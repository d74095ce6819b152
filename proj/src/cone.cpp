#include "freiman/cone.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "freiman/error.hpp"
#include "freiman/linalg.hpp"

namespace freiman {

namespace {

constexpr Eigen::Index kMaxRayDim = 8;

using Key = std::vector<Integer>;

Integer max_abs_entry(const MatrixXz& m) {
  Integer best = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) best = std::max(best, abs_of(m(r, c)));
  }
  return best;
}

const Integer& safe_int64() {
  static const Integer limit = Integer(1) << 62;
  return limit;
}

// Rows flattened in scan order, so that feasibility checks touch memory
// sequentially and meet the most restrictive rows first.
template <typename Scalar>
struct RowTable {
  Eigen::Index k = 0;
  std::vector<Scalar> flat;
  std::vector<Eigen::Index> original;

  std::size_t count() const { return original.size(); }
  const Scalar* row(std::size_t i) const { return flat.data() + i * static_cast<std::size_t>(k); }

  Scalar dot(std::size_t i, const Scalar* x) const {
    const Scalar* a = row(i);
    Scalar s(0);
    for (Eigen::Index c = 0; c < k; ++c) s += a[c] * x[c];
    return s;
  }
};

template <typename Scalar>
Scalar convert(const Integer& x) {
  if constexpr (std::is_same_v<Scalar, Integer>) {
    return x;
  } else {
    return x.convert_to<Scalar>();
  }
}

// Tight rows first: ascending a.w / |a|_1, compared exactly.
std::vector<Eigen::Index> scan_order(const ConeSystem& s) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(s.row_count()));
  std::iota(order.begin(), order.end(), 0);
  if (!s.witness) return order;
  std::vector<Integer> slack(order.size()), norm(order.size());
  for (Eigen::Index r = 0; r < s.row_count(); ++r) {
    slack[r] = (s.rows.row(r) * *s.witness)(0);
    Integer n1 = 0;
    for (Eigen::Index c = 0; c < s.dim; ++c) n1 += abs_of(s.rows(r, c));
    norm[r] = n1;
  }
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return slack[a] * norm[b] < slack[b] * norm[a];
  });
  return order;
}

template <typename Scalar>
RowTable<Scalar> make_table(const ConeSystem& s, const std::vector<Eigen::Index>& order) {
  RowTable<Scalar> t;
  t.k = s.dim;
  t.original = order;
  t.flat.reserve(order.size() * static_cast<std::size_t>(s.dim));
  for (auto r : order) {
    for (Eigen::Index c = 0; c < s.dim; ++c) t.flat.push_back(convert<Scalar>(s.rows(r, c)));
  }
  return t;
}

template <typename Scalar>
using Point = std::array<Scalar, kMaxRayDim>;

template <typename Scalar>
struct RayCollector {
  const RowTable<Scalar>& table;
  Eigen::Index k;
  std::map<std::vector<Scalar>, std::vector<Eigen::Index>> found;
  std::set<std::vector<Scalar>> seen;
  std::vector<Eigen::Index> zeros;

  // Orient x into the cone if possible and record it.
  void consider(Point<Scalar> x) {
    bool nonzero = false;
    for (Eigen::Index c = 0; c < k; ++c) nonzero = nonzero || x[c] != Scalar(0);
    if (!nonzero) return;
    Scalar g(0);
    for (Eigen::Index c = 0; c < k; ++c) g = gcd_scalar(g, x[c]);
    for (Eigen::Index c = 0; c < k; ++c) x[c] = Scalar(x[c] / g);

    std::vector<Scalar> key(x.begin(), x.begin() + k);
    {
      Eigen::Index lead = 0;
      while (key[lead] == Scalar(0)) ++lead;
      if (key[lead] < Scalar(0)) {
        for (auto& v : key) v = -v;
      }
    }
    if (seen.count(key)) return;

    bool pos = false, neg = false;
    zeros.clear();
    for (std::size_t i = 0; i < table.count(); ++i) {
      Scalar s = table.dot(i, x.data());
      if (s > Scalar(0)) {
        pos = true;
      } else if (s < Scalar(0)) {
        neg = true;
      } else {
        zeros.push_back(table.original[i]);
      }
      if (pos && neg) return;
    }
    seen.insert(key);
    if (!pos && !neg) return;  // every row vanishes: not a ray of a pointed region
    if (neg) {
      for (Eigen::Index c = 0; c < k; ++c) x[c] = -x[c];
    }
    std::sort(zeros.begin(), zeros.end());
    found.emplace(std::vector<Scalar>(x.begin(), x.begin() + k), zeros);
  }
};

template <typename Scalar>
std::vector<ExtremeRay> rays_impl(const ConeSystem& s, const std::vector<Eigen::Index>& order) {
  const Eigen::Index k = s.dim;
  const auto table = make_table<Scalar>(s, order);
  RayCollector<Scalar> collector{table, k, {}, {}, {}};
  const std::size_t rows = table.count();
  const std::size_t pick = static_cast<std::size_t>(k - 1);

  if (k == 2) {
    for (std::size_t i = 0; i < rows; ++i) {
      const Scalar* a = table.row(i);
      Point<Scalar> x{};
      x[0] = a[1];
      x[1] = -a[0];
      collector.consider(x);
    }
  } else if (k == 3) {
    for (std::size_t i = 0; i < rows; ++i) {
      const Scalar* a = table.row(i);
      for (std::size_t j = i + 1; j < rows; ++j) {
        const Scalar* b = table.row(j);
        Point<Scalar> x{};
        x[0] = a[1] * b[2] - a[2] * b[1];
        x[1] = a[2] * b[0] - a[0] * b[2];
        x[2] = a[0] * b[1] - a[1] * b[0];
        collector.consider(x);
      }
    }
  } else if (pick <= rows) {
    std::vector<std::size_t> idx(pick);
    std::iota(idx.begin(), idx.end(), 0);
    Mat<Scalar> m(static_cast<Eigen::Index>(pick), k);
    while (true) {
      for (std::size_t r = 0; r < pick; ++r) {
        const Scalar* a = table.row(idx[r]);
        for (Eigen::Index c = 0; c < k; ++c) m(static_cast<Eigen::Index>(r), c) = a[c];
      }
      Vec<Scalar> minors = signed_minors(m);
      Point<Scalar> x{};
      for (Eigen::Index c = 0; c < k; ++c) x[c] = minors(c);
      collector.consider(x);
      // next combination
      std::size_t p = pick;
      while (p > 0 && idx[p - 1] == rows - pick + (p - 1)) --p;
      if (p == 0) break;
      ++idx[p - 1];
      for (std::size_t q = p; q < pick; ++q) idx[q] = idx[q - 1] + 1;
    }
  }

  std::vector<ExtremeRay> out;
  for (auto& [point, active] : collector.found) {
    ExtremeRay ray;
    ray.point.resize(k);
    for (Eigen::Index c = 0; c < k; ++c) ray.point(c) = Integer(point[c]);
    MatrixXz act(static_cast<Eigen::Index>(active.size()), k);
    for (std::size_t r = 0; r < active.size(); ++r) act.row(static_cast<Eigen::Index>(r)) = s.rows.row(active[r]);
    if (rank_exact(act) != k - 1) continue;
    ray.active = active;
    out.push_back(std::move(ray));
  }
  std::sort(out.begin(), out.end(), [](const ExtremeRay& a, const ExtremeRay& b) {
    return std::lexicographical_compare(a.point.begin(), a.point.end(), b.point.begin(),
                                        b.point.end());
  });
  return out;
}

Integer binomial(std::int64_t n, std::int64_t r) {
  if (r < 0 || r > n) return 0;
  Integer out = 1;
  for (std::int64_t i = 0; i < r; ++i) out = out * Integer(n - i) / Integer(i + 1);
  return out;
}

// Shell {max|x_i| == r} of the cube in lexicographic order; f returns true to stop.
template <typename Scalar, typename F>
bool for_each_shell_point(Eigen::Index k, std::int64_t r, Point<Scalar>& x, Eigen::Index pos,
                          bool on_shell, F& f) {
  if (pos == k) return on_shell && f(x);
  const bool last = pos + 1 == k;
  for (std::int64_t v = -r; v <= r; ++v) {
    const bool extreme = v == -r || v == r;
    if (last && !on_shell && !extreme) {
      v = r - 1;  // jump straight to +r
      continue;
    }
    x[pos] = Scalar(v);
    if (for_each_shell_point<Scalar>(k, r, x, pos + 1, on_shell || extreme, f)) return true;
  }
  return false;
}

template <typename Scalar>
std::optional<VectorXz> oracle_impl(const ConeSystem& s, std::int64_t box) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(s.row_count()));
  std::iota(order.begin(), order.end(), 0);
  const auto table = make_table<Scalar>(s, order);
  const Eigen::Index k = s.dim;
  std::optional<VectorXz> result;
  Point<Scalar> x{};
  // Rows are tried in index order, except that a row which rejects a point is
  // tried first on the next one: neighbouring points usually fail the same row.
  std::vector<std::size_t> tries(table.count());
  std::iota(tries.begin(), tries.end(), 0);
  auto test = [&](const Point<Scalar>& p) {
    for (std::size_t i = 0; i < tries.size(); ++i) {
      if (table.dot(tries[i], p.data()) <= Scalar(0)) {
        if (i != 0) std::swap(tries[0], tries[i]);
        return false;
      }
    }
    VectorXz v(k);
    for (Eigen::Index c = 0; c < k; ++c) v(c) = Integer(p[c]);
    result = std::move(v);
    return true;
  };
  for (std::int64_t r = 0; r <= box; ++r) {
    if (r == 0) {
      if (test(x)) return result;
      continue;
    }
    if (for_each_shell_point<Scalar>(k, r, x, 0, false, test)) return result;
  }
  return std::nullopt;
}

}  // namespace

bool ConeSystem::strictly_feasible(const VectorXz& x) const {
  if (x.size() != dim) return false;
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    if ((rows.row(r) * x)(0) <= 0) return false;
  }
  return true;
}

bool ConeSystem::feasible(const VectorXz& x) const {
  if (x.size() != dim) return false;
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    if ((rows.row(r) * x)(0) < 0) return false;
  }
  return true;
}

MatrixXz canonical_rows(const MatrixXz& rows) {
  std::set<Key> unique;
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    VectorXz v = primitive<Integer>(rows.row(r).transpose());
    if (v.isZero()) throw InputError("cone row " + std::to_string(r) + " is zero");
    Key key(v.data(), v.data() + v.size());
    unique.insert(std::move(key));
  }
  MatrixXz out(static_cast<Eigen::Index>(unique.size()), rows.cols());
  Eigen::Index r = 0;
  for (const auto& key : unique) {
    for (Eigen::Index c = 0; c < rows.cols(); ++c) out(r, c) = key[static_cast<std::size_t>(c)];
    ++r;
  }
  return out;
}

ConeSystem build_system(const Gap& g, const Caps& caps) {
  if (auto hit = find_collision(g, caps)) {
    throw InputError("GAP is not proper: coefficients " + describe(hit->first) + " and " +
                     describe(hit->second) + " collide");
  }
  if (auto hit = find_collision(scaled(g, Rational(4)), caps)) {
    throw InputError("GAP is not proper after 4x scaling: coefficients " +
                     describe(hit->first) + " and " + describe(hit->second) + " collide");
  }
  ConeSystem s;
  std::vector<Integer> dirs;
  std::vector<std::int64_t> wide;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    if (g.bounds()[i] == 0) continue;
    if (g.dirs()[i] <= 0) throw InputError("GAP direction " + std::to_string(i) + " is not positive");
    s.coords.push_back(i);
    s.bounds.push_back(g.bounds()[i]);
    dirs.push_back(g.dirs()[i]);
    wide.push_back(4 * g.bounds()[i]);
  }
  s.dim = static_cast<Eigen::Index>(dirs.size());
  VectorXz witness(s.dim);
  for (Eigen::Index c = 0; c < s.dim; ++c) witness(c) = dirs[static_cast<std::size_t>(c)];
  s.witness = witness;

  std::set<std::vector<std::int64_t>> unique;
  for_each_coefficient(wide, [&](const CoeffVector& a) {
    Integer dot = 0;
    for (std::size_t c = 0; c < a.size(); ++c) dot += dirs[c] * a[c];
    if (dot <= 0) return;
    std::int64_t gg = 0;
    for (auto v : a) gg = gcd_scalar<std::int64_t>(gg, v);
    std::vector<std::int64_t> row(a.size());
    for (std::size_t c = 0; c < a.size(); ++c) row[c] = a[c] / gg;
    unique.insert(std::move(row));
  });
  s.rows.resize(static_cast<Eigen::Index>(unique.size()), s.dim);
  Eigen::Index r = 0;
  for (const auto& row : unique) {
    for (Eigen::Index c = 0; c < s.dim; ++c) s.rows(r, c) = Integer(row[static_cast<std::size_t>(c)]);
    ++r;
  }
  return s;
}

std::vector<ExtremeRay> extreme_rays(const ConeSystem& s, const Caps& caps) {
  const Eigen::Index k = s.dim;
  if (k == 0) return {};
  if (k > kMaxRayDim) {
    throw InputError("cone dimension " + std::to_string(k) + " exceeds supported maximum " +
                     std::to_string(kMaxRayDim));
  }
  const Integer subsets = binomial(s.row_count(), k - 1);
  if (subsets > caps.ray_subsets) {
    throw CapExceeded("ray enumeration over " + subsets.str() +
                      " row subsets exceeds cap ray_subsets=" + std::to_string(caps.ray_subsets));
  }
  const auto order = scan_order(s);
  // |minor| <= (k-1)! M^(k-1) and |a.x| <= k M |minor|.
  const Integer m = max_abs_entry(s.rows);
  const Integer dot_bound = Integer(k) * m * factorial(static_cast<unsigned>(k - 1)) *
                            pow_of(m, static_cast<unsigned>(k - 1));
  if (dot_bound < safe_int64()) return rays_impl<std::int64_t>(s, order);
  return rays_impl<Integer>(s, order);
}

std::vector<Integer> determinant_bounds(const std::vector<std::int64_t>& bounds) {
  const auto k = static_cast<unsigned>(bounds.size());
  std::vector<Integer> out;
  for (unsigned i = 0; i < k; ++i) {
    Integer b = pow_of(Integer(4), k) * factorial(k);
    for (unsigned j = 0; j < k; ++j) {
      if (j != i) b *= Integer(bounds[j]);
    }
    out.push_back(b);
  }
  return out;
}

InteriorPoint interior_integer_point(const ConeSystem& s, const Caps& caps) {
  InteriorPoint out;
  const auto rays = extreme_rays(s, caps);
  if (rays.empty()) throw InputError("cone system has no extreme rays");
  out.point = VectorXz::Zero(s.dim);
  for (const auto& ray : rays) {
    out.point += ray.point;
    out.rays.push_back(ray.point);
  }
  out.ray_count = rays.size();
  if (!s.strictly_feasible(out.point)) {
    std::ostringstream os;
    os << "sum of " << rays.size() << " extreme rays is not strictly feasible";
    throw VerificationError(os.str());
  }
  if (static_cast<Eigen::Index>(s.bounds.size()) == s.dim) {
    Integer radius = 0;
    Integer prod = 1;
    for (Eigen::Index c = 0; c < s.dim; ++c) {
      radius += Integer(s.bounds[static_cast<std::size_t>(c)]) * abs_of(out.point(c));
      prod *= Integer(s.bounds[static_cast<std::size_t>(c)]);
    }
    const auto k = static_cast<unsigned>(s.dim);
    out.radius = radius;
    out.reference_bound = factorial(k + 1) * pow_of(Integer(4), k) * prod;
    out.reference_applies = out.ray_count <= k + 1;
  }
  return out;
}

std::optional<VectorXz> oracle_min_point(const ConeSystem& s, std::int64_t box, const Caps& caps) {
  if (box < 0) throw InputError("oracle box must be nonnegative");
  const Integer points = pow_of(Integer(2 * box + 1), static_cast<unsigned>(s.dim));
  if (points > caps.cone_box) {
    throw CapExceeded("oracle search over " + points.str() + " points exceeds cap cone_box=" +
                      std::to_string(caps.cone_box));
  }
  if (s.dim > kMaxRayDim) throw InputError("cone dimension too large for the oracle");
  const Integer bound = Integer(s.dim) * max_abs_entry(s.rows) * Integer(box);
  if (bound < safe_int64()) return oracle_impl<std::int64_t>(s, box);
  return oracle_impl<Integer>(s, box);
}

void write_system(std::ostream& os, const ConeSystem& s) {
  os << "# dim " << s.dim << "\n";
  if (s.witness) {
    os << "# witness";
    for (Eigen::Index c = 0; c < s.dim; ++c) os << ' ' << (*s.witness)(c);
    os << "\n";
  }
  if (!s.bounds.empty()) {
    os << "# bounds";
    for (auto b : s.bounds) os << ' ' << b;
    os << "\n";
  }
  for (Eigen::Index r = 0; r < s.row_count(); ++r) {
    for (Eigen::Index c = 0; c < s.dim; ++c) os << (c ? " " : "") << s.rows(r, c);
    os << "\n";
  }
}

namespace {

std::vector<Integer> parse_fields(std::istringstream& in, std::size_t line_no) {
  std::vector<Integer> out;
  std::string tok;
  while (in >> tok) {
    auto v = try_parse_integer(tok);
    if (!v) throw InputError("line " + std::to_string(line_no) + ": not an integer '" + tok + "'");
    out.push_back(*v);
  }
  return out;
}

}  // namespace

ConeSystem read_system(std::istream& is) {
  std::optional<Eigen::Index> dim;
  std::optional<std::vector<Integer>> witness;
  std::vector<std::int64_t> bounds;
  std::vector<std::vector<Integer>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::istringstream in(line.substr(first + 1));
      std::string tag;
      in >> tag;
      if (tag == "dim") {
        auto f = parse_fields(in, line_no);
        if (f.size() != 1 || f[0] < 0) throw InputError("line " + std::to_string(line_no) + ": bad dim");
        dim = static_cast<Eigen::Index>(to_int64(f[0]));
      } else if (tag == "witness") {
        witness = parse_fields(in, line_no);
      } else if (tag == "bounds") {
        for (auto& b : parse_fields(in, line_no)) bounds.push_back(to_int64(b));
      }
      continue;
    }
    std::istringstream in(line);
    auto f = parse_fields(in, line_no);
    if (!dim) dim = static_cast<Eigen::Index>(f.size());
    if (static_cast<Eigen::Index>(f.size()) != *dim) {
      throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(*dim) +
                       " entries, found " + std::to_string(f.size()));
    }
    rows.push_back(std::move(f));
  }
  if (!dim) throw InputError("cone system has no rows and no '# dim' header");
  ConeSystem s;
  s.dim = *dim;
  MatrixXz raw(static_cast<Eigen::Index>(rows.size()), s.dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (Eigen::Index c = 0; c < s.dim; ++c) raw(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<std::size_t>(c)];
  }
  s.rows = canonical_rows(raw);
  for (Eigen::Index c = 0; c < s.dim; ++c) s.coords.push_back(static_cast<std::size_t>(c));
  if (witness) {
    if (static_cast<Eigen::Index>(witness->size()) != s.dim) throw InputError("witness has wrong dimension");
    VectorXz w(s.dim);
    for (Eigen::Index c = 0; c < s.dim; ++c) w(c) = (*witness)[static_cast<std::size_t>(c)];
    s.witness = w;
  }
  if (!bounds.empty()) {
    if (static_cast<Eigen::Index>(bounds.size()) != s.dim) throw InputError("bounds have wrong dimension");
    s.bounds = bounds;
  }
  return s;
}

}  // namespace freiman
