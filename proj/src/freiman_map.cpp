#include "freiman/freiman_map.hpp"

#include <algorithm>
#include <sstream>

#include "freiman/error.hpp"

namespace freiman {

namespace {

template <typename T>
struct PairSum {
  T domain;
  T image;
  std::uint32_t i;
  std::uint32_t j;
};

template <typename T>
Quadruple quad(const std::vector<Integer>& xs, const PairSum<T>& p, const PairSum<T>& q) {
  return {xs[p.i], xs[p.j], xs[q.i], xs[q.j]};
}

template <typename T>
void check_pairs(const std::vector<T>& dom, const std::vector<T>& img,
                 const std::vector<Integer>& xs, Freiman2Verdict& v) {
  const std::size_t n = dom.size();
  std::vector<PairSum<T>> pairs;
  pairs.reserve(n * (n + 1) / 2);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i; j < n; ++j) pairs.push_back({dom[i] + dom[j], img[i] + img[j], i, j});
  }
  // Equal domain sums must have equal image sums.
  std::sort(pairs.begin(), pairs.end(), [](const PairSum<T>& a, const PairSum<T>& b) {
    return a.domain != b.domain ? a.domain < b.domain : a.image < b.image;
  });
  for (std::size_t p = 1; p < pairs.size(); ++p) {
    if (pairs[p].domain == pairs[p - 1].domain && pairs[p].image != pairs[p - 1].image) {
      v.homomorphism = false;
      v.homomorphism_violation = quad(xs, pairs[p - 1], pairs[p]);
      break;
    }
  }
  // Equal image sums must come from equal domain sums.
  std::sort(pairs.begin(), pairs.end(), [](const PairSum<T>& a, const PairSum<T>& b) {
    return a.image != b.image ? a.image < b.image : a.domain < b.domain;
  });
  for (std::size_t p = 1; p < pairs.size(); ++p) {
    if (pairs[p].image == pairs[p - 1].image && pairs[p].domain != pairs[p - 1].domain) {
      v.isomorphism = false;
      v.isomorphism_violation = quad(xs, pairs[p - 1], pairs[p]);
      break;
    }
  }
}

}  // namespace

std::string Freiman2Verdict::summary() const {
  std::ostringstream os;
  os << "order-preserving=" << (order_preserving ? "yes" : "no")
     << " homomorphism=" << (homomorphism ? "yes" : "no")
     << " isomorphism=" << (isomorphism ? "yes" : "no");
  if (order_violation) {
    os << "; order fails at " << (*order_violation)[0] << " < " << (*order_violation)[1];
  }
  if (homomorphism_violation) {
    const auto& q = *homomorphism_violation;
    os << "; " << q[0] << "+" << q[1] << " = " << q[2] << "+" << q[3] << " but images differ";
  }
  if (isomorphism_violation) {
    const auto& q = *isomorphism_violation;
    os << "; images of " << q[0] << "+" << q[1] << " and " << q[2] << "+" << q[3]
       << " agree but sums differ";
  }
  return os.str();
}

Freiman2Verdict verify_freiman2(const MapTable& phi, const IntSet& x, std::int64_t cap) {
  if (static_cast<std::int64_t>(x.size()) > cap) {
    throw CapExceeded("verification of a " + std::to_string(x.size()) +
                      "-element set exceeds cap " + std::to_string(cap));
  }
  Freiman2Verdict v;
  std::vector<Integer> images;
  images.reserve(x.size());
  for (const auto& e : x.elements()) {
    auto it = phi.find(e);
    if (it == phi.end()) throw InputError("map is not defined at " + e.str());
    images.push_back(it->second);
  }
  const auto& xs = x.values();
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(images[i - 1] < images[i])) {
      v.order_preserving = false;
      v.order_violation = std::array<Integer, 2>{xs[i - 1], xs[i]};
      break;
    }
  }
  const Integer limit = Integer(1) << 61;
  if (all_within(xs, limit) && all_within(images, limit)) {
    std::vector<std::int64_t> dom, img;
    for (const auto& e : xs) dom.push_back(e.convert_to<std::int64_t>());
    for (const auto& e : images) img.push_back(e.convert_to<std::int64_t>());
    check_pairs(dom, img, xs, v);
  } else {
    check_pairs(xs, images, xs, v);
  }
  return v;
}

FreimanMap::FreimanMap(Gap source_gap, VectorXz dprime, Integer pre_shift, Integer post_shift,
                       MapProvenance provenance, const Caps& caps)
    : dprime_(std::move(dprime)),
      pre_shift_(std::move(pre_shift)),
      post_shift_(std::move(post_shift)),
      provenance_(std::move(provenance)) {
  if (source_gap.base() != 0) throw InputError("FreimanMap source GAP must have base 0");
  if (static_cast<std::size_t>(dprime_.size()) != source_gap.dim()) {
    throw InputError("FreimanMap direction vector has wrong dimension");
  }
  index_ = std::make_shared<const GapIndex>(source_gap, caps);
}

bool FreimanMap::in_domain(const Integer& x) const {
  return index_ && index_->contains(x - pre_shift_);
}

std::optional<Integer> FreimanMap::try_apply(const Integer& x) const {
  if (!index_) return std::nullopt;
  auto c = index_->decompose(x - pre_shift_);
  if (!c) return std::nullopt;
  Integer y = post_shift_;
  for (std::size_t i = 0; i < c->size(); ++i) y += dprime_(static_cast<Eigen::Index>(i)) * (*c)[i];
  return y;
}

Integer FreimanMap::operator()(const Integer& x) const {
  auto y = try_apply(x);
  if (!y) throw InputError("map is not defined at " + x.str());
  return *y;
}

FreimanMap FreimanMap::shifted(const Integer& extra_pre, const Integer& extra_post) const {
  FreimanMap m = *this;
  m.pre_shift_ += extra_pre;
  m.post_shift_ += extra_post;
  return m;
}

MapTable FreimanMap::table(const IntSet& x) const {
  MapTable t;
  for (const auto& e : x.elements()) t.emplace_hint(t.end(), e, (*this)(e));
  return t;
}

IntSet FreimanMap::image(const IntSet& x) const {
  std::vector<Integer> out;
  for (const auto& e : x.elements()) out.push_back((*this)(e));
  return IntSet::from_values(std::move(out));
}

MapTable invert(const MapTable& table) {
  MapTable inv;
  for (const auto& [x, y] : table) {
    if (!inv.emplace(y, x).second) throw InputError("map is not injective at image " + y.str());
  }
  return inv;
}

}  // namespace freiman
