#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "freiman/caps.hpp"
#include "freiman/gap.hpp"
#include "freiman/intset.hpp"
#include "freiman/numeric.hpp"

namespace freiman {

/// A map evaluated on a finite domain: element -> image.
using MapTable = std::map<Integer, Integer>;

using Quadruple = std::array<Integer, 4>;

struct Freiman2Verdict {
  bool order_preserving = true;
  bool homomorphism = true;
  bool isomorphism = true;

  /// x < y with phi(x) >= phi(y).
  std::optional<std::array<Integer, 2>> order_violation;
  /// a + b = c + d but phi(a) + phi(b) != phi(c) + phi(d).
  std::optional<Quadruple> homomorphism_violation;
  /// phi(a) + phi(b) = phi(c) + phi(d) but a + b != c + d.
  std::optional<Quadruple> isomorphism_violation;

  bool passed() const { return order_preserving && homomorphism && isomorphism; }
  std::string summary() const;
};

/// Checks that phi is an order-preserving Freiman 2-isomorphism on X.
///
/// Both directions amount to the partitions of pairs {x, y} by x + y and by
/// phi(x) + phi(y) being the same partition, which is decided by two sorts.
/// Throws InputError if phi is undefined somewhere on X and CapExceeded if
/// |X| > cap.
Freiman2Verdict verify_freiman2(const MapTable& phi, const IntSet& x, std::int64_t cap);

/// Where a coefficient-linear map came from.
struct MapProvenance {
  std::size_t cone_dim = 0;
  std::size_t cone_rows = 0;
  std::size_t ray_count = 0;
  std::vector<VectorXz> rays;
  Integer image_bound = 0;                 // sum L_i |d'_i|
  std::optional<Integer> reference_bound;  // (k+1)! 4^k prod L_j
  bool reference_applies = false;
  bool verified_on_gap = false;
};

/// x -> sum_i c_i d'_i + post_shift, where c is the coefficient vector of
/// x - pre_shift in the base-zero GAP `source_gap`.
class FreimanMap {
 public:
  FreimanMap() = default;
  FreimanMap(Gap source_gap, VectorXz dprime, Integer pre_shift, Integer post_shift,
             MapProvenance provenance, const Caps& caps = {});

  const Gap& source_gap() const { return index_->gap(); }
  const VectorXz& dprime() const { return dprime_; }
  const Integer& pre_shift() const { return pre_shift_; }
  const Integer& post_shift() const { return post_shift_; }
  const MapProvenance& provenance() const { return provenance_; }
  void set_provenance(MapProvenance p) { provenance_ = std::move(p); }

  bool in_domain(const Integer& x) const;
  std::optional<Integer> try_apply(const Integer& x) const;
  /// Throws InputError outside the domain.
  Integer operator()(const Integer& x) const;

  /// Same map precomposed with x -> x - extra_pre and followed by + extra_post.
  FreimanMap shifted(const Integer& extra_pre, const Integer& extra_post) const;

  MapTable table(const IntSet& x) const;
  IntSet image(const IntSet& x) const;

 private:
  std::shared_ptr<const GapIndex> index_;
  VectorXz dprime_;
  Integer pre_shift_ = 0;
  Integer post_shift_ = 0;
  MapProvenance provenance_;
};

/// Inverse lookup of a table that is injective; throws InputError otherwise.
MapTable invert(const MapTable& table);

}  // namespace freiman
