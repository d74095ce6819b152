#pragma once

#include <array>
#include <optional>
#include <vector>

#include "freiman/caps.hpp"
#include "freiman/freiman_map.hpp"
#include "freiman/gap.hpp"
#include "freiman/intset.hpp"

namespace freiman {

/// Order-preserving Freiman 2-isomorphism x -> sum x_i d'_i on a GAP, with d'
/// the sum of the extreme rays of the GAP's cone system.
///
/// Requires g and scaled(g, 4) proper. When the volume is within
/// caps.pipeline_verify_size the map is verified on all of g (order, both
/// directions, and |phi| <= sum L_i |d'_i|) and a VerificationError carries
/// the counterexample if that fails.
FreimanMap condense_gap(const Gap& g, const Caps& caps = {});

/// Where condense_set gets its GAP inside 2A - 2A from.
class GapProvider {
 public:
  enum class Mode { Given, ApSearch };

  /// A user-supplied GAP, centered to base 0 and then checked to be proper and
  /// inside 2A-2A.
  static GapProvider given(Gap g);
  /// The symmetric AP {x d : |x| <= L} inside 2A-2A with the best step-two
  /// count, over every d in 2A-2A with d >= 1 and the largest L for that d.
  static GapProvider ap_search();

  Mode mode() const { return mode_; }
  const std::optional<Gap>& gap() const { return gap_; }

 private:
  Mode mode_ = Mode::ApSearch;
  std::optional<Gap> gap_;
};

/// 2A - 2A.
IntSet double_difference(const IntSet& a, const Caps& caps = {});

Gap provide_gap(const IntSet& a, const GapProvider& provider, const Caps& caps = {});

/// Best value of |{a in A : a + b - c - d in G}| over (b, c, d) in A^3, with
/// the lexicographically smallest triple attaining it.
struct TripleChoice {
  std::size_t count = 0;
  std::array<Integer, 3> triple;
  Integer shift;  // b - c - d
};

TripleChoice choose_triple(const IntSet& a, const Gap& g, const Caps& caps = {});

struct CondenseTrace {
  Gap gap;                   // from the provider, base 0
  TripleChoice triple;
  std::size_t first_subset_size = 0;  // |A'|
  Gap quarter;               // G'' = G with bounds floor(L_i / 4)
  std::vector<int> translate_steps;   // j_i in {0,1,2,3}
  Integer translate;         // v = sum j_i floor(L_i/4) d_i
};

struct CondenseResult {
  IntSet subset;             // A''
  FreimanMap map;
  Integer image_radius;      // max |phi(a)| over A''
  Rational retention;        // |A''| / |A|
  Freiman2Verdict verdict;   // on A''
  CondenseTrace trace;

  /// image_radius / |A''|.
  Rational radius_constant() const;
};

/// Condensing pipeline for a finite set: GAP from the provider, best triple,
/// base normalization, quarter GAP, best of the 4^k translates, and the GAP
/// map composed with the accumulated shifts. The result is verified on A''.
CondenseResult condense_set(const IntSet& a, const GapProvider& provider, const Caps& caps = {});

}  // namespace freiman
