#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "freiman/caps.hpp"
#include "freiman/condense.hpp"
#include "freiman/freiman_map.hpp"
#include "freiman/intset.hpp"
#include "freiman/numeric.hpp"

namespace freiman {

/// Greedy interval selection over I_j = [(j-1)d, jd).
struct EquidistResult {
  IntSet subset;                    // A'
  std::int64_t width = 0;           // d = floor(2 / delta)
  std::vector<std::int64_t> good_indices;  // J
  Integer n;                        // as given
  Integer n_padded;                 // n rounded up to a multiple of d
  Rational delta;                   // |A| / n
  Rational delta_padded;            // |A| / n_padded

  /// delta_padded^2 n_padded / 4, asserted against |J|.
  Rational good_bound() const;
  /// delta_padded |A| / 4, asserted against |A'|.
  Rational subset_bound(std::size_t source_size) const;
  /// The same two bounds with the unpadded delta, reported only.
  Rational good_bound_raw() const;
  Rational subset_bound_raw(std::size_t source_size) const;
};

/// Requires A inside [1, n]. If delta is given it must equal |A| / n.
/// Throws VerificationError if a postcondition fails.
EquidistResult equidistribute(const IntSet& a, const Integer& n,
                              const std::optional<Rational>& delta = std::nullopt);

struct EICertificate {
  std::size_t m = 0;         // |A'|
  std::int64_t d = 0;
  std::size_t j_size = 0;    // |J|
  Integer ei_value;          // EI(A')
  Rational floor_bound;      // |J|^4 / (8 m d)
  Rational printed_bound;    // |J|^4 / (2 m d), compared but not asserted

  bool holds() const { return Rational(ei_value) >= floor_bound; }
  bool printed_holds() const { return Rational(ei_value) >= printed_bound; }
};

EICertificate certify(const EquidistResult& r, const Caps& caps = {});

/// equidistribute followed by certify; throws VerificationError if the
/// asserted bound fails.
EICertificate ei_certificate(const IntSet& a, const Integer& n, const Caps& caps = {},
                             EquidistResult* selection = nullptr);

struct HighEIResult {
  IntSet subset;               // A* inside A
  CondenseResult condense;
  IntSet third;                // chosen third of the shifted image, moved to start at 1
  int third_index = 0;         // 1, 2 or 3
  Integer third_offset;        // shifted image value = third value + offset
  Integer third_length;
  EquidistResult selection;    // on `third`
  EICertificate certificate;
  Integer ei_value;            // EI(A*), equal to EI of its image

  /// EI(A*) / |A*|^3.
  Rational ratio() const;
};

HighEIResult high_ei_subset(const IntSet& a, const GapProvider& provider, const Caps& caps = {});

struct ExtremalSet {
  IntSet set;
  Integer n;
  Rational epsilon;
  Rational exponent;           // p = 1 + epsilon = r / s
  Integer count;               // floor(n^(1/p))
};

/// 1/ln n rounded to the nearest multiple of 1/64; needs n >= 3.
Rational auto_epsilon(const Integer& n);

/// {floor(a^p) : 1 <= a <= floor(n^(1/p))} with p = 1 + epsilon, every floor
/// certified by exact integer powers. epsilon = 0 gives [1, n].
ExtremalSet extremal_set(const Integer& n, const Rational& epsilon, const Caps& caps = {});

struct ExtremalRow {
  ExtremalSet family;
  std::size_t size = 0;
  std::size_t sumset_size = 0;
  Integer energy;
  Integer indexed;

  double energy_ratio() const;      // E / |A|^3
  double indexed_ratio() const;     // EI / (|A|^2 ln^2 |A|)
  double eps_ratio() const;       // EI eps / (n^2 ln n)
};

std::vector<ExtremalRow> extremal_scan(const std::vector<Integer>& ns, const Caps& caps = {});

void write_scan_csv(std::ostream& os, const std::vector<ExtremalRow>& rows);

/// One factor of a diagonal product. Without a provider the set is used as
/// its own image.
struct DiagonalInput {
  IntSet set;
  std::optional<GapProvider> provider;
};

struct DiagonalSet {
  std::vector<std::vector<Integer>> rows;
  std::vector<Integer> shifts;           // t_i, t_1 = 0
  std::vector<MapTable> maps;            // A_i -> B_i, B_i normalized to start at 0
  std::vector<std::optional<CondenseResult>> condensed;
  IntSet core;                           // C' = intersection of the B_i + t_i
  Integer interval_length;               // largest span of the B_i, plus one
  std::size_t sumset_size = 0;           // |C + C|
  std::size_t core_sumset_size = 0;      // |C' + C'|
  double density_constant = 0;           // |C| / (prod |A_i|)^(1/k)
};

/// Throws VerificationError if the diagonal property or the sumset checks
/// fail, and Error if the intersection becomes empty.
DiagonalSet diagonal_product(const std::vector<DiagonalInput>& inputs, const Caps& caps = {});

/// Every pair of distinct rows compares the same nonzero way in every coordinate.
bool is_diagonal(const std::vector<std::vector<Integer>>& rows);

}  // namespace freiman
