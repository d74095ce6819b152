#include <cmath>
#include <iomanip>
#include <sstream>

#include "freiman/error.hpp"
#include "freiman/select.hpp"

namespace freiman {

namespace {

unsigned small_exponent(const Integer& x, const char* what) {
  if (x < 1 || x > Integer(1) << 30) {
    throw CapExceeded(std::string(what) + " " + x.str() + " is out of range");
  }
  return x.convert_to<unsigned>();
}

std::string fixed(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

}  // namespace

Rational auto_epsilon(const Integer& n) {
  if (n < 3) throw InputError("auto epsilon needs n >= 3, since 1/ln n must be below 1");
  const double eps = 1.0 / std::log(to_double(n));
  const auto num = static_cast<long>(std::lround(eps * 64.0));
  if (num <= 0) throw InputError("auto epsilon rounds to zero for n = " + n.str());
  return Rational(Integer(num), Integer(64));
}

ExtremalSet extremal_set(const Integer& n, const Rational& epsilon, const Caps& caps) {
  if (n < 2) throw InputError("n must be at least 2");
  if (epsilon < 0 || epsilon >= 1) throw InputError("epsilon must lie in [0, 1)");
  ExtremalSet out;
  out.n = n;
  out.epsilon = epsilon;
  out.exponent = Rational(1) + epsilon;
  const Integer s_big = denominator_of(out.exponent);
  if (s_big > caps.root_denominator) {
    throw CapExceeded("exponent denominator " + s_big.str() + " exceeds cap " +
                      std::to_string(caps.root_denominator));
  }
  const unsigned r = small_exponent(numerator_of(out.exponent), "exponent numerator");
  const unsigned s = small_exponent(s_big, "exponent denominator");

  // count = floor(n^(s/r)): count^r <= n^s < (count+1)^r.
  const Integer ns = pow_of(n, s);
  out.count = integer_root(ns, r);
  if (!(pow_of(out.count, r) <= ns && ns < pow_of(out.count + 1, r))) {
    throw VerificationError("floor of n^(1/p) failed certification");
  }
  if (out.count > caps.search_budget) {
    throw CapExceeded("extremal set size " + out.count.str() + " exceeds cap " +
                      std::to_string(caps.search_budget));
  }

  std::vector<Integer> values;
  for (Integer a = 1; a <= out.count; ++a) {
    // k = floor(a^(r/s)): k^s <= a^r < (k+1)^s.
    const Integer ar = pow_of(a, r);
    const Integer k = integer_root(ar, s);
    if (!(pow_of(k, s) <= ar && ar < pow_of(k + 1, s))) {
      throw VerificationError("floor of " + a.str() + "^p failed certification");
    }
    values.push_back(k);
  }
  out.set = IntSet::from_values(std::move(values));
  return out;
}

double ExtremalRow::energy_ratio() const {
  return to_double(energy) / std::pow(static_cast<double>(size), 3);
}

double ExtremalRow::indexed_ratio() const {
  const double l = std::log(static_cast<double>(size));
  if (l == 0) return 0;
  return to_double(indexed) / (static_cast<double>(size) * static_cast<double>(size) * l * l);
}

double ExtremalRow::eps_ratio() const {
  const double n = to_double(family.n);
  return to_double(indexed) * to_double(family.epsilon) / (n * n * std::log(n));
}

std::vector<ExtremalRow> extremal_scan(const std::vector<Integer>& ns, const Caps& caps) {
  std::vector<ExtremalRow> rows;
  for (const auto& n : ns) {
    ExtremalRow row;
    row.family = extremal_set(n, auto_epsilon(n), caps);
    const IntSet& a = row.family.set;
    row.size = a.size();
    row.sumset_size = sumset(a, a).size();
    row.energy = additive_energy(a, caps);
    row.indexed = indexed_energy(a, caps);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_scan_csv(std::ostream& os, const std::vector<ExtremalRow>& rows) {
  os << "n,|A|,|A+A|,E,EI,E/|A|^3,EI/(|A|^2 ln^2|A|),p,eps,EI*eps/(n^2 ln n)\n";
  for (const auto& r : rows) {
    os << r.family.n << ',' << r.size << ',' << r.sumset_size << ',' << r.energy << ','
       << r.indexed << ',' << fixed(r.energy_ratio()) << ',' << fixed(r.indexed_ratio()) << ','
       << to_string(r.family.exponent) << ',' << to_string(r.family.epsilon) << ','
       << fixed(r.eps_ratio()) << '\n';
  }
}

}  // namespace freiman
