#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

namespace freiman {

// Expression templates are disabled so the types compose cleanly with Eigen.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using VectorXz = Vec<Integer>;
using MatrixXz = Mat<Integer>;

Integer parse_integer(std::string_view text);
std::optional<Integer> try_parse_integer(std::string_view text);

/// Accepts "p", "p/q" and "-p/q"; the denominator must be nonzero.
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& x);
/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

Integer numerator_of(const Rational& q);
Integer denominator_of(const Rational& q);

Integer floor_of(const Rational& q);

inline Integer abs_of(const Integer& x) { return x < 0 ? Integer(-x) : x; }

Integer gcd_of(const Integer& a, const Integer& b);

/// Largest r >= 0 with r^n <= x, for x >= 0 and n >= 1.
Integer integer_root(const Integer& x, unsigned n);

Integer pow_of(const Integer& base, unsigned exponent);

Integer factorial(unsigned n);

/// True when every value has magnitude at most `limit`.
bool all_within(const std::vector<Integer>& values, const Integer& limit);

std::int64_t to_int64(const Integer& x);
bool fits_int64(const Integer& x);

double to_double(const Rational& q);
double to_double(const Integer& x);

}  // namespace freiman
