#pragma once
// Exact rationals (GMP) and the float <-> rational bridge.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "spectral/matrix.hpp"

namespace spectral {

using Rational = mpq_class;
using QVec = std::vector<Rational>;

/// Parses "3", "-3/2", "0.25", "1e-3". Throws InputError.
Rational parse_rational(std::string_view s);
std::string to_string(const Rational& q);

/// Exact value of a finite double (dyadic rational).
Rational exact(double v);
QVec exact(std::span<const double> v);
Vec to_double(const QVec& v);

/// Simplest rational (smallest denominator, then smallest |numerator|) in
/// the closed interval [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

/// Simplest rational within tol of v, provided its denominator is at most
/// max_den. Otherwise nullopt.
std::optional<Rational> snap(double v, double tol, long max_den = 1000000);

/// Snap every entry (falling back to the exact dyadic value when no
/// simple rational is close enough). Entries grouped together by
/// partition_of(v, tol) are first replaced by their block mean, so equal
/// eigenvalues become exactly equal rationals.
QVec snap_grouped(std::span<const double> v, double tol, long max_den = 1000000);

Rational dot(const QVec& a, const QVec& b);
QVec add(const QVec& a, const QVec& b);
QVec sub(const QVec& a, const QVec& b);
QVec scale(const Rational& s, const QVec& a);
bool is_zero(const QVec& a);
/// Scale to a primitive integer vector (content 1). Zero stays zero.
QVec primitive(const QVec& a);

std::string to_string(const QVec& v);

}  // namespace spectral
