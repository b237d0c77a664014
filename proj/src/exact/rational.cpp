#include "spectral/exact/rational.hpp"

#include <cctype>
#include <cmath>

#include "spectral/error.hpp"
#include "spectral/symmetry.hpp"

namespace spectral {

Rational parse_rational(std::string_view s) {
  std::string str(s);
  while (!str.empty() && std::isspace(static_cast<unsigned char>(str.back()))) str.pop_back();
  std::size_t start = 0;
  while (start < str.size() && std::isspace(static_cast<unsigned char>(str[start]))) ++start;
  str = str.substr(start);
  if (str.empty()) throw InputError("empty rational literal");
  try {
    if (str.find_first_of(".eE") == std::string::npos) {
      std::size_t slash = str.find('/');
      std::string num = str.substr(0, slash);
      std::string den = slash == std::string::npos ? "1" : str.substr(slash + 1);
      auto digits_ok = [](std::string t, bool allow_sign) {
        if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) t = t.substr(1);
        return !t.empty() && t.find_first_not_of("0123456789") == std::string::npos;
      };
      if (!digits_ok(num, true) || !digits_ok(den, false))
        throw InputError("malformed rational literal '" + str + "'");
      if (num[0] == '+') num = num.substr(1);
      mpz_class d(den, 10);
      if (d == 0) throw InputError("zero denominator in '" + str + "'");
      Rational q(mpz_class(num, 10), d);
      q.canonicalize();
      return q;
    }
    // decimal literal: mantissa digits and optional exponent, parsed exactly
    std::size_t epos = str.find_first_of("eE");
    std::string mant = str.substr(0, epos);
    long exp10 = 0;
    if (epos != std::string::npos) exp10 = std::stol(str.substr(epos + 1));
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
      neg = mant[0] == '-';
      mant = mant.substr(1);
    }
    std::size_t dot = mant.find('.');
    std::string digits = mant;
    if (dot != std::string::npos) {
      digits = mant.substr(0, dot) + mant.substr(dot + 1);
      exp10 -= static_cast<long>(mant.size() - dot - 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("malformed rational literal '" + str + "'");
    mpz_class num(digits, 10);
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    Rational q = exp10 >= 0 ? Rational(num * p10) : Rational(num, p10);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  } catch (const std::invalid_argument&) {
    throw InputError("malformed rational literal '" + str + "'");
  } catch (const std::out_of_range&) {
    throw InputError("malformed rational literal '" + str + "'");
  }
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational exact(double v) {
  if (!std::isfinite(v)) throw InputError("non-finite value cannot be made exact");
  return Rational(v);
}

QVec exact(std::span<const double> v) {
  QVec q;
  q.reserve(v.size());
  for (double x : v) q.push_back(exact(x));
  return q;
}

Vec to_double(const QVec& v) {
  Vec d;
  d.reserve(v.size());
  for (const auto& q : v) d.push_back(q.get_d());
  return d;
}

namespace {

// Simplest rational in [lo, hi] with 0 <= lo <= hi, via continued fractions.
Rational simplest_nonneg(const Rational& lo, const Rational& hi) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rational(fl) == lo) return Rational(fl);
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  // lo and hi share the integer part: recurse on reciprocals of the
  // fractional parts
  Rational lo_f = lo - fl, hi_f = hi - fl;
  Rational inner = simplest_nonneg(Rational(1) / hi_f, Rational(1) / lo_f);
  Rational r = Rational(fl) + Rational(1) / inner;
  r.canonicalize();
  return r;
}

}  // namespace

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw Error("simplest_between: empty interval");
  if (lo <= 0 && hi >= 0) return Rational(0);
  if (hi < 0) return Rational(-simplest_nonneg(-hi, -lo));
  return simplest_nonneg(lo, hi);
}

std::optional<Rational> snap(double v, double tol, long max_den) {
  Rational c = exact(v);
  Rational t = exact(tol);
  Rational s = simplest_between(c - t, c + t);
  if (s.get_den() > max_den) return std::nullopt;
  return s;
}

QVec snap_grouped(std::span<const double> v, double tol, long max_den) {
  Partition p = partition_of(v, tol);
  QVec out(v.size());
  for (const auto& block : p.blocks) {
    double mean = 0.0;
    for (std::size_t i : block) mean += v[i];
    mean /= static_cast<double>(block.size());
    auto s = snap(mean, tol, max_den);
    Rational q = s ? *s : exact(mean);
    for (std::size_t i : block) out[i] = q;
  }
  return out;
}

Rational dot(const QVec& a, const QVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

QVec add(const QVec& a, const QVec& b) {
  QVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

QVec sub(const QVec& a, const QVec& b) {
  QVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

QVec scale(const Rational& s, const QVec& a) {
  QVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
  return c;
}

bool is_zero(const QVec& a) {
  for (const auto& q : a)
    if (sgn(q) != 0) return false;
  return true;
}

QVec primitive(const QVec& a) {
  mpz_class l = 1;
  for (const auto& q : a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<mpz_class> ints(a.size());
  mpz_class g = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ints[i] = a[i].get_num() * (l / a[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  if (g == 0) return a;
  QVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = Rational(mpz_class(ints[i] / g));
  return out;
}

std::string to_string(const QVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].get_str();
  }
  return s + ")";
}

}  // namespace spectral
