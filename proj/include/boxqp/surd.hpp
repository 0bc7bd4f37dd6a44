#pragma once

// Exact arithmetic in a multiquadratic field Q(sqrt m_1, ..., sqrt m_t).
//
// A minimal-rank representer of an indefinite rational quadratic form
// generally needs square roots (x^2 - 2y^2 has no rational rank-1 matrix), so
// exact mode works in the smallest such field. Generators are kept
// multiplicatively independent modulo rational squares, which makes the
// 2^t products of generators a Q-basis: an element is zero iff every
// coefficient is zero.

#include <boxqp/scalar.hpp>

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace boxqp {

class SurdBasis {
 public:
  std::size_t size() const { return squares_.size(); }
  const Rational& square(std::size_t k) const { return squares_[k]; }

  /// Returns (c, mask) with sqrt(m) = c * prod_{k in mask} sqrt(square(k)),
  /// adding a new generator when m is independent of the current ones.
  /// Requires m > 0. Must not be called after elements have been built.
  std::pair<Rational, unsigned> adjoin_sqrt(const Rational& m) {
    if (sgn(m) <= 0) throw std::invalid_argument("adjoin_sqrt: radicand must be positive");
    const std::size_t t = squares_.size();
    for (unsigned mask = 0; mask < (1u << t); ++mask) {
      Rational prod = m;
      for (std::size_t k = 0; k < t; ++k)
        if (mask & (1u << k)) prod *= squares_[k];
      Rational root;
      if (rational_sqrt(prod, root)) {
        // sqrt(m) = root / prod_{mask} sqrt(s_k) = root * prod sqrt(s_k) / prod s_k
        Rational c = root;
        for (std::size_t k = 0; k < t; ++k)
          if (mask & (1u << k)) c /= squares_[k];
        return {c, mask};
      }
    }
    if (t >= 16) throw std::length_error("adjoin_sqrt: too many independent radicals");
    squares_.push_back(m);
    return {Rational(1), 1u << t};
  }

  static bool rational_sqrt(const Rational& v, Rational& root) {
    mpz_class num = v.get_num(), den = v.get_den();
    if (num < 0 || !mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    root = Rational(rn, rd);
    root.canonicalize();
    return true;
  }

 private:
  std::vector<Rational> squares_;
};

class QuadraticSurd {
 public:
  QuadraticSurd() : coeff_(1, Rational(0)) {}
  QuadraticSurd(int v) : coeff_(1, Rational(v)) {}  // NOLINT(google-explicit-constructor)
  QuadraticSurd(const Rational& v) : coeff_(1, v) {}  // NOLINT(google-explicit-constructor)

  /// c * prod_{k in mask} sqrt(basis.square(k)).
  QuadraticSurd(std::shared_ptr<const SurdBasis> basis, const Rational& c, unsigned mask)
      : basis_(std::move(basis)), coeff_(std::size_t{1} << basis_->size(), Rational(0)) {
    coeff_.at(mask) = c;
  }

  const std::shared_ptr<const SurdBasis>& basis() const { return basis_; }
  std::size_t terms() const { return coeff_.size(); }
  const Rational& coefficient(unsigned mask) const { return coeff_[mask]; }

  bool is_zero() const {
    for (const auto& c : coeff_)
      if (sgn(c) != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t m = 1; m < coeff_.size(); ++m)
      if (sgn(coeff_[m]) != 0) return false;
    return true;
  }
  const Rational& rational_part() const { return coeff_[0]; }

  double to_double() const {
    double v = 0.0;
    for (std::size_t m = 0; m < coeff_.size(); ++m) {
      if (sgn(coeff_[m]) == 0) continue;
      double term = coeff_[m].get_d();
      for (std::size_t k = 0; basis_ && k < basis_->size(); ++k)
        if (m & (std::size_t{1} << k)) term *= std::sqrt(basis_->square(k).get_d());
      v += term;
    }
    return v;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t m = 0; m < coeff_.size(); ++m) {
      if (sgn(coeff_[m]) == 0) continue;
      if (!out.empty()) out += " + ";
      out += coeff_[m].get_str();
      for (std::size_t k = 0; basis_ && k < basis_->size(); ++k)
        if (m & (std::size_t{1} << k)) out += "*sqrt(" + basis_->square(k).get_str() + ")";
    }
    return out.empty() ? "0" : out;
  }

  QuadraticSurd operator-() const {
    QuadraticSurd r = *this;
    for (auto& c : r.coeff_) c = -c;
    return r;
  }

  QuadraticSurd& operator+=(const QuadraticSurd& o) {
    unify(o);
    for (std::size_t m = 0; m < o.coeff_.size(); ++m) coeff_[m] += o.coeff_[m];
    return *this;
  }
  QuadraticSurd& operator-=(const QuadraticSurd& o) {
    unify(o);
    for (std::size_t m = 0; m < o.coeff_.size(); ++m) coeff_[m] -= o.coeff_[m];
    return *this;
  }
  QuadraticSurd& operator*=(const QuadraticSurd& o) {
    unify(o);
    if (o.coeff_.size() == 1) {
      for (auto& c : coeff_) c *= o.coeff_[0];
      return *this;
    }
    std::vector<Rational> out(coeff_.size(), Rational(0));
    for (std::size_t a = 0; a < coeff_.size(); ++a) {
      if (sgn(coeff_[a]) == 0) continue;
      for (std::size_t b = 0; b < o.coeff_.size(); ++b) {
        if (sgn(o.coeff_[b]) == 0) continue;
        Rational term = coeff_[a] * o.coeff_[b];
        const std::size_t both = a & b;
        for (std::size_t k = 0; both >> k; ++k)
          if (both & (std::size_t{1} << k)) term *= basis_->square(k);
        out[a ^ b] += term;
      }
    }
    coeff_ = std::move(out);
    return *this;
  }
  QuadraticSurd& operator/=(const QuadraticSurd& o) { return *this *= o.inverse(); }

  /// Multiplicative inverse via successive conjugation; throws on zero.
  QuadraticSurd inverse() const {
    if (is_zero()) throw std::domain_error("QuadraticSurd: division by zero");
    QuadraticSurd num(1), cur = *this;
    const std::size_t t = basis_ ? basis_->size() : 0;
    for (std::size_t k = 0; k < t; ++k) {
      QuadraticSurd conj = cur.conjugate(k);
      num *= conj;
      cur *= conj;
    }
    // cur is now rational and nonzero
    QuadraticSurd r = num;
    for (auto& c : r.coeff_) c /= cur.coeff_[0];
    return r;
  }

  friend QuadraticSurd operator+(QuadraticSurd a, const QuadraticSurd& b) { return a += b; }
  friend QuadraticSurd operator-(QuadraticSurd a, const QuadraticSurd& b) { return a -= b; }
  friend QuadraticSurd operator*(QuadraticSurd a, const QuadraticSurd& b) { return a *= b; }
  friend QuadraticSurd operator/(QuadraticSurd a, const QuadraticSurd& b) { return a /= b; }

  friend bool operator==(const QuadraticSurd& a, const QuadraticSurd& b) { return (a - b).is_zero(); }

 private:
  QuadraticSurd conjugate(std::size_t k) const {
    QuadraticSurd r = *this;
    for (std::size_t m = 0; m < r.coeff_.size(); ++m)
      if (m & (std::size_t{1} << k)) r.coeff_[m] = -r.coeff_[m];
    return r;
  }

  void unify(const QuadraticSurd& o) {
    if (!o.basis_ || o.basis_ == basis_) return;
    if (basis_) throw std::logic_error("QuadraticSurd: mixing elements of different fields");
    basis_ = o.basis_;
    coeff_.resize(std::size_t{1} << basis_->size(), Rational(0));
  }

  std::shared_ptr<const SurdBasis> basis_;
  std::vector<Rational> coeff_;
};

template <>
struct ScalarTraits<QuadraticSurd> {
  static constexpr bool exact = true;
  static constexpr const char* name = "exact-surd";

  static bool is_zero(const QuadraticSurd& v, double = 1.0, double = 0.0) { return v.is_zero(); }
  static double magnitude(const QuadraticSurd& v) { return std::fabs(v.to_double()); }
  static double to_double(const QuadraticSurd& v) { return v.to_double(); }
  static std::string to_string(const QuadraticSurd& v) { return v.to_string(); }
};

}  // namespace boxqp
