#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace hadlab {

using cdouble = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Raised for malformed arguments: bad sizes, non-unit phases, unverified
/// matrices handed to operations that need a partial Hadamard input.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Reduced fraction num/den with den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  /// Representative of this value modulo 1, in [0, 1).
  Rational frac() const;
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  /// Parses "p/q" or an integer.
  static std::optional<Rational> parse(const std::string& text);

  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational operator+(const Rational& a, const Rational& b);
Rational operator-(const Rational& a);
Rational operator*(const Rational& a, const Rational& b);

/// A point on the unit circle.
///
/// Three representations are kept:
///   butson    - exponent e mod l, meaning exp(2πi e/l);
///   turns     - t in [0,1) meaning exp(2πi t), either an exact fraction or a double;
///   cartesian - (re, im) validated to unit modulus.
/// Products of exact entries stay exact (butson*butson stays butson, any mix of
/// exact kinds becomes rational turns); anything touching a float degrades to
/// float turns or cartesian.
class Phase {
 public:
  enum class Kind { butson, turns, cartesian };

  struct Butson {
    std::int64_t exponent;
    std::int64_t order;
  };
  struct ExactTurns {
    Rational t;
  };
  struct FloatTurns {
    double t;
  };
  struct Cartesian {
    cdouble z;
  };

  Phase() : rep_(Butson{0, 1}) {}

  static Phase one() { return Phase(); }
  static Phase butson(std::int64_t exponent, std::int64_t order);
  static Phase turns(Rational t);
  static Phase turns(std::int64_t num, std::int64_t den) { return turns(Rational::make(num, den)); }
  static Phase turns(double t);
  /// Throws InvalidInput when ||z| - 1| > tol.
  static Phase cartesian(cdouble z, double tol = 1e-9);
  /// exp(i·angle), stored as float turns.
  static Phase from_angle(double radians);

  Kind kind() const;
  bool is_exact() const;

  cdouble value() const;
  /// Turn in [0,1); exact fraction available via exact_turns().
  double turns_value() const;
  std::optional<Rational> exact_turns() const;

  /// Butson data when kind() == butson.
  std::optional<Butson> as_butson() const;

  Phase conj() const;
  /// Real power under the convention (e^{it})^r = e^{itr}, t in [0, 2π).
  Phase pow(double r) const;
  Phase pow(std::int64_t n) const;

  friend Phase operator*(const Phase& a, const Phase& b);
  Phase operator-() const;

  /// |value() - other.value()|.
  double distance(const Phase& other) const { return std::abs(value() - other.value()); }

 private:
  using Rep = std::variant<Butson, ExactTurns, FloatTurns, Cartesian>;
  explicit Phase(Rep rep) : rep_(rep) {}
  Rep rep_;
};

}  // namespace hadlab
