#include "hadlab/phase.hpp"

#include <cmath>
#include <numeric>

namespace hadlab {

namespace {

std::int64_t checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
  return static_cast<std::int64_t>(v);
}

double wrap_turn(double t) {
  double f = t - std::floor(t);
  if (f >= 1.0) f = 0.0;
  return f;
}

}  // namespace

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidInput("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

Rational Rational::frac() const {
  std::int64_t r = num % den;
  if (r < 0) r += den;
  return Rational{r, den};
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

std::optional<Rational> Rational::parse(const std::string& text) {
  try {
    const auto slash = text.find('/');
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long long v = std::stoll(text, &used);
      if (used != text.size()) return std::nullopt;
      return Rational{v, 1};
    }
    const std::string a = text.substr(0, slash);
    const std::string b = text.substr(slash + 1);
    const long long p = std::stoll(a, &used);
    if (used != a.size()) return std::nullopt;
    const long long q = std::stoll(b, &used);
    if (used != b.size() || q == 0) return std::nullopt;
    return Rational::make(p, q);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

Rational operator+(const Rational& a, const Rational& b) {
  const std::int64_t g = std::gcd(a.den, b.den);
  const __int128 den = static_cast<__int128>(a.den / g) * b.den;
  const __int128 num = static_cast<__int128>(a.num) * (b.den / g) + static_cast<__int128>(b.num) * (a.den / g);
  return Rational::make(checked(num), checked(den));
}

Rational operator-(const Rational& a) { return Rational{-a.num, a.den}; }

Rational operator*(const Rational& a, const Rational& b) {
  const std::int64_t g1 = std::gcd(a.num, b.den);
  const std::int64_t g2 = std::gcd(b.num, a.den);
  // g1, g2 >= 1 since denominators are positive.
  const __int128 num = static_cast<__int128>(a.num / g1) * (b.num / g2);
  const __int128 den = static_cast<__int128>(a.den / g2) * (b.den / g1);
  return Rational::make(checked(num), checked(den));
}

Phase Phase::butson(std::int64_t exponent, std::int64_t order) {
  if (order <= 0) throw InvalidInput("butson order must be positive");
  std::int64_t e = exponent % order;
  if (e < 0) e += order;
  return Phase(Butson{e, order});
}

Phase Phase::turns(Rational t) { return Phase(ExactTurns{t.frac()}); }

Phase Phase::turns(double t) {
  if (!std::isfinite(t)) throw InvalidInput("non-finite turn");
  return Phase(FloatTurns{wrap_turn(t)});
}

Phase Phase::cartesian(cdouble z, double tol) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw InvalidInput("non-finite phase");
  if (std::abs(std::abs(z) - 1.0) > tol) throw InvalidInput("phase is not unit-modulus");
  return Phase(Cartesian{z});
}

Phase Phase::from_angle(double radians) { return turns(radians / kTwoPi); }

Phase::Kind Phase::kind() const {
  switch (rep_.index()) {
    case 0: return Kind::butson;
    case 1:
    case 2: return Kind::turns;
    default: return Kind::cartesian;
  }
}

bool Phase::is_exact() const { return rep_.index() <= 1; }

std::optional<Rational> Phase::exact_turns() const {
  if (const auto* b = std::get_if<Butson>(&rep_)) return Rational::make(b->exponent, b->order);
  if (const auto* r = std::get_if<ExactTurns>(&rep_)) return r->t;
  return std::nullopt;
}

std::optional<Phase::Butson> Phase::as_butson() const {
  if (const auto* b = std::get_if<Butson>(&rep_)) return *b;
  return std::nullopt;
}

double Phase::turns_value() const {
  if (auto r = exact_turns()) return r->to_double();
  if (const auto* f = std::get_if<FloatTurns>(&rep_)) return f->t;
  const cdouble z = std::get<Cartesian>(rep_).z;
  return wrap_turn(std::arg(z) / kTwoPi);
}

cdouble Phase::value() const {
  if (const auto* c = std::get_if<Cartesian>(&rep_)) return c->z;
  if (auto r = exact_turns()) {
    // Reduce to the first octant-free form: exact values for quarter turns.
    const Rational f = r->frac();
    if (f.num == 0) return {1.0, 0.0};
    if (f.den == 2) return {-1.0, 0.0};
    if (f.den == 4) return f.num == 1 ? cdouble{0.0, 1.0} : cdouble{0.0, -1.0};
    return std::polar(1.0, kTwoPi * f.to_double());
  }
  return std::polar(1.0, kTwoPi * std::get<FloatTurns>(rep_).t);
}

Phase Phase::conj() const {
  if (const auto* b = std::get_if<Butson>(&rep_)) return butson(-b->exponent, b->order);
  if (const auto* r = std::get_if<ExactTurns>(&rep_)) return turns(-r->t);
  if (const auto* f = std::get_if<FloatTurns>(&rep_)) return turns(-f->t);
  return Phase(Cartesian{std::conj(std::get<Cartesian>(rep_).z)});
}

Phase Phase::pow(std::int64_t n) const {
  if (const auto* b = std::get_if<Butson>(&rep_)) {
    const __int128 e = static_cast<__int128>(b->exponent) * n % b->order;
    return butson(static_cast<std::int64_t>(e), b->order);
  }
  if (const auto* r = std::get_if<ExactTurns>(&rep_)) return turns(r->t * Rational{n, 1});
  return pow(static_cast<double>(n));
}

Phase Phase::pow(double r) const {
  if (std::isfinite(r) && r == std::floor(r) && std::abs(r) < 9.0e15) {
    if (is_exact()) return pow(static_cast<std::int64_t>(r));
  }
  // Principal angle t in [0,1) turns, then scale.
  const double t = turns_value();
  return turns(t * r);
}

Phase operator*(const Phase& a, const Phase& b) {
  const auto* ab = std::get_if<Phase::Butson>(&a.rep_);
  const auto* bb = std::get_if<Phase::Butson>(&b.rep_);
  if (ab && bb) {
    const std::int64_t l = std::lcm(ab->order, bb->order);
    return Phase::butson(ab->exponent * (l / ab->order) + bb->exponent * (l / bb->order), l);
  }
  if (a.is_exact() && b.is_exact()) return Phase::turns(*a.exact_turns() + *b.exact_turns());
  if (a.kind() != Phase::Kind::cartesian && b.kind() != Phase::Kind::cartesian)
    return Phase::turns(a.turns_value() + b.turns_value());
  return Phase(Phase::Cartesian{a.value() * b.value()});
}

Phase Phase::operator-() const { return *this * Phase::butson(1, 2); }

}  // namespace hadlab
