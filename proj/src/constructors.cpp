#include "hadlab/constructors.hpp"

#include <cmath>
#include <set>
#include <string>

#include "hadlab/group.hpp"

namespace hadlab {

namespace {

std::string orders_label(const std::vector<std::int64_t>& orders) {
  std::string s;
  for (auto n : orders) s += (s.empty() ? "Z" : "xZ") + std::to_string(n);
  return s;
}

bool is_integral(double x) { return std::isfinite(x) && x == std::floor(x) && std::abs(x) < 1e15; }

}  // namespace

PHMatrix fourier_cyclic(std::int64_t n) {
  if (n < 1) throw InvalidInput("fourier_cyclic: N must be >= 1");
  if (n > 4096) throw InvalidInput("fourier_cyclic: N too large");
  const auto un = static_cast<std::size_t>(n);
  std::vector<Phase> entries;
  entries.reserve(un * un);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j) entries.push_back(Phase::butson(i * j % n, n));
  return PHMatrix(un, un, std::move(entries), "F_" + std::to_string(n));
}

PHMatrix fourier_group(const std::vector<std::int64_t>& orders) {
  const FiniteAbelianGroup g(orders);
  if (g.size() > 4096) throw InvalidInput("fourier_group: group too large");
  std::vector<Phase> entries;
  entries.reserve(g.size() * g.size());
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = 0; b < g.size(); ++b) entries.push_back(Phase::butson(g.character_exponent(a, b), g.exponent()));
  return PHMatrix(g.size(), g.size(), std::move(entries), "F_{" + orders_label(orders) + "}");
}

PHMatrix truncated_fourier(const std::vector<std::vector<std::int64_t>>& rows, const std::vector<std::int64_t>& orders) {
  const FiniteAbelianGroup g(orders);
  if (rows.empty()) throw InvalidInput("truncated_fourier: empty row set");
  std::vector<std::size_t> idx;
  std::set<std::size_t> seen;
  for (const auto& r : rows) {
    if (r.size() != orders.size()) throw InvalidInput("truncated_fourier: row element has wrong dimension");
    for (std::size_t t = 0; t < r.size(); ++t)
      if (r[t] < 0 || r[t] >= orders[t]) throw InvalidInput("truncated_fourier: row element out of range");
    const std::size_t k = g.index(r);
    if (!seen.insert(k).second) throw InvalidInput("truncated_fourier: duplicate row index");
    idx.push_back(k);
  }
  std::vector<Phase> entries;
  entries.reserve(idx.size() * g.size());
  for (auto a : idx)
    for (std::size_t b = 0; b < g.size(); ++b) entries.push_back(Phase::butson(g.character_exponent(a, b), g.exponent()));
  return PHMatrix(idx.size(), g.size(), std::move(entries),
                  "F_{S," + orders_label(orders) + "} |S|=" + std::to_string(idx.size()));
}

PHMatrix truncated_fourier(const std::vector<std::int64_t>& rows, std::int64_t n) {
  std::vector<std::vector<std::int64_t>> elems;
  elems.reserve(rows.size());
  for (auto r : rows) elems.push_back({r});
  PHMatrix h = truncated_fourier(elems, std::vector<std::int64_t>{n});
  return h.with_label("F_{" + std::to_string(rows.size()) + "," + std::to_string(n) + "}");
}

PHMatrix dita_deformation(const DitaParams& params) {
  const PHMatrix& h = params.outer;
  const PHMatrix& k = params.inner;
  const PHMatrix& q = params.params;
  if (q.rows() != h.rows() || q.cols() != k.cols())
    throw InvalidInput("dita_deformation: parameter grid must be rows(H) x cols(K)");
  require_hadamard(h, "dita_deformation");
  require_hadamard(k, "dita_deformation");
  const std::size_t rows = h.rows() * k.rows(), cols = h.cols() * k.cols();
  std::vector<Phase> entries(rows * cols);
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t a = 0; a < k.rows(); ++a)
      for (std::size_t j = 0; j < h.cols(); ++j)
        for (std::size_t b = 0; b < k.cols(); ++b)
          entries[(i * k.rows() + a) * cols + j * k.cols() + b] = q(i, b) * h(i, j) * k(a, b);
  return PHMatrix(rows, cols, std::move(entries), "dita(" + h.label() + "," + k.label() + ")");
}

PHMatrix f22q(const Phase& q) {
  const Phase one = Phase::one();
  const Phase m = -one;
  std::vector<Phase> e = {one, one, one, one,  //
                          one, m,   one, m,    //
                          one, q,   m,   -q,   //
                          one, -q,  m,   q};
  return PHMatrix(4, 4, std::move(e), "F_{2,2}^q");
}

PHMatrix petrescu(const Phase& q) {
  const Phase o = Phase::one();
  const Phase w = Phase::butson(1, 3);
  const Phase qw = q.conj() * w;
  std::vector<Phase> e = {
      -q, q,  w,  o,  w,   o,   w,   //
      q,  -q, w,  o,  o,   w,   w,   //
      w,  w,  -w, o,  w,   w,   o,   //
      o,  o,  o,  -o, w,   w,   w,   //
      w,  o,  w,  w,  -qw, qw,  o,   //
      o,  w,  w,  w,  qw,  -qw, o,   //
      w,  w,  o,  w,  o,   o,   -o,
  };
  return PHMatrix(7, 7, std::move(e), "P_7^q");
}

PHMatrix master_matrix(const MasterSpec& spec) {
  if (spec.eigenphases.empty() || spec.exponents.empty()) throw InvalidInput("master_matrix: empty spec");
  const std::size_t m = spec.eigenphases.size(), n = spec.exponents.size();
  std::vector<Phase> entries;
  entries.reserve(m * n);
  for (const Phase& l : spec.eigenphases)
    for (double e : spec.exponents) entries.push_back(l.pow(e));
  return PHMatrix(m, n, std::move(entries), "master");
}

double master_angle(const MasterSpec& spec, std::size_t i) { return kTwoPi * spec.eigenphases.at(i).turns_value(); }

cdouble master_function(const MasterSpec& spec, double angle) {
  cdouble s = 0.0;
  for (double e : spec.exponents) s += std::polar(1.0, e * angle);
  return s;
}

MasterDita master_dita(std::int64_t n, std::int64_t m, std::int64_t k, const std::vector<double>& p,
                       const std::vector<double>& r) {
  if (n < 1 || m < 1 || k < 1) throw InvalidInput("master_dita: N, M, k must be >= 1");
  if (p.size() != static_cast<std::size_t>(m)) throw InvalidInput("master_dita: p needs M entries");
  if (r.size() != static_cast<std::size_t>(n)) throw InvalidInput("master_dita: r needs N entries");
  const std::int64_t big = m * n * k;

  std::vector<Phase> qe;
  qe.reserve(static_cast<std::size_t>(n * m));
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t b = 0; b < m; ++b) {
      const double pb = p[static_cast<std::size_t>(b)];
      if (is_integral(pb))
        qe.push_back(Phase::butson(i * (m * static_cast<std::int64_t>(pb) + b), big));
      else
        qe.push_back(Phase::turns(static_cast<double>(i) * (static_cast<double>(m) * pb + static_cast<double>(b)) /
                                  static_cast<double>(big)));
    }
  MasterDita out;
  out.dita = dita_deformation({fourier_cyclic(n), fourier_cyclic(m),
                               PHMatrix(static_cast<std::size_t>(n), static_cast<std::size_t>(m), std::move(qe))})
                 .with_label("F_" + std::to_string(n) + " (x)_Q F_" + std::to_string(m));
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t a = 0; a < m; ++a) out.spec.eigenphases.push_back(Phase::turns(Rational::make(i + a * n * k, big)));
  for (std::int64_t j = 0; j < n; ++j)
    for (std::int64_t b = 0; b < m; ++b)
      out.spec.exponents.push_back(static_cast<double>(m * k) * (static_cast<double>(n) * r[static_cast<std::size_t>(j)] +
                                                                 static_cast<double>(j)) +
                                   static_cast<double>(m) * p[static_cast<std::size_t>(b)] + static_cast<double>(b));
  out.master = master_matrix(out.spec).with_label("master");
  double dev = 0.0;
  for (std::size_t i = 0; i < out.dita.rows(); ++i)
    for (std::size_t j = 0; j < out.dita.cols(); ++j)
      dev = std::max(dev, std::abs(out.dita.value(i, j) - out.master.value(i, j)));
  out.max_deviation = dev;
  return out;
}

std::optional<MasterSpec> f22q_master_spec(const Phase& q) {
  const auto t = q.exact_turns();
  if (!t) return std::nullopt;
  const std::int64_t pn = t->frac().num, qd = t->frac().den;
  if (qd % 4 != 0) return std::nullopt;
  // Lifted angles (in turns): 0, (1+2a)/2, t+b, t+1/2+a+b; exponents 0, 1, x, 1+x with
  // x = Q(1+2β)/(2(P+bQ)) and x(1+2a) even.
  for (std::int64_t total = 0; total <= 96; ++total)
    for (std::int64_t a = 0; a <= total; ++a)
      for (std::int64_t b = 0; a + b <= total; ++b) {
        const std::int64_t beta = total - a - b;
        if (pn + b * qd == 0) continue;
        const Rational x = Rational::make(qd * (1 + 2 * beta), 2 * (pn + b * qd));
        const Rational xa = x * Rational{1 + 2 * a, 1};
        if (xa.den != 1 || xa.num % 2 != 0) continue;
        const Rational base = Rational::make(pn, qd);
        const std::vector<Rational> lifted = {Rational{0, 1}, Rational::make(1 + 2 * a, 2), base + Rational{b, 1},
                                              base + Rational::make(1 + 2 * (a + b), 2)};
        // Rescale so every lifted angle lies in [0, 1) turns.
        const std::int64_t s = static_cast<std::int64_t>(std::floor(lifted.back().to_double())) + 1;
        MasterSpec spec;
        for (const auto& l : lifted) spec.eigenphases.push_back(Phase::turns(l * Rational::make(1, s)));
        const double xd = x.to_double();
        for (double e : {0.0, 1.0, xd, 1.0 + xd}) spec.exponents.push_back(e * static_cast<double>(s));
        return spec;
      }
  return std::nullopt;
}

MasterSpec fourier_master_spec(std::int64_t n) {
  if (n < 1) throw InvalidInput("fourier_master_spec: N must be >= 1");
  MasterSpec spec;
  for (std::int64_t i = 0; i < n; ++i) {
    spec.eigenphases.push_back(Phase::butson(i, n));
    spec.exponents.push_back(static_cast<double>(i));
  }
  return spec;
}

}  // namespace hadlab
