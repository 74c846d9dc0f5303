#include "hadlab/defect.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "hadlab/cyclotomic.hpp"
#include "hadlab/group.hpp"

namespace hadlab {

namespace {

void fill_gap(DefectReport& r, const RankResult& rank, const DefectOptions& options) {
  r.rank = rank.rank;
  r.smallest_kept = rank.rank ? rank.smallest_kept : 0.0;
  r.largest_dropped = rank.largest_dropped;
  r.gap_ratio = rank.gap_ratio;
  r.tolerance = options.tol;
  r.ambiguous = rank.gap_ratio < options.confidence;
}

void check_shape(const PHMatrix& h, const char* op) {
  if (h.rows() > h.cols()) throw InvalidInput(std::string(op) + ": needs M <= N");
}

}  // namespace

std::string to_string(DefectMethod method) {
  switch (method) {
    case DefectMethod::direct: return "direct";
    case DefectMethod::extension: return "extension";
    case DefectMethod::split: return "split";
    case DefectMethod::master: return "master";
    case DefectMethod::closed_form: return "closed-form";
    case DefectMethod::exact: return "exact";
  }
  return "direct";
}

std::optional<DefectMethod> parse_defect_method(const std::string& name) {
  for (auto m : {DefectMethod::direct, DefectMethod::extension, DefectMethod::split, DefectMethod::master,
                 DefectMethod::closed_form, DefectMethod::exact})
    if (to_string(m) == name) return m;
  return std::nullopt;
}

RealLinearSystem tangent_system(const PHMatrix& h) {
  require_hadamard(h, "tangent_system");
  const std::size_t m = h.rows(), n = h.cols();
  RealLinearSystem sys;
  sys.layout.reserve(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < n; ++k) sys.layout.push_back({"A", i, k, Unknown::Part::real});
  const std::size_t pairs = m * (m - 1) / 2;
  sys.coefficients = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(2 * pairs), static_cast<Eigen::Index>(m * n));
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const cdouble c = h.value(i, k) * std::conj(h.value(j, k));
        const auto ci = static_cast<Eigen::Index>(i * n + k), cj = static_cast<Eigen::Index>(j * n + k);
        sys.coefficients(row, ci) += c.real();
        sys.coefficients(row, cj) -= c.real();
        sys.coefficients(row + 1, ci) += c.imag();
        sys.coefficients(row + 1, cj) -= c.imag();
      }
      row += 2;
    }
  return sys;
}

DefectReport defect(const PHMatrix& h, const DefectOptions& options) {
  DefectReport r;
  r.method = DefectMethod::direct;
  r.rows = h.rows();
  r.cols = h.cols();
  r.tolerance = options.tol;
  r.gap_ratio = std::numeric_limits<double>::infinity();
  if (h.rows() == 0) return r;
  check_shape(h, "defect");
  r.unknowns = h.rows() * h.cols();
  if (h.rows() == 1) {
    require_hadamard(h, "defect");
    r.defect = h.cols();
    return r;
  }
  const RealLinearSystem sys = tangent_system(h);
  fill_gap(r, numerical_rank(sys, options.tol, 1.0), options);
  r.defect = r.unknowns - r.rank;
  return r;
}

Eigen::MatrixXcd unitary_completion(const PHMatrix& h, std::optional<std::uint64_t> seed) {
  require_hadamard(h, "unitary_completion");
  check_shape(h, "unitary_completion");
  const auto m = static_cast<Eigen::Index>(h.rows()), n = static_cast<Eigen::Index>(h.cols());
  const Eigen::MatrixXcd hm = h.to_complex();
  Eigen::MatrixXcd k(n, n);
  k.topRows(m) = hm;
  if (m == n) return k;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(hm.adjoint());
  const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd comp = q.rightCols(n - m);
  if (seed) {
    std::mt19937_64 rng(*seed);
    std::normal_distribution<double> g;
    Eigen::MatrixXcd z(n - m, n - m);
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = cdouble(g(rng), g(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> mix(z);
    comp = comp * (mix.householderQ() * Eigen::MatrixXcd::Identity(n - m, n - m));
  }
  k.bottomRows(n - m) = std::sqrt(static_cast<double>(n)) * comp.adjoint();
  return k;
}

DefectReport defect_via_extension(const PHMatrix& h, const DefectOptions& options,
                                  std::optional<std::uint64_t> completion_seed) {
  const Eigen::MatrixXcd k = unitary_completion(h, completion_seed);
  const std::size_t m = h.rows(), n = h.cols();
  const Eigen::MatrixXcd hc = h.to_complex();

  // Unknowns: X Hermitian (diagonal real, upper off-diagonal re/im), then Y re/im.
  struct Slot {
    std::size_t r, c;
    bool imag;
  };
  std::vector<Slot> slots;
  RealLinearSystem sys;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      slots.push_back({a, b, false});
      sys.layout.push_back({"X", a, b, Unknown::Part::real});
      if (a != b) {
        slots.push_back({a, b, true});
        sys.layout.push_back({"X", a, b, Unknown::Part::imag});
      }
    }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = m; b < n; ++b)
      for (bool im : {false, true}) {
        slots.push_back({a, b, im});
        sys.layout.push_back({"Y", a, b - m, im ? Unknown::Part::imag : Unknown::Part::real});
      }

  const auto nm = static_cast<Eigen::Index>(m), nn = static_cast<Eigen::Index>(n);
  sys.coefficients = Eigen::MatrixXd::Zero(nm * nn, static_cast<Eigen::Index>(slots.size()));
  for (std::size_t u = 0; u < slots.size(); ++u) {
    const Slot& s = slots[u];
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(nm, nn);
    const cdouble c = s.imag ? cdouble(0, 1) : cdouble(1, 0);
    e(static_cast<Eigen::Index>(s.r), static_cast<Eigen::Index>(s.c)) = c;
    if (s.c < m && s.r != s.c) e(static_cast<Eigen::Index>(s.c), static_cast<Eigen::Index>(s.r)) = std::conj(c);
    const Eigen::MatrixXcd ek = e * k;
    for (Eigen::Index i = 0; i < nm; ++i)
      for (Eigen::Index j = 0; j < nn; ++j)
        sys.coefficients(i * nn + j, static_cast<Eigen::Index>(u)) = (ek(i, j) * std::conj(hc(i, j))).imag();
  }

  DefectReport r;
  r.method = DefectMethod::extension;
  r.rows = m;
  r.cols = n;
  r.unknowns = slots.size();
  fill_gap(r, numerical_rank(sys, options.tol, 1.0), options);
  r.defect = r.unknowns - r.rank;
  return r;
}

DefectReport defect_split_truncated_fourier(const std::vector<std::vector<std::int64_t>>& rows,
                                            const std::vector<std::int64_t>& orders, const DefectOptions& options) {
  const PHMatrix h = truncated_fourier(rows, orders);  // validates S
  const FiniteAbelianGroup g(orders);
  std::vector<std::size_t> s;
  for (const auto& r : rows) s.push_back(g.index(r));
  const std::size_t m = s.size(), n = g.size();

  std::set<std::size_t> diff;
  for (auto a : s)
    for (auto b : s) diff.insert(g.sub(a, b));
  const std::vector<std::size_t> u(diff.begin(), diff.end());
  const std::size_t lu = u.size();
  std::map<std::size_t, std::size_t> row_of;
  for (std::size_t a = 0; a < m; ++a) row_of[s[a]] = a;

  // Φ: A ↦ P = A F_U^t, P stored as [Re P; Im P] row-major over (row of S, g ∈ U).
  const auto pdim = static_cast<Eigen::Index>(2 * m * lu);
  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(pdim, static_cast<Eigen::Index>(m * n));
  const double two_pi_over_l = kTwoPi / static_cast<double>(g.exponent());
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t t = 0; t < lu; ++t)
      for (std::size_t k = 0; k < n; ++k) {
        const cdouble chi = std::polar(1.0, two_pi_over_l * static_cast<double>(g.character_exponent(u[t], k)));
        const auto col = static_cast<Eigen::Index>(a * n + k);
        const auto re = static_cast<Eigen::Index>(a * lu + t);
        phi(re, col) = chi.real();
        phi(re + static_cast<Eigen::Index>(m * lu), col) = chi.imag();
      }

  std::vector<Eigen::VectorXd> constraints;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t t = 0; t < lu; ++t) {
      auto it = row_of.find(g.add(s[a], u[t]));
      if (it == row_of.end() || it->second == a) continue;
      for (std::size_t part = 0; part < 2; ++part) {
        Eigen::VectorXd row = Eigen::VectorXd::Zero(pdim);
        row(static_cast<Eigen::Index>(part * m * lu + a * lu + t)) += 1.0;
        row(static_cast<Eigen::Index>(part * m * lu + it->second * lu + t)) -= 1.0;
        constraints.push_back(std::move(row));
      }
    }

  const RankResult phi_rank = numerical_rank(phi, options.tol, 1.0);
  const Eigen::MatrixXd basis = column_space_basis(phi, options.tol, 1.0);
  Eigen::MatrixXd c(static_cast<Eigen::Index>(constraints.size()), pdim);
  for (std::size_t i = 0; i < constraints.size(); ++i) c.row(static_cast<Eigen::Index>(i)) = constraints[i].transpose();
  const RankResult cb_rank = numerical_rank(c * basis, options.tol, 1.0);

  DefectReport r;
  r.method = DefectMethod::split;
  r.rows = h.rows();
  r.cols = h.cols();
  r.unknowns = m * n;
  SplitBreakdown sb;
  sb.dim_kernel = m * n - phi_rank.rank;
  sb.dim_image = phi_rank.rank - cb_rank.rank;
  r.split = sb;
  r.defect = sb.dim_kernel + sb.dim_image;
  r.rank = r.unknowns - r.defect;
  const RankResult& worst = phi_rank.gap_ratio <= cb_rank.gap_ratio ? phi_rank : cb_rank;
  r.smallest_kept = worst.rank ? worst.smallest_kept : 0.0;
  r.largest_dropped = worst.largest_dropped;
  r.gap_ratio = worst.gap_ratio;
  r.tolerance = options.tol;
  r.ambiguous = r.gap_ratio < options.confidence;
  return r;
}

DefectReport defect_split_truncated_fourier(const std::vector<std::int64_t>& rows, std::int64_t n,
                                            const DefectOptions& options) {
  std::vector<std::vector<std::int64_t>> elems;
  for (auto x : rows) elems.push_back({x});
  return defect_split_truncated_fourier(elems, {n}, options);
}

DefectReport defect_master(const MasterSpec& spec, const DefectOptions& options) {
  const std::size_t n = spec.exponents.size();
  if (spec.eigenphases.size() != n) throw InvalidInput("defect_master: needs a square master spec");
  const PHMatrix h = master_matrix(spec);
  if (!check_partial_hadamard(h, kDefaultTol).is_hadamard)
    throw InvalidInput("defect_master: master matrix is not Hadamard");

  std::vector<double> ang(n);
  for (std::size_t i = 0; i < n; ++i) ang[i] = master_angle(spec, i);
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd lmat(nn, nn);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      lmat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = master_function(spec, -ang[i] - ang[j]);
  // R_{s,(i,j)}, column i·N + j.
  Eigen::MatrixXcd rmat(nn, nn * nn);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        rmat(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(i * n + j)) =
            master_function(spec, ang[i] - ang[s] - ang[j]);

  RealLinearSystem sys;
  const std::size_t eq1 = n * n, eq2 = n * (n - 1);
  const auto total_rows = static_cast<Eigen::Index>(2 * (eq1 + eq2));
  sys.coefficients = Eigen::MatrixXd::Zero(total_rows, static_cast<Eigen::Index>(2 * n * n));
  const double inv_n = 1.0 / static_cast<double>(n);
  Eigen::Index col = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (bool im : {false, true}) {
        sys.layout.push_back({"B", a, b, im ? Unknown::Part::imag : Unknown::Part::real});
        const cdouble c = im ? cdouble(0, 1) : cdouble(1, 0);
        // conj(B) - (1/N) B L: only row a is touched.
        for (std::size_t j = 0; j < n; ++j) {
          cdouble v = -inv_n * c * lmat(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(j));
          if (j == b) v += std::conj(c);
          const auto e = static_cast<Eigen::Index>(a * n + j);
          sys.coefficients(2 * e, col) = v.real();
          sys.coefficients(2 * e + 1, col) = v.imag();
        }
        // (BR)_{i,(i,j)} - (BR)_{j,(i,j)}, i != j.
        Eigen::Index e = static_cast<Eigen::Index>(eq1);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double sign = (i == a ? 1.0 : 0.0) - (j == a ? 1.0 : 0.0);
            if (sign != 0.0) {
              const cdouble v = sign * c * rmat(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(i * n + j));
              sys.coefficients(2 * e, col) = v.real();
              sys.coefficients(2 * e + 1, col) = v.imag();
            }
            ++e;
          }
        ++col;
      }

  DefectReport r;
  r.method = DefectMethod::master;
  r.rows = n;
  r.cols = n;
  r.unknowns = 2 * n * n;
  fill_gap(r, numerical_rank(sys, options.tol, 1.0), options);
  r.defect = r.unknowns - r.rank;
  return r;
}

std::int64_t fourier_defect_formula(const std::vector<std::int64_t>& orders) {
  const FiniteAbelianGroup g(orders);
  std::int64_t total = 0;
  for (std::size_t a = 0; a < g.size(); ++a) total += static_cast<std::int64_t>(g.size()) / g.element_order(a);
  return total;
}

std::int64_t fourier_defect_product_form(std::int64_t n) {
  if (n < 1) throw InvalidInput("fourier_defect_product_form: N must be >= 1");
  std::int64_t out = 1;
  for (auto p : prime_divisors(n)) {
    std::int64_t a = 0, pa = 1;
    while (n % p == 0) {
      n /= p;
      ++a;
      pa *= p;
    }
    // p^a (1 + a - a/p)
    out *= pa * (1 + a) - a * (pa / p);
  }
  return out;
}

std::int64_t count_one_entries(const std::vector<std::int64_t>& orders) {
  const FiniteAbelianGroup g(orders);
  std::int64_t count = 0;
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = 0; b < g.size(); ++b)
      if (g.character_exponent(a, b) == 0) ++count;
  return count;
}

std::int64_t real_defect_formula(std::int64_t m, std::int64_t n) {
  if (m < 0 || m > n) throw InvalidInput("real_defect_formula: needs 0 <= M <= N");
  return m * (m + 1) / 2 + m * (n - m);
}

std::optional<std::size_t> exact_defect(const PHMatrix& h, std::int64_t max_order, std::size_t max_size) {
  if (h.rows() > max_size || h.cols() > max_size || h.empty()) return std::nullopt;
  const auto form = detect_butson(h, max_order);
  if (!form) return std::nullopt;
  require_hadamard(h, "exact_defect");
  const std::size_t m = h.rows(), n = h.cols();
  if (m == 1) return n;
  std::vector<std::vector<CycloInt>> rows;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (int sign : {1, -1}) {
        std::vector<CycloInt> row(m * n);
        for (std::size_t k = 0; k < n; ++k) {
          const std::int64_t e = sign * (form->exponent(i, k) - form->exponent(j, k));
          row[i * n + k] = {{e, 1}};
          row[j * n + k] = {{e, -1}};
        }
        rows.push_back(std::move(row));
      }
  return m * n - exact_rank(rows, form->order);
}

std::string to_string(IsolationStatus status) {
  return status == IsolationStatus::certified_isolated ? "certified_isolated" : "undetermined";
}

IsolationCertificate isolation_certificate(const PHMatrix& h, const DefectOptions& options) {
  require_hadamard(h, "isolation_certificate");
  IsolationCertificate cert;
  cert.report = defect(dephase(h).matrix, options);
  cert.minimal_defect = h.rows() + h.cols() - 1;
  if (cert.report.defect == cert.minimal_defect && !cert.report.ambiguous)
    cert.status = IsolationStatus::certified_isolated;
  return cert;
}

std::vector<TruncationRow> truncation_probe(std::int64_t p, const std::vector<std::size_t>& sizes,
                                            const DefectOptions& options) {
  if (!is_prime(p)) throw InvalidInput("truncation_probe: p must be prime");
  std::vector<TruncationRow> out;
  for (auto m : sizes) {
    if (m < 1 || m > static_cast<std::size_t>(p)) throw InvalidInput("truncation_probe: sizes must lie in 1..p");
    std::vector<std::int64_t> s(m);
    for (std::size_t i = 0; i < m; ++i) s[i] = static_cast<std::int64_t>(i);
    const PHMatrix h = truncated_fourier(s, p);
    const DefectReport rep = defect(h, options);
    TruncationRow row;
    row.rows = m;
    row.defect = rep.defect;
    row.minimal_defect = m + static_cast<std::size_t>(p) - 1;
    row.minimal = rep.defect == row.minimal_defect;
    row.gap_ratio = rep.gap_ratio;
    row.ambiguous = rep.ambiguous;
    row.exact = exact_defect(h);
    out.push_back(row);
  }
  return out;
}

}  // namespace hadlab
