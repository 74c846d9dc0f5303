#include "hadlab/matrix.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace hadlab {

PHMatrix::PHMatrix(std::size_t rows, std::size_t cols, std::vector<Phase> entries, std::string label)
    : rows_(rows), cols_(cols), entries_(std::move(entries)), label_(std::move(label)) {
  if (entries_.size() != rows_ * cols_) throw InvalidInput("entry count does not match rows x cols");
}

PHMatrix PHMatrix::from_complex(const Eigen::MatrixXcd& values, std::string label, double tol) {
  std::vector<Phase> entries;
  entries.reserve(static_cast<std::size_t>(values.size()));
  for (Eigen::Index i = 0; i < values.rows(); ++i)
    for (Eigen::Index j = 0; j < values.cols(); ++j) entries.push_back(Phase::cartesian(values(i, j), tol));
  return PHMatrix(static_cast<std::size_t>(values.rows()), static_cast<std::size_t>(values.cols()),
                  std::move(entries), std::move(label));
}

const Phase& PHMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw InvalidInput("matrix index out of range");
  return (*this)(i, j);
}

Eigen::MatrixXcd PHMatrix::to_complex() const {
  Eigen::MatrixXcd out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = value(i, j);
  return out;
}

PHMatrix PHMatrix::with_label(std::string label) const {
  PHMatrix copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

PHMatrix PHMatrix::with_entry(std::size_t i, std::size_t j, Phase p) const {
  if (i >= rows_ || j >= cols_) throw InvalidInput("matrix index out of range");
  PHMatrix copy = *this;
  copy.entries_[i * cols_ + j] = p;
  copy.verified_ = false;
  return copy;
}

PHMatrix PHMatrix::select_rows(std::span<const std::size_t> rows) const {
  std::vector<Phase> entries;
  entries.reserve(rows.size() * cols_);
  for (std::size_t r : rows) {
    if (r >= rows_) throw InvalidInput("row index out of range");
    auto src = row(r);
    entries.insert(entries.end(), src.begin(), src.end());
  }
  return PHMatrix(rows.size(), cols_, std::move(entries), label_);
}

VerificationReport check_partial_hadamard(const PHMatrix& h, double tol) {
  if (h.empty()) throw InvalidInput("verify: empty matrix");
  if (!(tol > 0)) throw InvalidInput("verify: tolerance must be positive");
  VerificationReport report;
  report.tolerance = tol;
  const Eigen::MatrixXcd z = h.to_complex();
  for (Eigen::Index i = 0; i < z.size(); ++i)
    report.max_modulus_deviation = std::max(report.max_modulus_deviation, std::abs(std::abs(z(i)) - 1.0));
  const Eigen::MatrixXcd gram = z * z.adjoint();
  for (Eigen::Index i = 0; i < gram.rows(); ++i)
    for (Eigen::Index j = i + 1; j < gram.cols(); ++j)
      report.max_inner_product = std::max(report.max_inner_product, std::abs(gram(i, j)));
  const double n = static_cast<double>(h.cols());
  report.is_hadamard = report.max_inner_product <= tol * n && report.max_modulus_deviation <= tol;
  return report;
}

VerificationReport verify_partial_hadamard(PHMatrix& h, double tol) {
  VerificationReport report = check_partial_hadamard(h, tol);
  h.verified_ = report.is_hadamard;
  return report;
}

void require_hadamard(const PHMatrix& h, const char* operation, double tol) {
  if (h.verified()) return;
  if (h.empty() || !check_partial_hadamard(h, tol).is_hadamard)
    throw InvalidInput(std::string(operation) + ": input is not a verified partial Hadamard matrix");
}

Dephased dephase(const PHMatrix& h) {
  Dephased out;
  if (h.empty()) {
    out.matrix = h;
    return out;
  }
  const std::size_t m = h.rows(), n = h.cols();
  const Phase corner = h(0, 0);
  out.row_phases.reserve(m);
  out.col_phases.reserve(n);
  for (std::size_t i = 0; i < m; ++i) out.row_phases.push_back(h(i, 0));
  for (std::size_t j = 0; j < n; ++j) out.col_phases.push_back(h(0, j) * corner.conj());
  std::vector<Phase> entries;
  entries.reserve(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      entries.push_back(h(i, j) * h(i, 0).conj() * h(0, j).conj() * corner);
  // First row and column are exactly one for exact inputs; pin them for float ones.
  for (std::size_t i = 0; i < m; ++i) entries[i * n] = Phase::one();
  for (std::size_t j = 0; j < n; ++j) entries[j] = Phase::one();
  out.matrix = PHMatrix(m, n, std::move(entries), h.label().empty() ? std::string{} : "dephased " + h.label());
  return out;
}

Eigen::VectorXcd row_quotient(const PHMatrix& h, std::size_t i, std::size_t j) {
  if (i >= h.rows() || j >= h.rows()) throw InvalidInput("row_quotient: row index out of range");
  Eigen::VectorXcd v(h.cols());
  for (std::size_t k = 0; k < h.cols(); ++k) v(k) = h.value(i, k) * std::conj(h.value(j, k));
  return v;
}

PHMatrix ButsonForm::to_matrix(std::string label) const {
  std::vector<Phase> entries;
  entries.reserve(exponents.size());
  for (auto e : exponents) entries.push_back(Phase::butson(e, order));
  return PHMatrix(rows, cols, std::move(entries), std::move(label));
}

std::optional<ButsonForm> detect_butson(const PHMatrix& h, std::int64_t l_max, double tol) {
  if (l_max < 1) throw InvalidInput("detect_butson: l_max must be >= 1");
  const auto entries = h.entries();
  // Exact entries pin the order to a multiple of their denominators.
  std::int64_t base = 1;
  bool all_exact = true;
  for (const Phase& p : entries) {
    if (auto r = p.exact_turns()) {
      base = std::lcm(base, r->den);
      if (base > l_max) return std::nullopt;
    } else {
      all_exact = false;
    }
  }
  for (std::int64_t l = base; l <= l_max; l += base) {
    ButsonForm form{l, h.rows(), h.cols(), {}};
    form.exponents.reserve(entries.size());
    bool ok = true;
    for (const Phase& p : entries) {
      if (auto r = p.exact_turns()) {
        form.exponents.push_back(r->num * (l / r->den));
        continue;
      }
      const double scaled = p.turns_value() * static_cast<double>(l);
      std::int64_t e = static_cast<std::int64_t>(std::llround(scaled)) % l;
      if (e < 0) e += l;
      if (std::abs(p.value() - std::polar(1.0, kTwoPi * static_cast<double>(e) / static_cast<double>(l))) > tol) {
        ok = false;
        break;
      }
      form.exponents.push_back(e);
    }
    if (ok) return form;
    if (all_exact) break;
  }
  return std::nullopt;
}

PHMatrix tensor_product(const PHMatrix& h, const PHMatrix& k) {
  const std::size_t rows = h.rows() * k.rows(), cols = h.cols() * k.cols();
  std::vector<Phase> entries(rows * cols);
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t a = 0; a < k.rows(); ++a)
      for (std::size_t j = 0; j < h.cols(); ++j)
        for (std::size_t b = 0; b < k.cols(); ++b)
          entries[(i * k.rows() + a) * cols + (j * k.cols() + b)] = h(i, j) * k(a, b);
  std::string label;
  if (!h.label().empty() && !k.label().empty()) label = h.label() + " (x) " + k.label();
  return PHMatrix(rows, cols, std::move(entries), std::move(label));
}

Equivalence Equivalence::identity(std::size_t rows, std::size_t cols) {
  Equivalence eq;
  eq.row_perm.resize(rows);
  eq.col_perm.resize(cols);
  std::iota(eq.row_perm.begin(), eq.row_perm.end(), std::size_t{0});
  std::iota(eq.col_perm.begin(), eq.col_perm.end(), std::size_t{0});
  eq.row_phases.assign(rows, Phase::one());
  eq.col_phases.assign(cols, Phase::one());
  return eq;
}

namespace {

void check_permutation(const std::vector<std::size_t>& perm, std::size_t n, const char* what) {
  if (perm.size() != n) throw InvalidInput(std::string("apply_equivalence: wrong ") + what + " permutation size");
  std::vector<bool> seen(n, false);
  for (auto p : perm) {
    if (p >= n || seen[p]) throw InvalidInput(std::string("apply_equivalence: ") + what + " map is not a permutation");
    seen[p] = true;
  }
}

}  // namespace

PHMatrix apply_equivalence(const PHMatrix& h, const Equivalence& eq) {
  const std::size_t m = h.rows(), n = h.cols();
  check_permutation(eq.row_perm, m, "row");
  check_permutation(eq.col_perm, n, "column");
  if (eq.row_phases.size() != m || eq.col_phases.size() != n)
    throw InvalidInput("apply_equivalence: wrong phase vector size");
  std::vector<Phase> entries(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      entries[eq.row_perm[i] * n + eq.col_perm[j]] = eq.row_phases[i] * eq.col_phases[j] * h(i, j);
  return PHMatrix(m, n, std::move(entries), h.label());
}

}  // namespace hadlab
