#include "hadlab/quantum.hpp"

#include <cmath>
#include <limits>

namespace hadlab {

ProjectionGrid projection_grid(const PHMatrix& h) {
  require_hadamard(h, "projection_grid");
  ProjectionGrid g;
  g.m = h.rows();
  g.n = h.cols();
  g.cells.reserve(g.m * g.m);
  const double inv_n = 1.0 / static_cast<double>(g.n);
  for (std::size_t i = 0; i < g.m; ++i)
    for (std::size_t j = 0; j < g.m; ++j) {
      const Eigen::VectorXcd v = row_quotient(h, i, j);
      g.cells.push_back(inv_n * v * v.adjoint());
    }
  return g;
}

SubmagicReport verify_submagic(const ProjectionGrid& grid, double tol) {
  SubmagicReport rep;
  double worst = 0.0;
  auto track = [&](double r) { worst = std::max(worst, r); };
  for (const auto& p : grid.cells) {
    track((p - p.adjoint()).cwiseAbs().maxCoeff());
    track((p * p - p).cwiseAbs().maxCoeff());
    track(std::abs(p.trace() - cdouble(1.0, 0.0)));  // rank of a projection = trace
  }
  for (std::size_t i = 0; i < grid.m; ++i)
    for (std::size_t j = 0; j < grid.m; ++j)
      for (std::size_t k = 0; k < grid.m; ++k) {
        if (k != j) track((grid(i, j) * grid(i, k)).cwiseAbs().maxCoeff());
        if (k != i) track((grid(i, j) * grid(k, j)).cwiseAbs().maxCoeff());
      }
  rep.max_residual = worst;
  rep.is_submagic = worst <= tol;
  return rep;
}

namespace {

std::vector<Eigen::VectorXcd> quotients(const PHMatrix& h) {
  std::vector<Eigen::VectorXcd> v;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.rows(); ++j) v.push_back(row_quotient(h, i, j));
  return v;
}

}  // namespace

bool classicality_test(const PHMatrix& h, double tol) {
  require_hadamard(h, "classicality_test");
  const auto v = quotients(h);
  const double n = static_cast<double>(h.cols());
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b) {
      const double ip = std::abs(v[a].dot(v[b]));
      if (ip > tol * n && std::abs(ip - n) > tol * n) return false;
    }
  return true;
}

std::optional<PreLatinSquare> pre_latin_square(const PHMatrix& h, double tol) {
  if (!classicality_test(h, tol)) return std::nullopt;
  const auto v = quotients(h);
  const double n = static_cast<double>(h.cols());
  PreLatinSquare sq;
  sq.m = h.rows();
  sq.labels.assign(v.size(), 0);
  std::vector<std::size_t> first;  // index into v of each class representative
  for (std::size_t a = 0; a < v.size(); ++a) {
    int label = 0;
    for (std::size_t c = 0; c < first.size(); ++c)
      if (std::abs(std::abs(v[first[c]].dot(v[a])) - n) <= tol * n) {
        label = static_cast<int>(c) + 1;
        break;
      }
    if (label == 0) {
      first.push_back(a);
      label = static_cast<int>(first.size());
      sq.representatives.push_back(v[a] / std::sqrt(n));
    }
    sq.labels[a] = label;
  }
  sq.label_count = static_cast<int>(first.size());
  for (std::size_t i = 0; i < sq.m; ++i)
    for (std::size_t j = 0; j < sq.m; ++j)
      for (std::size_t k = 0; k < sq.m; ++k) {
        if (k != j && sq(i, j) == sq(i, k)) return std::nullopt;
        if (k != i && sq(i, j) == sq(k, j)) return std::nullopt;
      }
  return sq;
}

PartialPermutation sigma_from_square(const PreLatinSquare& square, int label) {
  if (label < 1 || label > square.label_count) throw InvalidInput("sigma_from_square: unknown label");
  std::vector<int> t(square.m, -1);
  for (std::size_t i = 0; i < square.m; ++i)
    for (std::size_t j = 0; j < square.m; ++j)
      if (square(i, j) == label) t[j] = static_cast<int>(i);
  return PartialPermutation(std::move(t));
}

std::vector<PartialPermutation> square_generators(const PreLatinSquare& square) {
  std::vector<PartialPermutation> out;
  for (int x = 1; x <= square.label_count; ++x) out.push_back(sigma_from_square(square, x));
  return out;
}

Eigen::MatrixXcd moment_matrix(const PHMatrix& h, std::size_t p, std::size_t dimension_budget) {
  if (p < 1) throw InvalidInput("moment_matrix: p must be >= 1");
  require_hadamard(h, "moment_matrix");
  const std::size_t m = h.rows();
  std::size_t dim = 1;
  for (std::size_t t = 0; t < p; ++t) {
    dim *= m;
    if (dim > dimension_budget) throw InvalidInput("moment_matrix: M^p exceeds the dimension budget");
  }
  const auto v = quotients(h);
  const std::size_t cells = m * m;
  Eigen::MatrixXcd gram(static_cast<Eigen::Index>(cells), static_cast<Eigen::Index>(cells));
  for (std::size_t a = 0; a < cells; ++a)
    for (std::size_t b = 0; b < cells; ++b)
      gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v[a].dot(v[b]);  // v_a* v_b
  const double scale = std::pow(static_cast<double>(h.cols()), -static_cast<double>(p + 1));

  Eigen::MatrixXcd t(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  std::vector<std::size_t> ii(p), jj(p), cell(p);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t x = a, s = p; s-- > 0; x /= m) ii[s] = x % m;
    for (std::size_t b = 0; b < dim; ++b) {
      for (std::size_t x = b, s = p; s-- > 0; x /= m) jj[s] = x % m;
      for (std::size_t s = 0; s < p; ++s) cell[s] = ii[s] * m + jj[s];
      cdouble prod = 1.0;
      for (std::size_t s = 0; s < p; ++s)
        prod *= gram(static_cast<Eigen::Index>(cell[s]), static_cast<Eigen::Index>(cell[(s + 1) % p]));
      t(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = scale * prod;
    }
  }
  return t;
}

MomentResult moment(const PHMatrix& h, std::size_t p, double tol, std::size_t dimension_budget) {
  if (!(tol > 0)) throw InvalidInput("moment: tolerance must be positive");
  const Eigen::MatrixXcd t = moment_matrix(h, p, dimension_budget);
  MomentResult r;
  r.dimension = static_cast<std::size_t>(t.rows());
  r.formal = h.rows() < h.cols();
  r.nearest_excluded = std::numeric_limits<double>::infinity();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(t, false);
  if (es.info() != Eigen::Success) throw std::runtime_error("moment: eigenvalue solver failed");
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const cdouble lam = es.eigenvalues()(k);
    r.max_imaginary = std::max(r.max_imaginary, std::abs(lam.imag()));
    const double d = std::abs(lam - 1.0);
    if (d < tol) {
      ++r.value;
    } else {
      r.nearest_excluded = std::min(r.nearest_excluded, d);
      if (d <= 10.0 * tol) r.ambiguous = true;
    }
  }
  return r;
}

std::int64_t cyclic_moment_oracle(std::int64_t n, std::int64_t p) {
  if (n < 1 || p < 1) throw InvalidInput("cyclic_moment_oracle: N, p must be >= 1");
  std::int64_t r = 1;
  for (std::int64_t t = 1; t < p; ++t) r *= n;
  return r;
}

}  // namespace hadlab
