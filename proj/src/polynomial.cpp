#include "crosshull/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>

namespace crosshull {

namespace {

Complex power(Complex z, int e) {
  Complex r{1.0, 0.0};
  for (int i = 0; i < e; ++i) r *= z;
  return r;
}

struct Accum {
  Complex sum{0.0, 0.0};
  double mass = 0.0;
};

std::vector<Monomial> collect(const std::map<std::vector<int>, Accum>& acc, double rel) {
  std::vector<Monomial> out;
  for (const auto& [exps, a] : acc) {
    if (a.sum == Complex{} || std::abs(a.sum) <= rel * a.mass) continue;
    out.push_back({exps, a.sum});
  }
  return out;
}

}  // namespace

Polynomial::Polynomial(std::vector<int> vars, std::vector<Monomial> terms) : vars_(std::move(vars)) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] < 0) fail(ErrorKind::InvalidArgument, "negative polynomial variable index");
    for (std::size_t j = 0; j < i; ++j) {
      if (vars_[i] == vars_[j]) fail(ErrorKind::InvalidArgument, "repeated polynomial variable");
    }
  }
  std::map<std::vector<int>, Accum> acc;
  for (auto& t : terms) {
    if (t.exps.size() != vars_.size()) fail(ErrorKind::DimensionMismatch, "monomial length != number of variables");
    int deg = 0;
    for (int e : t.exps) {
      if (e < 0) fail(ErrorKind::InvalidArgument, "negative exponent");
      deg += e;
    }
    if (deg > kMaxPolyDegree) fail(ErrorKind::InvalidArgument, "polynomial total degree exceeds 8");
    if (!is_finite(t.coeff)) fail(ErrorKind::InvalidArgument, "non-finite coefficient");
    auto& a = acc[t.exps];
    a.sum += t.coeff;
    a.mass += std::abs(t.coeff);
  }
  terms_ = collect(acc, 0.0);
}

bool Polynomial::is_constant() const {
  for (const auto& t : terms_) {
    for (int e : t.exps) {
      if (e != 0) return false;
    }
  }
  return true;
}

int Polynomial::total_degree() const {
  int best = 0;
  for (const auto& t : terms_) {
    int d = 0;
    for (int e : t.exps) d += e;
    best = std::max(best, d);
  }
  return best;
}

Complex Polynomial::eval(std::span<const Complex> point) const {
  Complex s{0.0, 0.0};
  for (const auto& t : terms_) {
    Complex m = t.coeff;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (static_cast<std::size_t>(vars_[i]) >= point.size()) {
        fail(ErrorKind::DimensionMismatch, "point too short for polynomial variables");
      }
      m *= power(point[vars_[i]], t.exps[i]);
    }
    s += m;
  }
  return s;
}

double Polynomial::magnitude(std::span<const Complex> point) const {
  double s = 0.0;
  for (const auto& t : terms_) {
    double m = std::abs(t.coeff);
    for (std::size_t i = 0; i < vars_.size(); ++i) m *= std::pow(std::abs(point[vars_[i]]), t.exps[i]);
    s += m;
  }
  return s;
}

bool Polynomial::vanishes_at(std::span<const Complex> point) const {
  return std::abs(eval(point)) <= 1e-12 * (1.0 + magnitude(point));
}

Polynomial Polynomial::substitute(std::span<const std::optional<Complex>> values,
                                  std::span<const int> rename) const {
  std::vector<int> kept_pos;
  std::vector<int> new_vars;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const auto v = static_cast<std::size_t>(vars_[i]);
    if (v >= values.size() || v >= rename.size()) {
      fail(ErrorKind::DimensionMismatch, "substitution does not cover every variable");
    }
    if (!values[v]) {
      kept_pos.push_back(static_cast<int>(i));
      new_vars.push_back(rename[v]);
    }
  }
  std::map<std::vector<int>, Accum> acc;
  for (const auto& t : terms_) {
    Complex c = t.coeff;
    std::vector<int> exps;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (const auto& val = values[vars_[i]]) c *= power(*val, t.exps[i]);
    }
    for (int p : kept_pos) exps.push_back(t.exps[p]);
    auto& a = acc[exps];
    a.sum += c;
    a.mass += std::abs(c);
  }
  Polynomial out;
  out.vars_ = std::move(new_vars);
  out.terms_ = collect(acc, 1e-13);
  return out;
}

std::vector<Complex> Polynomial::roots() const {
  if (vars_.size() != 1) fail(ErrorKind::InvalidArgument, "roots() needs a univariate polynomial");
  std::vector<Complex> c(kMaxPolyDegree + 1);
  for (const auto& t : terms_) c[t.exps[0]] += t.coeff;
  int deg = kMaxPolyDegree;
  while (deg > 0 && c[deg] == Complex{}) --deg;
  if (deg == 0) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -c[i] / c[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
  std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + deg);
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

Polynomial linear_sum(std::vector<int> vars, Complex c) {
  std::vector<Monomial> terms;
  const std::size_t m = vars.size();
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<int> e(m, 0);
    e[i] = 1;
    terms.push_back({e, {1.0, 0.0}});
  }
  terms.push_back({std::vector<int>(m, 0), -c});
  return Polynomial(std::move(vars), std::move(terms));
}

}  // namespace crosshull
