#include "cpc/manifold.hpp"

#include "cpc/errors.hpp"

namespace cpc {

ChartedManifold::ChartedManifold(std::string name, std::vector<std::string> coord_names,
                                 std::vector<Interval> box)
    : name_(std::move(name)),
      dim_(static_cast<int>(coord_names.size())),
      coord_names_(std::move(coord_names)),
      box_(std::move(box)),
      metric_(coord_names_.size() * coord_names_.size()) {
  if (dim_ <= 0) throw Error("manifold '" + name_ + "' must have positive dimension");
  if (box_.size() != coord_names_.size()) {
    throw DimensionMismatch("sample box of '" + name_ + "' has " + std::to_string(box_.size()) +
                            " intervals for dimension " + std::to_string(dim_));
  }
  for (const Interval& iv : box_) {
    if (!(iv.lo <= iv.hi)) throw Error("sample box interval with lo > hi in '" + name_ + "'");
  }
}

void ChartedManifold::check_components(const std::vector<Expr>& components, std::size_t expected,
                                       const std::string& what) const {
  if (components.size() != expected) {
    throw DimensionMismatch(what + " has " + std::to_string(components.size()) +
                            " components, expected " + std::to_string(expected));
  }
  for (const Expr& e : components) {
    if (e.max_variable_index() >= dim_) {
      throw DimensionMismatch(what + " uses a coordinate beyond dimension " + std::to_string(dim_));
    }
  }
}

void ChartedManifold::set_metric(int i, int j, Expr e) {
  if (i < 0 || j < 0 || i >= dim_ || j >= dim_) {
    throw DimensionMismatch("metric index out of range");
  }
  check_components({e}, 1, "metric entry");
  metric_[static_cast<std::size_t>(i * dim_ + j)] = e;
  metric_[static_cast<std::size_t>(j * dim_ + i)] = std::move(e);
}

void ChartedManifold::add_vector_field(const std::string& name, std::vector<Expr> components) {
  check_components(components, static_cast<std::size_t>(dim_), "vector field '" + name + "'");
  vectors_[name] = std::move(components);
}

void ChartedManifold::add_one_form(const std::string& name, std::vector<Expr> components) {
  check_components(components, static_cast<std::size_t>(dim_), "one-form '" + name + "'");
  forms_[name] = std::move(components);
}

void ChartedManifold::add_endomorphism(const std::string& name, std::vector<Expr> row_major) {
  check_components(row_major, static_cast<std::size_t>(dim_ * dim_), "endomorphism '" + name + "'");
  endos_[name] = std::move(row_major);
}

namespace {
const std::vector<Expr>& lookup(const std::map<std::string, std::vector<Expr>>& map,
                                const std::string& name) {
  auto it = map.find(name);
  if (it == map.end()) throw UnknownField(name);
  return it->second;
}
}  // namespace

const std::vector<Expr>& ChartedManifold::vector_field(const std::string& name) const {
  return lookup(vectors_, name);
}
const std::vector<Expr>& ChartedManifold::one_form(const std::string& name) const {
  return lookup(forms_, name);
}
const std::vector<Expr>& ChartedManifold::endomorphism(const std::string& name) const {
  return lookup(endos_, name);
}

bool ChartedManifold::in_box(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) return false;
  for (int i = 0; i < dim_; ++i) {
    if (x[static_cast<std::size_t>(i)] < box_[static_cast<std::size_t>(i)].lo ||
        x[static_cast<std::size_t>(i)] > box_[static_cast<std::size_t>(i)].hi) {
      return false;
    }
  }
  return true;
}

std::vector<Jet2> eval_components(const std::vector<Expr>& components, std::span<const double> x) {
  std::vector<Jet2> out;
  out.reserve(components.size());
  for (const Expr& e : components) out.push_back(eval_jet2(e, x));
  return out;
}

MetricJet evaluate_metric_jet(const ChartedManifold& m, std::span<const double> x) {
  const int n = m.dim();
  if (static_cast<int>(x.size()) != n) throw DimensionMismatch("point dimension does not match chart");
  MetricJet mj;
  mj.g.resize(n, n);
  mj.d1.assign(static_cast<std::size_t>(n), Matrix(n, n));
  mj.d2.assign(static_cast<std::size_t>(n * n), Matrix(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Jet2 jet = eval_jet2(m.metric(i, j), x);
      mj.g(i, j) = mj.g(j, i) = jet.value;
      for (int k = 0; k < n; ++k) {
        mj.d1[static_cast<std::size_t>(k)](i, j) = mj.d1[static_cast<std::size_t>(k)](j, i) = jet.grad(k);
        for (int l = 0; l < n; ++l) {
          Matrix& h = mj.d2[static_cast<std::size_t>(k * n + l)];
          h(i, j) = h(j, i) = jet.hess(k, l);
        }
      }
    }
  }
  return mj;
}

namespace {
void fill_first_order(const std::vector<Jet2>& jets, Vector& value, Matrix& jacobian, int n) {
  value.resize(static_cast<Eigen::Index>(jets.size()));
  jacobian.resize(static_cast<Eigen::Index>(jets.size()), n);
  for (std::size_t k = 0; k < jets.size(); ++k) {
    value(static_cast<Eigen::Index>(k)) = jets[k].value;
    jacobian.row(static_cast<Eigen::Index>(k)) = jets[k].grad.transpose();
  }
}
}  // namespace

VectorJet evaluate_vector_field(const ChartedManifold& m, const std::string& name,
                                std::span<const double> x) {
  VectorJet v;
  fill_first_order(eval_components(m.vector_field(name), x), v.value, v.jacobian, m.dim());
  return v;
}

FormJet evaluate_one_form(const ChartedManifold& m, const std::string& name, std::span<const double> x) {
  FormJet f;
  fill_first_order(eval_components(m.one_form(name), x), f.value, f.jacobian, m.dim());
  return f;
}

EndoJet evaluate_endomorphism(const ChartedManifold& m, const std::string& name,
                              std::span<const double> x) {
  const int n = m.dim();
  const auto jets = eval_components(m.endomorphism(name), x);
  EndoJet e;
  e.value.resize(n, n);
  e.partials.assign(static_cast<std::size_t>(n), Matrix(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Jet2& jet = jets[static_cast<std::size_t>(i * n + j)];
      e.value(i, j) = jet.value;
      for (int k = 0; k < n; ++k) e.partials[static_cast<std::size_t>(k)](i, j) = jet.grad(k);
    }
  }
  return e;
}

VectorJet constant_vector_jet(const Vector& v) {
  return {v, Matrix::Zero(v.size(), v.size())};
}

VectorJet operator+(const VectorJet& a, const VectorJet& b) {
  return {a.value + b.value, a.jacobian + b.jacobian};
}
VectorJet operator-(const VectorJet& a, const VectorJet& b) {
  return {a.value - b.value, a.jacobian - b.jacobian};
}
VectorJet operator*(double s, const VectorJet& a) { return {s * a.value, s * a.jacobian}; }

VectorJet apply(const EndoJet& f, const VectorJet& x) {
  VectorJet r;
  r.value = f.value * x.value;
  r.jacobian.resize(x.jacobian.rows(), x.jacobian.cols());
  for (Eigen::Index i = 0; i < x.jacobian.cols(); ++i) {
    r.jacobian.col(i) = f.partials[static_cast<std::size_t>(i)] * x.value + f.value * x.jacobian.col(i);
  }
  return r;
}

EndoJet compose(const EndoJet& f, const EndoJet& g) {
  EndoJet r;
  r.value = f.value * g.value;
  r.partials.resize(f.partials.size());
  for (std::size_t i = 0; i < f.partials.size(); ++i) {
    r.partials[i] = f.partials[i] * g.value + f.value * g.partials[i];
  }
  return r;
}

EndoJet outer(const VectorJet& x, const FormJet& alpha) {
  EndoJet r;
  r.value = x.value * alpha.value.transpose();
  r.partials.resize(static_cast<std::size_t>(x.jacobian.cols()));
  for (Eigen::Index i = 0; i < x.jacobian.cols(); ++i) {
    r.partials[static_cast<std::size_t>(i)] =
        x.jacobian.col(i) * alpha.value.transpose() + x.value * alpha.jacobian.col(i).transpose();
  }
  return r;
}

EndoJet operator+(const EndoJet& a, const EndoJet& b) {
  EndoJet r{a.value + b.value, a.partials};
  for (std::size_t i = 0; i < r.partials.size(); ++i) r.partials[i] += b.partials[i];
  return r;
}
EndoJet operator-(const EndoJet& a, const EndoJet& b) { return a + (-1.0) * b; }
EndoJet operator*(double s, const EndoJet& a) {
  EndoJet r{s * a.value, a.partials};
  for (Matrix& p : r.partials) p *= s;
  return r;
}

EndoJet identity_endo(int dim) {
  return {Matrix::Identity(dim, dim), std::vector<Matrix>(static_cast<std::size_t>(dim), Matrix::Zero(dim, dim))};
}

std::vector<Expr> compose_endomorphism_expr(const std::vector<Expr>& f, const std::vector<Expr>& g, int dim) {
  std::vector<Expr> out(static_cast<std::size_t>(dim * dim));
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      Expr acc = Expr::constant(0.0);
      for (int k = 0; k < dim; ++k) {
        acc = sum_of(acc, product_of(f[static_cast<std::size_t>(i * dim + k)],
                                     g[static_cast<std::size_t>(k * dim + j)]));
      }
      out[static_cast<std::size_t>(i * dim + j)] = acc;
    }
  }
  return out;
}

}  // namespace cpc
