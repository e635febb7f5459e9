#include "nl/poly.hpp"

#include <algorithm>

namespace nl {

std::vector<int> midx_unpack(MIdx m, int nvars) {
  std::vector<int> e(nvars);
  for (int v = 0; v < nvars; ++v) e[v] = midx_exp(m, v);
  return e;
}

MIdx midx_pack(const std::vector<int>& exps) {
  MIdx m = 0;
  for (int v = 0; v < static_cast<int>(exps.size()); ++v)
    m |= static_cast<MIdx>(exps[v] & 0xff) << (8 * v);
  return m;
}

bool midx_lex_less(MIdx a, MIdx b, int nvars) {
  for (int v = 0; v < nvars; ++v) {
    int ea = midx_exp(a, v), eb = midx_exp(b, v);
    if (ea != eb) return ea < eb;
  }
  return false;
}

Cplx midx_eval(MIdx m, const Vec& x) {
  Cplx p(1.0, 0.0);
  for (int v = 0; v < x.size(); ++v) {
    int e = midx_exp(m, v);
    for (int k = 0; k < e; ++k) p *= x(v);
  }
  return p;
}

// ---------------------------------------------------------------------------
// VecPoly

VecPoly VecPoly::constant(int nvars, const Vec& v) {
  VecPoly p(nvars, v.size());
  p.add_term(0, v);
  return p;
}

VecPoly VecPoly::coordinate(int nvars) {
  VecPoly p(nvars, nvars);
  for (int v = 0; v < nvars; ++v) {
    Vec e = Vec::Zero(nvars);
    e(v) = 1.0;
    p.add_term(midx_bump(0, v, 1), e);
  }
  return p;
}

void VecPoly::add_term(MIdx m, const Vec& coeff) {
  if (coeff.size() != dim_) throw ShapeError("VecPoly: coefficient size");
  auto it = terms_.find(m);
  if (it == terms_.end())
    terms_.emplace(m, coeff);
  else
    it->second += coeff;
}

Vec VecPoly::eval(const Vec& x) const {
  if (x.size() != nvars_) throw ShapeError("VecPoly::eval: point dimension");
  Vec out = Vec::Zero(dim_);
  for (const auto& [m, c] : terms_) out += midx_eval(m, x) * c;
  return out;
}

Mat VecPoly::jacobian(const Vec& x) const {
  if (x.size() != nvars_) throw ShapeError("VecPoly::jacobian: point dimension");
  Mat out = Mat::Zero(dim_, nvars_);
  for (const auto& [m, c] : terms_) {
    for (int v = 0; v < nvars_; ++v) {
      int e = midx_exp(m, v);
      if (e == 0) continue;
      out.col(v) +=
          (static_cast<double>(e) * midx_eval(midx_bump(m, v, -1), x)) * c;
    }
  }
  return out;
}

int VecPoly::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, midx_degree(m));
  return d;
}

VecPoly VecPoly::operator+(const VecPoly& o) const {
  VecPoly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

VecPoly VecPoly::operator-(const VecPoly& o) const {
  VecPoly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, Vec(-c));
  return out;
}

VecPoly VecPoly::scaled(Cplx s) const {
  VecPoly out(nvars_, dim_);
  for (const auto& [m, c] : terms_) out.add_term(m, Vec(s * c));
  return out;
}

std::vector<MIdx> VecPoly::sorted_keys() const {
  std::vector<MIdx> keys;
  keys.reserve(terms_.size());
  for (const auto& [m, c] : terms_) keys.push_back(m);
  std::sort(keys.begin(), keys.end(),
            [&](MIdx a, MIdx b) { return midx_lex_less(a, b, nvars_); });
  return keys;
}

// ---------------------------------------------------------------------------
// MatPoly

MatPoly MatPoly::constant(int nvars, const Mat& m) {
  MatPoly p(nvars, m.rows());
  p.add_term(0, m);
  return p;
}

MatPoly MatPoly::identity(int nvars, Eigen::Index dim) {
  return constant(nvars, Mat::Identity(dim, dim));
}

void MatPoly::add_term(MIdx m, const Mat& coeff) {
  if (coeff.rows() != dim_ || coeff.cols() != dim_)
    throw ShapeError("MatPoly: coefficient shape");
  auto it = terms_.find(m);
  if (it == terms_.end())
    terms_.emplace(m, coeff);
  else
    it->second += coeff;
}

Mat MatPoly::eval(const Vec& x) const {
  if (x.size() != nvars_) throw ShapeError("MatPoly::eval: point dimension");
  Mat out = Mat::Zero(dim_, dim_);
  for (const auto& [m, c] : terms_) out += midx_eval(m, x) * c;
  return out;
}

Mat MatPoly::dir_deriv(const Vec& x, const Vec& w) const {
  if (x.size() != nvars_ || w.size() != nvars_)
    throw ShapeError("MatPoly::dir_deriv: point dimension");
  Mat out = Mat::Zero(dim_, dim_);
  for (const auto& [m, c] : terms_) {
    Cplx s(0.0, 0.0);
    for (int v = 0; v < nvars_; ++v) {
      int e = midx_exp(m, v);
      if (e == 0) continue;
      s += static_cast<double>(e) * midx_eval(midx_bump(m, v, -1), x) * w(v);
    }
    if (s != 0.0) out += s * c;
  }
  return out;
}

int MatPoly::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, midx_degree(m));
  return d;
}

MatPoly MatPoly::operator+(const MatPoly& o) const {
  MatPoly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

MatPoly MatPoly::operator-(const MatPoly& o) const {
  MatPoly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, Mat(-c));
  return out;
}

MatPoly MatPoly::operator*(const MatPoly& o) const {
  if (dim_ != o.dim_ || nvars_ != o.nvars_)
    throw ShapeError("MatPoly: product shape");
  MatPoly out(nvars_, dim_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) out.add_term(ma + mb, ca * cb);
  return out;
}

VecPoly MatPoly::operator*(const VecPoly& o) const {
  if (dim_ != o.dim() || nvars_ != o.nvars())
    throw ShapeError("MatPoly: product shape");
  VecPoly out(nvars_, dim_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms()) out.add_term(ma + mb, ca * cb);
  return out;
}

MatPoly MatPoly::scaled(Cplx s) const {
  MatPoly out(nvars_, dim_);
  for (const auto& [m, c] : terms_) out.add_term(m, Mat(s * c));
  return out;
}

void MatPoly::prune(double cutoff) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.norm() <= cutoff)
      it = terms_.erase(it);
    else
      ++it;
  }
}

double MatPoly::norm_bound(double r) const {
  double b = 0.0;
  for (const auto& [m, c] : terms_) {
    double rv = 1.0;
    for (int k = 0; k < midx_degree(m); ++k) rv *= r;
    b += c.operatorNorm() * rv;
  }
  return b;
}

std::vector<MIdx> MatPoly::sorted_keys() const {
  std::vector<MIdx> keys;
  keys.reserve(terms_.size());
  for (const auto& [m, c] : terms_) keys.push_back(m);
  std::sort(keys.begin(), keys.end(),
            [&](MIdx a, MIdx b) { return midx_lex_less(a, b, nvars_); });
  return keys;
}

}  // namespace nl
