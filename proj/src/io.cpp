#include "nl/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace nl {

std::string format_double(double v) {
  char buf[64];
  // 17 significant digits always round-trip a binary64 value.
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

double read_double(std::istream& is, const char* what) {
  double v;
  if (!(is >> v)) throw ParseError(std::string("expected number for ") + what);
  return v;
}

long read_int(std::istream& is, const char* what) {
  long v;
  if (!(is >> v)) throw ParseError(std::string("expected integer for ") + what);
  return v;
}

std::string read_word(std::istream& is) {
  std::string w;
  is >> w;
  return w;
}

void expect(std::istream& is, const std::string& token) {
  std::string w = read_word(is);
  if (w != token)
    throw ParseError("expected '" + token + "', found '" + w + "'");
}

RMat read_rmat(std::istream& is, Eigen::Index rows, Eigen::Index cols,
               const char* what) {
  RMat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = read_double(is, what);
  return m;
}

void write_rmat(std::ostream& os, const RMat& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
}

}  // namespace

void save_field(std::ostream& os, const OperatorField& field) {
  const int n = field.nvars();
  os << "acsfield\n";
  os << "n " << n << '\n';
  os << "r " << format_double(field.radius) << '\n';
  os << "d " << field.J.degree() << '\n';
  for (MIdx m : field.J.sorted_keys()) {
    const Mat& coeff = field.J.terms().at(m);
    if (coeff.imag().norm() > 1e-14 * (1.0 + coeff.real().norm()))
      throw InvalidInputError("save_field: field has non-real coefficients");
    os << "coeff";
    for (int v = 0; v < n; ++v) os << ' ' << midx_exp(m, v);
    os << '\n';
    write_rmat(os, coeff.real());
  }
  os << "end\n";
}

OperatorField load_field(std::istream& is) {
  expect(is, "acsfield");
  expect(is, "n");
  int n = static_cast<int>(read_int(is, "n"));
  if (n < 1 || n > kMaxVars) throw ParseError("field dimension out of range");
  expect(is, "r");
  double r = read_double(is, "r");
  expect(is, "d");
  (void)read_int(is, "d");

  OperatorField field;
  field.radius = r;
  field.J = MatPoly(n, n);
  for (std::string w = read_word(is); w != "end"; w = read_word(is)) {
    if (w != "coeff") throw ParseError("expected 'coeff' or 'end'");
    std::vector<int> exps(n);
    for (int v = 0; v < n; ++v)
      exps[v] = static_cast<int>(read_int(is, "exponent"));
    field.J.add_term(midx_pack(exps),
                     read_rmat(is, n, n, "coefficient").cast<Cplx>());
  }
  return field;
}

void save_pair(std::ostream& os, const PairFixture& fx) {
  const LieAlgebra& g = fx.pair.g;
  os << "algebra\n";
  os << "dim " << g.dim << '\n';
  for (int k = 0; k < g.dim; ++k)
    for (int i = 0; i < g.dim; ++i)
      for (int j = i + 1; j < g.dim; ++j)
        if (g.c[k](i, j) != 0.0)
          os << "c " << i << ' ' << j << ' ' << k << ' '
             << format_double(g.c[k](i, j)) << '\n';
  for (const Mat& b : g.basis_matrices) {
    os << "basismatrix " << b.rows() << '\n';
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        os << (j ? " " : "") << format_double(b(i, j).real()) << ' '
           << format_double(b(i, j).imag());
      os << '\n';
    }
  }
  os << "h " << fx.pair.h.dim() << '\n';
  write_rmat(os, fx.pair.h.basis().real().transpose());
  os << "V " << fx.pair.V.dim() << '\n';
  write_rmat(os, fx.pair.V.basis().real().transpose());
  for (const RMat& a : fx.pair.H_samples) {
    os << "hsample\n";
    write_rmat(os, a);
  }
  if (fx.I) {
    os << "I\n";
    write_rmat(os, fx.I->I);
  }
  if (fx.k_basis) {
    os << "k " << fx.k_basis->cols() << '\n';
    for (Eigen::Index j = 0; j < fx.k_basis->cols(); ++j) {
      for (Eigen::Index i = 0; i < fx.k_basis->rows(); ++i)
        os << (i ? " " : "") << format_double((*fx.k_basis)(i, j).real()) << ' '
           << format_double((*fx.k_basis)(i, j).imag());
      os << '\n';
    }
  }
  os << "end\n";
}

PairFixture load_pair(std::istream& is) {
  expect(is, "algebra");
  expect(is, "dim");
  int dim = static_cast<int>(read_int(is, "dim"));
  if (dim < 1 || dim > 64) throw ParseError("algebra dimension out of range");

  PairFixture fx;
  fx.pair.g = LieAlgebra::zero(dim);
  fx.pair.h = Subspace::zero(dim);
  fx.pair.V = Subspace::full(dim);

  for (std::string w = read_word(is); w != "end"; w = read_word(is)) {
    if (w == "c") {
      int i = static_cast<int>(read_int(is, "i"));
      int j = static_cast<int>(read_int(is, "j"));
      int k = static_cast<int>(read_int(is, "k"));
      double v = read_double(is, "structure constant");
      if (i < 0 || j < 0 || k < 0 || i >= dim || j >= dim || k >= dim)
        throw ParseError("structure constant index out of range");
      fx.pair.g.set_constant(i, j, k, v);
    } else if (w == "basismatrix") {
      Eigen::Index rows = read_int(is, "rows");
      Mat b(rows, rows);
      for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < rows; ++j) {
          double re = read_double(is, "entry");
          double im = read_double(is, "entry");
          b(i, j) = Cplx(re, im);
        }
      fx.pair.g.basis_matrices.push_back(b);
    } else if (w == "h" || w == "V") {
      Eigen::Index count = read_int(is, "basis count");
      RMat rows = read_rmat(is, count, dim, "basis vector");
      Subspace s(rows.transpose().cast<Cplx>());
      (w == "h" ? fx.pair.h : fx.pair.V) = s;
    } else if (w == "hsample") {
      fx.pair.H_samples.push_back(read_rmat(is, dim, dim, "automorphism"));
    } else if (w == "I") {
      fx.I = PartialStructure{read_rmat(is, dim, dim, "operator")};
    } else if (w == "k") {
      Eigen::Index count = read_int(is, "k basis count");
      Mat basis(dim, count);
      for (Eigen::Index j = 0; j < count; ++j)
        for (Eigen::Index i = 0; i < dim; ++i) {
          double re = read_double(is, "entry");
          double im = read_double(is, "entry");
          basis(i, j) = Cplx(re, im);
        }
      fx.k_basis = basis;
    } else {
      throw ParseError("unknown section '" + w + "' in algebra fixture");
    }
  }
  return fx;
}

void save_flag(std::ostream& os, const FlagFixture& fx) {
  os << "flag\n";
  os << "blocks " << fx.algebra.block_sizes.size();
  for (int d : fx.algebra.block_sizes) os << ' ' << d;
  os << '\n';
  os << "nflags " << fx.flag.nflags << '\n';
  for (const auto& r : fx.flag.ranks) {
    os << "ranks";
    for (int v : r) os << ' ' << v;
    os << '\n';
  }
  os << "end\n";
}

FlagFixture load_flag(std::istream& is) {
  expect(is, "flag");
  expect(is, "blocks");
  int nblocks = static_cast<int>(read_int(is, "block count"));
  if (nblocks < 1 || nblocks > 16) throw ParseError("block count out of range");
  FlagFixture fx;
  for (int b = 0; b < nblocks; ++b)
    fx.algebra.block_sizes.push_back(
        static_cast<int>(read_int(is, "block size")));
  expect(is, "nflags");
  fx.flag.nflags = static_cast<int>(read_int(is, "nflags"));
  for (int b = 0; b < nblocks; ++b) {
    expect(is, "ranks");
    std::vector<int> r(fx.flag.nflags);
    for (int j = 0; j < fx.flag.nflags; ++j)
      r[j] = static_cast<int>(read_int(is, "rank"));
    fx.flag.ranks.push_back(r);
  }
  expect(is, "end");
  fx.flag.validate(fx.algebra);
  return fx;
}

namespace {
std::ifstream open_or_throw(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open '" + path + "'");
  return is;
}
}  // namespace

OperatorField load_field_file(const std::string& path) {
  auto is = open_or_throw(path);
  return load_field(is);
}

PairFixture load_pair_file(const std::string& path) {
  auto is = open_or_throw(path);
  return load_pair(is);
}

FlagFixture load_flag_file(const std::string& path) {
  auto is = open_or_throw(path);
  return load_flag(is);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ParseError("cannot write '" + path + "'");
  os << content;
}

}  // namespace nl
