#include "logtangent/graded.hpp"

#include <algorithm>
#include <stdexcept>

namespace logtangent {

void GradedFormMatrix::validate() const {
  if (entries.size() != rows()) throw std::invalid_argument("row count mismatch");
  for (std::size_t i = 0; i < rows(); ++i) {
    if (entries[i].size() != cols())
      throw std::invalid_argument("column count mismatch");
    for (std::size_t j = 0; j < cols(); ++j) {
      const Form& e = entries[i][j];
      if (e.is_zero()) continue;
      if (e.degree() != entry_degree(i, j))
        throw std::invalid_argument("entry degree violates twist data");
    }
  }
}

int graded_dim(const std::vector<int>& twists, int t) {
  int d = 0;
  for (int s : twists) d += dim_forms(s + t);
  return d;
}

MatrixQ graded_map_matrix(const GradedFormMatrix& m, int t) {
  m.validate();
  const std::size_t nr = m.rows(), nc = m.cols();
  // Target block offsets.
  std::vector<int> tgt_off(nr + 1, 0);
  for (std::size_t i = 0; i < nr; ++i)
    tgt_off[i + 1] = tgt_off[i] + dim_forms(m.target[i] + t);
  std::vector<int> src_off(nc + 1, 0);
  for (std::size_t j = 0; j < nc; ++j)
    src_off[j + 1] = src_off[j] + dim_forms(m.source[j] + t);

  MatrixQ out(tgt_off[nr], src_off[nc]);
  for (std::size_t j = 0; j < nc; ++j) {
    int sdeg = m.source[j] + t;
    if (sdeg < 0) continue;
    auto src_basis = monomials_of_degree(sdeg);
    for (std::size_t k = 0; k < src_basis.size(); ++k) {
      Form mono;
      mono = Form::term(1, src_basis[k].e[0], src_basis[k].e[1], src_basis[k].e[2]);
      for (std::size_t i = 0; i < nr; ++i) {
        int tdeg = m.target[i] + t;
        if (tdeg < 0 || m.entries[i][j].is_zero()) continue;
        Form prod = m.entries[i][j] * mono;
        auto coords = prod.coefficients(tdeg);
        for (std::size_t r = 0; r < coords.size(); ++r)
          if (coords[r] != 0) out.at(tgt_off[i] + r, src_off[j] + k) = coords[r];
      }
    }
  }
  return out;
}

std::vector<Rational> tuple_coordinates(const std::vector<Form>& tuple,
                                        const std::vector<int>& twists, int t) {
  if (tuple.size() != twists.size())
    throw std::invalid_argument("tuple size mismatch");
  std::vector<Rational> out;
  for (std::size_t j = 0; j < tuple.size(); ++j) {
    int d = twists[j] + t;
    if (d < 0) {
      if (!tuple[j].is_zero())
        throw std::invalid_argument("nonzero entry in negative-degree slot");
      continue;
    }
    if (!tuple[j].is_zero() && tuple[j].degree() != d)
      throw std::invalid_argument("tuple entry degree mismatch");
    auto c = tuple[j].coefficients(d);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

std::vector<Form> tuple_from_coordinates(const std::vector<Rational>& coords,
                                         const std::vector<int>& twists, int t) {
  std::vector<Form> out;
  std::size_t pos = 0;
  for (int s : twists) {
    int d = s + t;
    if (d < 0) {
      out.emplace_back();
      continue;
    }
    std::size_t n = static_cast<std::size_t>(dim_forms(d));
    if (pos + n > coords.size()) throw std::invalid_argument("coords too short");
    std::vector<Rational> slice(coords.begin() + pos, coords.begin() + pos + n);
    out.push_back(Form::from_coefficients(d, slice));
    pos += n;
  }
  if (pos != coords.size()) throw std::invalid_argument("coords too long");
  return out;
}

namespace {

/// Source twists for the syzygy problem: entry j of a total-degree-t syzygy
/// has degree t - deg f_j, i.e. lives in the degree-t piece of O(-deg f_j).
std::vector<int> syzygy_source_twists(const std::vector<int>& input_degrees) {
  std::vector<int> tw;
  tw.reserve(input_degrees.size());
  for (int g : input_degrees) tw.push_back(-g);
  return tw;
}

}  // namespace

SyzygyBasis syzygies_up_to(const std::vector<Form>& row, int dmax) {
  SyzygyBasis basis;
  basis.input = row;
  if (row.empty()) throw std::invalid_argument("empty input row");
  for (const auto& f : row) {
    if (f.is_zero()) throw std::invalid_argument("zero form in input row");
    basis.input_degrees.push_back(f.degree());
  }
  const auto src = syzygy_source_twists(basis.input_degrees);
  const int tmin = *std::min_element(basis.input_degrees.begin(),
                                     basis.input_degrees.end());

  GradedFormMatrix mul;
  mul.entries = {row};
  mul.source = src;
  mul.target = {0};

  for (int t = tmin; t <= dmax; ++t) {
    MatrixQ piece = graded_map_matrix(mul, t);
    if (piece.cols() == 0) continue;
    auto null_basis = piece.nullspace();
    if (null_basis.empty()) continue;

    // Span of lower generators in this degree.
    RowSpan span(piece.cols());
    for (const auto& gen : basis.generators) {
      int shift = t - gen.total_degree;
      if (shift < 0) continue;
      for (const auto& m : monomials_of_degree(shift)) {
        Form mono = Form::term(1, m.e[0], m.e[1], m.e[2]);
        std::vector<Form> shifted;
        shifted.reserve(gen.entries.size());
        for (const auto& e : gen.entries)
          shifted.push_back(e.is_zero() ? Form() : e * mono);
        span.add(tuple_coordinates(shifted, src, t));
      }
    }

    for (auto& v : null_basis) {
      auto residual = span.reduce(v);
      bool nonzero = false;
      for (const auto& x : residual)
        if (x != 0) {
          nonzero = true;
          break;
        }
      if (!nonzero) continue;
      span.add(residual);
      auto prim = primitive_integer_vector(residual);
      std::vector<Rational> primq(prim.size());
      for (std::size_t k = 0; k < prim.size(); ++k) primq[k] = Rational(prim[k]);
      SyzygyColumn col;
      col.entries = tuple_from_coordinates(primq, src, t);
      col.total_degree = t;
      basis.generators.push_back(std::move(col));
    }
  }
  return basis;
}

SyzygyBasis syzygies_default(const std::vector<Form>& row) {
  int dmax = 0;
  for (const auto& f : row) dmax = std::max(dmax, f.degree());
  return syzygies_up_to(row, dmax + 3);
}

bool syzygy_module_contains(const SyzygyBasis& basis,
                            const std::vector<Form>& column, int total_degree) {
  const auto src = [&] {
    std::vector<int> tw;
    for (int g : basis.input_degrees) tw.push_back(-g);
    return tw;
  }();
  RowSpan span(static_cast<std::size_t>(graded_dim(src, total_degree)));
  for (const auto& gen : basis.generators) {
    int shift = total_degree - gen.total_degree;
    if (shift < 0) continue;
    for (const auto& m : monomials_of_degree(shift)) {
      Form mono = Form::term(1, m.e[0], m.e[1], m.e[2]);
      std::vector<Form> shifted;
      for (const auto& e : gen.entries)
        shifted.push_back(e.is_zero() ? Form() : e * mono);
      span.add(tuple_coordinates(shifted, src, total_degree));
    }
  }
  return span.contains(tuple_coordinates(column, src, total_degree));
}

int syzygy_module_dim(const SyzygyBasis& basis, int t) {
  const auto src = [&] {
    std::vector<int> tw;
    for (int g : basis.input_degrees) tw.push_back(-g);
    return tw;
  }();
  RowSpan span(static_cast<std::size_t>(graded_dim(src, t)));
  for (const auto& gen : basis.generators) {
    int shift = t - gen.total_degree;
    if (shift < 0) continue;
    for (const auto& m : monomials_of_degree(shift)) {
      Form mono = Form::term(1, m.e[0], m.e[1], m.e[2]);
      std::vector<Form> shifted;
      for (const auto& e : gen.entries)
        shifted.push_back(e.is_zero() ? Form() : e * mono);
      span.add(tuple_coordinates(shifted, src, t));
    }
  }
  return static_cast<int>(span.dim());
}

}  // namespace logtangent
