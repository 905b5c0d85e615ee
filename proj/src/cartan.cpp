#include "imcalc/cartan.hpp"

#include "imcalc/errors.hpp"

namespace imcalc {

namespace {

std::size_t dim_of(const ChartPtr& chart) { return chart ? chart->dim() : 0; }

void require_same_chart(const ChartPtr& a, const ChartPtr& b, const char* op) {
  if (a && b && !same_chart(a, b)) throw ChartError(std::string(op) + ": operands live on different charts");
}

IndexTuple without(const IndexTuple& idx, std::size_t pos) {
  IndexTuple out;
  out.reserve(idx.size() - 1);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i != pos) out.push_back(idx[i]);
  }
  return out;
}

IndexTuple concat(std::uint16_t head, const IndexTuple& a, const IndexTuple& b) {
  IndexTuple out;
  out.reserve(1 + a.size() + b.size());
  out.push_back(head);
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Adds [Q, f] for a single term g d_J of Q into `out`:
// sum_t (-1)^{q-t} g (d_{J_t} f) d_{J without t}.
void add_bracket_with_function(Multivector& out, const IndexTuple& J, const Polynomial& g, const Polynomial& f,
                               int extra_sign) {
  const std::size_t q = J.size();
  for (std::size_t t = 0; t < q; ++t) {
    Polynomial c = g * f.diff(J[t]);
    if (c.is_zero()) continue;
    const bool odd = ((q - 1 - t) % 2) != 0;
    out.add_term(without(J, t), (odd != (extra_sign < 0)) ? -c : c);
  }
}

}  // namespace

DifferentialForm zero_form(const ChartPtr& chart, std::size_t degree) {
  return DifferentialForm(chart, dim_of(chart), degree);
}

DifferentialForm function_form(const Polynomial& f) {
  DifferentialForm out(f.chart(), dim_of(f.chart()), 0);
  out.add_term({}, f);
  return out;
}

DifferentialForm dx(const ChartPtr& chart, std::size_t index) {
  DifferentialForm out(chart, dim_of(chart), 1);
  out.add_term({static_cast<std::uint16_t>(index)}, Polynomial::constant(chart, Rational(1)));
  return out;
}

DifferentialForm dx(const ChartPtr& chart, std::string_view name) { return dx(chart, chart->index_of(name)); }

Polynomial scalar(const DifferentialForm& f) {
  if (f.degree() != 0) throw DomainError("scalar value requested from a form of positive degree");
  return f.coefficient({});
}

Multivector zero_multivector(const ChartPtr& chart, std::size_t degree) {
  return Multivector(chart, dim_of(chart), degree);
}

Multivector function_multivector(const Polynomial& f) {
  Multivector out(f.chart(), dim_of(f.chart()), 0);
  out.add_term({}, f);
  return out;
}

VectorField partial(const ChartPtr& chart, std::size_t index) {
  VectorField out(chart, dim_of(chart), 1);
  out.add_term({static_cast<std::uint16_t>(index)}, Polynomial::constant(chart, Rational(1)));
  return out;
}

VectorField partial(const ChartPtr& chart, std::string_view name) { return partial(chart, chart->index_of(name)); }

VectorField vector_field(const ChartPtr& chart, const std::vector<Polynomial>& components) {
  if (components.size() != dim_of(chart)) throw DomainError("vector field needs one component per coordinate");
  VectorField out(chart, dim_of(chart), 1);
  for (std::size_t i = 0; i < components.size(); ++i) {
    out.add_term({static_cast<std::uint16_t>(i)}, components[i].embed(chart));
  }
  return out;
}

Polynomial component(const VectorField& X, std::size_t index) {
  if (X.degree() != 1) throw DomainError("component of a non-vector multivector");
  return X.coefficient({static_cast<std::uint16_t>(index)});
}

Polynomial scalar(const Multivector& f) {
  if (f.degree() != 0) throw DomainError("scalar value requested from a multivector of positive degree");
  return f.coefficient({});
}

namespace {

template <class Tag>
Alternating<Tag> transfer_impl(const Alternating<Tag>& a, const ChartPtr& target) {
  Alternating<Tag> out(target, dim_of(target), a.degree());
  const auto& source = a.chart();
  for (const auto& [idx, c] : a.coefficients()) {
    IndexTuple mapped;
    mapped.reserve(idx.size());
    for (auto i : idx) {
      mapped.push_back(static_cast<std::uint16_t>(target->index_of(source->coordinate(i).name)));
    }
    out.add_term(std::move(mapped), c.embed(target));
  }
  return out;
}

}  // namespace

DifferentialForm transfer(const DifferentialForm& a, const ChartPtr& target) { return transfer_impl(a, target); }
Multivector transfer(const Multivector& a, const ChartPtr& target) { return transfer_impl(a, target); }

DifferentialForm exterior_derivative(const DifferentialForm& a) {
  DifferentialForm out(a.chart(), a.slots(), a.degree() + 1);
  for (const auto& [idx, c] : a.coefficients()) {
    for (std::size_t j = 0; j < a.slots(); ++j) {
      Polynomial dc = c.diff(j);
      if (dc.is_zero()) continue;
      IndexTuple t;
      t.reserve(idx.size() + 1);
      t.push_back(static_cast<std::uint16_t>(j));
      t.insert(t.end(), idx.begin(), idx.end());
      out.add_term(std::move(t), dc);
    }
  }
  return out;
}

DifferentialForm pullback(const DifferentialForm& a, const ChartPtr& source, const std::vector<Polynomial>& map) {
  if (map.size() != a.slots()) throw DomainError("pullback map needs one component per target coordinate");
  std::vector<DifferentialForm> differentials;
  for (const auto& m : map) differentials.push_back(exterior_derivative(function_form(m.embed(source))));
  DifferentialForm out = zero_form(source, a.degree());
  for (const auto& [idx, c] : a.coefficients()) {
    DifferentialForm term = function_form(compose(c, map, source));
    for (auto i : idx) term = wedge(term, differentials[i]);
    out += term;
  }
  return out;
}

Polynomial apply(const VectorField& X, const Polynomial& f) {
  if (X.degree() != 1) throw DomainError("directional derivative along a non-vector multivector");
  require_same_chart(X.chart(), f.chart(), "apply");
  Polynomial out(X.chart() ? X.chart() : f.chart());
  for (const auto& [idx, c] : X.coefficients()) out += c * f.diff(idx[0]);
  return out;
}

namespace {

// Contraction of the first slot of `a` with the degree-one tensor `X` of the
// dual kind.
template <class Out, class In>
Out contract_first(const In& X, const Out& a) {
  require_same_chart(X.chart(), a.chart(), "contract");
  if (a.degree() == 0) return Out(a.chart(), a.slots(), 0);
  Out out(a.chart(), a.slots(), a.degree() - 1);
  for (const auto& [idx, c] : a.coefficients()) {
    for (std::size_t s = 0; s < idx.size(); ++s) {
      Polynomial x = X.coefficient({idx[s]});
      if (x.is_zero()) continue;
      Polynomial v = x * c;
      out.add_term(without(idx, s), (s % 2 == 0) ? v : -v);
    }
  }
  return out;
}

}  // namespace

DifferentialForm contract(const VectorField& X, const DifferentialForm& a) {
  if (X.degree() != 1) throw DomainError("contraction with a non-vector multivector");
  return contract_first(X, a);
}

Multivector contract(const DifferentialForm& a, const Multivector& P) {
  if (a.degree() != 1) throw DomainError("contraction with a form that is not a 1-form");
  return contract_first(a, P);
}

DifferentialForm iterated_contract(std::span<const VectorField> U, std::size_t m, std::size_t r,
                                   const DifferentialForm& a) {
  if (r == 0 || r > m + 1 || m > U.size()) throw DomainError("iterated contraction range out of bounds");
  DifferentialForm out = a;
  for (std::size_t l = r; l <= m; ++l) out = contract(U[l - 1], out);
  return out;
}

Polynomial evaluate(const DifferentialForm& a, std::span<const VectorField> U) {
  if (a.degree() != U.size()) throw DomainError("form evaluated on the wrong number of vectors");
  return scalar(iterated_contract(U, U.size(), 1, a));
}

Polynomial evaluate(const Multivector& P, std::span<const DifferentialForm> a) {
  if (P.degree() != a.size()) throw DomainError("multivector evaluated on the wrong number of forms");
  Multivector out = P;
  for (const auto& form : a) out = contract(form, out);
  return scalar(out);
}

DifferentialForm lie_derivative(const VectorField& X, const DifferentialForm& a) {
  if (a.degree() == 0) return function_form(apply(X, scalar(a)));
  return contract(X, exterior_derivative(a)) + exterior_derivative(contract(X, a));
}

Multivector lie_derivative(const VectorField& X, const Multivector& P) {
  if (X.degree() != 1) throw DomainError("Lie derivative along a non-vector multivector");
  return schouten(X, P);
}

Multivector schouten(const Multivector& P, const Multivector& Q) {
  require_same_chart(P.chart(), Q.chart(), "schouten");
  const ChartPtr chart = P.chart() ? P.chart() : Q.chart();
  const std::size_t p = P.degree();
  const std::size_t q = Q.degree();
  if (p == 0 && q == 0) return zero_multivector(chart, 0);
  Multivector out(chart, dim_of(chart), p + q - 1);

  if (p == 0 || q == 0) {
    // [Q, f] directly, and [f, Q] = (-1)^q [Q, f].
    const Multivector& V = (p == 0) ? Q : P;
    const Multivector& F = (p == 0) ? P : Q;
    const int sign = (p == 0 && q % 2 == 1) ? -1 : 1;
    const Polynomial f = F.coefficient({});
    for (const auto& [J, g] : V.coefficients()) add_bracket_with_function(out, J, g, f, sign);
    return out;
  }

  // Write each term as (f d_{I_1}) ^ d_{I_2} ^ ... and expand
  // [X_1^..^X_p, Y_1^..^Y_q] = sum_{s,t} (-1)^{s+t} [X_s,Y_t] ^ X_{!s} ^ Y_{!t}.
  // Only brackets involving X_1 or Y_1 survive.
  for (const auto& [I, f] : P.coefficients()) {
    for (const auto& [J, g] : Q.coefficients()) {
      auto emit = [&](std::size_t s, std::size_t t, std::uint16_t head, const Polynomial& c) {
        if (c.is_zero()) return;
        const bool odd = ((s + t) % 2) != 0;
        out.add_term(concat(head, without(I, s), without(J, t)), odd ? -c : c);
      };
      // s = t = 0: [f d_a, g d_b] = f d_a(g) d_b - g d_b(f) d_a
      emit(0, 0, J[0], f * g.diff(I[0]));
      emit(0, 0, I[0], -(g * f.diff(J[0])));
      // s = 0, t > 0: [f d_a, d_b] = -d_b(f) d_a; Y_1 keeps g
      for (std::size_t t = 1; t < q; ++t) emit(0, t, I[0], -(g * f.diff(J[t])));
      // s > 0, t = 0: [d_a, g d_b] = d_a(g) d_b; X_1 keeps f
      for (std::size_t s = 1; s < p; ++s) emit(s, 0, J[0], f * g.diff(I[s]));
    }
  }
  return out;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  if (X.degree() != 1 || Y.degree() != 1) throw DomainError("Lie bracket of non-vector multivectors");
  return schouten(X, Y);
}

namespace identities {

DifferentialForm cartan_residual(std::span<const VectorField> U, const DifferentialForm& a) {
  const std::size_t m = U.size();
  DifferentialForm res = iterated_contract(U, m, 1, exterior_derivative(a));
  for (std::size_t l = 1; l <= m; ++l) {
    auto term = iterated_contract(U, m, l + 1, lie_derivative(U[l - 1], iterated_contract(U, l - 1, 1, a)));
    if (l % 2 == 1) {
      res -= term;
    } else {
      res += term;
    }
  }
  auto tail = exterior_derivative(iterated_contract(U, m, 1, a));
  if (m % 2 == 0) {
    res -= tail;
  } else {
    res += tail;
  }
  return res;
}

DifferentialForm lie_residual(const VectorField& X, std::span<const VectorField> U, const DifferentialForm& a) {
  const std::size_t m = U.size();
  DifferentialForm res = lie_derivative(X, iterated_contract(U, m, 1, a));
  for (std::size_t l = 1; l <= m; ++l) {
    res -= iterated_contract(U, m, l + 1, contract(lie_bracket(X, U[l - 1]), iterated_contract(U, l - 1, 1, a)));
  }
  res -= iterated_contract(U, m, 1, lie_derivative(X, a));
  return res;
}

DifferentialForm wedge_residual(const Polynomial& f, std::span<const VectorField> U, const DifferentialForm& a) {
  const std::size_t m = U.size();
  const DifferentialForm df = exterior_derivative(function_form(f.chart() ? f : f.embed(a.chart())));
  DifferentialForm res = iterated_contract(U, m, 1, wedge(df, a));
  for (std::size_t l = 1; l <= m; ++l) {
    const Polynomial dfU = scalar(contract(U[l - 1], df));
    auto term = dfU * iterated_contract(U, m, l + 1, iterated_contract(U, l - 1, 1, a));
    if (l % 2 == 1) {
      res -= term;
    } else {
      res += term;
    }
  }
  auto tail = wedge(df, iterated_contract(U, m, 1, a));
  if (m % 2 == 0) {
    res -= tail;
  } else {
    res += tail;
  }
  return res;
}

}  // namespace identities

}  // namespace imcalc
