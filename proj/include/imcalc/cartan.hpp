#pragma once

#include <span>
#include <vector>

#include "imcalc/alternating.hpp"

namespace imcalc {

/// Differential k-form on a chart; slot i is the coordinate differential dx^i.
using DifferentialForm = Alternating<FormTag>;
/// Multivector field on a chart; slot i is the coordinate field d/dx^i.
using Multivector = Alternating<MultivectorTag>;
/// A multivector of degree 1.
using VectorField = Multivector;

DifferentialForm zero_form(const ChartPtr& chart, std::size_t degree);
/// The 0-form carrying `f` (the chart of `f` is used).
DifferentialForm function_form(const Polynomial& f);
DifferentialForm dx(const ChartPtr& chart, std::size_t index);
DifferentialForm dx(const ChartPtr& chart, std::string_view name);
/// Value of a 0-form.
Polynomial scalar(const DifferentialForm& f);

Multivector zero_multivector(const ChartPtr& chart, std::size_t degree);
Multivector function_multivector(const Polynomial& f);
VectorField partial(const ChartPtr& chart, std::size_t index);
VectorField partial(const ChartPtr& chart, std::string_view name);
VectorField vector_field(const ChartPtr& chart, const std::vector<Polynomial>& components);
Polynomial component(const VectorField& X, std::size_t index);
Polynomial scalar(const Multivector& f);

/// Re-expresses a form or multivector on another chart, matching both the
/// slots and the coefficient variables by coordinate name. Throws ChartError
/// if a coordinate in use is missing from `target`.
DifferentialForm transfer(const DifferentialForm& a, const ChartPtr& target);
Multivector transfer(const Multivector& a, const ChartPtr& target);

DifferentialForm exterior_derivative(const DifferentialForm& a);

/// Pullback of a form on the chart of `a` along the polynomial map whose
/// i-th component `map[i]` (a polynomial on `source`) gives coordinate i.
DifferentialForm pullback(const DifferentialForm& a, const ChartPtr& source, const std::vector<Polynomial>& map);

/// Directional derivative X(f).
Polynomial apply(const VectorField& X, const Polynomial& f);

/// Interior product i_X a. On f dx^{i_1}^...^dx^{i_k} it is
/// sum_s (-1)^{s-1} X^{i_s} f dx^{i_1}^..(omit i_s)..^dx^{i_k}.
DifferentialForm contract(const VectorField& X, const DifferentialForm& a);

/// i_a P for a 1-form a, contracting the first slot of P.
Multivector contract(const DifferentialForm& a, const Multivector& P);

/// I^U_{m,r} = i_{U_m} ... i_{U_r} with 1-based m and r; i_{U_r} acts first.
/// r = m + 1 gives the identity.
DifferentialForm iterated_contract(std::span<const VectorField> U, std::size_t m, std::size_t r,
                                   const DifferentialForm& a);

/// a(U_1, ..., U_k) = i_{U_k} ... i_{U_1} a, for a of degree k = U.size().
Polynomial evaluate(const DifferentialForm& a, std::span<const VectorField> U);

/// P(a_1, ..., a_k) = i_{a_k} ... i_{a_1} P.
Polynomial evaluate(const Multivector& P, std::span<const DifferentialForm> a);

/// L_X = i_X d + d i_X.
DifferentialForm lie_derivative(const VectorField& X, const DifferentialForm& a);
/// L_X P = [X, P].
Multivector lie_derivative(const VectorField& X, const Multivector& P);

/// Schouten-Nijenhuis bracket, degree p + q - 1, with
///   [P,Q] = -(-1)^{(p-1)(q-1)} [Q,P],
///   [P, Q^R] = [P,Q]^R + (-1)^{(p-1)q} Q^[P,R],
/// [X,f] = X(f) and the Jacobi-Lie bracket on vector fields.
Multivector schouten(const Multivector& P, const Multivector& Q);
VectorField lie_bracket(const VectorField& X, const VectorField& Y);

/// Residuals (left side minus right side) of the three operator identities
/// used throughout the IM computations. Each vanishes identically for any
/// vector fields U_1..U_m, X, function f and form a.
namespace identities {

/// I_{m,1} d a - sum_l (-1)^{l+1} I_{m,l+1} L_{U_l} I_{l-1,1} a - (-1)^m d I_{m,1} a
DifferentialForm cartan_residual(std::span<const VectorField> U, const DifferentialForm& a);
/// L_X I_{m,1} a - sum_l I_{m,l+1} i_{[X,U_l]} I_{l-1,1} a - I_{m,1} L_X a
DifferentialForm lie_residual(const VectorField& X, std::span<const VectorField> U, const DifferentialForm& a);
/// I_{m,1}(df^a) - sum_l (-1)^{l+1} df(U_l) I_{m,l+1} I_{l-1,1} a - (-1)^m df^I_{m,1} a
DifferentialForm wedge_residual(const Polynomial& f, std::span<const VectorField> U, const DifferentialForm& a);

}  // namespace identities

}  // namespace imcalc
