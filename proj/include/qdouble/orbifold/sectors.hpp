#pragma once

#include <utility>
#include <vector>

#include "qdouble/linalg.hpp"
#include "qdouble/orbifold/untwisted.hpp"
#include "qdouble/quantum_double.hpp"

namespace qdouble {

/// X_g spanned by e_(x,y) with y^-1 x y = g. Basis vector y is (y g y^-1, y).
struct TwistedSector {
  Element g = 0;
  std::vector<std::pair<Element, Element>> basis;
  /// z e_(x,y) = e_(zxz^-1, zy), weight of e_(x,y) is x.
  DoubleModule module;
  /// |G| x |G|^2 matrix of mu: delta_h (x) e_(x,y) -> [h = y] e_(x,y).
  MonomialMatrixXcd a_action;

  int dimension() const { return module.dimension; }
};

/// Builds X_g and verifies the module laws of the A-action, that it is a map
/// in Rep D(G), the basis census and the g-twisted condition. Throws
/// TheoremViolation.
TwistedSector build_X(const AlgebraObject& a, Element g);

/// max |mu R^2 - mu (pi_(t^-1) (x) id)| on A (x) X.
double twisted_residual(const AlgebraObject& a, const DoubleModule& x, const MonomialMatrixXcd& a_action, Element t);

/// The unique t for which X is t-twisted. Throws NotASimpleSectorError when
/// no candidate or more than one passes within `tol`.
Element detect_twist(const AlgebraObject& a, const DoubleModule& x, const MonomialMatrixXcd& a_action,
                     double tol = 1e-10);

/// A-action of X^h: mu (pi_h (x) id).
MonomialMatrixXcd precompose_action(const AlgebraObject& a, const MonomialMatrixXcd& a_action, Element h);

/// Right action mu R^-1_(A,X): X (x) A -> X, column j |G| + h.
MonomialMatrixXcd right_action(const AlgebraObject& a, const TwistedSector& x);

/// mu-tilde: X_g (x) X_h -> X_gh, e_(x1,y1) (x) e_(x2,y2) -> [y1 = y2] e_(x1 x2, y1).
MonomialMatrixXcd mu_tilde(const GroupTable& g, const TwistedSector& x, const TwistedSector& y, const TwistedSector& xy);

struct MuTildeReport {
  /// dim of the D(G)-equivariant, left A-linear, A-balanced maps X_g (x) X_h -> X_gh
  int hom_dimension = 0;
  /// Distance of mu-tilde from the solution space.
  double formula_residual = 0.0;
  /// dim X_g (x)_A X_h
  int quotient_dimension = 0;
  /// mu-tilde kills the balancing relations and is bijective on the quotient.
  bool isomorphism = false;
};

/// Throws TheoremViolation unless the Hom space is one-dimensional, contains
/// mu-tilde and mu-tilde descends to an isomorphism X_g (x)_A X_h = X_gh.
MuTildeReport check_mu_tilde(const AlgebraObject& a, const TwistedSector& x, const TwistedSector& y,
                             const TwistedSector& xy, const MonomialMatrixXcd& mu);

/// phi_x(g): X_x -> X_(gxg^-1), e_(a,b) -> e_(a, b g^-1).
MonomialMatrixXcd phi_map(const GroupTable& g, const TwistedSector& x, const TwistedSector& target, Element h);

}  // namespace qdouble
