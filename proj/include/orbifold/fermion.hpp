#pragma once

#include <vector>

#include "orbifold/fock.hpp"

namespace orbifold {

// One free fermion: psi modes in Z+1/2, {psi_m, psi_n} = delta_{m+n,0}, c = 1/2.
inline Rational central_charge() { return Rational(1, 2); }

int vacuum_state();
int psi_state();  // psi(-1/2)|0>
QVec omega_state();  // (1/2) psi(-3/2)psi(-1/2)|0>

// psi_n on NS states, n in Z + 1/2.
QVec fermion_mode(const FracExp& n, const QVec& s);

// L(n) = omega_(n+1) through the iterate engine.
QVec virasoro(long n, const QVec& s, VertexEngine& E = VertexEngine::shared(Sector::NS));
CVec virasoro(long n, const CVec& s, VertexEngine& E = VertexEngine::shared(Sector::NS));

// Y(v,x) materialized on NS sources of twice-level <= max_level2 for exponents in [lo, hi].
Field vertex_op(const QVec& v, const FracExp& lo, const FracExp& hi, int max_level2);

FracExp state_weight(const QVec& v);  // throws if v is not homogeneous
int state_parity(const QVec& v);      // throws if v is not parity-homogeneous

// V^{(x)k}: pure tensors as lists of NS basis ids.
using Pure = std::vector<int>;
template <class S>
using TensorVec = Lin<Pure, S>;
using TQVec = TensorVec<Rational>;
using TCVec = TensorVec<CycScalar>;

Pure slot_vector(int k, int j, int id);  // v^j, 1-based slot
int tensor_parity(const Pure& v);
FracExp tensor_weight(const Pure& v);
std::string tensor_label(const Pure& v);

// Coefficient of x^{-t-1} in Y(u,x)v with the Koszul sign of the tensor product.
TQVec tensor_mode(const Pure& u, const FracExp& t, const Pure& v, VertexEngine& E = VertexEngine::shared(Sector::NS));
// Y(u,x)v as exponent -> tensor state for exponents in [lo, hi].
std::map<FracExp, TQVec> tensor_vertex_op(const Pure& u, const Pure& v, const FracExp& lo, const FracExp& hi);

// Signed right action: slot i of v.g holds v_{g(i)}; g is 0-based images. (1 2 ... k) is {1,2,...,k-1,0}.
std::pair<int, Pure> permutation_action(const std::vector<int>& g, const Pure& v);
std::vector<int> cycle_permutation(int k);
std::vector<int> compose(const std::vector<int>& g1, const std::vector<int>& g2);  // (g1 g2)(i) = g1(g2(i))

}  // namespace orbifold
