// prototype.hpp -- unitary prototypes of doubly stochastic matrices: the
// bridge between reversible probabilistic evolution and quantum evolution.
// A unitary U is a prototype of S when |U_ij|^2 = S_ij entrywise.

#pragma once

#include "dsa/dsmat.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>

namespace dsa {

using ComplexMatrix = Eigen::MatrixXcd;

/// True iff U is unitary within tol (U U^dagger = I entrywise) and
/// |U_ij|^2 matches S_ij within tol for every entry.
bool is_prototype(const ComplexMatrix& u, const StochMatrix& s, double tol = 1e-8);

struct UnistochasticVerdict {
    bool yes = false;
    ComplexMatrix prototype;  // verified certificate when yes
};

/// Closed-form decision for 3x3 doubly stochastic matrices: the chain links
/// sqrt(S_1j * S_2j) must close a triangle. The triangle test is carried out
/// in exact rational arithmetic (squared form); on YES a prototype is built
/// from the triangle's angles and verified before being returned.
UnistochasticVerdict unistochastic_3x3(const StochMatrix& s);

/// Best-effort random-restart phase search: U is parametrized as
/// sqrt(S_ij) e^(i theta_ij), which makes the modulus condition automatic and
/// leaves the unitarity residual to minimize. Returns a matrix passing
/// is_prototype at tol, or nothing within the restart budget. Absence is not
/// a nonexistence proof (except at order 3, where unistochastic_3x3 decides).
std::optional<ComplexMatrix> search_prototype(const StochMatrix& s, long budget,
                                              std::uint64_t seed, double tol = 1e-8);

}  // namespace dsa
