#pragma once

#include "msqed/grid.hpp"

namespace msqed {

/// Discrete stand-ins for F(f)(k) = \int e^{-ik.x} f(x) dx and its inverse
/// f(x) = (2 pi)^{-3} \int e^{+ik.x} fhat(k) dk on the periodic box, with the
/// centered coordinates x in [-L/2, L/2). forward then inverse is the
/// identity; Parseval reads w_x sum |f|^2 = (2 pi)^{-3} w_k sum |fhat|^2.
ComplexField forward_transform(const ComplexField& f);
ComplexField inverse_transform(const ComplexField& fk);
ComplexField forward_transform(const RealField& f);
/// Inverse transform of conjugate-symmetric coefficients; imaginary residue
/// is dropped (it is checked in tests, not here).
RealField inverse_transform_real(const ComplexField& fk);

}  // namespace msqed
