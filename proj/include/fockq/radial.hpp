#pragma once

#include <vector>

#include "fockq/normal_form.hpp"
#include "fockq/symbol.hpp"

namespace fockq {

/// Diagonal Toeplitz entries of a radial symbol in the monomial basis,
///   s_k(f) = (1/k!) int_0^inf f(sqrt(4 t u)) u^k e^{-u} du,   k in [k0, k1).
/// Closed forms are used when the symbol has a radial-closed normal form
/// (phases times |z|^2p, step functions via incomplete gamma); otherwise the
/// integral runs on a windowed Gauss-Legendre grid around the Gamma(k+1) mode.
std::vector<cplx> radial_spectrum(const Symbol& f, double t, int k0, int k1);

std::vector<cplx> radial_spectrum_closed(const NormalForm& nf, double t, int k0, int k1);
std::vector<cplx> radial_spectrum_numeric(const Symbol& f, double t, int k0, int k1);

/// Heat transform of a radial-closed normal form at w:
///   sum_j Poisson_j(|w|^2 / 4t) * s_j(f),
/// the Berezin symbol of the diagonal operator on the coherent state at w.
cplx radial_heat(const NormalForm& nf, double t, cplx w);

}  // namespace fockq
