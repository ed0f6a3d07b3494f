#pragma once

#include <optional>
#include <vector>

#include "fockq/symbol.hpp"

namespace fockq {

/// c * z^a * zbar^b * exp(i alpha |z|^2)
struct PolyTerm {
  cplx c;
  int a = 0;
  int b = 0;
  double alpha = 0.0;

  bool is_constant() const { return a == 0 && b == 0 && alpha == 0.0; }
};

/// c * exp(i Re(z conj(xi))), xi != 0
struct WaveTerm {
  cplx c;
  cplx xi;
};

/// Radial step function; values.size() == breaks.size() + 1 (see
/// node::RadialPiecewise). The value at the origin is dropped: every
/// quantity computed from a normal form is an integral.
struct ShellForm {
  std::vector<double> breaks;
  std::vector<cplx> values;

  cplx at(double r) const;
};

/// A symbol rewritten, almost everywhere, as
///   sum(poly) + sum(waves) + shells.
/// Each family has closed-form Gaussian moments, which is what the matrix and
/// heat paths exploit.
struct NormalForm {
  std::vector<PolyTerm> poly;
  std::vector<WaveTerm> waves;
  std::optional<ShellForm> shells;

  /// Radial with closed-form diagonal moments: no waves, every poly term has a == b.
  bool radial_closed() const;
  cplx eval(cplx z) const;
};

/// Rewrites f when its tree stays inside the closed families; nullopt when a
/// product or translation leaves them (e.g. shells times a phase, sampled
/// radial profiles, translated shells).
std::optional<NormalForm> normal_form(const Symbol& f);

}  // namespace fockq
