#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace fockq {

using cplx = std::complex<double>;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

class Symbol;

namespace node {

struct Constant {
  cplx value;
};
struct CoordZ {};
struct CoordZbar {};

/// Piecewise constant in |z|. Shell i covers [breaks[i-1], breaks[i]) with
/// breaks[-1] = 0 and breaks[n] = inf, so values.size() == breaks.size() + 1.
struct RadialPiecewise {
  std::vector<double> breaks;
  std::vector<cplx> values;
  cplx value_at_zero;
  std::string origin;  // e.g. "radial_dyadic(24)"; used by the printer
};

/// exp(i * alpha * |z|^2)
struct QuadraticPhase {
  double alpha;
};

/// exp(i * Re(z * conj(xi)))
struct PlaneWave {
  cplx xi;
};

struct RadialSampled {
  std::function<cplx(double)> g;
  double bound;
  std::string name;
};

struct Sum {
  std::shared_ptr<const Symbol> l, r;
};
struct Product {
  std::shared_ptr<const Symbol> l, r;
};
struct Conjugate {
  std::shared_ptr<const Symbol> s;
};
/// z -> s(z * factor)
struct Scaled {
  std::shared_ptr<const Symbol> s;
  double factor;
};
/// z -> s(w - z)
struct Translated {
  std::shared_ptr<const Symbol> s;
  cplx w;
};

using Node = std::variant<Constant, CoordZ, CoordZbar, RadialPiecewise, QuadraticPhase, PlaneWave,
                          RadialSampled, Sum, Product, Conjugate, Scaled, Translated>;

}  // namespace node

/// Immutable expression tree for a function on the complex plane. Copies share
/// the underlying nodes, so passing by value is cheap and thread safe.
class Symbol {
 public:
  explicit Symbol(node::Node n);

  const node::Node& node() const { return *node_; }

  template <class T>
  const T* as() const {
    return std::get_if<T>(node_.get());
  }

 private:
  std::shared_ptr<const node::Node> node_;
};

// Constructors.
Symbol constant(cplx c);
Symbol coord_z();
Symbol coord_zbar();
Symbol radial_piecewise(std::vector<double> breaks, std::vector<cplx> values, cplx value_at_zero,
                        std::string origin = {});
Symbol quadratic_phase(double alpha);
Symbol plane_wave(cplx xi);
Symbol radial_sampled(std::function<cplx(double)> g, double bound, std::string name);
Symbol conj(const Symbol& s);
Symbol scale(const Symbol& f, double s);
Symbol translate(const Symbol& f, cplx w);

Symbol operator+(const Symbol& l, const Symbol& r);
Symbol operator*(const Symbol& l, const Symbol& r);
Symbol operator-(const Symbol& s);
Symbol operator-(const Symbol& l, const Symbol& r);

/// Dyadic-shell counterexample: +1 on 2^j <= |z| < 2^(j+1) for even j, -1 for
/// odd j, 0 at the origin. Shells are resolved for j in [-J-1, J]; the two
/// outermost values extend to 0 and to infinity.
Symbol radial_dyadic(int J);

/// Indicator of the open disk of the given radius (1 on |z| < radius).
Symbol disk_indicator(double radius);

/// Re f = (f + conj f) / 2.
Symbol real_part(const Symbol& f);

/// |z|^2 as z * zbar.
Symbol abs_z_squared();

/// Named radial profiles usable from the expression grammar via sampled(name).
std::optional<Symbol> named_radial_profile(const std::string& name);

cplx eval(const Symbol& f, cplx z);

bool is_radial(const Symbol& f);

/// True when the tree contains only Constant nodes (and algebra over them).
bool is_constant(const Symbol& f);

/// Sound upper bound on sup |f|, or nullopt when f may be unbounded.
std::optional<double> sup_bound(const Symbol& f);

/// Canonical text form; parse_symbol(to_string(f)) rebuilds the same tree.
std::string to_string(const Symbol& f);

/// Equispaced polar sampling grid: radii r_min..r_max (both included) times
/// n_angular angles 2*pi*l/n_angular. A zero radius contributes a single point.
struct SampleGrid {
  double r_min = 0.0;
  double r_max = 1.0;
  int n_radial = 64;
  int n_angular = 32;

  std::vector<cplx> points() const;
  std::vector<double> radii() const;
};

/// max |f(z) - f(w)| over a deterministic polar grid of about `samples` points
/// in the open disk |z - w| < radius. A lower bound of Osc_z(f).
double oscillation_at(const Symbol& f, cplx z, double radius = 1.0, int samples = 10000);

/// max |f| over the grid; exact for constants, unimodular phases/waves and
/// piecewise radial symbols.
double sup_norm_estimate(const Symbol& f, const SampleGrid& grid);

}  // namespace fockq
