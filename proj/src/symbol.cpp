#include "fockq/symbol.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <numbers>

#include "fockq/normal_form.hpp"

namespace fockq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::shared_ptr<const Symbol> share(const Symbol& s) { return std::make_shared<const Symbol>(s); }

}  // namespace

Symbol::Symbol(node::Node n) : node_(std::make_shared<const node::Node>(std::move(n))) {}

Symbol constant(cplx c) { return Symbol(node::Constant{c}); }
Symbol coord_z() { return Symbol(node::CoordZ{}); }
Symbol coord_zbar() { return Symbol(node::CoordZbar{}); }

Symbol radial_piecewise(std::vector<double> breaks, std::vector<cplx> values, cplx value_at_zero,
                        std::string origin) {
  if (values.size() != breaks.size() + 1)
    throw Error("radial_piecewise: need breaks.size() + 1 shell values");
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    if (!std::isfinite(breaks[i]) || breaks[i] < 0.0)
      throw Error("radial_piecewise: breaks must be finite and >= 0");
    if (i > 0 && !(breaks[i] > breaks[i - 1]))
      throw Error("radial_piecewise: breaks must be strictly increasing");
  }
  return Symbol(node::RadialPiecewise{std::move(breaks), std::move(values), value_at_zero,
                                      std::move(origin)});
}

Symbol quadratic_phase(double alpha) { return Symbol(node::QuadraticPhase{alpha}); }
Symbol plane_wave(cplx xi) { return Symbol(node::PlaneWave{xi}); }

Symbol radial_sampled(std::function<cplx(double)> g, double bound, std::string name) {
  if (!g) throw Error("radial_sampled: empty evaluation handle");
  return Symbol(node::RadialSampled{std::move(g), bound, std::move(name)});
}

Symbol conj(const Symbol& s) { return Symbol(node::Conjugate{share(s)}); }

Symbol scale(const Symbol& f, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw Error("scale: factor must be positive and finite");
  if (f.as<node::Constant>()) return f;
  if (const auto* sc = f.as<node::Scaled>()) return Symbol(node::Scaled{sc->s, sc->factor * s});
  return Symbol(node::Scaled{share(f), s});
}

Symbol translate(const Symbol& f, cplx w) { return Symbol(node::Translated{share(f), w}); }

Symbol operator+(const Symbol& l, const Symbol& r) { return Symbol(node::Sum{share(l), share(r)}); }
Symbol operator*(const Symbol& l, const Symbol& r) {
  return Symbol(node::Product{share(l), share(r)});
}
Symbol operator-(const Symbol& s) { return constant(-1.0) * s; }
Symbol operator-(const Symbol& l, const Symbol& r) { return l + (-r); }

Symbol radial_dyadic(int J) {
  if (J < 1 || J > 500) throw Error("radial_dyadic: J must lie in [1, 500]");
  auto parity = [](int j) { return (j % 2 == 0) ? cplx(1.0) : cplx(-1.0); };
  std::vector<double> breaks;
  std::vector<cplx> values;
  values.push_back(parity(-J - 1));
  for (int j = -J; j <= J; ++j) {
    breaks.push_back(std::ldexp(1.0, j));
    values.push_back(parity(j));
  }
  return radial_piecewise(std::move(breaks), std::move(values), 0.0,
                          "radial_dyadic(" + std::to_string(J) + ")");
}

Symbol disk_indicator(double radius) {
  if (!(radius > 0.0)) throw Error("disk_indicator: radius must be positive");
  char buf[64];
  std::snprintf(buf, sizeof buf, "indicator(%.17g)", radius);
  return radial_piecewise({radius}, {1.0, 0.0}, 1.0, buf);
}

Symbol real_part(const Symbol& f) { return constant(0.5) * (f + conj(f)); }

Symbol abs_z_squared() { return coord_z() * coord_zbar(); }

std::optional<Symbol> named_radial_profile(const std::string& name) {
  if (name == "sqrt_phase")
    return radial_sampled([](double r) { return std::exp(cplx(0.0, std::sqrt(r))); }, 1.0, name);
  if (name == "gauss")
    return radial_sampled([](double r) { return cplx(std::exp(-r * r)); }, 1.0, name);
  if (name == "bump")
    return radial_sampled([](double r) { return cplx(1.0 / (1.0 + r * r)); }, 1.0, name);
  return std::nullopt;
}

cplx eval(const Symbol& f, cplx z) {
  return std::visit(
      overloaded{
          [](const node::Constant& n) { return n.value; },
          [&](const node::CoordZ&) { return z; },
          [&](const node::CoordZbar&) { return std::conj(z); },
          [&](const node::RadialPiecewise& n) {
            const double r = std::abs(z);
            if (r == 0.0) return n.value_at_zero;
            const auto idx = std::upper_bound(n.breaks.begin(), n.breaks.end(), r) - n.breaks.begin();
            return n.values[static_cast<std::size_t>(idx)];
          },
          [&](const node::QuadraticPhase& n) { return std::exp(cplx(0.0, n.alpha * std::norm(z))); },
          [&](const node::PlaneWave& n) {
            return std::exp(cplx(0.0, (z * std::conj(n.xi)).real()));
          },
          [&](const node::RadialSampled& n) {
            cplx v;
            try {
              v = n.g(std::abs(z));
            } catch (const std::exception& e) {
              throw EvaluationError("sampled(" + n.name + "): " + e.what());
            }
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
              throw EvaluationError("sampled(" + n.name + "): non-finite value");
            return v;
          },
          [&](const node::Sum& n) { return eval(*n.l, z) + eval(*n.r, z); },
          [&](const node::Product& n) { return eval(*n.l, z) * eval(*n.r, z); },
          [&](const node::Conjugate& n) { return std::conj(eval(*n.s, z)); },
          [&](const node::Scaled& n) { return eval(*n.s, z * n.factor); },
          [&](const node::Translated& n) { return eval(*n.s, n.w - z); },
      },
      f.node());
}

namespace {

bool structurally_radial(const Symbol& f) {
  return std::visit(overloaded{
                        [](const node::Constant&) { return true; },
                        [](const node::CoordZ&) { return false; },
                        [](const node::CoordZbar&) { return false; },
                        [](const node::RadialPiecewise&) { return true; },
                        [](const node::QuadraticPhase&) { return true; },
                        [](const node::PlaneWave&) { return false; },
                        [](const node::RadialSampled&) { return true; },
                        [](const node::Sum& n) { return structurally_radial(*n.l) && structurally_radial(*n.r); },
                        [](const node::Product& n) { return structurally_radial(*n.l) && structurally_radial(*n.r); },
                        [](const node::Conjugate& n) { return structurally_radial(*n.s); },
                        [](const node::Scaled& n) { return structurally_radial(*n.s); },
                        [](const node::Translated& n) { return n.w == cplx(0.0) && structurally_radial(*n.s); },
                    },
                    f.node());
}

}  // namespace

bool is_radial(const Symbol& f) {
  if (structurally_radial(f)) return true;
  // Products such as z * zbar are radial only after normalization.
  const auto nf = normal_form(f);
  return nf && nf->radial_closed();
}

bool is_constant(const Symbol& f) {
  return std::visit(overloaded{
                        [](const node::Constant&) { return true; },
                        [](const node::Sum& n) { return is_constant(*n.l) && is_constant(*n.r); },
                        [](const node::Product& n) { return is_constant(*n.l) && is_constant(*n.r); },
                        [](const node::Conjugate& n) { return is_constant(*n.s); },
                        [](const node::Scaled& n) { return is_constant(*n.s); },
                        [](const node::Translated& n) { return is_constant(*n.s); },
                        [](const auto&) { return false; },
                    },
                    f.node());
}

std::optional<double> sup_bound(const Symbol& f) {
  using R = std::optional<double>;
  return std::visit(
      overloaded{
          [](const node::Constant& n) -> R { return std::abs(n.value); },
          [](const node::CoordZ&) -> R { return std::nullopt; },
          [](const node::CoordZbar&) -> R { return std::nullopt; },
          [](const node::RadialPiecewise& n) -> R {
            double b = std::abs(n.value_at_zero);
            for (auto v : n.values) b = std::max(b, std::abs(v));
            return b;
          },
          [](const node::QuadraticPhase&) -> R { return 1.0; },
          [](const node::PlaneWave&) -> R { return 1.0; },
          [](const node::RadialSampled& n) -> R {
            if (std::isfinite(n.bound)) return n.bound;
            return std::nullopt;
          },
          [](const node::Sum& n) -> R {
            auto a = sup_bound(*n.l), b = sup_bound(*n.r);
            if (a && b) return *a + *b;
            return std::nullopt;
          },
          [](const node::Product& n) -> R {
            auto a = sup_bound(*n.l), b = sup_bound(*n.r);
            if (a && b) return *a * *b;
            // 0 * unbounded stays 0
            if ((a && *a == 0.0) || (b && *b == 0.0)) return 0.0;
            return std::nullopt;
          },
          [](const node::Conjugate& n) -> R { return sup_bound(*n.s); },
          [](const node::Scaled& n) -> R { return sup_bound(*n.s); },
          [](const node::Translated& n) -> R { return sup_bound(*n.s); },
      },
      f.node());
}

namespace {

std::string fmt_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_cplx(cplx c) { return "const(" + fmt_real(c.real()) + "," + fmt_real(c.imag()) + ")"; }

}  // namespace

std::string to_string(const Symbol& f) {
  return std::visit(
      overloaded{
          [](const node::Constant& n) { return fmt_cplx(n.value); },
          [](const node::CoordZ&) { return std::string("z"); },
          [](const node::CoordZbar&) { return std::string("zbar"); },
          [](const node::RadialPiecewise& n) {
            if (!n.origin.empty()) return n.origin;
            std::string s = "piecewise([";
            for (std::size_t i = 0; i < n.breaks.size(); ++i)
              s += (i ? "," : "") + fmt_real(n.breaks[i]);
            s += "],[";
            for (std::size_t i = 0; i < n.values.size(); ++i)
              s += (i ? "," : "") + fmt_cplx(n.values[i]);
            return s + "]," + fmt_cplx(n.value_at_zero) + ")";
          },
          [](const node::QuadraticPhase& n) { return "phase(" + fmt_real(n.alpha) + ")"; },
          [](const node::PlaneWave& n) { return "planewave(" + fmt_cplx(n.xi) + ")"; },
          [](const node::RadialSampled& n) { return "sampled(" + n.name + ")"; },
          [](const node::Sum& n) { return "(" + to_string(*n.l) + "+" + to_string(*n.r) + ")"; },
          [](const node::Product& n) { return "(" + to_string(*n.l) + "*" + to_string(*n.r) + ")"; },
          [](const node::Conjugate& n) { return "conj(" + to_string(*n.s) + ")"; },
          [](const node::Scaled& n) { return "scale(" + to_string(*n.s) + "," + fmt_real(n.factor) + ")"; },
          [](const node::Translated& n) {
            return "translate(" + to_string(*n.s) + "," + fmt_cplx(n.w) + ")";
          },
      },
      f.node());
}

std::vector<double> SampleGrid::radii() const {
  std::vector<double> r;
  if (n_radial <= 1) {
    r.push_back(r_min);
    return r;
  }
  for (int i = 0; i < n_radial; ++i)
    r.push_back(r_min + (r_max - r_min) * static_cast<double>(i) / (n_radial - 1));
  return r;
}

std::vector<cplx> SampleGrid::points() const {
  std::vector<cplx> pts;
  const int na = std::max(1, n_angular);
  for (double r : radii()) {
    if (r == 0.0) {
      pts.emplace_back(0.0, 0.0);
      continue;
    }
    for (int l = 0; l < na; ++l)
      pts.push_back(std::polar(r, 2.0 * std::numbers::pi * l / na));
  }
  return pts;
}

double oscillation_at(const Symbol& f, cplx z, double radius, int samples) {
  if (!(radius > 0.0)) throw Error("oscillation_at: radius must be positive");
  if (samples < 1) throw Error("oscillation_at: samples must be positive");
  const int nr = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(samples))));
  const int na = std::max(1, (samples + nr - 1) / nr);
  const cplx fz = eval(f, z);
  double best = 0.0;
  for (int i = 1; i <= nr; ++i) {
    const double r = radius * i / (nr + 1);
    for (int l = 0; l < na; ++l) {
      const cplx w = z + std::polar(r, 2.0 * std::numbers::pi * l / na);
      best = std::max(best, std::abs(fz - eval(f, w)));
    }
  }
  return best;
}

double sup_norm_estimate(const Symbol& f, const SampleGrid& grid) {
  if (const auto* c = f.as<node::Constant>()) return std::abs(c->value);
  if (f.as<node::QuadraticPhase>() || f.as<node::PlaneWave>()) return 1.0;
  if (const auto* p = f.as<node::RadialPiecewise>()) {
    double b = 0.0;
    for (auto v : p->values) b = std::max(b, std::abs(v));
    return b;
  }
  double best = 0.0;
  for (const auto& z : grid.points()) best = std::max(best, std::abs(eval(f, z)));
  return best;
}

}  // namespace fockq
