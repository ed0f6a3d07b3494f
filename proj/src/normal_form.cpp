#include "fockq/normal_form.hpp"

#include <algorithm>
#include <cmath>

namespace fockq {

namespace {

constexpr std::size_t kMaxTerms = 4096;

using Form = std::optional<NormalForm>;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void push_poly(std::vector<PolyTerm>& out, const PolyTerm& t) {
  if (t.c == cplx(0.0)) return;
  for (auto& p : out) {
    if (p.a == t.a && p.b == t.b && p.alpha == t.alpha) {
      p.c += t.c;
      return;
    }
  }
  out.push_back(t);
}

void push_wave(NormalForm& f, const WaveTerm& w) {
  if (w.c == cplx(0.0)) return;
  if (w.xi == cplx(0.0)) {
    push_poly(f.poly, PolyTerm{w.c});
    return;
  }
  for (auto& p : f.waves) {
    if (p.xi == w.xi) {
      p.c += w.c;
      return;
    }
  }
  f.waves.push_back(w);
}

/// Pointwise combination of two step functions on the merged breaks.
template <class Op>
ShellForm combine(const ShellForm& l, const ShellForm& r, Op op) {
  ShellForm out;
  std::set_union(l.breaks.begin(), l.breaks.end(), r.breaks.begin(), r.breaks.end(),
                 std::back_inserter(out.breaks));
  out.values.reserve(out.breaks.size() + 1);
  // Value on [breaks[i-1], breaks[i]) is the value at any interior radius;
  // sample at the left end (right-closed convention).
  out.values.push_back(op(l.values.front(), r.values.front()));
  for (double b : out.breaks) out.values.push_back(op(l.at(b), r.at(b)));
  return out;
}

ShellForm constant_shells(cplx c) { return ShellForm{{}, {c}}; }

bool all_constant(const std::vector<PolyTerm>& p) {
  return std::all_of(p.begin(), p.end(), [](const PolyTerm& t) { return t.is_constant(); });
}

cplx constant_sum(const std::vector<PolyTerm>& p) {
  cplx s = 0.0;
  for (const auto& t : p) s += t.c;
  return s;
}

Form add(const NormalForm& l, const NormalForm& r) {
  NormalForm out = l;
  for (const auto& t : r.poly) push_poly(out.poly, t);
  for (const auto& w : r.waves) push_wave(out, w);
  if (r.shells) {
    if (out.shells)
      out.shells = combine(*out.shells, *r.shells, [](cplx a, cplx b) { return a + b; });
    else
      out.shells = r.shells;
  }
  return out;
}

Form multiply(const NormalForm& l, const NormalForm& r) {
  NormalForm out;
  for (const auto& p : l.poly)
    for (const auto& q : r.poly) push_poly(out.poly, PolyTerm{p.c * q.c, p.a + q.a, p.b + q.b, p.alpha + q.alpha});
  for (const auto& w : l.waves)
    for (const auto& v : r.waves) push_wave(out, WaveTerm{w.c * v.c, w.xi + v.xi});

  // Cross terms poly x wave and poly x shells only close for constant polys.
  auto poly_times_waves = [&](const std::vector<PolyTerm>& p, const std::vector<WaveTerm>& w) {
    if (w.empty() || p.empty()) return true;
    if (!all_constant(p)) return false;
    const cplx c = constant_sum(p);
    for (const auto& v : w) push_wave(out, WaveTerm{c * v.c, v.xi});
    return true;
  };
  if (!poly_times_waves(l.poly, r.waves) || !poly_times_waves(r.poly, l.waves)) return std::nullopt;

  if (!l.waves.empty() && r.shells) return std::nullopt;
  if (!r.waves.empty() && l.shells) return std::nullopt;

  std::optional<ShellForm> shells;
  auto add_shells = [&](const ShellForm& s) {
    shells = shells ? combine(*shells, s, [](cplx a, cplx b) { return a + b; }) : s;
  };
  auto poly_times_shells = [&](const std::vector<PolyTerm>& p, const std::optional<ShellForm>& s) {
    if (!s || p.empty()) return true;
    if (!all_constant(p)) return false;
    add_shells(combine(*s, constant_shells(constant_sum(p)), [](cplx a, cplx b) { return a * b; }));
    return true;
  };
  if (!poly_times_shells(l.poly, r.shells) || !poly_times_shells(r.poly, l.shells)) return std::nullopt;
  if (l.shells && r.shells) add_shells(combine(*l.shells, *r.shells, [](cplx a, cplx b) { return a * b; }));
  out.shells = shells;

  if (out.poly.size() > kMaxTerms || out.waves.size() > kMaxTerms) return std::nullopt;
  return out;
}

NormalForm conjugate(const NormalForm& f) {
  NormalForm out;
  for (const auto& p : f.poly) push_poly(out.poly, PolyTerm{std::conj(p.c), p.b, p.a, -p.alpha});
  for (const auto& w : f.waves) push_wave(out, WaveTerm{std::conj(w.c), -w.xi});
  if (f.shells) {
    ShellForm s = *f.shells;
    for (auto& v : s.values) v = std::conj(v);
    out.shells = s;
  }
  return out;
}

NormalForm scaled(const NormalForm& f, double s) {
  NormalForm out;
  for (const auto& p : f.poly)
    push_poly(out.poly, PolyTerm{p.c * std::pow(s, p.a + p.b), p.a, p.b, p.alpha * s * s});
  for (const auto& w : f.waves) push_wave(out, WaveTerm{w.c, w.xi * s});
  if (f.shells) {
    ShellForm sh = *f.shells;
    for (auto& b : sh.breaks) b /= s;
    out.shells = sh;
  }
  return out;
}

cplx ipow(cplx z, int n) {
  cplx r = 1.0;
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

double binomial(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

/// z -> f(w - z)
Form translated(const NormalForm& f, cplx w) {
  NormalForm out;
  for (const auto& p : f.poly) {
    if (p.alpha != 0.0) return std::nullopt;
    // (w - z)^a (conj w - zbar)^b
    for (int i = 0; i <= p.a; ++i)
      for (int j = 0; j <= p.b; ++j) {
        const cplx c = p.c * binomial(p.a, i) * binomial(p.b, j) * ipow(w, p.a - i) *
                       ipow(std::conj(w), p.b - j) * std::pow(-1.0, i + j);
        push_poly(out.poly, PolyTerm{c, i, j, 0.0});
      }
  }
  for (const auto& v : f.waves)
    push_wave(out, WaveTerm{v.c * std::exp(cplx(0.0, (w * std::conj(v.xi)).real())), -v.xi});
  if (f.shells) {
    if (w != cplx(0.0)) return std::nullopt;
    out.shells = f.shells;
  }
  if (out.poly.size() > kMaxTerms) return std::nullopt;
  return out;
}

Form build(const Symbol& f) {
  return std::visit(
      overloaded{
          [](const node::Constant& n) -> Form {
            NormalForm out;
            push_poly(out.poly, PolyTerm{n.value});
            return out;
          },
          [](const node::CoordZ&) -> Form { return NormalForm{{PolyTerm{1.0, 1, 0, 0.0}}, {}, {}}; },
          [](const node::CoordZbar&) -> Form { return NormalForm{{PolyTerm{1.0, 0, 1, 0.0}}, {}, {}}; },
          [](const node::RadialPiecewise& n) -> Form {
            return NormalForm{{}, {}, ShellForm{n.breaks, n.values}};
          },
          [](const node::QuadraticPhase& n) -> Form {
            return NormalForm{{PolyTerm{1.0, 0, 0, n.alpha}}, {}, {}};
          },
          [](const node::PlaneWave& n) -> Form {
            NormalForm out;
            push_wave(out, WaveTerm{1.0, n.xi});
            return out;
          },
          [](const node::RadialSampled&) -> Form { return std::nullopt; },
          [](const node::Sum& n) -> Form {
            auto l = build(*n.l);
            if (!l) return std::nullopt;
            auto r = build(*n.r);
            if (!r) return std::nullopt;
            return add(*l, *r);
          },
          [](const node::Product& n) -> Form {
            auto l = build(*n.l);
            if (!l) return std::nullopt;
            auto r = build(*n.r);
            if (!r) return std::nullopt;
            return multiply(*l, *r);
          },
          [](const node::Conjugate& n) -> Form {
            auto s = build(*n.s);
            if (!s) return std::nullopt;
            return conjugate(*s);
          },
          [](const node::Scaled& n) -> Form {
            auto s = build(*n.s);
            if (!s) return std::nullopt;
            return scaled(*s, n.factor);
          },
          [](const node::Translated& n) -> Form {
            auto s = build(*n.s);
            if (!s) return std::nullopt;
            return translated(*s, n.w);
          },
      },
      f.node());
}

}  // namespace

cplx ShellForm::at(double r) const {
  const auto idx = std::upper_bound(breaks.begin(), breaks.end(), r) - breaks.begin();
  return values[static_cast<std::size_t>(idx)];
}

bool NormalForm::radial_closed() const {
  return waves.empty() &&
         std::all_of(poly.begin(), poly.end(), [](const PolyTerm& p) { return p.a == p.b; });
}

cplx NormalForm::eval(cplx z) const {
  cplx s = 0.0;
  const double r2 = std::norm(z);
  for (const auto& p : poly)
    s += p.c * ipow(z, p.a) * ipow(std::conj(z), p.b) * std::exp(cplx(0.0, p.alpha * r2));
  for (const auto& w : waves) s += w.c * std::exp(cplx(0.0, (z * std::conj(w.xi)).real()));
  if (shells) s += shells->at(std::sqrt(r2));
  return s;
}

std::optional<NormalForm> normal_form(const Symbol& f) { return build(f); }

}  // namespace fockq
