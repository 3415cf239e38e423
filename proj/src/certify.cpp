#include "spinorlab/certify.hpp"

#include "spinorlab/flat_models.hpp"
#include "spinorlab/random.hpp"
#include "spinorlab/report.hpp"
#include "spinorlab/sphere_spectra.hpp"
#include "spinorlab/spin_rep.hpp"
#include "spinorlab/witt_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

namespace spinorlab {

namespace {

using json = nlohmann::json;
using Q = GaussianRational;

const Q kI = Q::i();

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Independent stream per (seed, suite, n).
Rng stream(std::uint64_t seed, const std::string& id, int n) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : id) h = (h ^ c) * 0x100000001B3ULL;
  return Rng(splitmix(seed ^ splitmix(h ^ splitmix(static_cast<std::uint64_t>(n)))));
}

class Recorder {
 public:
  Recorder(const std::string& id, const SuiteOptions& o, bool exact) {
    r_.id = id;
    r_.n_min = *o.n_min;
    r_.n_max = *o.n_max;
    r_.trials = *o.trials;
    r_.seed = o.seed;
    r_.tolerance = *o.tolerance;
    r_.exact = exact;
  }

  int trials() const { return r_.trials; }
  double tolerance() const { return r_.tolerance; }

  // Passes when residual < tolerance.
  bool check(double residual, int n, const std::string& what, const std::function<json()>& payload = {}) {
    ++r_.checks;
    if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
    r_.max_residual = std::max(r_.max_residual, residual);
    const bool ok = residual < r_.tolerance;
    if (!ok) fail(n, what, residual, payload);
    return ok;
  }

  bool check_exact(bool equal, double gap, int n, const std::string& what, const std::function<json()>& payload = {}) {
    ++r_.checks;
    const double residual = equal ? 0.0 : std::max(gap, std::numeric_limits<double>::min());
    r_.max_residual = std::max(r_.max_residual, residual);
    if (!equal) fail(n, what, residual, payload);
    return equal;
  }

  bool check_true(bool ok, int n, const std::string& what, const std::function<json()>& payload = {}) {
    return check_exact(ok, 1.0, n, what, payload);
  }

  void note(std::string s) { r_.notes.push_back(std::move(s)); }

  SuiteResult finish() {
    r_.failed_n.assign(failed_.begin(), failed_.end());
    r_.passed = r_.failures == 0 && r_.checks > 0;
    return std::move(r_);
  }

 private:
  void fail(int n, const std::string& what, double residual, const std::function<json()>& payload) {
    ++r_.failures;
    failed_.insert(n);
    if (r_.counterexample) return;
    json c = payload ? payload() : json::object();
    c["check"] = what;
    c["n"] = n;
    c["residual"] = residual;
    r_.counterexample = std::move(c);
  }

  SuiteResult r_;
  std::set<int> failed_;
};

template <class A>
double gap(const A& a, const A& b) {
  return max_abs_diff(a, b);
}

double gap(const IdealSpinor& a, const IdealSpinor& b) {
  double g = 0.0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) g = std::max(g, magnitude(a.coeffs[i] - b.coeffs[i]));
  return g;
}

json vector_json(const QVector& v) {
  json out = json::array();
  for (int k = 0; k < v.dim(); ++k) out.push_back({to_string(v[k].re), to_string(v[k].im)});
  return out;
}

json vector_json(const Vector<Complex>& v) {
  json out = json::array();
  for (int k = 0; k < v.dim(); ++k) out.push_back({v[k].real(), v[k].imag()});
  return out;
}

json ideal_json(const IdealSpinor& s) {
  json out = json::array();
  for (const auto& c : s.coeffs) out.push_back({to_string(c.re), to_string(c.im)});
  return out;
}

json spin_json(const SpinElement<Q>& u) {
  json out = json::array();
  for (const auto& v : u.factors()) out.push_back(vector_json(v));
  return out;
}

IdealSpinor random_ideal(Rng& rng, int n) {
  IdealSpinor s(n);
  for (auto& c : s.coeffs) c = random_scalar<Q>(rng);
  return s;
}

QVector random_normal(Rng& rng, int n) { return apply_j(embed(random_real_vector<Q>(rng, n), 2 * n)); }

// J(w) for w in J(R^n), as a vector of R^n.
QVector j_of_normal(const QVector& w) {
  const int n = w.dim() / 2;
  const QVector full = apply_j(w);
  QVector out(n);
  for (int k = 0; k < n; ++k) out[k] = full[k];
  return out;
}

Vector<Complex> to_complex_vector(const QVector& v) {
  Vector<Complex> out(v.dim());
  for (int k = 0; k < v.dim(); ++k) out[k] = to_complex(v[k]);
  return out;
}

double sparse_density(int n) { return n <= 3 ? 0.5 : (n == 4 ? 0.3 : 0.15); }

std::string n_label(int n) { return "n=" + std::to_string(n); }

// ---------------------------------------------------------------- eq1

SuiteResult suite_eq1(const SuiteOptions& o) {
  Recorder rec("eq1", o, true);
  for (int n = *o.n_min; n <= *o.n_max; ++n) {
    Rng rng = stream(o.seed, "eq1", n);
    auto intertwine = [&](const QVector& v, const CliffordElement<Q>& phi, int trial) {
      const auto img = chevalley_to_exterior(phi);
      const auto lhs = chevalley_to_exterior(v.to_clifford() * phi);
      const auto rhs = wedge(v, img) - contract(v, img);
      auto payload = [&] { return json{{"trial", trial}, {"v", vector_json(v)}, {"phi", to_json(phi)}}; };
      rec.check_exact(lhs == rhs, gap(lhs, rhs), n, "left vector action", payload);
      for (int p = 0; p <= n; ++p) {
        const auto part = phi.grade_part(p);
        if (part.is_zero()) continue;
        const auto hp = chevalley_to_exterior(part);
        const auto rl = chevalley_to_exterior(part * v.to_clifford());
        const auto rr = Q(p % 2 ? -1 : 1) * (wedge(v, hp) + contract(v, hp));
        rec.check_exact(rl == rr, gap(rl, rr), n, "right vector action", payload);
      }
      rec.check_exact(exterior_to_clifford(img) == phi, 0.0, n, "round trip", payload);
    };
    if (n <= 2) {
      for (int j = 0; j < n; ++j)
        for (BladeMask m = 0; m < (BladeMask{1} << n); ++m)
          intertwine(QVector::basis(n, j), CliffordElement<Q>::blade(n, m), -1);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const auto ea = CliffordElement<Q>::generator(n, a);
          const auto eb = CliffordElement<Q>::generator(n, b);
          const auto ac = ea * eb + eb * ea;
          rec.check_exact(ac == CliffordElement<Q>::scalar(n, Q(a == b ? -2 : 0)), 0.0, n, "defining relation");
        }
    }
    for (int t = 0; t < rec.trials(); ++t) {
      const auto phi = random_element<Q>(rng, n, sparse_density(n));
      intertwine(random_real_vector<Q>(rng, n), phi, t);
      const auto v = random_unit_vector<Q>(rng, n);
      rec.check_exact(v.to_clifford() * v.to_clifford() == CliffordElement<Q>::scalar(n, Q(-1)), 0.0, n, "unit vector squares to -1");
      if (n >= 2) {
        const auto u = random_spin_element<Q>(rng, n, 2);
        const auto lhs = chevalley_to_exterior(ad_action(u, phi));
        const auto rhs = exterior_power_action(ad_matrix(u), chevalley_to_exterior(phi));
        rec.check_exact(lhs == rhs, gap(lhs, rhs), n, "spin equivariance", [&] {
          return json{{"trial", t}, {"u", spin_json(u)}, {"phi", to_json(phi)}};
        });
      }
    }
  }
  return rec.finish();
}

// ---------------------------------------------------------------- lemma1

StructureKind tabulated_kind(int n) {
  switch (n % 8) {
    case 0: case 6: case 7: return StructureKind::Real;
    case 2: case 3: case 4: return StructureKind::Quaternionic;
    default: return StructureKind::Mixed;
  }
}

Eigen::VectorXcd random_spinor(Rng& rng, int d) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

SuiteResult suite_lemma1(const SuiteOptions& o) {
  Recorder rec("lemma1", o, false);
  for (int n = *o.n_min; n <= *o.n_max; ++n) {
    Rng rng = stream(o.seed, "lemma1", n);
    const auto rep = build_rep(n);
    const auto j = build_j(rep);
    const auto id = Eigen::MatrixXcd::Identity(rep.d, rep.d);
    rec.check((j.c * j.c.adjoint() - id).norm(), n, "unitary");
    const auto table = tabulated_kind(n);
    if (table != StructureKind::Mixed) {
      rec.check_true(j.kind == table, n, "kind matches table", [&] { return json{{"kind", to_string(j.kind)}}; });
      rec.check((j.square() - (table == StructureKind::Real ? 1.0 : -1.0) * id).norm(), n, "square");
    } else {
      rec.note(n_label(n) + ": no tabulated kind, solver found " + to_string(j.kind));
    }
    if (n <= 2) {
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          const Eigen::MatrixXcd g = rep.gammas[a] * rep.gammas[b];
          rec.check((g * j.c - j.c * g.conjugate()).norm(), n, "even generator intertwined");
        }
    }
    for (int t = 0; t < rec.trials(); ++t) {
      const auto us = random_spin_element<Complex>(rng, n, 2);
      const auto u = delta(rep, us);
      const auto s = random_spinor(rng, rep.d);
      rec.check((u * j.apply(s) - j.apply(u * s)).norm(), n, "commutes with spin", [&] { return json{{"trial", t}}; });
      rec.check((j.apply_inverse(j.apply(s)) - s).norm(), n, "bijective");
    }
  }
  return rec.finish();
}

// ---------------------------------------------------------------- eq4 / eq5

SuiteResult suite_eq4(const SuiteOptions& o) {
  Recorder rec("eq4", o, false);
  for (int n = *o.n_min; n <= *o.n_max; ++n) {
    Rng rng = stream(o.seed, "eq4", n);
    const auto rep = build_rep(n);
    const auto j = build_j(rep);
    const bool odd = rep.odd();
    double printed_worst = 0.0, flipped_worst = 0.0;

    auto run = [&](const Vector<Complex>& v, const CliffordElement<Complex>& phi, int trial) {
      const auto img = clif_to_tensor(rep, j, phi);
      rec.check(max_abs_diff(tensor_to_clif(rep, j, img), phi), n, "bijection");
      rec.check(tensor_distance(clif_to_tensor(rep, j, v.to_clifford() * phi), tensor_left(rep, delta(rep, v), img, odd)), n,
                "left action");
      const auto right = clif_to_tensor(rep, j, phi * v.to_clifford());
      const auto base = tensor_right(rep, delta(rep, v), img, odd);
      const double printed = tensor_distance(right, Complex(-1.0) * base);
      const double flipped = tensor_distance(right, base);
      printed_worst = std::max(printed_worst, printed);
      flipped_worst = std::max(flipped_worst, flipped);
      rec.check(printed, n, "right action sign", [&] {
        return json{{"trial", trial},
                    {"v", vector_json(v)},
                    {"phi", to_json(phi)},
                    {"residual_with_opposite_sign", flipped}};
      });
    };

    if (n <= 2)
      for (int k = 0; k < n; ++k)
        for (BladeMask m = 0; m < (BladeMask{1} << n); ++m)
          run(to_complex_vector(QVector::basis(n, k)), CliffordElement<Complex>::blade(n, m, 1.0), -1);

    for (int t = 0; t < rec.trials(); ++t) {
      const auto phi = to_complex_element(random_element<Q>(rng, n, 0.5));
      run(random_unit_vector<Complex>(rng, n), phi, t);
      const auto us = random_spin_element<Complex>(rng, n, 2);
      const auto u = delta(rep, us);
      const auto img = clif_to_tensor(rep, j, phi);
      rec.check(tensor_distance(clif_to_tensor(rep, j, us.element() * phi * us.inverse_element()),
                                tensor_right(rep, u, tensor_left(rep, u, img, false), false)),
                n, "two-sided spin action");
      // dual map
      const auto s = random_spinor(rng, rep.d);
      rec.check((sigma_to_dual(j, u * s) - sigma_to_dual(j, s) * delta(rep, us.inverse())).norm(), n, "dual map equivariance");
    }
    for (int k = 0; k < rep.d; ++k) {
      const Eigen::VectorXcd ek = Eigen::VectorXcd::Unit(rep.d, k);
      rec.check((sigma_to_dual(j, j.apply_inverse(ek)) - ek.transpose()).norm(), n, "dual basis");
    }
    if (printed_worst >= rec.tolerance())
      rec.note(n_label(n) + ": right action holds with the opposite sign, +Id(x)delta(v) (residual " + format_double(flipped_worst) +
               ")");
  }
  return rec.finish();
}

// ---------------------------------------------------------------- frame independence

SuiteResult suite_frames(const SuiteOptions& o) {
  Recorder rec("witt-frame-independence", o, true);
  for (int n = *o.n_min; n <= *o.n_max; ++n) {
    Rng rng = stream(o.seed, "witt-frame-independence", n);
    const auto& model = WittModel::get(n);
    const auto kahler = chevalley_to_exterior(kahler_form(n));
    const Q scale(model.hermitian_scale());
    for (int t = 0; t < rec.trials(); ++t) {
      const ExactMatrix rot = random_rotation<Q>(rng, n);
      const WittFrame wf = build_witt_frame(n, rot);
      auto payload = [&] {
        json r = json::array();
        for (std::size_t a = 0; a < rot.rows(); ++a)
          for (std::size_t b = 0; b < rot.cols(); ++b) r.push_back(to_string(rot(a, b).re));
        return json{{"trial", t}, {"frame", r}};
      };
      rec.check_exact(wf.omega_bar == model.frame().omega_bar, gap(wf.omega_bar, model.frame().omega_bar), n, "omegabar", payload);
      const auto kw = kahler_form_witt(wf);
      rec.check_exact(kw == kahler, gap(kw, kahler), n, "Kahler form in the Witt frame", payload);

      // z'_I omegabar in canonical coordinates, built with z'_{min I} applied last.
      std::vector<IdealSpinor> coords(model.dim());
      coords[0] = IdealSpinor::basis(n, 0);
      std::vector<QVector> zs;
      for (int jx = 0; jx < n; ++jx) {
        QVector f(2 * n);
        for (int i = 0; i < n; ++i) f[i] = rot(i, jx);
        zs.push_back(p_plus(f));
      }
      for (BladeMask s = 1; s < model.dim(); ++s) {
        const int low = std::countr_zero(s);
        coords[s] = model.apply_vector(zs[static_cast<std::size_t>(low)], coords[s & (s - 1)]);
        rec.check_true(coords[s].homogeneous_grade() == std::popcount(s), n, "grade preserved", payload);
      }
      if (n <= 2) {
        for (BladeMask s = 0; s < model.dim(); ++s) {
          const auto blade_route = model.decompose(wf.ideal_element(s));
          rec.check_exact(blade_route == coords[s], gap(blade_route, coords[s]), n, "blade-level basis", payload);
        }
      }
      auto gram = [&](BladeMask a, BladeMask b) {
        const Q h = model.hermitian(coords[a], coords[b]);
        const Q want = a == b ? scale : Q(0);
        rec.check_exact(h == want, magnitude(h - want), n, "hermitian product", payload);
      };
      // Full Gram matrix on the first trials; afterwards every norm plus as
      // many random off-diagonal pairs.
      if (t < 3 || n <= 4) {
        for (BladeMask a = 0; a < model.dim(); ++a)
          for (BladeMask b = a; b < model.dim(); ++b) gram(a, b);
      } else {
        std::uniform_int_distribution<BladeMask> pick(0, static_cast<BladeMask>(model.dim() - 1));
        for (BladeMask a = 0; a < model.dim(); ++a) {
          gram(a, a);
          const BladeMask b = pick(rng);
          if (b != a) gram(a, b);
        }
      }
    }
  }
  return rec.finish();
}

// ---------------------------------------------------------------- eq6

SuiteResult suite_eq6(const SuiteOptions& o) {
  Recorder rec("eq6", o, true);
  for (int n = *o.n_min; n <= *o.n_max; ++n) {
    Rng rng = stream(o.seed, "eq6", n);
    const auto& model = WittModel::get(n);
    auto bullets = [&](const CliffordElement<Q>& phi, int p, const QVector& v, const QVector& w, int trial) {
      const auto img = model.iso6(phi);
      auto payload = [&] { return json{{"trial", trial}, {"phi", to_json(phi)}, {"v", vector_json(v)}, {"w", vector_json(w)}}; };
      rec.check_true(phi.is_zero() || img.homogeneous_grade() == p, n, "grade p onto L^p", payload);
      const auto l1 = model.iso6(v.to_clifford() * phi);
      const auto r1 = model.apply_vector(embed(v, 2 * n), img);
      rec.check_exact(l1 == r1, gap(l1, r1), n, "tangent bullet", payload);
      const Q factor = Q(p % 2 ? 1 : -1) * kI;  // (-1)^{p+1} i
      const auto l2 = model.iso6(factor * (phi * j_of_normal(w).to_clifford()));
      const auto r2 = model.apply_vector(w, img);
      rec.check_exact(l2 == r2, gap(l2, r2), n, "normal bullet", payload);
    };
    if (n <= 2) {
      for (BladeMask m = 0; m < (BladeMask{1} << n); ++m) {
        rec.check_exact(model.iso6(CliffordElement<Q>::blade(n, m)) == IdealSpinor::basis(n, m), 0.0, n, "basis correspondence");
        for (int k = 0; k < n; ++k)
          bullets(CliffordElement<Q>::blade(n, m), std::popcount(m), QVector::basis(n, k), apply_j(QVector::basis(2 * n, k)), -1);
      }
    }
    for (int t = 0; t < rec.trials(); ++t) {
      const int p = t % (n + 1);
      const auto phi = random_homogeneous<Q>(rng, n, p);
      bullets(phi, p, random_real_vector<Q>(rng, n), random_normal(rng, n), t);
      if (n >= 2) {
        const auto u = random_spin_element<Q>(rng, n, 2);
        const auto lhs = model.iso6(ad_action(u, phi));
        const auto rhs = model.apply_spin(diagonal_immersion(u), model.iso6(phi));
        rec.check_exact(lhs == rhs, gap(lhs, rhs), n, "diagonal equivariance", [&] {
          return json{{"trial", t}, {"u", spin_json(u)}, {"phi", to_json(phi)}};
        });
      }
    }
  }
  return rec.finish();
}

// ---------------------------------------------------------------- eq8

struct NumericWitt {
  std::vector<Eigen::MatrixXcd> gens;

  explicit NumericWitt(const WittModel& model) {
    for (int k = 0; k < 2 * model.n(); ++k) gens.push_back(model.generator_matrix(k).to_eigen());
  }
  Eigen::MatrixXcd vector(const QVector& v) const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(gens[0].rows(), gens[0].cols());
    for (int k = 0; k < v.dim(); ++k)
      if (!is_zero(v[k])) m += to_complex(v[k]) * gens[static_cast<std::size_t>(k)];
    return m;
  }
  Eigen::MatrixXcd spin(const SpinElement<Q>& g) const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(gens[0].rows(), gens[0].cols());
    for (const auto& v : g.factors()) m = m * vector(v);
    return m;
  }
};

Eigen::VectorXcd random_ideal_numeric(Rng& rng, int n) { return random_ideal(rng, n).to_eigen(); }

SuiteResult suite_eq8(const SuiteOptions& o) {
  Recorder rec("eq8", o, false);
  for (int n = *o.n_min; n <= *o.n_max; ++n) {
    Rng rng = stream(o.seed, "eq8", n);
    const auto& model = WittModel::get(n);
    const NumericWitt num(model);
    const auto rep = build_rep(n);
    const auto j = build_j(rep);
    const bool odd = rep.odd();
    const double scale = static_cast<double>(model.hermitian_scale());

    std::vector<TensorSpinor> images;
    for (BladeMask s = 0; s < model.dim(); ++s) images.push_back(iso8(rep, j, model, IdealSpinor::basis(n, s).to_eigen()));
    double unitary = 0.0;
    for (BladeMask a = 0; a < model.dim(); ++a)
      for (BladeMask b = 0; b < model.dim(); ++b)
        unitary = std::max(unitary, std::abs(tensor_hermitian(images[a], images[b]) / scale - (a == b ? 1.0 : 0.0)));
    rec.check(unitary, n, "unitarity");

    double printed_worst = 0.0, corrected_worst = 0.0;
    auto normal = [&](const Eigen::VectorXcd& sp, int p, const QVector& w, int trial) {
      const auto out = iso8(rep, j, model, num.vector(w) * sp);
      const auto base = tensor_right(rep, delta(rep, j_of_normal(w)), iso8(rep, j, model, sp), odd);
      const Complex printed_coeff(0.0, p % 2 ? -1.0 : 1.0);
      const double printed = tensor_distance(out, printed_coeff * base);
      const double corrected = tensor_distance(out, double(j.vector_sign) * printed_coeff * base);
      printed_worst = std::max(printed_worst, printed);
      corrected_worst = std::max(corrected_worst, corrected);
      rec.check(printed, n, "normal action sign", [&] {
        return json{{"trial", trial}, {"p", p}, {"w", vector_json(w)}, {"residual_with_opposite_sign", corrected}};
      });
    };
    auto tangent = [&](const Eigen::VectorXcd& s, const QVector& v) {
      const auto lhs = iso8(rep, j, model, num.vector(embed(v, 2 * n)) * s);
      rec.check(tensor_distance(lhs, tensor_left(rep, delta(rep, v), iso8(rep, j, model, s), odd)), n, "tangent action");
    };
    if (n <= 2) {
      for (BladeMask s = 0; s < model.dim(); ++s)
        for (int k = 0; k < n; ++k) {
          const auto b = IdealSpinor::basis(n, s).to_eigen();
          tangent(b, QVector::basis(n, k));
          normal(b, std::popcount(s), apply_j(QVector::basis(2 * n, k)), -1);
        }
    }
    for (int t = 0; t < rec.trials(); ++t) {
      const auto s = random_ideal(rng, n);
      const auto se = s.to_eigen();
      rec.check((iso8_inverse(rep, j, model, iso8(rep, j, model, se)) - se).norm(), n, "bijection");
      tangent(se, random_real_vector<Q>(rng, n));
      const int p = t % (n + 1);
      normal(s.grade_part(p).to_eigen(), p, random_normal(rng, n), t);
      if (n >= 2) {
        const auto u = random_spin_element<Q>(rng, n, 2);
        const auto u2 = random_spin_element<Q>(rng, n, 2);
        const auto g = u.embedded(2 * n) * jtilde(u2);
        const auto moved = iso8(rep, j, model, num.spin(g) * se);
        const auto want = tensor_right(rep, delta(rep, u2), tensor_left(rep, delta(rep, u), iso8(rep, j, model, se), false), false);
        rec.check(tensor_distance(moved, want), n, "Spin x Spin' equivariance");
      }
    }
    if (printed_worst >= rec.tolerance())
      rec.note(n_label(n) + ": normal action holds with the opposite sign, -(-1)^p i Id(x)delta(J(w)) (residual " +
               format_double(corrected_worst) + ")");
  }
  return rec.finish();
}

// ---------------------------------------------------------------- eq9

SuiteResult suite_eq9(const SuiteOptions& o) {
  Recorder rec("eq9", o, true);
  bool f_inverse_form_agrees = true;
  for (int n = *o.n_min; n <= *o.n_max; ++n) {
    Rng rng = stream(o.seed, "eq9", n);
    const auto& model = WittModel::get(n);
    auto bullets = [&](const IdealSpinor& s, const QVector& v, const QVector& w, int trial) {
      const auto phi = model.iso9(s);
      auto payload = [&] { return json{{"trial", trial}, {"s", ideal_json(s)}, {"v", vector_json(v)}, {"w", vector_json(w)}}; };
      const auto l1 = model.iso9(model.apply_vector(embed(v, 2 * n), s));
      const auto r1 = wedge(v, phi) - contract(v, phi);
      rec.check_exact(l1 == r1, gap(l1, r1), n, "tangent bullet", payload);
      const auto jw = j_of_normal(w);
      const auto l2 = model.iso9(model.apply_vector(w, s));
      const auto r2 = -kI * (wedge(jw, phi) + contract(jw, phi));
      rec.check_exact(l2 == r2, gap(l2, r2), n, "normal bullet", payload);
      const QVector finv = -jw;
      f_inverse_form_agrees = f_inverse_form_agrees && l2 == kI * (wedge(finv, phi) + contract(finv, phi));
    };
    for (BladeMask m = 0; m < model.dim(); ++m) {
      const auto b = IdealSpinor::basis(n, m);
      rec.check_exact(model.iso9(b) == QForm::blade(n, m), 0.0, n, "basis correspondence");
      // Kahler form acts on grade p by i(2p - n)
      IdealSpinor acted(n);
      for (int k = 0; k < n; ++k)
        acted = acted + model.apply_vector(QVector::basis(2 * n, k), model.apply_vector(QVector::basis(2 * n, n + k), b));
      rec.check_exact(acted == Q(Rational(0), Rational(2 * std::popcount(m) - n)) * b, gap(acted, b), n, "Kahler eigenvalue on grade p");
      if (n <= 2)
        for (int k = 0; k < n; ++k) bullets(b, QVector::basis(n, k), apply_j(QVector::basis(2 * n, k)), -1);
    }
    for (int t = 0; t < rec.trials(); ++t) {
      const auto s = random_ideal(rng, n);
      rec.check_exact(model.iso9_inverse(model.iso9(s)) == s, 0.0, n, "bijection");
      bullets(s, random_real_vector<Q>(rng, n), random_normal(rng, n), t);
      if (n >= 2) {
        const auto u = random_spin_element<Q>(rng, n, 2);
        const auto lhs = model.iso9(model.apply_spin(diagonal_immersion(u), s));
        const auto rhs = exterior_power_action(ad_matrix(u), model.iso9(s));
        rec.check_exact(lhs == rhs, gap(lhs, rhs), n, "Ad equivariance", [&] {
          return json{{"trial", t}, {"u", spin_json(u)}, {"s", ideal_json(s)}};
        });
      }
    }
  }
  rec.note(std::string("normal bullet written with f^{-1}(w) = -J(w) and +i: ") + (f_inverse_form_agrees ? "agrees" : "disagrees"));
  return rec.finish();
}

// ---------------------------------------------------------------- kahler-action

SuiteResult suite_kahler(const SuiteOptions& o) {
  Recorder rec("kahler-action", o, true);
  for (int n = *o.n_min; n <= *o.n_max; ++n) {
    Rng rng = stream(o.seed, "kahler-action", n);
    const auto& model = WittModel::get(n);
    const auto omega = kahler_form(n);
    auto eigen_image = [&](const IdealSpinor& s) {
      IdealSpinor out(n);
      for (std::size_t m = 0; m < s.size(); ++m)
        out.coeffs[m] = Q(Rational(0), Rational(2 * std::popcount(m) - n)) * s.coeffs[m];
      return out;
    };
    Q trace(0);
    for (BladeMask m = 0; m < model.dim(); ++m) {
      const auto b = IdealSpinor::basis(n, m);
      const auto got = model.left_mult(omega, b);
      rec.check_exact(got == eigen_image(b), gap(got, eigen_image(b)), n, "basis eigenvalue i(2p-n)");
      trace += got.coeffs[m];
    }
    rec.check_exact(trace == Q(0), magnitude(trace), n, "trace zero");
    for (int t = 0; t < rec.trials(); ++t) {
      const auto s = random_ideal(rng, n);
      const auto got = model.left_mult(omega, s);
      rec.check_exact(got == eigen_image(s), gap(got, eigen_image(s)), n, "random spinor",
                      [&] { return json{{"trial", t}, {"s", ideal_json(s)}}; });
    }
  }
  return rec.finish();
}

// ---------------------------------------------------------------- hermitian-normalization

SuiteResult suite_hermitian(const SuiteOptions& o) {
  Recorder rec("hermitian-normalization", o, true);
  for (int n = *o.n_min; n <= *o.n_max; ++n) {
    Rng rng = stream(o.seed, "hermitian-normalization", n);
    const auto& model = WittModel::get(n);
    const Q scale(Rational(BigInt(1) << ((n + 1) / 2)));
    // The tensor-side norm gives an independent normalization: copies * d.
    const auto rep = build_rep(n);
    const auto j = build_j(rep);
    for (BladeMask a = 0; a < model.dim(); ++a) {
      const auto ba = IdealSpinor::basis(n, a);
      rec.check_exact(model.hermitian(ba, ba) == scale, 0.0, n, "norm of z_I omegabar");
      const auto img = iso8(rep, j, model, ba.to_eigen());
      const double tensor_norm = tensor_hermitian(img, img).real();
      rec.check_exact(std::abs(tensor_norm - static_cast<double>(scale.re)) < 1e-9, std::abs(tensor_norm - static_cast<double>(scale.re)),
                      n, "matches tensor norm");
      for (BladeMask b = a + 1; b < model.dim(); ++b)
        rec.check_exact(model.hermitian(ba, IdealSpinor::basis(n, b)) == Q(0), 0.0, n, "orthogonality");
    }
    for (int t = 0; t < rec.trials(); ++t) {
      const auto s = random_ideal(rng, n);
      const auto s2 = random_ideal(rng, n);
      const auto h = model.hermitian(s, s);
      rec.check_true(h.im == 0 && (h.re > 0 || s == IdealSpinor(n)), n, "positive");
      const auto v = random_real_vector<Q>(rng, 2 * n);
      const Q skew = model.hermitian(model.apply_vector(v, s), s2) + model.hermitian(s, model.apply_vector(v, s2));
      rec.check_exact(skew == Q(0), magnitude(skew), n, "vectors skew-adjoint");
    }
  }
  return rec.finish();
}

// ---------------------------------------------------------------- killing

SuiteResult suite_killing(const SuiteOptions& o) {
  Recorder rec("killing", o, true);
  for (int n = *o.n_min; n <= *o.n_max; ++n) {
    Rng rng = stream(o.seed, "killing", n);
    const auto& model = WittModel::get(n);
    const auto id = ExactMatrix::identity(model.dim());
    const auto omega = model.kahler_matrix();
    const Q half_i(Rational(0), Rational(1, 2));
    const Q half_n(Rational(n, 2));
    const auto kp = killing_operator(model, true);
    const auto km = killing_operator(model, false);
    rec.check_true(kp == Q(-1) * half_i * omega + half_n * id, n, "K+ = -(i/2) Omega + n/2");
    rec.check_true(km == half_i * omega + half_n * id, n, "K- = (i/2) Omega + n/2");
    rec.check_true(model.witt_pair_sum(true) == Q(-1) * kp, n, "K+ is minus the p+ p- sum");
    rec.check_true(model.witt_pair_sum(false) == Q(-1) * km, n, "K- is minus the p- p+ sum");
    if (n % 2 == 0) continue;
    const Q target(Rational(n + 1, 2));
    const int up = killing_grade(n, true);
    const int down = killing_grade(n, false);
    for (BladeMask m = 0; m < model.dim(); ++m) {
      const auto b = IdealSpinor::basis(n, m);
      if (std::popcount(m) == up) rec.check_true(killing_contraction(model, b, true) == target * b, n, "K+ on L^{(n+1)/2}");
      if (std::popcount(m) == down) rec.check_true(killing_contraction(model, b, false) == target * b, n, "K- on L^{(n-1)/2}");
    }
    for (int t = 0; t < rec.trials(); ++t) {
      const auto s = random_ideal(rng, n);
      const auto su = s.grade_part(up);
      const auto sd = s.grade_part(down);
      rec.check_true(killing_contraction(model, su, true) == target * su, n, "random spinor in L^{(n+1)/2}");
      rec.check_true(killing_contraction(model, sd, false) == target * sd, n, "random spinor in L^{(n-1)/2}");
    }
    rec.note(n_label(n) + ": sum_j p+(e_j) p-(e_j) acts on L^{(n+1)/2} by -" + to_string(Rational(n + 1, 2)) +
             "; the operator equal to (n+1)/2 there is its negative");
  }
  return rec.finish();
}

// ---------------------------------------------------------------- torus

std::map<long, int> lattice_norm_counts(int n, int cutoff) {
  std::map<long, int> counts;
  for (const auto& k : torus_modes(n, cutoff)) {
    long m = 0;
    for (int x : k) m += static_cast<long>(x) * x;
    ++counts[m];
  }
  return counts;
}

SuiteResult suite_torus(const SuiteOptions& o) {
  Recorder rec("corollary10", o, false);
  const int cutoff = *o.cutoff;
  for (int n = *o.n_min; n <= *o.n_max; ++n) {
    const auto& fa = fibre_actions(n);
    rec.check_true(fa.tangent_matches_euler, n, "fibre action equals e_j ^ - e_j _| exactly");
    const auto dirac = twisted_dirac_torus(n, cutoff);
    const auto euler = euler_operator_torus(n, cutoff);
    rec.check_true(blocks_identical(dirac, euler), n, "twisted Dirac blocks equal Euler blocks");
    rec.check(self_adjointness_defect(dirac), n, "Hermitian");

    const auto sq = spectrum(dirac.squared(), 1e-8);
    const int fibre = 1 << n;
    const double four_pi2 = 4.0 * std::numbers::pi * std::numbers::pi;
    const auto counts = lattice_norm_counts(n, cutoff);
    std::size_t lines = 0;
    for (const auto& [m, c] : counts) {
      const double value = four_pi2 * static_cast<double>(m);
      const int got = sq.multiplicity_of(value);
      rec.check_true(got == fibre * c, n, "D^2 multiplicity", [&] {
        return json{{"norm_squared", m}, {"expected", fibre * c}, {"found", got}};
      });
      ++lines;
    }
    rec.check_true(lines == sq.eigenvalues.size(), n, "no stray D^2 eigenvalues");
    rec.check_true(sq.kernel_dimension() == fibre, n, "kernel dimension 2^n");

    const auto d_spec = spectrum(dirac, 1e-8);
    bool symmetric = true;
    for (const auto& line : d_spec.eigenvalues) symmetric = symmetric && d_spec.multiplicity_of(-line.value.real()) == line.multiplicity;
    rec.check_true(symmetric, n, "spectrum symmetric about 0");

    const auto h = MeanCurvatureData::zero(n);
    const auto dw = dirac_witten(dirac, h);
    rec.check_true(blocks_identical(dw, dirac), n, "Dirac-Witten equals Dirac for H = 0");
    rec.check(verify_square_identity(dirac, dw, h).max_residual, n, "square identity, H = 0");

    rec.check_true(killing_solution_dimension(n, cutoff, 0.0) == 2 * fibre, n, "parallel pairs: dimension 2 * 2^n");
    const auto modes = torus_modes(n, cutoff);
    SpinorField psi(modes.size(), Eigen::VectorXcd::Zero(fibre)), phi = psi;
    const auto centre = static_cast<std::size_t>(std::find(modes.begin(), modes.end(), std::vector<int>(n, 0)) - modes.begin());
    psi[centre] = Eigen::VectorXcd::Ones(fibre);
    phi[centre] = Eigen::VectorXcd::LinSpaced(fibre, 1.0, 2.0);
    std::vector<double> dir(static_cast<std::size_t>(n), 1.0);
    rec.check(killing_residual(n, cutoff, psi, phi, 0.0, dir).norm(), n, "constant pair is parallel");
    psi[centre + 1] = Eigen::VectorXcd::Ones(fibre);
    rec.check_true(killing_residual(n, cutoff, psi, phi, 0.0, dir).norm() > 1.0, n, "nonconstant mode is not parallel");
  }
  return rec.finish();
}

// ---------------------------------------------------------------- eq12

SuiteResult suite_eq12(const SuiteOptions& o) {
  Recorder rec("eq12", o, false);
  const int cutoff = *o.cutoff;
  for (int n = *o.n_min; n <= *o.n_max; ++n) {
    const auto d = twisted_dirac_torus(n, cutoff);
    const auto h = MeanCurvatureData::zero(n);
    rec.check(verify_square_identity(d, dirac_witten(d, h), h).max_residual, n, "torus, H = 0");
  }
  for (auto s : {CircleSpinStructure::Trivial, CircleSpinStructure::Nontrivial}) {
    const auto ops = circle_operators(s, cutoff);
    const auto rep = verify_square_identity(ops.twisted_dirac, ops.dirac_witten, MeanCurvatureData::unit_circle());
    rec.check(rep.max_residual, 1, "circle, |H| = 1 (" + to_string(s) + ")");
    rec.check_true(rep.shift == 0.25, 1, "circle shift is 1/4");
  }
  return rec.finish();
}

// ---------------------------------------------------------------- remark-circle

SuiteResult suite_circle(const SuiteOptions& o) {
  Recorder rec("remark-circle", o, false);
  const int cutoff = *o.cutoff;
  const auto fundamental = spectrum(fundamental_dirac_circle(CircleSpinStructure::Nontrivial, cutoff));
  rec.check_true(fundamental.kernel_dimension() == 0, 1, "nontrivial fundamental Dirac has trivial kernel");
  for (auto s : {CircleSpinStructure::Trivial, CircleSpinStructure::Nontrivial}) {
    const auto ops = circle_operators(s, cutoff);
    const std::string tag = " (tangent " + to_string(s) + ", normal " + to_string(ops.normal) + ")";
    const auto spec = spectrum(ops.twisted_dirac);
    // expected: {k + 1/2 : |k + 1/2| <= cutoff}, two copies of the fundamental operator
    std::vector<double> expected;
    for (int k = -cutoff; k < cutoff; ++k) expected.push_back(k + 0.5);
    bool same = spec.eigenvalues.size() == expected.size();
    for (std::size_t i = 0; same && i < expected.size(); ++i)
      same = std::abs(spec.eigenvalues[i].value - Complex(expected[i], 0.0)) < 1e-8 && spec.eigenvalues[i].multiplicity == 2 &&
             fundamental.eigenvalues[i].multiplicity == 1 && std::abs(fundamental.eigenvalues[i].value - spec.eigenvalues[i].value) < 1e-8;
    rec.check_true(same, 1, "twisted spectrum is {k + 1/2}, one copy per summand" + tag);
    rec.check_true(spec.kernel_dimension() == 0, 1, "no zero eigenvalue" + tag);
    double smallest = std::numeric_limits<double>::infinity();
    for (const auto& line : spec.eigenvalues) smallest = std::min(smallest, std::abs(line.value));
    rec.check(std::abs(smallest - 0.5), 1, "smallest |eigenvalue| is 1/2" + tag);

    const auto euler = spectrum(ops.euler);
    rec.check_true(euler.kernel_dimension() == 2, 1, "Euler kernel dimension 2" + tag);
    const auto sq = verify_square_identity(ops.twisted_dirac, ops.dirac_witten, MeanCurvatureData::unit_circle());
    rec.check(sq.max_residual, 1, "D^2 - Dhat^2 = 1/4" + tag);
    rec.check_true(self_adjointness_defect(ops.dirac_witten) > 0.5, 1, "Dirac-Witten is not self-adjoint" + tag);
    rec.check_true(ops.total_holonomy == -1, 1, "antiperiodic total modes" + tag);
  }
  return rec.finish();
}

// ---------------------------------------------------------------- sharpness

SuiteResult suite_sharpness(const SuiteOptions& o) {
  Recorder rec("sharpness", o, true);
  for (int n = *o.n_min; n <= *o.n_max; ++n) {
    if (n % 2 == 0 || n < 3) continue;
    const auto r = sharpness_check(n);
    auto payload = [&] { return to_json(r); };
    rec.check_true(r.eigenvalue_matches, n, "first eigenvalue (n+1)^2/4", payload);
    rec.check_true(r.multiplicity == binomial(n + 1, r.p), n, "multiplicity C(n+1,(n+1)/2)", payload);
    rec.check_true(r.binomial_identity, n, "2C(n,(n+1)/2) = C(n,(n-1)/2) + C(n,(n+1)/2) = C(n+1,(n+1)/2)", payload);
    rec.check_true(r.margin == 0, n, "bound margin 0", payload);
    const auto dims = killing_space_dims(n);
    rec.check_true(dims.total == r.killing_dim && dims.upper == dims.total && dims.lower == dims.total, n, "Killing space dimensions");
  }
  rec.note("N = 2C(n,(n+1)/2) equals the first-eigenvalue multiplicity; [(N+1)/2] = C(n,(n+1)/2) is the count claimed for closed forms in the minimal case");
  return rec.finish();
}

// ---------------------------------------------------------------- minmax

std::vector<Eigen::VectorXcd> random_span(Rng& rng, const ModeOperator& op, int count, bool near_bottom) {
  const auto dim = static_cast<Eigen::Index>(op.dimension());
  std::normal_distribution<double> g;
  std::vector<Eigen::VectorXcd> out;
  Eigen::MatrixXcd low;
  if (near_bottom) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.dense());
    low = es.eigenvectors();
  }
  for (int c = 0; c < count; ++c) {
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(g(rng), g(rng));
    if (near_bottom) v = low.col(c) + 1e-3 * v;
    out.push_back(v);
  }
  return out;
}

SuiteResult suite_minmax(const SuiteOptions& o) {
  Recorder rec("minmax", o, false);
  const int cutoff = *o.cutoff;
  std::vector<std::pair<std::string, ModeOperator>> models;
  models.emplace_back("circle", circle_operators(CircleSpinStructure::Nontrivial, cutoff).twisted_dirac.squared());
  models.emplace_back("torus", twisted_dirac_torus(2, std::max(1, cutoff / 4)).squared());
  for (std::size_t mi = 0; mi < models.size(); ++mi) {
    const auto& [name, op] = models[mi];
    Rng rng = stream(o.seed, "minmax-" + name, 0);
    std::uniform_int_distribution<int> size(1, 12);
    for (int t = 0; t < rec.trials(); ++t) {
      const int count = size(rng);
      const auto trial = random_span(rng, op, count, t % 2 == 1);
      const auto res = rayleigh_minmax(op, trial);
      rec.check(std::max(0.0, res.lambda_n - res.bound), static_cast<int>(mi), name + ": bound >= lambda_N", [&] {
        return json{{"model", name}, {"trial", t}, {"N", count}, {"bound", res.bound}, {"lambda_N", res.lambda_n}};
      });
      auto bigger = trial;
      bigger.push_back(random_span(rng, op, 1, false).front());
      const auto res2 = rayleigh_minmax(op, bigger);
      rec.check(std::max(0.0, res.bound - res2.bound), static_cast<int>(mi), name + ": monotone in the span");
    }
    bool threw = false;
    try {
      auto dup = random_span(rng, op, 2, false);
      dup.push_back(dup[0] + dup[1]);
      rayleigh_minmax(op, dup);
    } catch (const DegenerateTrialSpan&) {
      threw = true;
    }
    rec.check_true(threw, static_cast<int>(mi), name + ": degenerate span rejected");
  }
  return rec.finish();
}

std::vector<SuiteInfo> build_registry() {
  std::vector<SuiteInfo> r;
  r.push_back({"eq1", "Clifford/exterior identification: vector actions, round trip, spin equivariance", 1, 6, 100, 0, 0.0, true, suite_eq1});
  r.push_back({"lemma1", "antilinear structure commuting with Spin", 1, 6, 100, 0, 1e-10, false, suite_lemma1});
  r.push_back({"eq4", "Cl_n as tensor square: bijection, left/right actions, two-sided action, dual map", 1, 6, 100, 0, 1e-10, false, suite_eq4});
  r.push_back({"witt-frame-independence", "omegabar, grading, hermitian product and Kahler form under frame rotation", 1, 6, 100, 0, 0.0, true, suite_frames});
  r.push_back({"eq6", "Cl_n onto the spinor ideal: vector bullets and diagonal equivariance", 1, 6, 100, 0, 0.0, true, suite_eq6});
  r.push_back({"eq8", "spinor ideal onto the tensor square: unitarity, tangent and normal actions, equivariance", 1, 6, 100, 0, 1e-10, false, suite_eq8});
  r.push_back({"eq9", "spinor ideal onto forms: vector bullets, Kahler eigenvalues, Ad equivariance", 1, 6, 100, 0, 0.0, true, suite_eq9});
  r.push_back({"kahler-action", "Kahler form acts by i(2p-n) on L^p", 1, 6, 100, 0, 0.0, true, suite_kahler});
  r.push_back({"hermitian-normalization", "scaled hermitian product of the Witt basis", 1, 6, 100, 0, 0.0, true, suite_hermitian});
  r.push_back({"killing", "Killing contraction operators and their value on L^{(n+-1)/2}", 1, 5, 100, 0, 0.0, true, suite_killing});
  r.push_back({"corollary10", "flat torus: twisted Dirac equals d + delta", 1, 3, 1, 5, 1e-10, false, suite_torus});
  r.push_back({"eq12", "square identity D^2 = Dhat^2 + n^2|H|^2/4 on torus and circle", 1, 3, 1, 20, 1e-10, false, suite_eq12});
  r.push_back({"remark-circle", "unit circle in C: induced twisted Dirac versus d + delta", 1, 1, 1, 20, 1e-10, false, suite_circle});
  r.push_back({"sharpness", "sphere closed-form spectrum meets the bound", 3, 21, 1, 0, 0.0, true, suite_sharpness});
  r.push_back({"minmax", "Rayleigh quotient bound is at least lambda_N", 1, 1, 50, 20, 1e-8, false, suite_minmax});
  return r;
}

}  // namespace

const std::vector<SuiteInfo>& suite_registry() {
  static const std::vector<SuiteInfo> registry = build_registry();
  return registry;
}

const SuiteInfo& find_suite(const std::string& id) {
  const std::string key = id == "eq5" ? "eq4" : (id == "torus" ? "corollary10" : id);
  for (const auto& s : suite_registry())
    if (s.id == key) return s;
  throw UnknownSuite("unknown suite: " + id);
}

SuiteResult certify(const std::string& id, const SuiteOptions& options) {
  const SuiteInfo& info = find_suite(id);
  SuiteOptions o = options;
  if (!o.n_min) o.n_min = info.default_n_min;
  if (!o.n_max) o.n_max = info.default_n_max;
  if (!o.trials) o.trials = info.default_trials;
  if (!o.cutoff) o.cutoff = info.default_cutoff;
  if (!o.tolerance) o.tolerance = info.exact ? 1e-300 : info.default_tolerance;
  if (*o.n_min < 1 || *o.n_max < *o.n_min) throw std::invalid_argument("certify: invalid n range");
  if (*o.trials < 1) throw std::invalid_argument("certify: trials must be positive");
  if (info.default_cutoff > 0 && *o.cutoff < 1) throw std::invalid_argument("certify: cutoff must be positive");
  return info.run(o);
}

}  // namespace spinorlab
