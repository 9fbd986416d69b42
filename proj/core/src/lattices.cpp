#include "poltyrev/lattices.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "poltyrev/errors.hpp"

namespace poltyrev {

namespace {

constexpr double kTieTol = 1e-12;

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Round half down, so a coordinate tie goes to the smaller integer.
double round_half_down(double v) { return std::ceil(v - 0.5); }

// Nearest point of D_n: round, and if the sum is odd re-round the worst coordinate
// the other way.
void nearest_dn(const double* y, double* out, int n) {
  double sum = 0.0;
  int worst = 0;
  double worst_gap = -1.0;
  for (int i = 0; i < n; ++i) {
    out[i] = round_half_down(y[i]);
    sum += out[i];
    const double gap = std::fabs(y[i] - out[i]);
    if (gap > worst_gap) {
      worst_gap = gap;
      worst = i;
    }
  }
  if (std::fmod(std::fabs(sum), 2.0) == 1.0) {
    out[worst] += (y[worst] >= out[worst]) ? 1.0 : -1.0;
  }
}

double dist2(const double* a, const double* b, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

void nearest_e8(const double* y, double* out) {
  double a[8], b[8], shifted[8];
  nearest_dn(y, a, 8);
  for (int i = 0; i < 8; ++i) shifted[i] = y[i] - 0.5;
  nearest_dn(shifted, b, 8);
  for (int i = 0; i < 8; ++i) b[i] += 0.5;
  const bool first = dist2(y, a, 8) <= dist2(y, b, 8);
  std::copy_n(first ? a : b, 8, out);
}

constexpr double kSqrt3Half = 0.86602540378443864676;

// A_2 with rows (1,0), (1/2, sqrt(3)/2): the parallelogram cell splits into two
// Delaunay triangles, so the nearest point is one of its four corners.
void nearest_a2_coefficients(const double* y, double* u_out) {
  u_out[0] = u_out[1] = 0.0;
  const double u2 = y[1] / kSqrt3Half;
  const double u1 = y[0] - 0.5 * u2;
  const double f1 = std::floor(u1);
  const double f2 = std::floor(u2);
  double best = std::numeric_limits<double>::infinity();
  for (int d1 = 0; d1 <= 1; ++d1) {
    for (int d2 = 0; d2 <= 1; ++d2) {
      const double c1 = f1 + d1;
      const double c2 = f2 + d2;
      const double px = c1 + 0.5 * c2;
      const double py = kSqrt3Half * c2;
      const double d = (px - y[0]) * (px - y[0]) + (py - y[1]) * (py - y[1]);
      if (d < best) {
        best = d;
        u_out[0] = c1;
        u_out[1] = c2;
      }
    }
  }
}

Eigen::VectorXi coefficients_of(const LatticeSpec& spec, const Eigen::VectorXd& x) {
  const Eigen::VectorXd c = spec.generator.transpose().partialPivLu().solve(x);
  Eigen::VectorXi out(spec.dim);
  for (int i = 0; i < spec.dim; ++i) out[i] = static_cast<int>(std::lround(c[i]));
  return out;
}

bool lex_less(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

}  // namespace

double LatticeSpec::nld() const {
  const double det = std::fabs(generator.determinant());
  return -std::log(det) / dim - std::log(scale);
}

LatticeSpec LatticeSpec::scaled(double s) const {
  if (!(s > 0.0) || std::isinf(s)) throw DomainError("LatticeSpec::scaled: need s > 0");
  LatticeSpec out = *this;
  out.scale *= s;
  return out;
}

LatticeSpec integer_lattice(int k) {
  if (k < 1) throw DomainError("integer_lattice: need k >= 1");
  return {"Z" + std::to_string(k), k, Eigen::MatrixXd::Identity(k, k), 1.0, LatticeFamily::integer};
}

LatticeSpec checkerboard_lattice(int k) {
  if (k < 3) throw DomainError("checkerboard_lattice: need k >= 3");
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(k, k);
  g(0, 0) = -1.0;
  g(0, 1) = -1.0;
  for (int i = 1; i < k; ++i) {
    g(i, i - 1) = 1.0;
    g(i, i) = -1.0;
  }
  return {"D" + std::to_string(k), k, g, 1.0, LatticeFamily::checkerboard};
}

LatticeSpec builtin(std::string_view name) {
  if (name == "A2") {
    Eigen::MatrixXd g(2, 2);
    g << 1.0, 0.0, 0.5, kSqrt3Half;
    return {"A2", 2, g, 1.0, LatticeFamily::hexagonal};
  }
  if (name == "E8") {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(8, 8);
    g(0, 0) = 2.0;
    for (int i = 1; i < 7; ++i) {
      g(i, i - 1) = -1.0;
      g(i, i) = 1.0;
    }
    g.row(7).setConstant(0.5);
    return {"E8", 8, g, 1.0, LatticeFamily::e8};
  }
  if (name == "BW16" || name == "Leech" || name == "S127" || name == "LDLC") {
    throw UnsupportedLattice("lattice '" + std::string(name) + "' has no exact decoder");
  }
  if (name.starts_with("Zn(") && name.ends_with(")")) {
    if (auto k = parse_int(name.substr(3, name.size() - 4)); k && *k >= 1) return integer_lattice(*k);
  } else if (name.size() > 1 && name[0] == 'Z') {
    if (auto k = parse_int(name.substr(1)); k && *k >= 1) return integer_lattice(*k);
  } else if (name.size() > 1 && name[0] == 'D') {
    if (auto k = parse_int(name.substr(1)); k && *k >= 3) return checkerboard_lattice(*k);
  }
  throw std::invalid_argument("unknown lattice '" + std::string(name) + "'");
}

std::vector<Eigen::VectorXd> relevant_vectors(const LatticeSpec& spec) {
  const int n = spec.dim;
  std::vector<Eigen::VectorXd> out;
  auto push_pm = [&](const Eigen::VectorXd& v) {
    out.push_back(v);
    out.push_back(-v);
  };
  switch (spec.family) {
    case LatticeFamily::integer:
      for (int i = 0; i < n; ++i) push_pm(Eigen::VectorXd::Unit(n, i));
      break;
    case LatticeFamily::hexagonal:
      for (int k = 0; k < 3; ++k) {
        const double a = k * std::numbers::pi / 3.0;
        Eigen::VectorXd v(2);
        v << std::cos(a), std::sin(a);
        push_pm(v);
      }
      break;
    case LatticeFamily::checkerboard:
    case LatticeFamily::e8:
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          for (double s : {1.0, -1.0}) {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
            v[i] = 1.0;
            v[j] = s;
            push_pm(v);
          }
        }
      }
      if (spec.family == LatticeFamily::e8) {
        // The 128 vectors (+-1/2)^8 with an even number of minus signs.
        for (int mask = 0; mask < 256; ++mask) {
          if (__builtin_popcount(mask) % 2 != 0) continue;
          Eigen::VectorXd v(8);
          for (int i = 0; i < 8; ++i) v[i] = (mask >> i & 1) ? -0.5 : 0.5;
          out.push_back(v);
        }
      }
      break;
  }
  return out;
}

bool decodes_to_origin(LatticeFamily family, const double* y, int dim) {
  switch (family) {
    case LatticeFamily::integer:
      for (int i = 0; i < dim; ++i) {
        if (round_half_down(y[i]) != 0.0) return false;
      }
      return true;
    case LatticeFamily::hexagonal: {
      double u[2];
      nearest_a2_coefficients(y, u);
      return u[0] == 0.0 && u[1] == 0.0;
    }
    case LatticeFamily::checkerboard: {
      double buf[64];
      std::vector<double> heap;
      double* out = buf;
      if (dim > 64) {
        heap.resize(dim);
        out = heap.data();
      }
      nearest_dn(y, out, dim);
      return std::all_of(out, out + dim, [](double v) { return v == 0.0; });
    }
    case LatticeFamily::e8: {
      double out[8];
      nearest_e8(y, out);
      return std::all_of(out, out + 8, [](double v) { return v == 0.0; });
    }
  }
  return false;
}

LatticePoint decode(const LatticeSpec& spec, const Eigen::VectorXd& y) {
  if (y.size() != spec.dim) {
    throw DomainError("decode: input has length " + std::to_string(y.size()) + ", lattice dim " +
                      std::to_string(spec.dim));
  }
  const Eigen::VectorXd t = y / spec.scale;
  const int n = spec.dim;
  Eigen::VectorXd x(n);
  switch (spec.family) {
    case LatticeFamily::integer:
      for (int i = 0; i < n; ++i) x[i] = round_half_down(t[i]);
      break;
    case LatticeFamily::hexagonal: {
      double u[2];
      nearest_a2_coefficients(t.data(), u);
      x = spec.generator.transpose() * Eigen::Vector2d(u[0], u[1]);
      break;
    }
    case LatticeFamily::checkerboard:
      nearest_dn(t.data(), x.data(), n);
      break;
    case LatticeFamily::e8:
      nearest_e8(t.data(), x.data());
      break;
  }

  // Walk along relevant vectors to the lexicographically smallest tied point;
  // the tied set is a Delaunay polytope and lex order is a linear objective on it.
  Eigen::VectorXi coeff = coefficients_of(spec, x);
  const double best = (x - t).squaredNorm();
  const double tol = kTieTol * std::max(1.0, best);
  const std::vector<Eigen::VectorXd> relevant = relevant_vectors(spec);
  for (bool moved = true; moved;) {
    moved = false;
    for (const Eigen::VectorXd& v : relevant) {
      const Eigen::VectorXd candidate = x + v;
      if (std::fabs((candidate - t).squaredNorm() - best) > tol) continue;
      const Eigen::VectorXi c = coefficients_of(spec, candidate);
      if (lex_less(c, coeff)) {
        x = candidate;
        coeff = c;
        moved = true;
      }
    }
  }
  return {coeff, spec.generator.transpose() * coeff.cast<double>() * spec.scale};
}

}  // namespace poltyrev
