#pragma once

#include <Eigen/Core>
#include <string>
#include <string_view>
#include <vector>

namespace poltyrev {

enum class LatticeFamily { integer, hexagonal, checkerboard, e8 };

/// A lattice with the rows of `generator` as basis vectors, scaled by `scale`.
struct LatticeSpec {
  std::string name;
  int dim = 0;
  Eigen::MatrixXd generator;
  double scale = 1.0;
  LatticeFamily family = LatticeFamily::integer;

  /// -(1/n) ln|det G| - ln(scale).
  [[nodiscard]] double nld() const;
  /// The same lattice with scale multiplied by s.
  [[nodiscard]] LatticeSpec scaled(double s) const;
};

/// Builtins: "Z<k>" or "Zn(<k>)", "A2", "D<k>" (k >= 3), "E8". "BW16", "Leech",
/// "S127" and "LDLC" are reserved and throw UnsupportedLattice; any other name
/// throws std::invalid_argument.
LatticeSpec builtin(std::string_view name);

LatticeSpec integer_lattice(int k);
LatticeSpec checkerboard_lattice(int k);

struct LatticePoint {
  Eigen::VectorXi coefficients;  // w.r.t. the generator rows
  Eigen::VectorXd coordinates;   // scale * G^T * coefficients
};

/// The nearest lattice point to y. Among equidistant points the one with the
/// lexicographically smallest coefficient vector is returned.
LatticePoint decode(const LatticeSpec& spec, const Eigen::VectorXd& y);

/// True when the nearest point of the unscaled lattice to y is the origin.
/// Ties are not resolved; intended for simulation where they have measure zero.
bool decodes_to_origin(LatticeFamily family, const double* y, int dim);

/// Vectors whose translates connect all nearest-point ties (Voronoi-relevant vectors),
/// as coordinates of the unscaled lattice.
std::vector<Eigen::VectorXd> relevant_vectors(const LatticeSpec& spec);

}  // namespace poltyrev
