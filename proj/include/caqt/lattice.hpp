#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace caqt {

using Complex = std::complex<double>;

enum class Boundary { Periodic, Reflecting };

/// One-dimensional lattice in units hbar = m = 1.
///
/// `weights` are the a priori cell volumes (uniform lattices use 1.0) and
/// `potential` is a static on-site scalar field.
struct LatticeConfig {
  std::size_t num_sites = 2;
  double spacing = 1.0;
  Boundary boundary = Boundary::Periodic;
  std::vector<double> weights;
  std::vector<double> potential;

  /// Uniform weights, zero potential.
  static LatticeConfig uniform(std::size_t num_sites, double spacing = 1.0,
                               Boundary boundary = Boundary::Periodic);

  /// Throws LatticeError when an invariant is broken.
  void validate() const;
};

LatticeConfig lattice_from_json(const nlohmann::json& doc);
nlohmann::json lattice_to_json(const LatticeConfig& cfg);
LatticeConfig load_lattice(const std::string& path);

Boundary boundary_from_string(const std::string& name);
const char* to_string(Boundary boundary);

/// Hermitian generator of the step kernel.
class Hamiltonian {
 public:
  /// Accepts only exactly Hermitian matrices.
  static Hamiltonian from_matrix(Eigen::MatrixXcd matrix);

  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  std::size_t num_sites() const { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  explicit Hamiltonian(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {}
  Eigen::MatrixXcd matrix_;
};

/// One-step propagator K = exp(-i H dt).
class StepKernel {
 public:
  StepKernel(double dt, Eigen::MatrixXcd matrix);

  double dt() const { return dt_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  std::size_t num_sites() const { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  double dt_;
  Eigen::MatrixXcd matrix_;
};

/// Tight-binding Hamiltonian: -(1/(2 dx^2)) * discrete Laplacian + diag(V).
///
/// With two sites and periodic boundaries both links join the same pair of
/// sites; their couplings add, giving a single off-diagonal entry -1/dx^2.
/// Reflecting ends have one neighbour only, so the Laplacian rows still sum
/// to zero (zero-flux walls).
Hamiltonian build_hamiltonian(const LatticeConfig& cfg);

/// Exact exponential through the Hermitian eigendecomposition of `h`.
StepKernel build_kernel(const Hamiltonian& h, double dt);

/// max_ij |(K^dagger K - 1)_ij|
double unitarity_defect(const StepKernel& k);

}  // namespace caqt
