#include "caqt/lattice.hpp"

#include <cmath>
#include <fstream>

#include "caqt/errors.hpp"

namespace caqt {

LatticeConfig LatticeConfig::uniform(std::size_t num_sites, double spacing, Boundary boundary) {
  LatticeConfig cfg;
  cfg.num_sites = num_sites;
  cfg.spacing = spacing;
  cfg.boundary = boundary;
  cfg.weights.assign(num_sites, 1.0);
  cfg.potential.assign(num_sites, 0.0);
  return cfg;
}

void LatticeConfig::validate() const {
  if (num_sites < 2) {
    throw LatticeError("lattice needs at least 2 sites, got " + std::to_string(num_sites));
  }
  if (!(std::isfinite(spacing) && spacing > 0.0)) {
    throw LatticeError("lattice spacing must be positive and finite");
  }
  if (weights.size() != num_sites) {
    throw LatticeError("weights has length " + std::to_string(weights.size()) + ", expected " +
                       std::to_string(num_sites));
  }
  if (potential.size() != num_sites) {
    throw LatticeError("potential has length " + std::to_string(potential.size()) +
                       ", expected " + std::to_string(num_sites));
  }
  for (std::size_t i = 0; i < num_sites; ++i) {
    if (!(std::isfinite(weights[i]) && weights[i] > 0.0)) {
      throw LatticeError("weight " + std::to_string(i) + " must be positive and finite");
    }
    if (!std::isfinite(potential[i])) {
      throw LatticeError("potential " + std::to_string(i) + " is not finite");
    }
  }
}

Boundary boundary_from_string(const std::string& name) {
  if (name == "periodic") return Boundary::Periodic;
  if (name == "reflecting") return Boundary::Reflecting;
  throw LatticeError("unknown boundary '" + name + "' (expected periodic or reflecting)");
}

const char* to_string(Boundary boundary) {
  return boundary == Boundary::Periodic ? "periodic" : "reflecting";
}

LatticeConfig lattice_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw LatticeError("lattice document must be a JSON object");
  LatticeConfig cfg;
  try {
    const auto sites = doc.at("num_sites").get<long long>();
    if (sites < 2) throw LatticeError("lattice needs at least 2 sites");
    cfg.num_sites = static_cast<std::size_t>(sites);
    cfg.spacing = doc.value("spacing", 1.0);
    cfg.boundary = boundary_from_string(doc.value("boundary", std::string("periodic")));
    if (doc.contains("weights")) {
      cfg.weights = doc.at("weights").get<std::vector<double>>();
    } else {
      cfg.weights.assign(cfg.num_sites, 1.0);
    }
    if (doc.contains("potential")) {
      cfg.potential = doc.at("potential").get<std::vector<double>>();
    } else {
      cfg.potential.assign(cfg.num_sites, 0.0);
    }
  } catch (const nlohmann::json::exception& e) {
    throw LatticeError(std::string("malformed lattice document: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

nlohmann::json lattice_to_json(const LatticeConfig& cfg) {
  return {{"num_sites", cfg.num_sites},
          {"spacing", cfg.spacing},
          {"boundary", to_string(cfg.boundary)},
          {"weights", cfg.weights},
          {"potential", cfg.potential}};
}

LatticeConfig load_lattice(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LatticeError("cannot open lattice file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in, nullptr, true, true);
  } catch (const nlohmann::json::parse_error& e) {
    throw LatticeError("lattice file '" + path + "': " + e.what());
  }
  return lattice_from_json(doc);
}

Hamiltonian Hamiltonian::from_matrix(Eigen::MatrixXcd matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 1) {
    throw LatticeError("Hamiltonian must be a non-empty square matrix");
  }
  if (!matrix.allFinite()) throw LatticeError("Hamiltonian has non-finite entries");
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() != 0.0) {
    throw LatticeError("Hamiltonian is not Hermitian");
  }
  return Hamiltonian(std::move(matrix));
}

StepKernel::StepKernel(double dt, Eigen::MatrixXcd matrix) : dt_(dt), matrix_(std::move(matrix)) {}

Hamiltonian build_hamiltonian(const LatticeConfig& cfg) {
  cfg.validate();
  const auto m = static_cast<Eigen::Index>(cfg.num_sites);
  const double hop = 1.0 / (2.0 * cfg.spacing * cfg.spacing);

  // Laplacian links as (i, j) pairs; duplicates accumulate.
  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(m, m);
  auto link = [&](Eigen::Index i, Eigen::Index j) {
    laplacian(i, j) += 1.0;
    laplacian(j, i) += 1.0;
    laplacian(i, i) -= 1.0;
    laplacian(j, j) -= 1.0;
  };
  for (Eigen::Index i = 0; i + 1 < m; ++i) link(i, i + 1);
  if (cfg.boundary == Boundary::Periodic) link(m - 1, 0);

  Eigen::MatrixXcd h = (-hop * laplacian).cast<Complex>();
  for (Eigen::Index i = 0; i < m; ++i) h(i, i) += cfg.potential[static_cast<std::size_t>(i)];
  return Hamiltonian::from_matrix(std::move(h));
}

StepKernel build_kernel(const Hamiltonian& h, double dt) {
  if (!(std::isfinite(dt) && dt > 0.0)) {
    throw std::invalid_argument("kernel time step must be positive and finite");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h.matrix());
  if (eig.info() != Eigen::Success) throw std::runtime_error("Hamiltonian diagonalization failed");

  const Eigen::VectorXd& lambda = eig.eigenvalues();
  Eigen::VectorXcd phases(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    phases(i) = std::polar(1.0, -lambda(i) * dt);
  }
  const Eigen::MatrixXcd& u = eig.eigenvectors();
  Eigen::MatrixXcd k = u * phases.asDiagonal() * u.adjoint();
  return StepKernel(dt, std::move(k));
}

double unitarity_defect(const StepKernel& k) {
  const auto& m = k.matrix();
  const auto n = m.rows();
  return (m.adjoint() * m - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace caqt
