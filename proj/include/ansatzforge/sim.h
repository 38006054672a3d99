// Copyright 2026 The AnsatzForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ANSATZFORGE_SIM_H
#define ANSATZFORGE_SIM_H

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "ansatzforge/bundle.h"
#include "ansatzforge/pauli.h"
#include "ansatzforge/pool.h"

namespace ansatzforge {

/// Largest register a Space will index densely.
inline constexpr int kMaxSimQubits = 24;

/// Tolerance on Im<psi|H|psi> before a Hamiltonian is declared non-Hermitian.
inline constexpr double kEnergyImagTolerance = 1e-10;

/// The computational basis states a simulation ranges over.
///
/// Either all 2^n states, or the states with fixed alpha and beta electron
/// counts. Every spin-conserving excitation and molecular Hamiltonian maps
/// such a sector into itself, so restricting to it is exact.
class Space {
   public:
    static std::shared_ptr<const Space> full(int n_qubits);
    /// States with n_alpha ones among qubits [0, n_orb) and n_beta among [n_orb, 2 n_orb).
    static std::shared_ptr<const Space> sector(int n_spatial_orbitals, int n_alpha, int n_beta);
    static std::shared_ptr<const Space> for_bundle(const MoleculeBundle &bundle);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return basis_.size(); }
    bool is_full() const { return basis_.size() == (std::size_t{1} << n_qubits_); }
    std::uint64_t basis(std::size_t i) const { return basis_[i]; }
    const std::vector<std::uint64_t> &basis() const { return basis_; }
    /// Position of a basis state, or -1 when it lies outside the space.
    std::int64_t index_of(std::uint64_t b) const {
        return b < index_.size() ? index_[b] : -1;
    }

   private:
    Space(int n_qubits, std::vector<std::uint64_t> basis);
    int n_qubits_;
    std::vector<std::uint64_t> basis_;
    std::vector<std::int32_t> index_;
};

/// Amplitudes over a Space.
class State {
   public:
    State() = default;
    State(std::shared_ptr<const Space> space, Eigen::VectorXcd amplitudes);
    static State basis_state(std::shared_ptr<const Space> space, std::uint64_t basis);

    const Space &space() const { return *space_; }
    const std::shared_ptr<const Space> &space_ptr() const { return space_; }
    const Eigen::VectorXcd &amplitudes() const { return amplitudes_; }
    Eigen::VectorXcd &amplitudes() { return amplitudes_; }
    double norm() const { return amplitudes_.norm(); }
    /// Amplitude of a basis state (0 outside the space).
    Complex amplitude(std::uint64_t basis) const;
    /// Full 2^n vector.
    Eigen::VectorXcd dense() const;

   private:
    std::shared_ptr<const Space> space_;
    Eigen::VectorXcd amplitudes_;
};

/// Computational basis state of the bundle's reference determinant on the full register.
State hf_state(const MoleculeBundle &bundle);

/// op|psi> by direct Pauli action. Throws if the result leaves the space.
State apply_pauli_sum(const PauliSum &op, const State &psi);

/// <psi|op|psi>.
Complex expectation(const PauliSum &op, const State &psi);

/// Real part of <psi|H|psi>; a larger imaginary part than
/// kEnergyImagTolerance raises a validation error.
double energy(const State &psi, const PauliSum &h);

/// e^{theta G} psi through I + sin(theta) G + (1 - cos(theta)) G^2. Valid
/// whenever G^3 = -G, which holds for every excitation generator.
void apply_exponential(State &psi, const PauliSum &generator, double theta);

/// A Pauli sum compiled to a sparse matrix over one Space.
class SparseOperator {
   public:
    SparseOperator() = default;
    /// Throws a validation error if op maps a state of the space outside it.
    SparseOperator(const PauliSum &op, std::shared_ptr<const Space> space);

    const Space &space() const { return *space_; }
    const std::shared_ptr<const Space> &space_ptr() const { return space_; }
    void apply(const Eigen::VectorXcd &in, Eigen::VectorXcd &out) const { out.noalias() = matrix_ * in; }
    const Eigen::SparseMatrix<Complex, Eigen::RowMajor> &matrix() const { return matrix_; }

   private:
    std::shared_ptr<const Space> space_;
    Eigen::SparseMatrix<Complex, Eigen::RowMajor> matrix_;
};

/// e^{theta G} for one excitation generator as a list of two-level rotations.
///
/// G moves every basis state by the same flip mask and acts as
/// s (|b'><b| - |b><b'|) with s = +-1 on each coupled pair, so the exponential
/// rotates each pair by theta and leaves the rest alone.
class RotationKernel {
   public:
    /// Throws a validation error if the generator does not have that shape.
    RotationKernel(const PauliSum &generator, const Space &space);

    void apply(Eigen::VectorXcd &psi, double theta) const { rotate(psi, std::cos(theta), std::sin(theta)); }
    void apply_inverse(Eigen::VectorXcd &psi, double theta) const {
        rotate(psi, std::cos(theta), -std::sin(theta));
    }
    /// <lambda|G|phi>.
    Complex inner(const Eigen::VectorXcd &lambda, const Eigen::VectorXcd &phi) const;
    std::size_t pairs() const { return from_.size(); }

   private:
    void rotate(Eigen::VectorXcd &psi, double c, double s) const;
    std::vector<std::int32_t> from_;
    std::vector<std::int32_t> to_;
    std::vector<double> sign_;
};

/// One layer of a circuit: a pool group and the first of its parameter slots.
/// Members of a shared group all read `slot`; otherwise member m reads slot + m.
struct Layer {
    int group = 0;
    int slot = 0;
    bool operator==(const Layer &) const = default;
};

/// Layers with consecutive fresh slots, one per group parameter.
std::vector<Layer> layers_for(const OperatorPool &pool, std::span<const int> groups);
/// Number of parameter slots a layer list reads (max slot used + 1).
int slot_count(const OperatorPool &pool, std::span<const Layer> layers);

/// Compiled Hamiltonian and pool kernels for one bundle. Holds its own copies
/// of the bundle and pool.
///
/// All methods are const and allocate their own scratch, so a Simulator can be
/// shared across threads.
class Simulator {
   public:
    /// restrict_to_sector = false simulates the full 2^n register.
    Simulator(const MoleculeBundle &bundle, const OperatorPool &pool, bool restrict_to_sector = true);

    const std::shared_ptr<const Space> &space() const { return space_; }
    const OperatorPool &pool() const { return pool_; }
    const MoleculeBundle &bundle() const { return bundle_; }
    const SparseOperator &hamiltonian() const { return hamiltonian_; }

    State hf_state() const;
    void apply_group(State &psi, int group, std::span<const double> member_thetas) const;
    void apply_group(State &psi, int group, double theta) const;
    State prepare(std::span<const Layer> layers, std::span<const double> theta, const State *initial = nullptr) const;
    double energy(const State &psi) const;
    double energy(std::span<const Layer> layers, std::span<const double> theta, const State *initial = nullptr) const;
    /// Energy and dE/dtheta by one forward and one adjoint sweep. Slots read
    /// by several rotations accumulate all contributions; grad has one entry
    /// per slot in theta.
    double energy_and_gradient(std::span<const Layer> layers, std::span<const double> theta, std::span<double> grad,
                               const State *initial = nullptr) const;

    /// dE/dtheta of each member of `group` appended after psi at theta = 0,
    /// i.e. 2 Re<H psi|G_m|psi>. h_psi must be H applied to psi.
    std::vector<double> append_gradients(const State &psi, const Eigen::VectorXcd &h_psi, int group) const;
    Eigen::VectorXcd apply_hamiltonian(const State &psi) const;

   private:
    void check_layers(std::span<const Layer> layers, std::size_t n_theta) const;
    MoleculeBundle bundle_;
    OperatorPool pool_;
    std::shared_ptr<const Space> space_;
    SparseOperator hamiltonian_;
    /// kernels_[group][member]
    std::vector<std::vector<RotationKernel>> kernels_;
};

}  // namespace ansatzforge

#endif
