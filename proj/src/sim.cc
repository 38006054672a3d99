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

#include "ansatzforge/sim.h"

#include <bit>
#include <cmath>
#include <map>
#include <unordered_map>

#include "ansatzforge/error.h"

namespace ansatzforge {

Space::Space(int n_qubits, std::vector<std::uint64_t> basis)
    : n_qubits_(n_qubits), basis_(std::move(basis)), index_(std::size_t{1} << n_qubits, -1) {
    for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = static_cast<std::int32_t>(i);
}

std::shared_ptr<const Space> Space::full(int n_qubits) {
    if (n_qubits < 0 || n_qubits > kMaxSimQubits) {
        throw validation_error("cannot simulate " + std::to_string(n_qubits) + " qubits");
    }
    std::vector<std::uint64_t> basis(std::size_t{1} << n_qubits);
    for (std::size_t b = 0; b < basis.size(); ++b) basis[b] = b;
    return std::shared_ptr<const Space>(new Space(n_qubits, std::move(basis)));
}

std::shared_ptr<const Space> Space::sector(int n_spatial_orbitals, int n_alpha, int n_beta) {
    const int n = 2 * n_spatial_orbitals;
    if (n <= 0 || n > kMaxSimQubits) throw validation_error("cannot simulate " + std::to_string(n) + " qubits");
    const std::uint64_t low = (std::uint64_t{1} << n_spatial_orbitals) - 1;
    std::vector<std::uint64_t> basis;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
        if (std::popcount(b & low) == n_alpha && std::popcount(b >> n_spatial_orbitals) == n_beta) {
            basis.push_back(b);
        }
    }
    return std::shared_ptr<const Space>(new Space(n, std::move(basis)));
}

std::shared_ptr<const Space> Space::for_bundle(const MoleculeBundle &bundle) {
    const int n_orb = bundle.active_space.n_spatial_orbitals;
    const std::uint64_t low = (std::uint64_t{1} << n_orb) - 1;
    return sector(n_orb, std::popcount(bundle.hf_occupation & low), std::popcount(bundle.hf_occupation >> n_orb));
}

State::State(std::shared_ptr<const Space> space, Eigen::VectorXcd amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != space_->dim()) {
        throw validation_error("amplitude vector does not match the space dimension");
    }
}

State State::basis_state(std::shared_ptr<const Space> space, std::uint64_t basis) {
    std::int64_t i = space->index_of(basis);
    if (i < 0) throw validation_error("basis state outside the simulation space");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space->dim());
    v[i] = 1.0;
    return State(std::move(space), std::move(v));
}

Complex State::amplitude(std::uint64_t basis) const {
    std::int64_t i = space_->index_of(basis);
    return i < 0 ? Complex(0.0) : amplitudes_[i];
}

Eigen::VectorXcd State::dense() const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(std::size_t{1} << space_->n_qubits());
    for (std::size_t i = 0; i < space_->dim(); ++i) v[space_->basis(i)] = amplitudes_[i];
    return v;
}

State hf_state(const MoleculeBundle &bundle) {
    return State::basis_state(Space::full(bundle.n_qubits()), bundle.hf_occupation);
}

State apply_pauli_sum(const PauliSum &op, const State &psi) {
    const Space &space = psi.space();
    if (op.qubit_extent() > space.n_qubits()) throw validation_error("operator acts outside the register");
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(space.dim());
    std::unordered_map<std::uint64_t, Complex> leaked;
    for (std::size_t i = 0; i < space.dim(); ++i) {
        const Complex a = psi.amplitudes()[i];
        if (a == 0.0) continue;
        const std::uint64_t b = space.basis(i);
        for (const auto &t : op.terms()) {
            std::int64_t j = space.index_of(b ^ t.x);
            Complex v = pauli_phase(t, b) * a;
            if (j < 0) {
                leaked[b ^ t.x] += v;
            } else {
                out[j] += v;
            }
        }
    }
    for (const auto &[b, v] : leaked) {
        if (std::abs(v) > 1e-12) throw validation_error("operator leaves the simulation space");
    }
    return State(psi.space_ptr(), std::move(out));
}

Complex expectation(const PauliSum &op, const State &psi) {
    return psi.amplitudes().dot(apply_pauli_sum(op, psi).amplitudes());
}

double energy(const State &psi, const PauliSum &h) {
    Complex e = expectation(h, psi);
    if (std::abs(e.imag()) > kEnergyImagTolerance) throw validation_error("complex energy: Hamiltonian not Hermitian");
    return e.real();
}

void apply_exponential(State &psi, const PauliSum &generator, double theta) {
    State g1 = apply_pauli_sum(generator, psi);
    State g2 = apply_pauli_sum(generator, g1);
    psi.amplitudes() += std::sin(theta) * g1.amplitudes() + (1.0 - std::cos(theta)) * g2.amplitudes();
}

SparseOperator::SparseOperator(const PauliSum &op, std::shared_ptr<const Space> space) : space_(std::move(space)) {
    if (op.qubit_extent() > space_->n_qubits()) throw validation_error("operator acts outside the register");
    std::map<std::uint64_t, std::vector<PauliString>> by_flip;
    for (const auto &t : op.terms()) by_flip[t.x].push_back(t);
    std::vector<Eigen::Triplet<Complex>> triplets;
    for (std::size_t j = 0; j < space_->dim(); ++j) {
        const std::uint64_t b = space_->basis(j);
        for (const auto &[x, terms] : by_flip) {
            Complex v = 0.0;
            for (const auto &t : terms) v += pauli_phase(t, b);
            if (std::abs(v) < 1e-14) continue;
            std::int64_t i = space_->index_of(b ^ x);
            if (i < 0) {
                if (std::abs(v) > 1e-10) throw validation_error("operator leaves the simulation space");
                continue;
            }
            triplets.emplace_back(static_cast<int>(i), static_cast<int>(j), v);
        }
    }
    matrix_.resize(space_->dim(), space_->dim());
    matrix_.setFromTriplets(triplets.begin(), triplets.end());
    matrix_.makeCompressed();
}

RotationKernel::RotationKernel(const PauliSum &generator, const Space &space) {
    if (generator.empty()) throw validation_error("empty generator");
    const std::uint64_t x = generator.terms().front().x;
    for (const auto &t : generator.terms()) {
        if (t.x != x || x == 0) throw validation_error("generator is not a single-flip excitation");
    }
    auto coupling = [&](std::uint64_t b) {
        Complex g = 0.0;
        for (const auto &t : generator.terms()) g += pauli_phase(t, b);
        return g;
    };
    for (std::size_t i = 0; i < space.dim(); ++i) {
        const std::uint64_t b = space.basis(i);
        const std::uint64_t partner = b ^ x;
        if (partner < b) continue;
        Complex g = coupling(b);
        if (std::abs(g) < 1e-12) continue;
        Complex back = coupling(partner);
        if (std::abs(g.imag()) > 1e-12 || std::abs(std::abs(g) - 1.0) > 1e-12 || std::abs(back + g) > 1e-12) {
            throw validation_error("generator does not act as a unit two-level rotation");
        }
        std::int64_t j = space.index_of(partner);
        if (j < 0) throw validation_error("generator leaves the simulation space");
        from_.push_back(static_cast<std::int32_t>(i));
        to_.push_back(static_cast<std::int32_t>(j));
        sign_.push_back(g.real() > 0 ? 1.0 : -1.0);
    }
}

void RotationKernel::rotate(Eigen::VectorXcd &psi, double c, double s) const {
    for (std::size_t k = 0; k < from_.size(); ++k) {
        const Complex a = psi[from_[k]];
        const Complex b = psi[to_[k]];
        const double ss = sign_[k] * s;
        psi[from_[k]] = c * a - ss * b;
        psi[to_[k]] = c * b + ss * a;
    }
}

Complex RotationKernel::inner(const Eigen::VectorXcd &lambda, const Eigen::VectorXcd &phi) const {
    Complex acc = 0.0;
    for (std::size_t k = 0; k < from_.size(); ++k) {
        acc += sign_[k] * (std::conj(lambda[to_[k]]) * phi[from_[k]] - std::conj(lambda[from_[k]]) * phi[to_[k]]);
    }
    return acc;
}

std::vector<Layer> layers_for(const OperatorPool &pool, std::span<const int> groups) {
    std::vector<Layer> out;
    int slot = 0;
    for (int g : groups) {
        out.push_back({g, slot});
        slot += pool[g].n_parameters();
    }
    return out;
}

int slot_count(const OperatorPool &pool, std::span<const Layer> layers) {
    int n = 0;
    for (const auto &l : layers) n = std::max(n, l.slot + pool[l.group].n_parameters());
    return n;
}

Simulator::Simulator(const MoleculeBundle &bundle, const OperatorPool &pool, bool restrict_to_sector)
    : bundle_(bundle),
      pool_(pool),
      space_(restrict_to_sector ? Space::for_bundle(bundle) : Space::full(bundle.n_qubits())),
      hamiltonian_(bundle.hamiltonian, space_) {
    if (pool.n_qubits() != bundle.n_qubits()) throw validation_error("pool and bundle registers differ");
    kernels_.reserve(pool.groups.size());
    for (const auto &g : pool.groups) {
        std::vector<RotationKernel> ks;
        for (const auto &m : g.members) ks.emplace_back(m.generator, *space_);
        kernels_.push_back(std::move(ks));
    }
}

State Simulator::hf_state() const { return State::basis_state(space_, bundle_.hf_occupation); }

void Simulator::apply_group(State &psi, int group, std::span<const double> member_thetas) const {
    const auto &ks = kernels_.at(group);
    if (member_thetas.size() != ks.size()) throw validation_error("one angle per group member expected");
    for (std::size_t m = 0; m < ks.size(); ++m) ks[m].apply(psi.amplitudes(), member_thetas[m]);
}

void Simulator::apply_group(State &psi, int group, double theta) const {
    for (const auto &k : kernels_.at(group)) k.apply(psi.amplitudes(), theta);
}

void Simulator::check_layers(std::span<const Layer> layers, std::size_t n_theta) const {
    for (const auto &l : layers) {
        if (l.group < 0 || l.group >= pool_.size()) throw validation_error("layer group outside the pool");
        if (l.slot < 0 || static_cast<std::size_t>(l.slot + pool_[l.group].n_parameters()) > n_theta) {
            throw validation_error("layer reads a parameter slot past the end of theta");
        }
    }
}

State Simulator::prepare(std::span<const Layer> layers, std::span<const double> theta, const State *initial) const {
    check_layers(layers, theta.size());
    State psi = initial ? *initial : hf_state();
    for (const auto &l : layers) {
        const auto &g = pool_[l.group];
        const auto &ks = kernels_[l.group];
        for (std::size_t m = 0; m < ks.size(); ++m) {
            ks[m].apply(psi.amplitudes(), theta[l.slot + (g.shared_parameter ? 0 : m)]);
        }
    }
    return psi;
}

double Simulator::energy(const State &psi) const {
    Eigen::VectorXcd h;
    hamiltonian_.apply(psi.amplitudes(), h);
    Complex e = psi.amplitudes().dot(h);
    if (std::abs(e.imag()) > kEnergyImagTolerance) throw validation_error("complex energy: Hamiltonian not Hermitian");
    return e.real();
}

double Simulator::energy(std::span<const Layer> layers, std::span<const double> theta, const State *initial) const {
    return energy(prepare(layers, theta, initial));
}

double Simulator::energy_and_gradient(std::span<const Layer> layers, std::span<const double> theta,
                                      std::span<double> grad, const State *initial) const {
    if (grad.size() != theta.size()) throw validation_error("gradient and theta lengths differ");
    State phi_state = prepare(layers, theta, initial);
    Eigen::VectorXcd &phi = phi_state.amplitudes();
    Eigen::VectorXcd lambda;
    hamiltonian_.apply(phi, lambda);
    Complex e = phi.dot(lambda);
    if (std::abs(e.imag()) > kEnergyImagTolerance) throw validation_error("complex energy: Hamiltonian not Hermitian");

    std::fill(grad.begin(), grad.end(), 0.0);
    for (auto l = layers.rbegin(); l != layers.rend(); ++l) {
        const auto &g = pool_[l->group];
        const auto &ks = kernels_[l->group];
        for (std::size_t m = ks.size(); m-- > 0;) {
            const int slot = l->slot + (g.shared_parameter ? 0 : static_cast<int>(m));
            grad[slot] += 2.0 * ks[m].inner(lambda, phi).real();
            ks[m].apply_inverse(phi, theta[slot]);
            ks[m].apply_inverse(lambda, theta[slot]);
        }
    }
    return e.real();
}

std::vector<double> Simulator::append_gradients(const State &psi, const Eigen::VectorXcd &h_psi, int group) const {
    std::vector<double> out;
    for (const auto &k : kernels_.at(group)) out.push_back(2.0 * k.inner(h_psi, psi.amplitudes()).real());
    return out;
}

Eigen::VectorXcd Simulator::apply_hamiltonian(const State &psi) const {
    Eigen::VectorXcd h;
    hamiltonian_.apply(psi.amplitudes(), h);
    return h;
}

}  // namespace ansatzforge
