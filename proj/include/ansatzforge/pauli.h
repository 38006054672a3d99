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

#ifndef ANSATZFORGE_PAULI_H
#define ANSATZFORGE_PAULI_H

#include <bit>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ansatzforge {

using Complex = std::complex<double>;

/// Terms with a coefficient magnitude below this are dropped on canonicalization.
inline constexpr double kPauliDropTolerance = 1e-12;

/// Largest register the engine addresses with 64-bit masks.
inline constexpr int kMaxQubits = 62;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// A weighted tensor product of single-qubit Pauli operators.
///
/// The word is stored as a pair of bit masks: qubit q carries X when only bit q
/// of `x` is set, Z when only bit q of `z` is set and Y when both are set. Bit q
/// of a computational basis index is the occupation of qubit q, so
///
///     P|b> = i^{|x & z|} (-1)^{|b & z|} |b ^ x>.
struct PauliString {
    Complex coefficient{1.0, 0.0};
    std::uint64_t x = 0;
    std::uint64_t z = 0;

    Pauli at(int qubit) const;
    int weight() const;
    /// One past the highest qubit the word touches (0 for the identity).
    int qubit_extent() const;
    /// Text form such as "X0 Z1 Y3"; the identity is the empty string.
    std::string word() const;
    bool same_word(const PauliString &other) const { return x == other.x && z == other.z; }

    /// Parses the text form; accepts "" or "I" for the identity.
    static PauliString parse(std::string_view word, Complex coefficient = 1.0);
    static PauliString single(int qubit, Pauli p, Complex coefficient = 1.0);
};

PauliString operator*(const PauliString &a, const PauliString &b);
bool commutes(const PauliString &a, const PauliString &b);

/// Lexicographic order over the (qubit, letter) sequence of the words.
bool word_less(const PauliString &a, const PauliString &b);

/// Phase and target of a Pauli word acting on one basis state.
inline Complex pauli_phase(const PauliString &p, std::uint64_t basis) {
    static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    int k = std::popcount(p.x & p.z) + 2 * (std::popcount(basis & p.z) & 1);
    return p.coefficient * kIPow[k & 3];
}

/// A canonical sum of Pauli strings: no duplicate words, no terms below the
/// drop tolerance, terms ordered by `word_less`.
class PauliSum {
   public:
    PauliSum() = default;
    explicit PauliSum(std::vector<PauliString> terms);

    static PauliSum identity(Complex coefficient);

    const std::vector<PauliString> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    int qubit_extent() const;
    double max_abs_coefficient() const;
    /// Largest |Im c| over all terms.
    double max_imag() const;

    PauliSum adjoint() const;

    PauliSum &operator+=(const PauliSum &other);
    PauliSum &operator-=(const PauliSum &other);
    PauliSum &operator*=(Complex scale);

    friend PauliSum operator+(PauliSum a, const PauliSum &b) { return a += b; }
    friend PauliSum operator-(PauliSum a, const PauliSum &b) { return a -= b; }
    friend PauliSum operator*(PauliSum a, Complex s) { return a *= s; }
    friend PauliSum operator*(Complex s, PauliSum a) { return a *= s; }
    friend PauliSum operator*(const PauliSum &a, const PauliSum &b);

    bool operator==(const PauliSum &other) const;

   private:
    void canonicalize();
    std::vector<PauliString> terms_;
};

/// Commutator [a, b].
PauliSum commutator(const PauliSum &a, const PauliSum &b);

/// Jordan-Wigner ladder operators on `n_qubits` modes (occupied = |1>).
PauliSum jw_creation(int mode);
PauliSum jw_annihilation(int mode);

enum class ExcitationKind { kSingle, kDouble };

/// Mapping used for an excitation generator.
enum class Encoding {
    kFermionicJW,
    /// Jordan-Wigner image with every Z-string factor removed.
    kQubitExcitation,
};

/// One anti-Hermitian excitation generator.
///
/// Singles (p,q) represent a+_p a_q - a+_q a_p and doubles (p,q,r,s) represent
/// a+_p a+_q a_r a_s - a+_s a+_r a_q a_p, with the creation indices first.
struct ExcitationOp {
    ExcitationKind kind = ExcitationKind::kSingle;
    std::vector<int> indices;
    Encoding encoding = Encoding::kFermionicJW;
    PauliSum generator;
    /// max index - min index + 1
    int qubit_span = 0;
    /// Number of qubits carrying a Z factor in the generator (0 for QEB).
    int z_string_length = 0;

    std::string tuple_string() const;
};

/// Validates an index tuple and returns its kind. Throws a validation error on
/// out-of-range, repeated or wrongly sized tuples.
ExcitationKind check_excitation_indices(std::span<const int> indices, int n_qubits);

ExcitationOp jw_excitation(std::span<const int> indices, ExcitationKind kind, int n_qubits);
ExcitationOp qeb_excitation(std::span<const int> indices, ExcitationKind kind, int n_qubits);

/// CNOT accounting for one excitation. Fermionic operators cost
/// base + per_z * z, qubit excitations a fixed amount.
struct CostModel {
    int single_base = 2;
    int double_base = 8;
    int per_z = 2;
    int qeb_single = 2;
    int qeb_double = 14;

    static CostModel parse_json(std::string_view text);
    static CostModel load(const std::string &path);
    std::string to_json() const;
    bool operator==(const CostModel &) const = default;
};

int cnot_cost(const ExcitationOp &op, const CostModel &model);

/// Dense matrix of a Pauli sum on at most 6 qubits; row index is the output
/// basis state.
Eigen::MatrixXcd matricize(const PauliSum &ps, int n_qubits);

}  // namespace ansatzforge

#endif
