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

#include "ansatzforge/pauli.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ansatzforge/error.h"
#include "json.hpp"

namespace ansatzforge {

namespace {

constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

std::uint64_t bit(int q) { return std::uint64_t{1} << q; }

}  // namespace

Pauli PauliString::at(int qubit) const {
    bool xb = (x >> qubit) & 1;
    bool zb = (z >> qubit) & 1;
    if (xb && zb) return Pauli::Y;
    if (xb) return Pauli::X;
    if (zb) return Pauli::Z;
    return Pauli::I;
}

int PauliString::weight() const { return std::popcount(x | z); }

int PauliString::qubit_extent() const { return 64 - std::countl_zero(x | z); }

std::string PauliString::word() const {
    std::string out;
    std::uint64_t support = x | z;
    while (support) {
        int q = std::countr_zero(support);
        support &= support - 1;
        if (!out.empty()) out += ' ';
        out += "IXYZ"[static_cast<int>(at(q))];
        out += std::to_string(q);
    }
    return out;
}

PauliString PauliString::parse(std::string_view word, Complex coefficient) {
    PauliString p;
    p.coefficient = coefficient;
    std::size_t pos = 0;
    while (pos < word.size()) {
        if (word[pos] == ' ' || word[pos] == '\t') {
            ++pos;
            continue;
        }
        char letter = word[pos++];
        std::size_t start = pos;
        while (pos < word.size() && word[pos] >= '0' && word[pos] <= '9') ++pos;
        if (letter == 'I' && start == pos) continue;
        if (start == pos) throw validation_error("pauli word '" + std::string(word) + "': missing qubit index");
        int q = std::stoi(std::string(word.substr(start, pos - start)));
        if (q >= kMaxQubits) throw validation_error("pauli word '" + std::string(word) + "': qubit index too large");
        if ((p.x | p.z) & bit(q)) {
            throw validation_error("pauli word '" + std::string(word) + "': qubit " + std::to_string(q) + " repeated");
        }
        switch (letter) {
            case 'X':
                p.x |= bit(q);
                break;
            case 'Y':
                p.x |= bit(q);
                p.z |= bit(q);
                break;
            case 'Z':
                p.z |= bit(q);
                break;
            case 'I':
                break;
            default:
                throw validation_error("pauli word '" + std::string(word) + "': unknown letter");
        }
    }
    return p;
}

PauliString PauliString::single(int qubit, Pauli p, Complex coefficient) {
    PauliString out;
    out.coefficient = coefficient;
    if (p == Pauli::X || p == Pauli::Y) out.x = bit(qubit);
    if (p == Pauli::Z || p == Pauli::Y) out.z = bit(qubit);
    return out;
}

PauliString operator*(const PauliString &a, const PauliString &b) {
    // P(x,z) = i^{|x&z|} X^x Z^z and Z^z1 X^x2 = (-1)^{|z1&x2|} X^x2 Z^z1.
    PauliString out;
    out.x = a.x ^ b.x;
    out.z = a.z ^ b.z;
    int k = std::popcount(a.x & a.z) + std::popcount(b.x & b.z) - std::popcount(out.x & out.z) +
            2 * std::popcount(a.z & b.x);
    out.coefficient = a.coefficient * b.coefficient * kIPow[((k % 4) + 4) % 4];
    return out;
}

bool commutes(const PauliString &a, const PauliString &b) {
    return (std::popcount((a.x & b.z) ^ (a.z & b.x)) & 1) == 0;
}

bool word_less(const PauliString &a, const PauliString &b) {
    std::uint64_t sa = a.x | a.z;
    std::uint64_t sb = b.x | b.z;
    while (sa && sb) {
        int qa = std::countr_zero(sa);
        int qb = std::countr_zero(sb);
        if (qa != qb) return qa < qb;
        auto la = a.at(qa);
        auto lb = b.at(qb);
        if (la != lb) return la < lb;
        sa &= sa - 1;
        sb &= sb - 1;
    }
    return sa == 0 && sb != 0;
}

PauliSum::PauliSum(std::vector<PauliString> terms) : terms_(std::move(terms)) { canonicalize(); }

PauliSum PauliSum::identity(Complex coefficient) { return PauliSum({PauliString{coefficient, 0, 0}}); }

void PauliSum::canonicalize() {
    std::stable_sort(terms_.begin(), terms_.end(), word_less);
    std::vector<PauliString> merged;
    merged.reserve(terms_.size());
    for (const auto &t : terms_) {
        if (!merged.empty() && merged.back().same_word(t)) {
            merged.back().coefficient += t.coefficient;
        } else {
            merged.push_back(t);
        }
    }
    std::erase_if(merged, [](const PauliString &t) { return std::abs(t.coefficient) < kPauliDropTolerance; });
    terms_ = std::move(merged);
}

int PauliSum::qubit_extent() const {
    int n = 0;
    for (const auto &t : terms_) n = std::max(n, t.qubit_extent());
    return n;
}

double PauliSum::max_abs_coefficient() const {
    double m = 0;
    for (const auto &t : terms_) m = std::max(m, std::abs(t.coefficient));
    return m;
}

double PauliSum::max_imag() const {
    double m = 0;
    for (const auto &t : terms_) m = std::max(m, std::abs(t.coefficient.imag()));
    return m;
}

PauliSum PauliSum::adjoint() const {
    auto terms = terms_;
    for (auto &t : terms) t.coefficient = std::conj(t.coefficient);
    return PauliSum(std::move(terms));
}

PauliSum &PauliSum::operator+=(const PauliSum &other) {
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    canonicalize();
    return *this;
}

PauliSum &PauliSum::operator-=(const PauliSum &other) { return *this += other * Complex(-1.0); }

PauliSum &PauliSum::operator*=(Complex scale) {
    for (auto &t : terms_) t.coefficient *= scale;
    canonicalize();
    return *this;
}

PauliSum operator*(const PauliSum &a, const PauliSum &b) {
    std::vector<PauliString> out;
    out.reserve(a.size() * b.size());
    for (const auto &ta : a.terms()) {
        for (const auto &tb : b.terms()) out.push_back(ta * tb);
    }
    return PauliSum(std::move(out));
}

bool PauliSum::operator==(const PauliSum &other) const {
    if (terms_.size() != other.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (!terms_[i].same_word(other.terms_[i]) || terms_[i].coefficient != other.terms_[i].coefficient) {
            return false;
        }
    }
    return true;
}

PauliSum commutator(const PauliSum &a, const PauliSum &b) { return a * b - b * a; }

PauliSum jw_creation(int mode) {
    // Z_{<p} (X_p - i Y_p) / 2
    std::uint64_t below = bit(mode) - 1;
    PauliString xs{0.5, bit(mode), below};
    PauliString ys{Complex(0, -0.5), bit(mode), below | bit(mode)};
    return PauliSum({xs, ys});
}

PauliSum jw_annihilation(int mode) {
    std::uint64_t below = bit(mode) - 1;
    PauliString xs{0.5, bit(mode), below};
    PauliString ys{Complex(0, 0.5), bit(mode), below | bit(mode)};
    return PauliSum({xs, ys});
}

std::string ExcitationOp::tuple_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(indices[i]);
    }
    return s + ")";
}

ExcitationKind check_excitation_indices(std::span<const int> indices, int n_qubits) {
    if (indices.size() != 2 && indices.size() != 4) {
        throw validation_error("excitation needs 2 or 4 indices, got " + std::to_string(indices.size()));
    }
    if (n_qubits <= 0 || n_qubits > kMaxQubits) throw validation_error("bad register size");
    std::uint64_t seen = 0;
    for (int i : indices) {
        if (i < 0 || i >= n_qubits) {
            throw validation_error("excitation index " + std::to_string(i) + " outside [0, " +
                                   std::to_string(n_qubits) + ")");
        }
        if (seen & bit(i)) throw validation_error("excitation index " + std::to_string(i) + " repeated");
        seen |= bit(i);
    }
    return indices.size() == 2 ? ExcitationKind::kSingle : ExcitationKind::kDouble;
}

namespace {

ExcitationOp make_excitation(std::span<const int> indices, ExcitationKind kind, int n_qubits, Encoding encoding) {
    if (check_excitation_indices(indices, n_qubits) != kind) {
        throw validation_error("excitation kind does not match index count");
    }
    PauliSum forward;
    PauliSum backward;
    if (kind == ExcitationKind::kSingle) {
        int p = indices[0], q = indices[1];
        forward = jw_creation(p) * jw_annihilation(q);
        backward = jw_creation(q) * jw_annihilation(p);
    } else {
        int p = indices[0], q = indices[1], r = indices[2], s = indices[3];
        forward = jw_creation(p) * jw_creation(q) * jw_annihilation(r) * jw_annihilation(s);
        backward = jw_creation(s) * jw_creation(r) * jw_annihilation(q) * jw_annihilation(p);
    }
    PauliSum generator = forward - backward;

    std::uint64_t acted = 0;
    int lo = n_qubits, hi = -1;
    for (int i : indices) {
        acted |= bit(i);
        lo = std::min(lo, i);
        hi = std::max(hi, i);
    }
    if (encoding == Encoding::kQubitExcitation) {
        std::vector<PauliString> terms = generator.terms();
        for (auto &t : terms) t.z &= acted | t.x;
        generator = PauliSum(std::move(terms));
    }

    ExcitationOp op;
    op.kind = kind;
    op.indices.assign(indices.begin(), indices.end());
    op.encoding = encoding;
    op.qubit_span = hi - lo + 1;
    if (!generator.empty()) {
        const auto &t = generator.terms().front();
        op.z_string_length = std::popcount(t.z & ~t.x);
    }
    op.generator = std::move(generator);
    return op;
}

}  // namespace

ExcitationOp jw_excitation(std::span<const int> indices, ExcitationKind kind, int n_qubits) {
    return make_excitation(indices, kind, n_qubits, Encoding::kFermionicJW);
}

ExcitationOp qeb_excitation(std::span<const int> indices, ExcitationKind kind, int n_qubits) {
    return make_excitation(indices, kind, n_qubits, Encoding::kQubitExcitation);
}

CostModel CostModel::parse_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw validation_error(std::string("cost model: ") + e.what());
    }
    if (!j.is_object()) throw validation_error("cost model: expected a JSON object");
    CostModel m;
    auto read = [&](const char *key, int &field) {
        if (!j.contains(key)) return;
        if (!j[key].is_number_integer() || j[key].get<int>() < 0) {
            throw validation_error(std::string("cost model: '") + key + "' must be a non-negative integer");
        }
        field = j[key].get<int>();
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
        static const char *kKnown[] = {"single_base", "double_base", "per_z", "qeb_single", "qeb_double"};
        if (std::find_if(std::begin(kKnown), std::end(kKnown), [&](const char *k) { return it.key() == k; }) ==
            std::end(kKnown)) {
            throw validation_error("cost model: unknown key '" + it.key() + "'");
        }
    }
    read("single_base", m.single_base);
    read("double_base", m.double_base);
    read("per_z", m.per_z);
    read("qeb_single", m.qeb_single);
    read("qeb_double", m.qeb_double);
    return m;
}

CostModel CostModel::load(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open cost model '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

std::string CostModel::to_json() const {
    nlohmann::ordered_json j;
    j["single_base"] = single_base;
    j["double_base"] = double_base;
    j["per_z"] = per_z;
    j["qeb_single"] = qeb_single;
    j["qeb_double"] = qeb_double;
    return j.dump();
}

int cnot_cost(const ExcitationOp &op, const CostModel &model) {
    bool single = op.kind == ExcitationKind::kSingle;
    if (op.encoding == Encoding::kQubitExcitation) return single ? model.qeb_single : model.qeb_double;
    return (single ? model.single_base : model.double_base) + model.per_z * op.z_string_length;
}

Eigen::MatrixXcd matricize(const PauliSum &ps, int n_qubits) {
    if (n_qubits < 0 || n_qubits > 6) {
        throw validation_error("matricize supports at most 6 qubits, got " + std::to_string(n_qubits));
    }
    if (ps.qubit_extent() > n_qubits) throw validation_error("matricize: operator exceeds register");
    const std::uint64_t dim = std::uint64_t{1} << n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &t : ps.terms()) {
        for (std::uint64_t b = 0; b < dim; ++b) m(b ^ t.x, b) += pauli_phase(t, b);
    }
    return m;
}

}  // namespace ansatzforge
