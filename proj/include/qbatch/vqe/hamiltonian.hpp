// Copyright 2026 The qbatch Authors
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

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace qbatch::vqe {

/// Character i of `pauli` acts on qubit i.
struct PauliTerm {
    std::string pauli;
    double coeff = 0.0;
    friend bool operator==(const PauliTerm &, const PauliTerm &) = default;
};

/// At most this many non-identity terms for two qubits.
inline constexpr std::size_t kMaxTwoQubitTerms = 9;

class PauliHamiltonian {
   public:
    /// Throws InvalidHamiltonian.
    explicit PauliHamiltonian(std::vector<PauliTerm> terms);

    /// JSON array of {"pauli": "XZ", "coeff": -0.39}.
    static PauliHamiltonian from_json(const nlohmann::json &j);
    static PauliHamiltonian parse(std::string_view text);
    static PauliHamiltonian load(const std::filesystem::path &path);
    nlohmann::ordered_json to_json() const;

    const std::vector<PauliTerm> &terms() const {
        return terms_;
    }
    int num_qubits() const {
        return n_;
    }
    /// Coefficient of the all-identity string (0 when absent).
    double identity_coefficient() const;

   private:
    std::vector<PauliTerm> terms_;
    int n_ = 0;
};

bool is_identity(std::string_view pauli);

}  // namespace qbatch::vqe
