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

#include "qbatch/vqe/hamiltonian.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qbatch/error.hpp"

namespace qbatch::vqe {

bool is_identity(std::string_view pauli) {
    return pauli.find_first_not_of('I') == std::string_view::npos;
}

PauliHamiltonian::PauliHamiltonian(std::vector<PauliTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) {
        throw Error(ErrorKind::InvalidHamiltonian, "Hamiltonian has no terms");
    }
    n_ = static_cast<int>(terms_.front().pauli.size());
    if (n_ == 0) {
        throw Error(ErrorKind::InvalidHamiltonian, "empty Pauli string");
    }
    std::set<std::string> seen;
    std::size_t measured = 0;
    for (const auto &t : terms_) {
        if (static_cast<int>(t.pauli.size()) != n_) {
            throw Error(ErrorKind::InvalidHamiltonian, "Pauli strings differ in length ('" + terms_.front().pauli +
                                                           "' vs '" + t.pauli + "')");
        }
        if (t.pauli.find_first_not_of("IXYZ") != std::string::npos) {
            throw Error(ErrorKind::InvalidHamiltonian, "Pauli string '" + t.pauli + "' uses letters outside IXYZ");
        }
        if (!std::isfinite(t.coeff)) {
            throw Error(ErrorKind::InvalidHamiltonian, "coefficient of '" + t.pauli + "' is not finite");
        }
        if (!seen.insert(t.pauli).second) {
            throw Error(ErrorKind::InvalidHamiltonian, "duplicate term '" + t.pauli + "'");
        }
        measured += is_identity(t.pauli) ? 0 : 1;
    }
    if (n_ == 2 && measured > kMaxTwoQubitTerms) {
        throw Error(ErrorKind::InvalidHamiltonian, "two-qubit Hamiltonian has " + std::to_string(measured) +
                                                       " measured terms, at most 9 are supported");
    }
}

PauliHamiltonian PauliHamiltonian::from_json(const nlohmann::json &j) {
    if (!j.is_array()) {
        throw Error(ErrorKind::InvalidHamiltonian, "Hamiltonian must be a JSON array");
    }
    std::vector<PauliTerm> terms;
    for (const auto &e : j) {
        if (!e.is_object() || !e.contains("pauli") || !e.contains("coeff") || !e.at("pauli").is_string() ||
            !e.at("coeff").is_number()) {
            throw Error(ErrorKind::InvalidHamiltonian, "each term needs a string 'pauli' and a numeric 'coeff'");
        }
        terms.push_back(PauliTerm{e.at("pauli").get<std::string>(), e.at("coeff").get<double>()});
    }
    return PauliHamiltonian(std::move(terms));
}

PauliHamiltonian PauliHamiltonian::parse(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(ErrorKind::InvalidHamiltonian, std::string("Hamiltonian is not valid JSON: ") + e.what());
    }
    return from_json(j);
}

PauliHamiltonian PauliHamiltonian::load(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot read " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

nlohmann::ordered_json PauliHamiltonian::to_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto &t : terms_) {
        j.push_back({{"pauli", t.pauli}, {"coeff", t.coeff}});
    }
    return j;
}

double PauliHamiltonian::identity_coefficient() const {
    for (const auto &t : terms_) {
        if (is_identity(t.pauli)) {
            return t.coeff;
        }
    }
    return 0.0;
}

}  // namespace qbatch::vqe
