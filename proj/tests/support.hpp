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

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qbatch/error.hpp"
#include "qbatch/lang/ast.hpp"
#include "qbatch/lang/parser.hpp"
#include "qbatch/lang/transform.hpp"
#include "qbatch/pulse/gate_library.hpp"

namespace qbatch::testing {

inline std::filesystem::path data_path(const std::string &rel) {
    return std::filesystem::path(QBATCH_DATA_DIR) / rel;
}

inline std::string read_file(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline const pulse::GateLibrary &standard() {
    static const pulse::GateLibrary lib = pulse::GateLibrary::standard();
    return lib;
}

inline lang::Program parse(const std::string &src) {
    return lang::parse(src, standard().signatures());
}

inline std::vector<lang::Subcircuit> numeric_subcircuits(const lang::Program &p) {
    auto values = lang::let_defaults(p);
    std::vector<lang::Subcircuit> out;
    for (const auto &sc : lang::compile_subcircuits(p)) {
        out.push_back(lang::substitute(sc, values));
    }
    return out;
}

#define EXPECT_QBATCH_ERROR(stmt, expected_kind)                                   \
    do {                                                                          \
        try {                                                                     \
            stmt;                                                                 \
            ADD_FAILURE() << "expected " << ::qbatch::to_string(expected_kind);   \
        } catch (const ::qbatch::Error &e_) {                                     \
            EXPECT_EQ(e_.kind(), expected_kind) << e_.what();                     \
        }                                                                         \
    } while (0)

/// Seeded generator of random valid programs over R, Rz and MS.
class ProgramGen {
   public:
    explicit ProgramGen(std::uint64_t seed) : rng_(seed) {
    }

    std::mt19937_64 &rng() {
        return rng_;
    }

    int uniform(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng_);
    }
    double real(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }
    bool coin(double p = 0.5) {
        return real(0.0, 1.0) < p;
    }
    /// Nonzero angle in +-[0.1, 3.0].
    double angle() {
        double a = real(0.1, 3.0);
        return coin() ? a : -a;
    }

    struct Options {
        int min_qubits = 1;
        int max_qubits = 3;
        int max_subcircuits = 3;
        int max_moments = 6;
        int lets = 2;
        bool macros = true;
        bool loops = true;
    };

    /// A generated program as source text with its flat gate-by-gate equivalent.
    struct Generated {
        std::string source;
        std::string flat;
        int num_qubits = 0;
        std::vector<std::string> lets;
    };

    Generated program(const Options &o) {
        Generated g;
        g.num_qubits = uniform(o.min_qubits, o.max_qubits);
        std::ostringstream head;
        head.precision(17);
        head << "register q[" << g.num_qubits << "]\n";
        for (int i = 0; i < o.lets; ++i) {
            std::string name = "a" + std::to_string(i);
            g.lets.push_back(name);
            head << "let " << name << " " << angle() << "\n";
        }
        std::string macros;
        if (o.macros) {
            // One-qubit composite and, when possible, a two-qubit one.
            macros += "macro flip a {\n    R a 0 3.141592653589793\n    Rz a 0.5\n}\n";
            if (g.num_qubits >= 2) {
                macros += "macro ent a b {\n    MS a b 0 1.5707963267948966\n}\n";
            }
        }
        std::ostringstream body;
        std::ostringstream flat;
        body.precision(17);
        flat.precision(17);
        int subcircuits = uniform(1, o.max_subcircuits);
        for (int s = 0; s < subcircuits; ++s) {
            body << "prepare_all\n";
            flat << "prepare_all\n";
            int moments = uniform(0, o.max_moments);
            for (int m = 0; m < moments; ++m) {
                int pick = uniform(0, 9);
                if (o.macros && pick == 0) {
                    int q = uniform(0, g.num_qubits - 1);
                    body << "flip q[" << q << "]\n";
                    flat << "R q[" << q << "] 0 3.141592653589793\nRz q[" << q << "] 0.5\n";
                } else if (o.macros && pick == 1 && g.num_qubits >= 2) {
                    auto [a, b] = distinct(g.num_qubits);
                    body << "ent q[" << a << "] q[" << b << "]\n";
                    flat << "MS q[" << a << "] q[" << b << "] 0 1.5707963267948966\n";
                } else if (o.loops && pick == 2) {
                    int reps = uniform(0, 3);
                    std::string gate = single_gate(g);
                    body << "loop " << reps << " {\n    " << gate << "\n}\n";
                    for (int r = 0; r < reps; ++r) {
                        flat << gate << "\n";
                    }
                } else if (pick == 3 && g.num_qubits >= 2) {
                    std::string block = parallel_block(g);
                    body << block << "\n";
                    flat << block << "\n";
                } else {
                    std::string gate = single_gate(g);
                    body << gate << "\n";
                    flat << gate << "\n";
                }
            }
            body << "measure_all\n";
            flat << "measure_all\n";
        }
        g.source = head.str() + macros + body.str();
        g.flat = head.str() + flat.str();
        return g;
    }

   private:
    std::string param(const Generated &g) {
        std::ostringstream ss;
        ss.precision(17);
        if (!g.lets.empty() && coin(0.3)) {
            ss << g.lets[static_cast<std::size_t>(uniform(0, static_cast<int>(g.lets.size()) - 1))];
        } else {
            ss << angle();
        }
        return ss.str();
    }

    std::string single_gate(const Generated &g) {
        int kind = uniform(0, 2);
        if (kind == 2 && g.num_qubits < 2) {
            kind = 0;
        }
        std::ostringstream ss;
        ss.precision(17);
        if (kind == 0) {
            ss << "R q[" << uniform(0, g.num_qubits - 1) << "] " << real(-3.0, 3.0) << " " << param(g);
        } else if (kind == 1) {
            ss << "Rz q[" << uniform(0, g.num_qubits - 1) << "] " << param(g);
        } else {
            auto [a, b] = distinct(g.num_qubits);
            ss << "MS q[" << a << "] q[" << b << "] " << real(-3.0, 3.0) << " " << param(g);
        }
        return ss.str();
    }

    std::string parallel_block(const Generated &g) {
        std::vector<int> qubits(static_cast<std::size_t>(g.num_qubits));
        for (int i = 0; i < g.num_qubits; ++i) {
            qubits[static_cast<std::size_t>(i)] = i;
        }
        std::shuffle(qubits.begin(), qubits.end(), rng_);
        int count = uniform(2, g.num_qubits);
        std::ostringstream ss;
        ss.precision(17);
        ss << "< ";
        for (int i = 0; i < count; ++i) {
            if (i) {
                ss << " | ";
            }
            int q = qubits[static_cast<std::size_t>(i)];
            if (coin()) {
                ss << "R q[" << q << "] " << real(-3.0, 3.0) << " " << param(g);
            } else {
                ss << "Rz q[" << q << "] " << param(g);
            }
        }
        ss << " >";
        return ss.str();
    }

    std::pair<int, int> distinct(int n) {
        int a = uniform(0, n - 1);
        int b = uniform(0, n - 2);
        if (b >= a) {
            ++b;
        }
        return {a, b};
    }

    std::mt19937_64 rng_;
};

}  // namespace qbatch::testing
