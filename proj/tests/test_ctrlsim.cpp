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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "qbatch/batch/plan.hpp"
#include "qbatch/bytecode/table.hpp"
#include "qbatch/ctrlsim/control_system.hpp"
#include "qbatch/ctrlsim/drift.hpp"
#include "qbatch/ctrlsim/interpreter.hpp"
#include "qbatch/ctrlsim/report_json.hpp"
#include "qbatch/ctrlsim/service.hpp"
#include "support.hpp"

namespace {

using namespace qbatch;
using namespace qbatch::ctrlsim;
using batch::Mode;
using lang::LetValue;
using qbatch::testing::parse;
using qbatch::testing::standard;

const char *kSweep =
    "register q[2]\nlet a 0.5\nlet b 1.0\n"
    "prepare_all\nR q[0] 0 a\nMS q[0] q[1] 0 b\nmeasure_all\n"
    "prepare_all\n< R q[0] 0.3 a | R q[1] 0 b >\nRz q[1] a\nR q[1] 0 1\nmeasure_all\n";

batch::OverrideSet rows(std::initializer_list<double> xs) {
    batch::OverrideSet ov;
    std::vector<LetValue> v;
    for (double x : xs) {
        v.push_back(LetValue::floating(x));
    }
    ov.set("a", v);
    return ov;
}

/// Sum over runs of the longest pulse per moment, straight from lowering.
double pulse_seconds(const batch::BatchPlan &plan) {
    double us = 0.0;
    for (const auto &run : plan.runs) {
        auto sc = lang::substitute(plan.subcircuits[run.subcircuit], run.values);
        for (const auto &moment : bytecode::lower_subcircuit(sc, plan.library)) {
            double longest = 0.0;
            for (const auto &p : moment) {
                longest = std::max(longest, p.duration_us());
            }
            us += longest;
        }
    }
    return us * 1e-6 * std::max(plan.shots, 1);
}

TEST(CtrlDrift, EpsilonCalibration) {
    DriftModel m;
    EXPECT_NEAR(m.epsilon(3000.0), 0.02, 1e-15);
    EXPECT_NEAR(m.epsilon(-3000.0), 0.02, 1e-15);
    EXPECT_DOUBLE_EQ(m.epsilon(0.0), 0.0);
    EXPECT_DOUBLE_EQ(m.epsilon(1e9), 1.0);
    EXPECT_NEAR(m.rate_hz_per_s * 900.0, 15000.0, 1e-9);
}

TEST(CtrlDrift, LinearAndRecalibrate) {
    DriftState s(DriftModel{}, 1);
    EXPECT_DOUBLE_EQ(s.detuning_at(0.0), 0.0);
    EXPECT_NEAR(s.detuning_at(180.0), 3000.0, 1e-9);
    s.recalibrate(180.0);
    EXPECT_NEAR(s.detuning_at(180.0), 0.0, 1e-12);
    EXPECT_NEAR(s.detuning_at(240.0), 1000.0, 1e-9);
}

TEST(CtrlDrift, RandomWalkDeterministic) {
    DriftModel m;
    m.kind = DriftModel::Kind::RandomWalk;
    DriftState a(m, 5);
    DriftState b(m, 5);
    DriftState c(m, 6);
    bool differs = false;
    for (int t = 0; t < 100; t += 7) {
        double da = a.detuning_at(t);
        EXPECT_EQ(da, b.detuning_at(t));
        differs |= da != c.detuning_at(t);
    }
    EXPECT_TRUE(differs);
}

TEST(CtrlDrift, ValidationErrors) {
    DriftModel m;
    m.rate_hz_per_s = -1.0;
    EXPECT_QBATCH_ERROR(m.validate(), ErrorKind::ValidationError);
    DriftModel w;
    w.walk_step_s = 0.0;
    EXPECT_QBATCH_ERROR(w.validate(), ErrorKind::ValidationError);
    EXPECT_QBATCH_ERROR(drift_from_json(nlohmann::json::parse(R"({"kind": "spiral"})")),
                        ErrorKind::ValidationError);
    DriftModel back = drift_from_json(nlohmann::json::parse(to_json(DriftModel{}).dump()));
    EXPECT_DOUBLE_EQ(back.rate_hz_per_s, DriftModel{}.rate_hz_per_s);
}

TEST(CtrlInterpret, RejectsMalformedPulses) {
    auto l = pulse::lower(lang::ResolvedGate{"R", {0}, {0.0, lang::LetRef{"t"}}, {}}, pulse::PhaseFrame(1),
                          standard());
    EXPECT_QBATCH_ERROR(interpret(*l.pulse, standard()), ErrorKind::BackendError);
    auto r = pulse::lower(lang::ResolvedGate{"R", {0}, {0.0, 1.0}, {}}, pulse::PhaseFrame(1), standard());
    r.pulse->tones.pop_back();
    EXPECT_QBATCH_ERROR(interpret(*r.pulse, standard()), ErrorKind::BackendError);
    auto ok = pulse::lower(lang::ResolvedGate{"R", {0}, {0.0, 1.0}, {}}, pulse::PhaseFrame(1), standard());
    auto op = interpret(*ok.pulse, standard());
    EXPECT_FALSE(op.entangling);
    EXPECT_NEAR(op.duration_us, 10.0 / pulse::kPi, 1e-12);
}

TEST(CtrlConfig, Validation) {
    HardwareConfig c;
    c.buffer_capacity_words = 0;
    EXPECT_QBATCH_ERROR(c.validate(), ErrorKind::ValidationError);
    HardwareConfig d;
    d.comm_latency_s = -1;
    EXPECT_QBATCH_ERROR(d.validate(), ErrorKind::ValidationError);
    HardwareConfig inf;
    inf.upload_rate_words_per_s = std::numeric_limits<double>::infinity();
    EXPECT_NO_THROW(inf.validate());
}

TEST(CtrlExecute, CostAccountingIdentity) {
    auto p = parse(kSweep);
    for (Mode mode : {Mode::Unbatched, Mode::OverrideBatched, Mode::Combined}) {
        SCOPED_TRACE(std::string(batch::to_string(mode)));
        auto bp = batch::plan(p, rows({0.1, -0.7, 2.0}), mode, standard(), {200, 3});
        HardwareConfig cfg;
        cfg.comm_latency_s = 2.0;
        cfg.compile_time_s = 0.05;
        cfg.upload_rate_words_per_s = 1000.0;
        auto rep = execute(bp, cfg);
        EXPECT_EQ(rep.steps, bp.accounting);
        EXPECT_DOUBLE_EQ(rep.cost.communication_s, 2.0 * static_cast<double>(bp.accounting.communication_steps));
        EXPECT_NEAR(rep.cost.compilation_s, 0.05 * static_cast<double>(bp.accounting.compilations), 1e-12);
        EXPECT_NEAR(rep.cost.upload_s, static_cast<double>(bp.accounting.upload_words) / 1000.0, 1e-12);
        EXPECT_NEAR(rep.cost.execution_s, pulse_seconds(bp), 1e-9);
        EXPECT_NEAR(rep.elapsed_s, rep.cost.total(), 1e-9);
    }
}

TEST(CtrlExecute, LatencyOnlyIsExact) {
    auto p = parse(kSweep);
    HardwareConfig cfg;
    cfg.compile_time_s = 0.0;
    cfg.upload_rate_words_per_s = std::numeric_limits<double>::infinity();
    cfg.include_pulse_time = false;
    auto un = execute(batch::plan(p, rows({0.1, 0.2, 0.3, 0.4}), Mode::Unbatched, standard()), cfg);
    auto comb = execute(batch::plan(p, rows({0.1, 0.2, 0.3, 0.4}), Mode::Combined, standard()), cfg);
    EXPECT_EQ(un.elapsed_s, 16.0);
    EXPECT_EQ(comb.elapsed_s, 2.0);
}

TEST(CtrlExecute, ClockAccumulatesAcrossPlans) {
    ControlSystem hw;
    auto bp = batch::plan(parse(kSweep), {}, Mode::Combined, standard());
    auto first = hw.execute(bp);
    auto second = hw.execute(bp);
    EXPECT_DOUBLE_EQ(second.start_s, first.elapsed_s);
    EXPECT_NEAR(hw.clock_s(), first.elapsed_s + second.elapsed_s, 1e-12);
    EXPECT_NEAR(hw.lifetime_cost().total(), hw.clock_s(), 1e-12);
}

TEST(CtrlExecute, BufferOverflow) {
    auto bp = batch::plan(parse(kSweep), {}, Mode::Combined, standard());
    HardwareConfig cfg;
    cfg.buffer_capacity_words = 8;
    EXPECT_QBATCH_ERROR(execute(bp, cfg), ErrorKind::BufferOverflow);
}

TEST(CtrlExecute, DriftNeedsShots) {
    auto bp = batch::plan(parse(kSweep), {}, Mode::Combined, standard(), {0, 0});
    EXPECT_QBATCH_ERROR(execute(bp, HardwareConfig{}, DriftModel{}), ErrorKind::ValidationError);
}

TEST(CtrlExecute, ExactModeFrequencies) {
    auto bp = batch::plan(parse(qbatch::testing::read_file(qbatch::testing::data_path("examples/bell.jaqal"))), {},
                          Mode::Combined, standard(), {0, 0});
    auto rep = execute(bp, HardwareConfig{});
    ASSERT_EQ(rep.runs.size(), 1u);
    EXPECT_TRUE(rep.runs[0].counts.empty());
    EXPECT_NEAR(rep.runs[0].frequencies[0], 0.5, 1e-12);
    EXPECT_NEAR(rep.runs[0].frequencies[3], 0.5, 1e-12);
    EXPECT_EQ(rep.runs[0].ms_gates, 1u);
}

TEST(CtrlExecute, ElidedZeroAngleOverride) {
    auto bp = batch::plan(parse(kSweep), rows({0.0}), Mode::Combined, standard(), {0, 0});
    auto rep = execute(bp, HardwareConfig{});
    EXPECT_EQ(rep.runs[0].elided, 1u);
}

TEST(CtrlExecute, RecalibrationResetsDetuning) {
    DriftModel m;
    m.recalibration_cost_s = 30.0;
    ControlSystem hw(HardwareConfig{}, m, 1);
    auto bp = batch::plan(parse(kSweep), {}, Mode::Unbatched, standard());
    hw.execute(bp);
    EXPECT_GT(hw.detuning_hz(), 0.0);
    double before = hw.clock_s();
    hw.recalibrate();
    EXPECT_DOUBLE_EQ(hw.detuning_hz(), 0.0);
    EXPECT_DOUBLE_EQ(hw.clock_s(), before + 30.0);
    EXPECT_DOUBLE_EQ(hw.lifetime_cost().recalibration_s, 30.0);
}

TEST(CtrlReport, JsonShape) {
    EXPECT_EQ(bitstring(1, 2), "10");
    EXPECT_EQ(bitstring(6, 3), "011");
    auto bp = batch::plan(parse(kSweep), rows({0.2, 0.4}), Mode::Combined, standard(), {50, 1});
    auto j = to_json(execute(bp, HardwareConfig{}, DriftModel{}, 2));
    EXPECT_EQ(j["mode"], "combined");
    EXPECT_EQ(j["runs"].size(), 4u);
    EXPECT_TRUE(j["runs"][0].contains("counts"));
    EXPECT_EQ(j["steps"]["communication_steps"], 1);
    EXPECT_FALSE(j["drift_trace"].empty());
}

// Properties over seeded random workloads.

struct Workload {
    lang::Program program;
    batch::OverrideSet overrides;
};

Workload random_workload(qbatch::testing::ProgramGen &gen) {
    auto g = gen.program({});
    Workload w{parse(g.source), {}};
    int r = gen.uniform(1, 3);
    std::vector<LetValue> vals;
    for (int i = 0; i < r; ++i) {
        vals.push_back(LetValue::floating(gen.angle()));
    }
    w.overrides.set(g.lets[0], vals);
    return w;
}

TEST(CtrlProperty, BatchingNeutrality) {
    qbatch::testing::ProgramGen gen(61);
    for (int i = 0; i < 40; ++i) {
        Workload w = random_workload(gen);
        batch::PlanOptions opts{256, static_cast<std::uint64_t>(i)};
        auto un = execute(batch::plan(w.program, w.overrides, Mode::Unbatched, standard(), opts), HardwareConfig{});
        auto comb = execute(batch::plan(w.program, w.overrides, Mode::Combined, standard(), opts), HardwareConfig{});
        ASSERT_EQ(un.runs.size(), comb.runs.size());
        for (std::size_t r = 0; r < un.runs.size(); ++r) {
            EXPECT_EQ(un.runs[r].counts, comb.runs[r].counts);
            EXPECT_EQ(un.runs[r].seed, comb.runs[r].seed);
        }
    }
}

TEST(CtrlProperty, BufferSafety) {
    qbatch::testing::ProgramGen gen(62);
    for (int i = 0; i < 40; ++i) {
        Workload w = random_workload(gen);
        HardwareConfig cfg;
        cfg.buffer_capacity_words = static_cast<std::size_t>(gen.uniform(64, 400));
        cfg.stream_capacity = static_cast<std::size_t>(gen.uniform(1, 5));
        for (Mode mode : {Mode::Unbatched, Mode::Combined}) {
            auto bp = batch::plan(w.program, w.overrides, mode, standard(), {10, 0});
            try {
                auto rep = execute(bp, cfg);
                EXPECT_LE(rep.buffer_high_water_words, cfg.buffer_capacity_words);
                EXPECT_LE(rep.stream_high_water_units, cfg.stream_capacity);
            } catch (const Error &e) {
                EXPECT_EQ(e.kind(), ErrorKind::BufferOverflow) << e.what();
            }
        }
    }
}

TEST(CtrlProperty, DeterministicReports) {
    qbatch::testing::ProgramGen gen(63);
    for (int i = 0; i < 15; ++i) {
        Workload w = random_workload(gen);
        DriftModel m;
        m.kind = gen.coin() ? DriftModel::Kind::RandomWalk : DriftModel::Kind::Linear;
        auto bp = batch::plan(w.program, w.overrides, Mode::Unbatched, standard(), {100, 4});
        auto a = to_json(execute(bp, HardwareConfig{}, m, 9)).dump();
        auto b = to_json(execute(bp, HardwareConfig{}, m, 9)).dump();
        EXPECT_EQ(a, b);
    }
}

TEST(CtrlProperty, BatchedDriftErrorNotWorse) {
    qbatch::testing::ProgramGen gen(64);
    int compared = 0;
    for (int i = 0; i < 30; ++i) {
        Workload w = random_workload(gen);
        auto un = execute(batch::plan(w.program, w.overrides, Mode::Unbatched, standard(), {50, 1}),
                          HardwareConfig{}, DriftModel{}, 3);
        auto comb = execute(batch::plan(w.program, w.overrides, Mode::Combined, standard(), {50, 1}),
                            HardwareConfig{}, DriftModel{}, 3);
        bool later_ms = std::any_of(un.runs.begin() + 1, un.runs.end(),
                                    [](const RunOutcome &r) { return r.ms_gates > 0; });
        if (later_ms) {
            EXPECT_LT(comb.mean_ms_error(), un.mean_ms_error());
            EXPECT_LE(comb.max_ms_error(), un.max_ms_error());
            ++compared;
        }
    }
    EXPECT_GT(compared, 5);
}

TEST(CtrlService, SubmitAndWait) {
    Service svc;
    Job job;
    job.program = qbatch::testing::read_file(qbatch::testing::data_path("examples/bell.jaqal"));
    job.shots = 100;
    job.seed = 7;
    std::string id = svc.submit(job);
    EXPECT_EQ(id.rfind("job-", 0), 0u);
    JobState s = svc.wait(id);
    ASSERT_EQ(s.status, JobStatus::Done) << s.error;
    ASSERT_TRUE(s.report);
    EXPECT_EQ(s.report->runs.size(), 1u);
    EXPECT_EQ(svc.poll_json(id)["status"], "done");
    svc.release(id);
    EXPECT_QBATCH_ERROR(svc.poll(id), ErrorKind::UnknownJobId);
}

TEST(CtrlService, RejectsInvalidJobsSynchronously) {
    Service svc;
    Job job;
    job.program = "register q[1]\nRz q[3] 0.1\n";
    try {
        svc.submit(job);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::ValidationError);
        EXPECT_EQ(e.detail().rfind("QubitOutOfRange", 0), 0u) << e.detail();
    }
    auto j = svc.submit_json(nlohmann::json::parse(R"({"program": 3})"));
    EXPECT_EQ(j["kind"], "ValidationError");
    EXPECT_QBATCH_ERROR(svc.wait("job-999"), ErrorKind::UnknownJobId);
}

TEST(CtrlService, ConcurrentSubmissionsAllComplete) {
    Service svc;
    std::vector<std::string> ids(8);
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < ids.size(); ++t) {
        threads.emplace_back([&, t] {
            auto r = svc.submit_json(nlohmann::json{{"program", kSweep},
                                                    {"overrides", {{"a", {0.1, 0.2}}}},
                                                    {"mode", "combined"},
                                                    {"shots", 20},
                                                    {"seed", t}});
            ids[t] = r["job_id"].get<std::string>();
        });
    }
    for (auto &th : threads) {
        th.join();
    }
    std::sort(ids.begin(), ids.end());
    EXPECT_EQ(std::unique(ids.begin(), ids.end()), ids.end());
    for (const auto &id : ids) {
        auto s = svc.wait(id);
        EXPECT_EQ(s.status, JobStatus::Done) << s.error;
        EXPECT_EQ(s.report->runs.size(), 4u);
    }
}

}  // namespace
