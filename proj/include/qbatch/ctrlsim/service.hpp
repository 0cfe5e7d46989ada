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

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include <json.hpp>

#include "qbatch/batch/plan.hpp"
#include "qbatch/ctrlsim/control_system.hpp"

namespace qbatch::ctrlsim {

struct Job {
    std::string program;  // source text
    batch::OverrideSet overrides;
    batch::Mode mode = batch::Mode::Combined;
    int shots = 1000;
    std::optional<DriftModel> drift;
    std::uint64_t seed = 0;

    /// {program, overrides, mode, shots, drift, seed}; only program is
    /// required. Throws ValidationError.
    static Job from_json(const nlohmann::json &j);
};

enum class JobStatus { Queued, Running, Done, Failed };

std::string_view to_string(JobStatus status);

struct JobState {
    JobStatus status = JobStatus::Queued;
    std::shared_ptr<const ExecutionReport> report;  // set when Done
    std::string error;                              // set when Failed
};

/// Execution service with one hardware worker: jobs run one at a time in
/// submission order, each on a fresh ControlSystem, and stay retrievable
/// until released.
class Service {
   public:
    explicit Service(HardwareConfig config = {}, pulse::GateLibrary library = pulse::GateLibrary::standard());
    ~Service();

    Service(const Service &) = delete;
    Service &operator=(const Service &) = delete;

    /// Validates and plans the job, then queues it. Throws ValidationError
    /// whose message names the underlying error kind.
    std::string submit(const Job &job);
    /// Throws UnknownJobId.
    JobState poll(const std::string &id) const;
    /// Blocks until the job is Done or Failed. Throws UnknownJobId.
    JobState wait(const std::string &id) const;
    /// Forgets a finished job. Throws UnknownJobId.
    void release(const std::string &id);

    /// JSON mirror: {"job_id"} or {"error", "kind"}.
    nlohmann::ordered_json submit_json(const nlohmann::json &request);
    /// JSON mirror: {"status", "report"?, "error"?}.
    nlohmann::ordered_json poll_json(const std::string &id) const;

   private:
    struct Entry {
        JobState state;
        std::shared_ptr<const batch::BatchPlan> plan;
        std::optional<DriftModel> drift;
        std::uint64_t seed = 0;
    };

    void work();

    HardwareConfig config_;
    pulse::GateLibrary library_;
    mutable std::mutex mutex_;
    mutable std::condition_variable cv_;
    std::map<std::string, Entry, std::less<>> jobs_;
    std::deque<std::string> queue_;
    std::uint64_t next_id_ = 1;
    bool stop_ = false;
    std::thread worker_;
};

}  // namespace qbatch::ctrlsim
