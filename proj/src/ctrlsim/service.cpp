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

#include "qbatch/ctrlsim/service.hpp"

#include "qbatch/ctrlsim/report_json.hpp"
#include "qbatch/error.hpp"
#include "qbatch/lang/parser.hpp"

namespace qbatch::ctrlsim {

Job Job::from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("program") || !j.at("program").is_string()) {
        throw Error(ErrorKind::ValidationError, "job needs a string 'program'");
    }
    Job job;
    job.program = j.at("program").get<std::string>();
    if (j.contains("overrides") && !j.at("overrides").is_null()) {
        job.overrides = batch::OverrideSet::from_json(j.at("overrides"));
    }
    try {
        if (j.contains("mode")) {
            job.mode = batch::parse_mode(j.at("mode").get<std::string>());
        }
        job.shots = j.value("shots", job.shots);
        job.seed = j.value("seed", job.seed);
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::ValidationError, std::string("bad job field: ") + e.what());
    }
    if (j.contains("drift") && !j.at("drift").is_null()) {
        job.drift = drift_from_json(j.at("drift"));
    }
    return job;
}

std::string_view to_string(JobStatus status) {
    switch (status) {
        case JobStatus::Queued:
            return "queued";
        case JobStatus::Running:
            return "running";
        case JobStatus::Done:
            return "done";
        case JobStatus::Failed:
            return "failed";
    }
    return "?";
}

Service::Service(HardwareConfig config, pulse::GateLibrary library)
    : config_(config), library_(std::move(library)) {
    config_.validate();
    worker_ = std::thread([this] { work(); });
}

Service::~Service() {
    {
        std::lock_guard lock(mutex_);
        stop_ = true;
    }
    cv_.notify_all();
    worker_.join();
}

std::string Service::submit(const Job &job) {
    Entry entry;
    try {
        lang::Program program = lang::parse(job.program, library_.signatures());
        batch::PlanOptions options{job.shots, job.seed};
        entry.plan = std::make_shared<const batch::BatchPlan>(
            batch::plan(program, job.overrides, job.mode, library_, options));
        if (job.drift) {
            job.drift->validate();
            if (job.shots == 0) {
                throw Error(ErrorKind::ValidationError, "drift noise needs a finite shot count");
            }
        }
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::ValidationError) {
            throw;
        }
        throw Error(ErrorKind::ValidationError, std::string(qbatch::to_string(e.kind())) + ": " + e.detail(),
                    e.pos());
    }
    entry.drift = job.drift;
    entry.seed = job.seed;
    std::string id;
    {
        std::lock_guard lock(mutex_);
        id = "job-" + std::to_string(next_id_++);
        jobs_.emplace(id, std::move(entry));
        queue_.push_back(id);
    }
    cv_.notify_all();
    return id;
}

JobState Service::poll(const std::string &id) const {
    std::lock_guard lock(mutex_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) {
        throw Error(ErrorKind::UnknownJobId, "no job '" + id + "'");
    }
    return it->second.state;
}

JobState Service::wait(const std::string &id) const {
    std::unique_lock lock(mutex_);
    auto done = [&] {
        auto it = jobs_.find(id);
        if (it == jobs_.end()) {
            throw Error(ErrorKind::UnknownJobId, "no job '" + id + "'");
        }
        return it->second.state.status == JobStatus::Done || it->second.state.status == JobStatus::Failed;
    };
    cv_.wait(lock, done);
    return jobs_.find(id)->second.state;
}

void Service::release(const std::string &id) {
    std::lock_guard lock(mutex_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) {
        throw Error(ErrorKind::UnknownJobId, "no job '" + id + "'");
    }
    if (it->second.state.status == JobStatus::Queued || it->second.state.status == JobStatus::Running) {
        throw Error(ErrorKind::ValidationError, "job '" + id + "' has not finished");
    }
    jobs_.erase(it);
}

void Service::work() {
    for (;;) {
        std::string id;
        std::shared_ptr<const batch::BatchPlan> plan;
        std::optional<DriftModel> drift;
        std::uint64_t seed = 0;
        {
            std::unique_lock lock(mutex_);
            cv_.wait(lock, [this] { return stop_ || !queue_.empty(); });
            if (stop_) {
                return;
            }
            id = queue_.front();
            queue_.pop_front();
            Entry &e = jobs_.at(id);
            e.state.status = JobStatus::Running;
            plan = e.plan;
            drift = e.drift;
            seed = e.seed;
        }
        cv_.notify_all();
        JobState result;
        try {
            ControlSystem hw(config_, drift, seed);
            result.report = std::make_shared<const ExecutionReport>(hw.execute(*plan));
            result.status = JobStatus::Done;
        } catch (const std::exception &e) {
            result.status = JobStatus::Failed;
            result.error = e.what();
        }
        {
            std::lock_guard lock(mutex_);
            Entry &e = jobs_.at(id);
            e.state = std::move(result);
            e.plan.reset();
        }
        cv_.notify_all();
    }
}

nlohmann::ordered_json Service::submit_json(const nlohmann::json &request) {
    nlohmann::ordered_json out;
    try {
        out["job_id"] = submit(Job::from_json(request));
    } catch (const Error &e) {
        out["error"] = e.what();
        out["kind"] = std::string(qbatch::to_string(e.kind()));
    }
    return out;
}

nlohmann::ordered_json Service::poll_json(const std::string &id) const {
    nlohmann::ordered_json out;
    try {
        JobState s = poll(id);
        out["status"] = std::string(to_string(s.status));
        if (s.report) {
            out["report"] = to_json(*s.report);
        }
        if (!s.error.empty()) {
            out["error"] = s.error;
        }
    } catch (const Error &e) {
        out["status"] = "error";
        out["error"] = e.what();
        out["kind"] = std::string(qbatch::to_string(e.kind()));
    }
    return out;
}

}  // namespace qbatch::ctrlsim
