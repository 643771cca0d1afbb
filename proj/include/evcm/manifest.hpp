// SPDX-License-Identifier: Apache-2.0
// evcm - eigen-domain MIMO channel simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#ifndef EVCM_MANIFEST_HPP
#define EVCM_MANIFEST_HPP

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "evcm/trace_io.hpp"

namespace evcm {

// Run manifest: the resolved configuration, tool version, wall-clock
// metadata, produced files (with byte sizes checked from disk), and any
// tracking-policy descriptors — written beside every CLI output so a run
// can be audited and reproduced.
struct RunManifest {
    ModelConfig config;
    std::string tool_version = evcm_version;
    std::string command;
    std::vector<std::string> outputs;
    std::vector<std::string> policies;
};

inline void write_manifest(const RunManifest& m, const std::string& path) {
    nlohmann::json j;
    j["tool_version"] = m.tool_version;
    j["command"] = m.command;
    const auto now = std::chrono::system_clock::now();
    j["created_unix_s"] =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();

    nlohmann::json cfg;
    cfg["n"] = m.config.n_rx;
    cfg["m"] = m.config.n_tx;
    cfg["class"] = detail::class_token(m.config.channel_class);
    cfg["f_d_hz"] = m.config.f_d_hz;
    cfg["s_f"] = m.config.s_f;
    cfg["samples"] = m.config.n_samples;
    cfg["k_f"] = m.config.k_f;
    cfg["s_ratios"] = m.config.s_ratios;
    cfg["omega"] = m.config.omega_rad_s;
    cfg["n_s"] = m.config.n_s;
    cfg["seed"] = m.config.seed;
    j["config"] = cfg;

    nlohmann::json outs = nlohmann::json::array();
    for (const auto& f : m.outputs) {
        std::error_code ec;
        const auto size = std::filesystem::file_size(f, ec);
        nlohmann::json o;
        o["path"] = f;
        o["bytes"] = ec ? 0 : static_cast<std::uint64_t>(size);
        o["exists"] = !ec;
        outs.push_back(o);
    }
    j["outputs"] = outs;
    j["policies"] = m.policies;

    detail::write_text_file(path, j.dump(2) + "\n");
}

} // namespace evcm

#endif // EVCM_MANIFEST_HPP
