// Copyright 2026 The vnpointer Authors
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

// vnpointer: scenario runner for projector measurements on PS and PPS
// ensembles. Links only the C API of libvnp.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "vnp/vnp.h"

namespace {

int report_failure(vnp_status status) {
    std::fprintf(stderr, "error [%s]: %s\n", vnp_status_name(status), vnp_last_error());
    return vnp_status_exit_code(status);
}

// Prints the report (if any) and maps the status onto the exit code.
int finish(vnp_status status, char *report) {
    if (report != nullptr) {
        std::fputs(report, stdout);
        vnp_string_free(report);
    }
    if (status != VNP_OK) {
        return report_failure(status);
    }
    return 0;
}

class ScenarioHandle {
  public:
    ~ScenarioHandle() { vnp_scenario_destroy(handle_); }
    vnp_status load(const std::string &path) { return vnp_scenario_load(path.c_str(), &handle_); }
    const vnp_scenario *get() const { return handle_; }

  private:
    vnp_scenario *handle_ = nullptr;
};

int dump_config(const vnp_scenario *scenario) {
    char *text = nullptr;
    const vnp_status status = vnp_scenario_dump(scenario, &text);
    if (status != VNP_OK) {
        return report_failure(status);
    }
    std::fputs(text, stdout);
    vnp_string_free(text);
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact von Neumann projector measurement simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(vnp_version()));

    std::string scenario_path;
    std::string out_dir;
    bool dump = false;

    auto *run = app.add_subcommand("run", "Run a scenario and emit its selected artifacts");
    run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    run->add_option("--out", out_dir, "Directory for CSV/JSON artifacts");
    run->add_flag("--dump-config", dump, "Print the canonical scenario JSON and exit");

    auto *compare = app.add_subcommand("compare", "Run PS and PPS pipelines side by side");
    compare->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    compare->add_option("--out", out_dir, "Directory for CSV/JSON artifacts");
    compare->add_flag("--dump-config", dump, "Print the canonical scenario JSON and exit");

    std::string param = "gamma";
    std::vector<double> values;
    auto *sweep = app.add_subcommand("sweep", "Sweep one scenario parameter");
    sweep->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    sweep->add_option("--param", param, "gamma, hbar, sigma or center")->capture_default_str();
    sweep->add_option("--values", values, "Parameter values")->required();
    sweep->add_option("--out", out_dir, "Directory for CSV/JSON artifacts");
    sweep->add_flag("--dump-config", dump, "Print the canonical scenario JSON and exit");

    std::size_t trials = 200;
    std::uint64_t seed = 2026;
    auto *verify = app.add_subcommand("verify", "Run the randomized oracle identity battery");
    verify->add_option("--trials", trials, "Number of random cases")->capture_default_str();
    verify->add_option("--seed", seed, "RNG seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const char *out = out_dir.empty() ? nullptr : out_dir.c_str();
    char *report = nullptr;

    if (verify->parsed()) {
        const vnp_status status = vnp_verify(trials, seed, &report);
        return finish(status, report);
    }

    ScenarioHandle scenario;
    if (const vnp_status status = scenario.load(scenario_path); status != VNP_OK) {
        return report_failure(status);
    }
    if (dump) {
        return dump_config(scenario.get());
    }
    vnp_status status = VNP_OK;
    if (run->parsed()) {
        status = vnp_scenario_run(scenario.get(), out, &report);
    } else if (compare->parsed()) {
        status = vnp_scenario_compare(scenario.get(), out, &report);
    } else {
        status = vnp_scenario_sweep(scenario.get(), param.c_str(), values.data(), values.size(),
                                    out, &report);
    }
    return finish(status, report);
}
