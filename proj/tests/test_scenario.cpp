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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "vnp/error.hpp"
#include "vnp/runner.hpp"
#include "vnp/scenario.hpp"

using namespace vnp;
using nlohmann::json;

namespace {

const std::filesystem::path kScenarios = VNP_SCENARIO_DIR;

const char *const kShipped[] = {"eigenstate",          "symmetric-superposition",
                                "anomalous-weak-value", "complex-weak-value",
                                "gamma-sweep",          "preselected-only"};

Scenario shipped(const std::string &name) { return load_scenario(kScenarios / (name + ".json")); }

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json base_document() { return json::parse(slurp(kScenarios / "symmetric-superposition.json")); }

// Runs the parser and returns the message of the resulting Error.
std::string parse_error(const json &doc, ErrorCode expected) {
    try {
        scenario_from_json(doc.dump());
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), expected) << e.what();
        return e.what();
    }
    ADD_FAILURE() << "document was accepted";
    return {};
}

} // namespace

TEST(Scenario, ShippedFilesLoad) {
    for (const char *name : kShipped) {
        EXPECT_NO_THROW(shipped(name)) << name;
    }
}

TEST(Scenario, RoundTripIsLossless) {
    for (const char *name : kShipped) {
        const Scenario s = shipped(name);
        const std::string dumped = scenario_to_json(s);
        const Scenario again = scenario_from_json(dumped);
        EXPECT_TRUE(again == s) << name;
        EXPECT_EQ(scenario_to_json(again), dumped) << name;
    }
}

TEST(Scenario, ComplexNumbersAsPairsOrReals) {
    json doc = base_document();
    doc["preselection"] = json::array({0.6, json::array({0.0, 0.8})});
    const Scenario s = scenario_from_json(doc.dump());
    EXPECT_EQ(s.preselection(0), Complex(0.6, 0.0));
    EXPECT_EQ(s.preselection(1), Complex(0.0, 0.8));
}

TEST(Scenario, RenormalizesWithinTolerance) {
    json doc = base_document();
    doc["preselection"] = json::array({json::array({0.70710678, 0.0}), json::array({0.70710678, 0.0})});
    const Scenario s = scenario_from_json(doc.dump());
    EXPECT_NEAR(s.preselection.norm(), 1.0, 1e-15);
}

TEST(Scenario, ValidationReportsFieldPaths) {
    json doc = base_document();
    doc.erase("system_dim");
    EXPECT_NE(parse_error(doc, ErrorCode::InvalidConfig).find("system_dim"), std::string::npos);

    doc = base_document();
    doc["preselection"] = json::array({json::array({1.0, 0.0})});
    EXPECT_NE(parse_error(doc, ErrorCode::InvalidConfig).find("preselection"), std::string::npos);

    doc = base_document();
    doc["postselection"] = json::array({json::array({1.0, 0.0}), json::array({0.1, 0.0})});
    EXPECT_NE(parse_error(doc, ErrorCode::InvalidConfig).find("postselection"), std::string::npos);

    doc = base_document();
    doc["pointer"]["n"] = 100;
    EXPECT_NE(parse_error(doc, ErrorCode::InvalidConfig).find("pointer"), std::string::npos);

    doc = base_document();
    doc["pointer"]["sigma"] = -1.0;
    EXPECT_NE(parse_error(doc, ErrorCode::InvalidConfig).find("pointer.sigma"), std::string::npos);

    doc = base_document();
    doc["surprise"] = true;
    EXPECT_NE(parse_error(doc, ErrorCode::InvalidConfig).find("surprise"), std::string::npos);

    doc = base_document();
    doc["outputs"] = json::array({"ps_density", "bogus"});
    EXPECT_NE(parse_error(doc, ErrorCode::InvalidConfig).find("outputs[1]"), std::string::npos);

    doc = base_document();
    doc["hbar"] = 0.0;
    EXPECT_NE(parse_error(doc, ErrorCode::InvalidConfig).find("hbar"), std::string::npos);

    doc = base_document();
    doc["gamma"] = "large";
    EXPECT_NE(parse_error(doc, ErrorCode::InvalidConfig).find("gamma"), std::string::npos);

    doc = base_document();
    doc["projector"] = {{"matrix", json::array({json::array({json::array({0.9, 0.0}), 0.0}),
                                                json::array({0.0, 0.0})})}};
    EXPECT_NE(parse_error(doc, ErrorCode::InvalidProjector).find("projector.matrix"), std::string::npos);

    EXPECT_EQ(parse_error(json::array({1, 2}), ErrorCode::InvalidConfig).empty(), false);
    try {
        scenario_from_json("{ not json");
        ADD_FAILURE();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
    }
}

TEST(Scenario, PpsSelectorsNeedPostselection) {
    json doc = base_document();
    doc.erase("postselection");
    doc["outputs"] = json::array({"ps_density", "weak_value"});
    const std::string msg = parse_error(doc, ErrorCode::InvalidConfig);
    EXPECT_NE(msg.find("outputs[1]"), std::string::npos);
    EXPECT_NE(msg.find("postselection"), std::string::npos);
}

TEST(Scenario, MissingFile) {
    try {
        load_scenario("/nonexistent/scenario.json");
        ADD_FAILURE();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::IoError);
    }
}

TEST(Runner, EigenstateReport) {
    const json report = json::parse(run_scenario(shipped("eigenstate")).report_json);
    const auto &wv = report["weak_value"];
    EXPECT_EQ(wv["weak_value"][0].get<double>(), 1.0);
    EXPECT_EQ(wv["weak_value"][1].get<double>(), 0.0);
    EXPECT_NEAR(wv["normalization"].get<double>(), 1.0, 1e-15);
    EXPECT_EQ(wv["phase_chi"].get<double>(), 0.0);
}

TEST(Runner, AnomalousReport) {
    const RunOutcome out = run_scenario(shipped("anomalous-weak-value"));
    EXPECT_FALSE(out.tolerance_breach);
    const json report = json::parse(out.report_json);
    EXPECT_NEAR(report["weak_value"]["weak_value"][0].get<double>(), 1.0 + 1.0 / std::sqrt(2.0), 1e-12);
    EXPECT_GT(report["interference"]["pps"]["cross_l1"].get<double>(), 0.05);
    EXPECT_LE(report["interference"]["ps"]["cross_l1"].get<double>(), 1e-9);
    const auto &oracle = report["oracle"];
    EXPECT_TRUE(oracle["passed"].get<bool>());
    for (const char *key : {"ps_state", "operator_identity", "pps_pointer", "pps_phase_vs_chi"}) {
        EXPECT_LE(oracle[key]["value"].get<double>(), 1e-9) << key;
    }
    EXPECT_LE(oracle["inverse_identity"]["value"].get<double>(), 1e-10);
}

TEST(Runner, PreselectedOnlyHasNoPpsOutputs) {
    const RunOutcome out = run_scenario(shipped("preselected-only"));
    const json report = json::parse(out.report_json);
    EXPECT_FALSE(report.contains("pps_density"));
    EXPECT_FALSE(report.contains("weak_value"));
    EXPECT_TRUE(report.contains("ps_density"));
    for (const auto &[name, contents] : out.files) {
        EXPECT_NE(name, "pps_density.csv");
    }
}

TEST(Runner, Deterministic) {
    for (const char *name : kShipped) {
        const Scenario s = shipped(name);
        const RunOutcome a = run_scenario(s);
        const RunOutcome b = run_scenario(s);
        EXPECT_EQ(a.report_json, b.report_json) << name;
        EXPECT_EQ(a.files, b.files) << name;
    }
}

TEST(Runner, CsvFormat) {
    const RunOutcome out = run_scenario(shipped("symmetric-superposition"));
    ASSERT_FALSE(out.files.empty());
    const auto &[name, csv] = out.files.front();
    EXPECT_EQ(name, "ps_density.csv");
    std::istringstream in(csv);
    std::string header, row;
    std::getline(in, header);
    EXPECT_EQ(header, "q,total,unshifted,shifted,cross");
    int rows = 0;
    while (std::getline(in, row)) {
        ++rows;
    }
    EXPECT_EQ(rows, 1024);
    std::vector<double> col{0.123456789012345678};
    EXPECT_EQ(format_csv({"x"}, {&col}), "x\n0.123456789012346\n");
}

TEST(Runner, CompareEigenstateIdentical) {
    const json report = json::parse(compare_scenario(shipped("eigenstate")).report_json);
    EXPECT_LE(report["delta"]["max_density_difference"].get<double>(), 1e-9);
}

TEST(Runner, CompareAnomalous) {
    const json report = json::parse(compare_scenario(shipped("anomalous-weak-value")).report_json);
    EXPECT_LE(report["ps"]["cross_mass"].get<double>(), 1e-9);
    EXPECT_GT(report["pps"]["cross_mass"].get<double>(), 0.05);
}

TEST(Runner, CompareNeedsPostselection) {
    try {
        compare_scenario(shipped("preselected-only"));
        ADD_FAILURE();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
    }
}

TEST(Runner, GammaSweepDecays) {
    const double values[] = {0.1, 1.0, 2.0, 10.0};
    const RunOutcome out = sweep_scenario(shipped("anomalous-weak-value"), "gamma", values);
    const json report = json::parse(out.report_json);
    ASSERT_EQ(report["entries"].size(), 4u);
    double previous = 1e9;
    for (const auto &entry : report["entries"]) {
        const double mass = entry["pps_cross_l1"].get<double>();
        EXPECT_LT(mass, previous);
        EXPECT_LE(entry["ps_cross_l1"].get<double>(), 1e-9);
        previous = mass;
    }
    // 2 |Re[Aw(1 - Aw*)]| e^{-12.5} / N^2 at ten widths
    const double aw = 1.0 + 1.0 / std::sqrt(2.0);
    const double c = aw * (1.0 - aw);
    const double n2 = std::pow(1.0 - aw, 2) + aw * aw + 2.0 * c * std::exp(-12.5);
    EXPECT_NEAR(previous, 2.0 * std::abs(c) * std::exp(-12.5) / n2, 1e-12);
}

TEST(Runner, SweepRejectsUnknownParameter) {
    const double values[] = {1.0};
    try {
        sweep_scenario(shipped("eigenstate"), "temperature", values);
        ADD_FAILURE();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
    }
}

TEST(Runner, WriteOutcome) {
    const auto dir = std::filesystem::temp_directory_path() / "vnp_test_write_outcome";
    std::filesystem::remove_all(dir);
    const RunOutcome out = run_scenario(shipped("complex-weak-value"));
    write_outcome(out, dir);
    EXPECT_EQ(slurp(dir / "report.json"), out.report_json);
    for (const auto &[name, contents] : out.files) {
        EXPECT_EQ(slurp(dir / name), contents) << name;
    }
    std::filesystem::remove_all(dir);
}

TEST(Runner, SmallVerifyBattery) {
    const RunOutcome out = verify_battery({12, 5});
    EXPECT_FALSE(out.tolerance_breach);
    const json report = json::parse(out.report_json);
    EXPECT_TRUE(report["passed"].get<bool>());
}

TEST(ErrorCodes, ExitClasses) {
    EXPECT_EQ(error_exit_class(ErrorCode::InvalidConfig), 2);
    EXPECT_EQ(error_exit_class(ErrorCode::InvalidProjector), 2);
    EXPECT_EQ(error_exit_class(ErrorCode::IoError), 2);
    EXPECT_EQ(error_exit_class(ErrorCode::GridOverflow), 3);
    EXPECT_EQ(error_exit_class(ErrorCode::OrthogonalPostselection), 3);
    EXPECT_EQ(error_exit_class(ErrorCode::ToleranceBreach), 4);
    EXPECT_EQ(error_exit_class(ErrorCode::Internal), 4);
}
