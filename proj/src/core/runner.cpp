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

#include "vnp/runner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>

#include "json.hpp"

#include "vnp/analysis.hpp"
#include "vnp/error.hpp"
#include "vnp/measurement.hpp"
#include "vnp/oracle.hpp"
#include "vnp/random.hpp"

namespace vnp {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json complex_json(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

double max_abs_deviation(const Matrix &a, const Matrix &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

double max_abs(const std::vector<double> &v) {
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

double integrate(const std::vector<double> &v, double dq) {
    double sum = 0.0;
    for (double x : v) {
        sum += x;
    }
    return sum * dq;
}

ordered_json interference_json(const InterferenceReport &r) {
    ordered_json j;
    j["cross_l1"] = r.cross_l1;
    j["cross_signed"] = r.cross_signed;
    j["max_abs_cross"] = r.max_abs_cross;
    j["weak_value"] = complex_json(r.weak_value);
    j["shifted_overlap"] = complex_json(r.shifted_overlap);
    return j;
}

ordered_json grid_json(const PointerGrid &g) {
    ordered_json j;
    j["q_min"] = g.q_min();
    j["dq"] = g.dq();
    j["n"] = g.size();
    return j;
}

ordered_json weak_value_json(const PpsResult &r) {
    ordered_json j;
    j["weak_value"] = complex_json(r.report.weak_value);
    j["overlap"] = complex_json(r.report.overlap);
    j["phase_chi"] = r.report.phase_chi;
    j["normalization"] = r.report.normalization;
    j["shifted_overlap"] = complex_json(r.report.shifted_overlap);
    j["postselection_probability"] = r.postselection_probability;
    return j;
}

std::string density_csv(const DensityDecomposition &d) {
    const std::vector<double> q = d.grid.positions();
    return format_csv({"q", "total", "unshifted", "shifted", "cross"},
                      {&q, &d.total, &d.unshifted, &d.shifted, &d.cross});
}

bool selected(const std::vector<Artifact> &outs, Artifact a) {
    return std::find(outs.begin(), outs.end(), a) != outs.end();
}

ordered_json check_json(double value, double tolerance, bool below) {
    ordered_json j;
    j["value"] = value;
    j["tolerance"] = tolerance;
    j["passed"] = below ? value <= tolerance : value > tolerance;
    return j;
}

// Everything one scenario needs, built once.
struct Pipeline {
    Projector a;
    SystemState pre;
    std::optional<SystemState> post;
    PointerWavefunction phi;
    MeasurementConfig cfg;

    explicit Pipeline(const Scenario &s)
        : a(s.build_projector()), pre(s.build_preselection()), post(s.build_postselection()),
          phi(s.build_pointer()), cfg(s.build_config()) {}
};

struct Summary {
    double ps_cross_l1 = 0.0;
    double ps_momentum_shift = 0.0;
    std::optional<PpsResult> pps;
    double pps_cross_l1 = 0.0;
    double pps_momentum_shift = 0.0;
    double pps_mean_shift = 0.0;
};

Summary summarize(const Pipeline &p) {
    Summary out;
    const DensityDecomposition ps = ps_density_decomposition(p.a, p.pre, p.phi, p.cfg);
    out.ps_cross_l1 = interference_report(ps).cross_l1;
    out.ps_momentum_shift =
        momentum_shift(p.phi, ps_measure(p.a, p.pre, p.phi, p.cfg), p.cfg.hbar);
    if (p.post) {
        out.pps = pps_pointer_state(p.a, p.pre, *p.post, p.phi, p.cfg);
        const DensityDecomposition pps = pps_pointer_density(p.a, p.pre, *p.post, p.phi, p.cfg);
        out.pps_cross_l1 = interference_report(pps).cross_l1;
        out.pps_momentum_shift = momentum_shift(p.phi, out.pps->pointer, p.cfg.hbar);
        out.pps_mean_shift = position_expectation(out.pps->pointer) - position_expectation(p.phi);
    }
    return out;
}

} // namespace

std::string format_csv(const std::vector<std::string> &header,
                       const std::vector<const std::vector<double> *> &columns) {
    std::string out;
    for (std::size_t c = 0; c < header.size(); ++c) {
        out += header[c];
        out += c + 1 < header.size() ? "," : "\n";
    }
    const std::size_t rows = columns.empty() ? 0 : columns.front()->size();
    std::array<char, 64> buffer{};
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            std::snprintf(buffer.data(), buffer.size(), "%.15g", (*columns[c])[r]);
            out += buffer.data();
            out += c + 1 < columns.size() ? "," : "\n";
        }
    }
    return out;
}

RunOutcome run_scenario(const Scenario &s) {
    const Pipeline p(s);
    const std::vector<Artifact> outs = s.selected_outputs();
    for (Artifact a : outs) {
        if (artifact_needs_postselection(a) && !p.post) {
            fail(ErrorCode::InvalidConfig, "outputs: artifact \"" + std::string(artifact_name(a)) +
                                               "\" requires a postselection vector");
        }
    }

    RunOutcome outcome;
    ordered_json report;
    report["scenario"] = s.name;
    report["grid"] = grid_json(p.phi.grid());
    report["gamma"] = p.cfg.gamma;
    report["hbar"] = p.cfg.hbar;
    report["outputs"] = ordered_json::array();
    for (Artifact a : outs) {
        report["outputs"].push_back(std::string(artifact_name(a)));
    }

    const EntangledState ps_state = ps_measure(p.a, p.pre, p.phi, p.cfg);
    const DensityDecomposition ps_parts = ps_density_decomposition(p.a, p.pre, p.phi, p.cfg);
    const double ps_norm_residual = std::abs(ps_state.norm_squared() - 1.0);
    const double ps_cross_max = max_abs(ps_parts.cross);
    if (ps_norm_residual > kPsNormTolerance || ps_cross_max > kPsCrossTolerance) {
        outcome.tolerance_breach = true;
    }

    std::optional<PpsResult> pps;
    std::optional<DensityDecomposition> pps_parts;
    if (p.post) {
        pps = pps_pointer_state(p.a, p.pre, *p.post, p.phi, p.cfg);
        pps_parts = pps_pointer_density(p.a, p.pre, *p.post, p.phi, p.cfg);
    }

    if (selected(outs, Artifact::PsDensity)) {
        ordered_json j;
        j["expectation"] = expectation(p.a, p.pre);
        j["norm_residual"] = ps_norm_residual;
        j["max_abs_cross"] = ps_cross_max;
        j["file"] = "ps_density.csv";
        report["ps_density"] = j;
        outcome.files.emplace_back("ps_density.csv", density_csv(ps_parts));
    }
    if (selected(outs, Artifact::PpsDensity)) {
        double component_residual = 0.0;
        double pointwise_residual = 0.0;
        const std::vector<double> rho = probability_density(pps->pointer);
        for (std::size_t k = 0; k < rho.size(); ++k) {
            const double sum = pps_parts->unshifted[k] + pps_parts->shifted[k] + pps_parts->cross[k];
            component_residual = std::max(component_residual, std::abs(sum - pps_parts->total[k]));
            pointwise_residual = std::max(pointwise_residual, std::abs(rho[k] - pps_parts->total[k]));
        }
        ordered_json j;
        j["integral"] = integrate(pps_parts->total, p.phi.grid().dq());
        j["component_sum_residual"] = component_residual;
        j["state_density_residual"] = pointwise_residual;
        j["file"] = "pps_density.csv";
        report["pps_density"] = j;
        outcome.files.emplace_back("pps_density.csv", density_csv(*pps_parts));
    }
    if (selected(outs, Artifact::WeakValue)) {
        report["weak_value"] = weak_value_json(*pps);
    }
    if (selected(outs, Artifact::Interference)) {
        ordered_json j;
        j["ps"] = interference_json(interference_report(ps_parts));
        if (pps_parts) {
            j["pps"] = interference_json(interference_report(*pps_parts));
        }
        report["interference"] = j;
    }

    std::optional<CouplingPropagator> propagator;
    const auto oracle = [&]() -> const CouplingPropagator & {
        if (!propagator) {
            propagator.emplace(p.a.matrix(), p.phi.grid(), p.cfg);
        }
        return *propagator;
    };

    if (selected(outs, Artifact::Momentum)) {
        const double hbar = p.cfg.hbar;
        ordered_json j;
        j["before"] = momentum_expectation(p.phi, hbar);
        j["ps_after"] = momentum_expectation(ps_state, hbar);
        j["ps_shift"] = momentum_shift(p.phi, ps_state, hbar);
        if (pps) {
            const PostselectedPointer exact = postselect(oracle().apply(p.pre, p.phi), *p.post);
            j["pps_after"] = momentum_expectation(pps->pointer, hbar);
            j["pps_shift"] = momentum_shift(p.phi, pps->pointer, hbar);
            j["pps_shift_oracle"] = momentum_shift(p.phi, exact.pointer, hbar);
        }
        report["momentum"] = j;
    }

    if (selected(outs, Artifact::Oracle)) {
        const EntangledState exact = oracle().apply(p.pre, p.phi);
        const double ps_dev = max_abs_deviation(exact.amplitudes(), ps_state.amplitudes());
        const double identity_dev = operator_identity_check(p.a, p.cfg, p.phi.grid());
        const double inverse_dev = inverse_identity_check(p.a, p.cfg, p.phi.grid());
        ordered_json j;
        j["ps_state"] = check_json(ps_dev, kOracleTolerance, true);
        j["operator_identity"] = check_json(identity_dev, kOracleTolerance, true);
        j["inverse_identity"] = check_json(inverse_dev, kInverseTolerance, true);
        bool passed = ps_dev <= kOracleTolerance && identity_dev <= kOracleTolerance &&
                      inverse_dev <= kInverseTolerance;
        if (pps) {
            const PostselectedPointer selected_exact = postselect(exact, *p.post);
            const GlobalPhase alignment = global_phase_between(pps->pointer, selected_exact.pointer);
            const PointerWavefunction stripped =
                pps->pointer.scaled(std::polar(1.0, -pps->report.phase_chi));
            const GlobalPhase chi = global_phase_between(stripped, selected_exact.pointer);
            const double chi_error = std::abs(wrap_phase(chi.theta - pps->report.phase_chi));
            const double prob_error =
                std::abs(selected_exact.probability - pps->postselection_probability);
            j["pps_pointer"] = check_json(alignment.residual, kOracleTolerance, true);
            j["pps_phase_vs_chi"] = check_json(chi_error, kOracleTolerance, true);
            j["postselection_probability"] = check_json(prob_error, kOracleTolerance, true);
            passed = passed && alignment.residual <= kOracleTolerance &&
                     chi_error <= kOracleTolerance && prob_error <= kOracleTolerance;
        }
        j["passed"] = passed;
        report["oracle"] = j;
        if (!passed) {
            outcome.tolerance_breach = true;
        }
    }

    report["tolerance_breach"] = outcome.tolerance_breach;
    outcome.report_json = report.dump(2) + "\n";
    return outcome;
}

RunOutcome compare_scenario(const Scenario &s) {
    if (!s.postselection) {
        fail(ErrorCode::InvalidConfig, "postselection: compare requires a postselection vector");
    }
    const Pipeline p(s);
    const DensityDecomposition ps = ps_density_decomposition(p.a, p.pre, p.phi, p.cfg);
    const DensityDecomposition pps = pps_pointer_density(p.a, p.pre, *p.post, p.phi, p.cfg);
    const Summary summary = summarize(p);
    const double dq = p.phi.grid().dq();

    std::vector<double> difference(ps.total.size());
    double max_difference = 0.0;
    for (std::size_t k = 0; k < difference.size(); ++k) {
        difference[k] = pps.total[k] - ps.total[k];
        max_difference = std::max(max_difference, std::abs(difference[k]));
    }

    RunOutcome outcome;
    const std::vector<double> q = p.phi.grid().positions();
    outcome.files.emplace_back(
        "compare_density.csv",
        format_csv({"q", "ps_total", "pps_total", "ps_cross", "pps_cross", "difference"},
                   {&q, &ps.total, &pps.total, &ps.cross, &pps.cross, &difference}));

    ordered_json report;
    report["scenario"] = s.name;
    report["gamma"] = p.cfg.gamma;
    ordered_json ps_j;
    ps_j["cross_mass"] = summary.ps_cross_l1;
    ps_j["momentum_shift"] = summary.ps_momentum_shift;
    ps_j["peak_weights"] = ordered_json::array({integrate(ps.unshifted, dq), integrate(ps.shifted, dq)});
    ordered_json pps_j;
    pps_j["cross_mass"] = summary.pps_cross_l1;
    pps_j["momentum_shift"] = summary.pps_momentum_shift;
    pps_j["peak_weights"] =
        ordered_json::array({integrate(pps.unshifted, dq), integrate(pps.shifted, dq)});
    pps_j["weak_value"] = weak_value_json(*summary.pps);
    ordered_json delta;
    delta["cross_mass"] = summary.pps_cross_l1 - summary.ps_cross_l1;
    delta["momentum_shift"] = summary.pps_momentum_shift - summary.ps_momentum_shift;
    delta["peak_weights"] = ordered_json::array(
        {pps_j["peak_weights"][0].get<double>() - ps_j["peak_weights"][0].get<double>(),
         pps_j["peak_weights"][1].get<double>() - ps_j["peak_weights"][1].get<double>()});
    delta["max_density_difference"] = max_difference;
    report["ps"] = ps_j;
    report["pps"] = pps_j;
    report["delta"] = delta;
    report["file"] = "compare_density.csv";
    outcome.report_json = report.dump(2) + "\n";
    return outcome;
}

RunOutcome sweep_scenario(const Scenario &s, std::string_view param,
                          std::span<const double> values) {
    double Scenario::*field = nullptr;
    if (param == "gamma") {
        field = &Scenario::gamma;
    } else if (param == "hbar") {
        field = &Scenario::hbar;
    }
    const bool pointer_param = param == "sigma" || param == "center";
    if (!field && !pointer_param) {
        fail(ErrorCode::InvalidConfig,
             "--param: unsupported sweep parameter \"" + std::string(param) +
                 "\" (expected gamma, hbar, sigma or center)");
    }
    if (values.empty()) {
        fail(ErrorCode::InvalidConfig, "--values: at least one value is required");
    }

    std::vector<double> value_col, ps_cross, pps_cross, aw_re, aw_im, norm_col, prob_col, dp_col;
    ordered_json entries = ordered_json::array();
    for (double v : values) {
        Scenario variant = s;
        if (field) {
            variant.*field = v;
        } else if (param == "sigma") {
            variant.pointer.sigma = v;
        } else {
            variant.pointer.center = v;
        }
        const Summary summary = summarize(Pipeline(variant));
        ordered_json e;
        e["value"] = v;
        e["ps_cross_l1"] = summary.ps_cross_l1;
        e["ps_momentum_shift"] = summary.ps_momentum_shift;
        value_col.push_back(v);
        ps_cross.push_back(summary.ps_cross_l1);
        if (summary.pps) {
            e["pps_cross_l1"] = summary.pps_cross_l1;
            e["pps_momentum_shift"] = summary.pps_momentum_shift;
            e["pps_mean_shift"] = summary.pps_mean_shift;
            e["weak_value"] = weak_value_json(*summary.pps);
            pps_cross.push_back(summary.pps_cross_l1);
            aw_re.push_back(summary.pps->report.weak_value.real());
            aw_im.push_back(summary.pps->report.weak_value.imag());
            norm_col.push_back(summary.pps->report.normalization);
            prob_col.push_back(summary.pps->postselection_probability);
            dp_col.push_back(summary.pps_momentum_shift);
        }
        entries.push_back(e);
    }

    RunOutcome outcome;
    if (s.postselection) {
        outcome.files.emplace_back(
            "sweep.csv",
            format_csv({std::string(param), "ps_cross_l1", "pps_cross_l1", "weak_value_re",
                        "weak_value_im", "normalization", "postselection_probability",
                        "pps_momentum_shift"},
                       {&value_col, &ps_cross, &pps_cross, &aw_re, &aw_im, &norm_col, &prob_col,
                        &dp_col}));
    } else {
        outcome.files.emplace_back("sweep.csv", format_csv({std::string(param), "ps_cross_l1"},
                                                           {&value_col, &ps_cross}));
    }
    ordered_json report;
    report["scenario"] = s.name;
    report["param"] = std::string(param);
    report["entries"] = entries;
    report["file"] = "sweep.csv";
    outcome.report_json = report.dump(2) + "\n";
    return outcome;
}

RunOutcome verify_battery(const VerifyOptions &options) {
    const PointerGrid grid = PointerGrid::standard();
    const PointerWavefunction phi = gaussian_pointer(grid, 0.0, 1.0);
    Rng rng(options.seed);
    constexpr std::array<std::size_t, 3> dims{2, 4, 8};

    double identity_max = 0.0;
    double inverse_max = 0.0;
    double norm_max = 0.0;
    for (std::size_t t = 0; t < options.trials; ++t) {
        const std::size_t d = dims[t % dims.size()];
        const auto rank = std::uniform_int_distribution<std::size_t>(1, d - 1)(rng);
        const Projector a = random_projector(d, rank, rng);
        MeasurementConfig cfg;
        cfg.gamma = uniform(rng, -8.0, 8.0);
        identity_max = std::max(identity_max, operator_identity_check(a, cfg, grid));
        inverse_max = std::max(inverse_max, inverse_identity_check(a, cfg, grid, rng()));
        const SystemState psi = random_state(d, rng);
        norm_max = std::max(norm_max, std::abs(ps_measure(a, psi, phi, cfg).norm_squared() - 1.0));
    }

    Matrix control = Matrix::Zero(2, 2);
    control(0, 0) = 0.5;
    control(1, 1) = 0.25;
    MeasurementConfig control_cfg;
    control_cfg.gamma = 2.0;
    const double control_dev = operator_identity_deviation(control, control_cfg, grid);

    ordered_json report;
    report["trials"] = options.trials;
    report["seed"] = options.seed;
    report["grid"] = grid_json(grid);
    report["operator_identity"] = check_json(identity_max, kOracleTolerance, true);
    report["inverse_identity"] = check_json(inverse_max, kInverseTolerance, true);
    report["ps_norm"] = check_json(norm_max, kPsNormTolerance, true);
    report["negative_control"] = check_json(control_dev, kNegativeControlThreshold, false);
    const bool passed = identity_max <= kOracleTolerance && inverse_max <= kInverseTolerance &&
                        norm_max <= kPsNormTolerance && control_dev > kNegativeControlThreshold;
    report["passed"] = passed;

    RunOutcome outcome;
    outcome.tolerance_breach = !passed;
    outcome.report_json = report.dump(2) + "\n";
    return outcome;
}

void write_outcome(const RunOutcome &outcome, const std::filesystem::path &dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        fail(ErrorCode::IoError, "cannot create output directory " + dir.string());
    }
    const auto write = [&](const std::string &name, const std::string &contents) {
        std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
        if (!out) {
            fail(ErrorCode::IoError, "cannot write " + (dir / name).string());
        }
        out << contents;
    };
    for (const auto &[name, contents] : outcome.files) {
        write(name, contents);
    }
    write("report.json", outcome.report_json);
}

} // namespace vnp
