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

#include "vnp/vnp.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "vnp/analysis.hpp"
#include "vnp/error.hpp"
#include "vnp/measurement.hpp"
#include "vnp/oracle.hpp"
#include "vnp/runner.hpp"
#include "vnp/scenario.hpp"

struct vnp_state {
    vnp::SystemState value;
};
struct vnp_projector {
    vnp::Projector value;
};
struct vnp_pointer {
    vnp::PointerWavefunction value;
};
struct vnp_entangled {
    vnp::EntangledState value;
};
struct vnp_scenario {
    vnp::Scenario value;
};

namespace {

thread_local std::string last_error;

vnp_status set_error(vnp_status status, const char *message) {
    last_error = message;
    return status;
}

// Runs `body`, translating exceptions into status codes.
template <class Body> vnp_status guarded(Body &&body) noexcept {
    try {
        last_error.clear();
        return body();
    } catch (const vnp::Error &e) {
        return set_error(static_cast<vnp_status>(e.code()), e.what());
    } catch (const std::bad_alloc &) {
        return set_error(VNP_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return set_error(VNP_INTERNAL, e.what());
    } catch (...) {
        return set_error(VNP_INTERNAL, "unknown failure");
    }
}

void require(const void *p, const char *what) {
    if (p == nullptr) {
        vnp::fail(vnp::ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
    }
}

void require_capacity(size_t capacity, size_t needed) {
    if (capacity < needed) {
        vnp::fail(vnp::ErrorCode::ShapeMismatch, "output buffer holds " +
                                                     std::to_string(capacity) + " values, " +
                                                     std::to_string(needed) + " required");
    }
}

vnp::Vector read_vector(const double *data, size_t dim) {
    vnp::Vector v(static_cast<Eigen::Index>(dim));
    for (size_t k = 0; k < dim; ++k) {
        v(static_cast<Eigen::Index>(k)) = {data[2 * k], data[2 * k + 1]};
    }
    return v;
}

vnp::Matrix read_matrix(const double *data, size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    vnp::Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            const size_t base = 2 * static_cast<size_t>(i * d + j);
            m(i, j) = {data[base], data[base + 1]};
        }
    }
    return m;
}

void write_complex(vnp::Complex z, double out[2]) {
    out[0] = z.real();
    out[1] = z.imag();
}

void write_samples(const vnp::Samples &s, double *out, size_t capacity) {
    require_capacity(capacity, 2 * s.size());
    for (size_t k = 0; k < s.size(); ++k) {
        out[2 * k] = s[k].real();
        out[2 * k + 1] = s[k].imag();
    }
}

void write_reals(const std::vector<double> &v, double *out, size_t capacity) {
    require_capacity(capacity, v.size());
    std::copy(v.begin(), v.end(), out);
}

vnp::PointerGrid to_grid(const vnp_grid *g) {
    require(g, "grid");
    return vnp::PointerGrid(g->q_min, g->dq, g->n);
}

vnp_grid from_grid(const vnp::PointerGrid &g) { return {g.q_min(), g.dq(), g.size()}; }

vnp::MeasurementConfig to_config(const vnp_measurement_config *cfg) {
    require(cfg, "config");
    vnp::MeasurementConfig out;
    out.gamma = cfg->gamma;
    out.hbar = cfg->hbar;
    return out;
}

char *copy_string(const std::string &s) {
    char *out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

vnp_status finish_run(const vnp::RunOutcome &outcome, const char *out_dir, char **report_json) {
    if (out_dir != nullptr) {
        vnp::write_outcome(outcome, out_dir);
    }
    if (report_json != nullptr) {
        *report_json = copy_string(outcome.report_json);
    }
    if (outcome.tolerance_breach) {
        return set_error(VNP_TOLERANCE_BREACH, "an internal tolerance check failed; see report");
    }
    return VNP_OK;
}

} // namespace

extern "C" {

VNP_API int vnp_status_exit_code(vnp_status status) {
    if (status == VNP_OK) {
        return 0;
    }
    return vnp::error_exit_class(static_cast<vnp::ErrorCode>(status));
}

VNP_API const char *vnp_status_name(vnp_status status) {
    if (status == VNP_OK) {
        return "Ok";
    }
    return vnp::error_code_name(static_cast<vnp::ErrorCode>(status)).data();
}

VNP_API const char *vnp_last_error(void) { return last_error.c_str(); }

VNP_API const char *vnp_version(void) { return "0.1.0"; }

VNP_API void vnp_string_free(char *s) { delete[] s; }

VNP_API vnp_status vnp_state_create(const double *amplitudes, size_t dim, int renormalize,
                                    vnp_state **out) {
    return guarded([&] {
        require(amplitudes, "amplitudes");
        require(out, "out");
        vnp::Vector v = read_vector(amplitudes, dim);
        *out = new vnp_state{renormalize ? vnp::SystemState::normalized(std::move(v))
                                         : vnp::SystemState::from_amplitudes(std::move(v))};
        return VNP_OK;
    });
}

VNP_API void vnp_state_destroy(vnp_state *state) { delete state; }

VNP_API size_t vnp_state_dim(const vnp_state *state) {
    return state == nullptr ? 0 : state->value.dim();
}

VNP_API vnp_status vnp_state_amplitudes(const vnp_state *state, double *out, size_t capacity) {
    return guarded([&] {
        require(state, "state");
        require(out, "out");
        const vnp::Vector &v = state->value.amplitudes();
        require_capacity(capacity, 2 * static_cast<size_t>(v.size()));
        for (Eigen::Index k = 0; k < v.size(); ++k) {
            write_complex(v(k), out + 2 * k);
        }
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_projector_from_state(const vnp_state *v, vnp_projector **out) {
    return guarded([&] {
        require(v, "state");
        require(out, "out");
        *out = new vnp_projector{vnp::make_projector_from_state(v->value)};
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_projector_from_matrix(const double *matrix, size_t dim,
                                             vnp_projector **out) {
    return guarded([&] {
        require(matrix, "matrix");
        require(out, "out");
        *out = new vnp_projector{vnp::Projector::from_matrix(read_matrix(matrix, dim))};
        return VNP_OK;
    });
}

VNP_API void vnp_projector_destroy(vnp_projector *projector) { delete projector; }

VNP_API size_t vnp_projector_dim(const vnp_projector *projector) {
    return projector == nullptr ? 0 : projector->value.dim();
}

VNP_API vnp_status vnp_projector_matrix(const vnp_projector *projector, double *out,
                                        size_t capacity) {
    return guarded([&] {
        require(projector, "projector");
        require(out, "out");
        const vnp::Matrix &m = projector->value.matrix();
        require_capacity(capacity, 2 * static_cast<size_t>(m.size()));
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                write_complex(m(i, j), out + 2 * (i * m.cols() + j));
            }
        }
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_validate_projector(const double *matrix, size_t dim, double tol,
                                          vnp_projector_validation *out) {
    return guarded([&] {
        require(matrix, "matrix");
        require(out, "out");
        const vnp::ProjectorValidation v = vnp::validate_projector(read_matrix(matrix, dim), tol);
        *out = {v.hermiticity_residual, v.idempotency_residual, v.spectrum_residual,
                v.passed ? 1 : 0};
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_expectation(const vnp_projector *a, const vnp_state *psi, double *out) {
    return guarded([&] {
        require(a, "projector");
        require(psi, "state");
        require(out, "out");
        *out = vnp::expectation(a->value, psi->value);
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_weak_value(const vnp_projector *a, const vnp_state *pre,
                                  const vnp_state *post, double out[2]) {
    return guarded([&] {
        require(a, "projector");
        require(pre, "pre");
        require(post, "post");
        require(out, "out");
        write_complex(vnp::weak_value(a->value, pre->value, post->value), out);
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_pancharatnam_phase(const vnp_state *pre, const vnp_state *post,
                                          double *chi, double overlap[2]) {
    return guarded([&] {
        require(pre, "pre");
        require(post, "post");
        const vnp::PancharatnamPhase phase = vnp::pancharatnam_phase(pre->value, post->value);
        if (chi != nullptr) {
            *chi = phase.chi;
        }
        if (overlap != nullptr) {
            write_complex(phase.overlap, overlap);
        }
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_normalization_constant(const double weak_value[2],
                                              const double shifted_overlap[2], double *out) {
    return guarded([&] {
        require(weak_value, "weak_value");
        require(shifted_overlap, "shifted_overlap");
        require(out, "out");
        *out = vnp::normalization_constant({weak_value[0], weak_value[1]},
                                           {shifted_overlap[0], shifted_overlap[1]});
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_grid_from_extent(double q_min, double q_max, size_t n, vnp_grid *out) {
    return guarded([&] {
        require(out, "out");
        *out = from_grid(vnp::PointerGrid::from_extent(q_min, q_max, n));
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_pointer_gaussian(const vnp_grid *grid, double center, double sigma,
                                        vnp_pointer **out) {
    return guarded([&] {
        require(out, "out");
        *out = new vnp_pointer{vnp::gaussian_pointer(to_grid(grid), center, sigma)};
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_pointer_from_samples(const vnp_grid *grid, const double *samples,
                                            vnp_pointer **out) {
    return guarded([&] {
        require(samples, "samples");
        require(out, "out");
        const vnp::PointerGrid g = to_grid(grid);
        vnp::Samples s(g.size());
        for (size_t k = 0; k < s.size(); ++k) {
            s[k] = {samples[2 * k], samples[2 * k + 1]};
        }
        *out = new vnp_pointer{vnp::PointerWavefunction(g, std::move(s))};
        return VNP_OK;
    });
}

VNP_API void vnp_pointer_destroy(vnp_pointer *pointer) { delete pointer; }

VNP_API vnp_status vnp_pointer_grid(const vnp_pointer *pointer, vnp_grid *out) {
    return guarded([&] {
        require(pointer, "pointer");
        require(out, "out");
        *out = from_grid(pointer->value.grid());
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_pointer_samples(const vnp_pointer *pointer, double *out, size_t capacity) {
    return guarded([&] {
        require(pointer, "pointer");
        require(out, "out");
        write_samples(pointer->value.samples(), out, capacity);
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_pointer_translate(const vnp_pointer *pointer, double gamma,
                                         vnp_pointer **out) {
    return guarded([&] {
        require(pointer, "pointer");
        require(out, "out");
        *out = new vnp_pointer{vnp::translate(pointer->value, gamma)};
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_pointer_overlap(const vnp_pointer *a, const vnp_pointer *b,
                                       double out[2]) {
    return guarded([&] {
        require(a, "a");
        require(b, "b");
        require(out, "out");
        write_complex(vnp::overlap(a->value, b->value), out);
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_pointer_momentum_expectation(const vnp_pointer *pointer, double hbar,
                                                    double *out) {
    return guarded([&] {
        require(pointer, "pointer");
        require(out, "out");
        *out = vnp::momentum_expectation(pointer->value, hbar);
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_pointer_density(const vnp_pointer *pointer, double *out, size_t capacity) {
    return guarded([&] {
        require(pointer, "pointer");
        require(out, "out");
        write_reals(vnp::probability_density(pointer->value), out, capacity);
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_ps_measure(const vnp_projector *a, const vnp_state *psi,
                                  const vnp_pointer *phi, const vnp_measurement_config *cfg,
                                  vnp_entangled **out) {
    return guarded([&] {
        require(a, "projector");
        require(psi, "state");
        require(phi, "pointer");
        require(out, "out");
        *out = new vnp_entangled{vnp::ps_measure(a->value, psi->value, phi->value, to_config(cfg))};
        return VNP_OK;
    });
}

VNP_API void vnp_entangled_destroy(vnp_entangled *state) { delete state; }

VNP_API size_t vnp_entangled_dim(const vnp_entangled *state) {
    return state == nullptr ? 0 : state->value.dim();
}

VNP_API vnp_status vnp_entangled_norm_squared(const vnp_entangled *state, double *out) {
    return guarded([&] {
        require(state, "state");
        require(out, "out");
        *out = state->value.norm_squared();
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_entangled_amplitudes(const vnp_entangled *state, double *out,
                                            size_t capacity) {
    return guarded([&] {
        require(state, "state");
        require(out, "out");
        const vnp::Matrix &c = state->value.amplitudes();
        require_capacity(capacity, 2 * static_cast<size_t>(c.size()));
        for (Eigen::Index j = 0; j < c.rows(); ++j) {
            for (Eigen::Index k = 0; k < c.cols(); ++k) {
                write_complex(c(j, k), out + 2 * (j * c.cols() + k));
            }
        }
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_entangled_marginal(const vnp_entangled *state, double *out,
                                          size_t capacity) {
    return guarded([&] {
        require(state, "state");
        require(out, "out");
        write_reals(state->value.marginal_density(), out, capacity);
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_postselect(const vnp_entangled *state, const vnp_state *post,
                                  vnp_pointer **pointer, double *probability) {
    return guarded([&] {
        require(state, "state");
        require(post, "post");
        require(pointer, "pointer");
        vnp::PostselectedPointer result = vnp::postselect(state->value, post->value);
        if (probability != nullptr) {
            *probability = result.probability;
        }
        *pointer = new vnp_pointer{std::move(result.pointer)};
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_ps_pointer_density(const vnp_projector *a, const vnp_state *psi,
                                          const vnp_pointer *phi,
                                          const vnp_measurement_config *cfg, double *out,
                                          size_t capacity) {
    return guarded([&] {
        require(a, "projector");
        require(psi, "state");
        require(phi, "pointer");
        require(out, "out");
        write_reals(vnp::ps_pointer_density(a->value, psi->value, phi->value, to_config(cfg)), out,
                    capacity);
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_ps_cross_term(const vnp_projector *a, const vnp_state *psi,
                                     const vnp_pointer *phi, const vnp_measurement_config *cfg,
                                     double *out, size_t capacity) {
    return guarded([&] {
        require(a, "projector");
        require(psi, "state");
        require(phi, "pointer");
        require(out, "out");
        write_reals(vnp::ps_cross_term(a->value, psi->value, phi->value, to_config(cfg)), out,
                    capacity);
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_pps_pointer_state(const vnp_projector *a, const vnp_state *pre,
                                         const vnp_state *post, const vnp_pointer *phi,
                                         const vnp_measurement_config *cfg, vnp_pointer **pointer,
                                         vnp_weak_value_report *report) {
    return guarded([&] {
        require(a, "projector");
        require(pre, "pre");
        require(post, "post");
        require(phi, "pointer");
        vnp::PpsResult r =
            vnp::pps_pointer_state(a->value, pre->value, post->value, phi->value, to_config(cfg));
        if (report != nullptr) {
            write_complex(r.report.weak_value, report->weak_value);
            write_complex(r.report.overlap, report->overlap);
            report->phase_chi = r.report.phase_chi;
            report->normalization = r.report.normalization;
            write_complex(r.report.shifted_overlap, report->shifted_overlap);
            report->postselection_probability = r.postselection_probability;
        }
        if (pointer != nullptr) {
            *pointer = new vnp_pointer{std::move(r.pointer)};
        }
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_pps_pointer_density(const vnp_projector *a, const vnp_state *pre,
                                           const vnp_state *post, const vnp_pointer *phi,
                                           const vnp_measurement_config *cfg, double *total,
                                           double *unshifted, double *shifted, double *cross,
                                           size_t capacity) {
    return guarded([&] {
        require(a, "projector");
        require(pre, "pre");
        require(post, "post");
        require(phi, "pointer");
        const vnp::DensityDecomposition d =
            vnp::pps_pointer_density(a->value, pre->value, post->value, phi->value, to_config(cfg));
        if (total != nullptr) write_reals(d.total, total, capacity);
        if (unshifted != nullptr) write_reals(d.unshifted, unshifted, capacity);
        if (shifted != nullptr) write_reals(d.shifted, shifted, capacity);
        if (cross != nullptr) write_reals(d.cross, cross, capacity);
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_pps_interference(const vnp_projector *a, const vnp_state *pre,
                                        const vnp_state *post, const vnp_pointer *phi,
                                        const vnp_measurement_config *cfg,
                                        vnp_interference_report *out) {
    return guarded([&] {
        require(a, "projector");
        require(pre, "pre");
        require(post, "post");
        require(phi, "pointer");
        require(out, "out");
        const vnp::InterferenceReport r = vnp::interference_report(
            vnp::pps_pointer_density(a->value, pre->value, post->value, phi->value, to_config(cfg)));
        *out = {r.cross_l1, r.cross_signed, r.max_abs_cross};
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_ps_interference(const vnp_projector *a, const vnp_state *psi,
                                       const vnp_pointer *phi, const vnp_measurement_config *cfg,
                                       vnp_interference_report *out) {
    return guarded([&] {
        require(a, "projector");
        require(psi, "state");
        require(phi, "pointer");
        require(out, "out");
        const vnp::InterferenceReport r = vnp::interference_report(
            vnp::ps_density_decomposition(a->value, psi->value, phi->value, to_config(cfg)));
        *out = {r.cross_l1, r.cross_signed, r.max_abs_cross};
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_oracle_evolve(const vnp_projector *a, const vnp_state *psi,
                                     const vnp_pointer *phi, const vnp_measurement_config *cfg,
                                     vnp_entangled **out) {
    return guarded([&] {
        require(a, "projector");
        require(psi, "state");
        require(phi, "pointer");
        require(out, "out");
        *out = new vnp_entangled{
            vnp::momentum_space_evolve(a->value, psi->value, phi->value, to_config(cfg))};
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_operator_identity_check(const vnp_projector *a,
                                               const vnp_measurement_config *cfg,
                                               const vnp_grid *grid, double *deviation) {
    return guarded([&] {
        require(a, "projector");
        require(deviation, "deviation");
        *deviation = vnp::operator_identity_check(a->value, to_config(cfg), to_grid(grid));
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_inverse_identity_check(const vnp_projector *a,
                                              const vnp_measurement_config *cfg,
                                              const vnp_grid *grid, uint64_t seed,
                                              double *deviation) {
    return guarded([&] {
        require(a, "projector");
        require(deviation, "deviation");
        *deviation = vnp::inverse_identity_check(a->value, to_config(cfg), to_grid(grid), seed);
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_scenario_load(const char *path, vnp_scenario **out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new vnp_scenario{vnp::load_scenario(path)};
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_scenario_parse(const char *json_text, vnp_scenario **out) {
    return guarded([&] {
        require(json_text, "json_text");
        require(out, "out");
        *out = new vnp_scenario{vnp::scenario_from_json(json_text)};
        return VNP_OK;
    });
}

VNP_API void vnp_scenario_destroy(vnp_scenario *scenario) { delete scenario; }

VNP_API vnp_status vnp_scenario_dump(const vnp_scenario *scenario, char **json_out) {
    return guarded([&] {
        require(scenario, "scenario");
        require(json_out, "json_out");
        *json_out = copy_string(vnp::scenario_to_json(scenario->value));
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_scenario_equal(const vnp_scenario *a, const vnp_scenario *b, int *out) {
    return guarded([&] {
        require(a, "a");
        require(b, "b");
        require(out, "out");
        *out = a->value == b->value ? 1 : 0;
        return VNP_OK;
    });
}

VNP_API vnp_status vnp_scenario_run(const vnp_scenario *scenario, const char *out_dir,
                                    char **report_json) {
    return guarded([&] {
        require(scenario, "scenario");
        return finish_run(vnp::run_scenario(scenario->value), out_dir, report_json);
    });
}

VNP_API vnp_status vnp_scenario_compare(const vnp_scenario *scenario, const char *out_dir,
                                        char **report_json) {
    return guarded([&] {
        require(scenario, "scenario");
        return finish_run(vnp::compare_scenario(scenario->value), out_dir, report_json);
    });
}

VNP_API vnp_status vnp_scenario_sweep(const vnp_scenario *scenario, const char *param,
                                      const double *values, size_t count, const char *out_dir,
                                      char **report_json) {
    return guarded([&] {
        require(scenario, "scenario");
        require(param, "param");
        require(values, "values");
        return finish_run(
            vnp::sweep_scenario(scenario->value, param, std::span<const double>(values, count)),
            out_dir, report_json);
    });
}

VNP_API vnp_status vnp_verify(size_t trials, uint64_t seed, char **report_json) {
    return guarded([&] {
        vnp::VerifyOptions options;
        options.trials = trials;
        options.seed = seed;
        return finish_run(vnp::verify_battery(options), nullptr, report_json);
    });
}

} // extern "C"
