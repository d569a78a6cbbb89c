// Copyright 2026 The relphase Authors
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

// Scenario execution and machine-readable report emission.

#include <cmath>
#include <cstdio>
#include <utility>

#include "relphase/models.hpp"
#include "relphase/paths.hpp"
#include "relphase/scenario.hpp"
#include "relphase/uhlmann.hpp"
#include "relphase/version.hpp"

namespace relphase {

namespace {

const char* kind_name(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::discrete_phase: return "discrete-phase";
        case ScenarioKind::continuous_phase: return "continuous-phase";
        case ScenarioKind::protocol: return "protocol";
        case ScenarioKind::uhlmann: return "uhlmann";
        case ScenarioKind::model_oracle: return "model-oracle";
    }
    return "?";
}

const char* model_name(StateModel model) {
    switch (model) {
        case StateModel::two_qubit_lambda: return "two-qubit-lambda";
        case StateModel::squeezed: return "squeezed";
        case StateModel::explicit_amplitudes: return "explicit";
    }
    return "?";
}

const char* generator_name(SequenceGenerator g) {
    switch (g) {
        case SequenceGenerator::qubit_triangle: return "qubit-triangle";
        case SequenceGenerator::coherent_polygon: return "coherent-polygon";
        case SequenceGenerator::explicit_vectors: return "explicit";
    }
    return "?";
}

BipartiteState build_state(const StateSpec& spec) {
    switch (spec.model) {
        case StateModel::two_qubit_lambda:
            return make_two_qubit(spec.lambda);
        case StateModel::squeezed:
            return make_squeezed(spec.r, spec.truncation);
        case StateModel::explicit_amplitudes: {
            Vector amps(static_cast<long>(spec.amplitudes.size()));
            for (std::size_t k = 0; k < spec.amplitudes.size(); ++k) {
                amps(static_cast<long>(k)) = spec.amplitudes[k];
            }
            amps /= amps.norm();
            return BipartiteState(std::move(amps), spec.d1, spec.d2);
        }
    }
    throw ValidationError("build_state: unreachable model");
}

StateSequence build_sequence(const Scenario& sc) {
    switch (sc.sequence.generator) {
        case SequenceGenerator::qubit_triangle:
            return qubit_sequence(sc.sequence.phi);
        case SequenceGenerator::coherent_polygon: {
            std::vector<Vector> vs;
            vs.reserve(sc.sequence.z.size());
            for (Complex z : sc.sequence.z) {
                vs.push_back(coherent_vector(z, sc.state.truncation));
            }
            return StateSequence(std::move(vs));
        }
        case SequenceGenerator::explicit_vectors: {
            std::vector<Vector> vs;
            vs.reserve(sc.sequence.vectors.size());
            for (const auto& raw : sc.sequence.vectors) {
                Vector v(static_cast<long>(raw.size()));
                for (std::size_t k = 0; k < raw.size(); ++k) {
                    v(static_cast<long>(k)) = raw[k];
                }
                vs.push_back(std::move(v));
            }
            return StateSequence(std::move(vs));
        }
    }
    throw ValidationError("build_sequence: unreachable generator");
}

// Deterministic JSON writer: fixed key order comes from call order, floats
// are printed with %.17g so every double round-trips bit-exactly.
class JsonWriter {
  public:
    void object_open() { item(); out_ += '{'; fresh_.push_back(true); }
    void object_close() { out_ += '}'; fresh_.pop_back(); }
    void array_open() { item(); out_ += '['; fresh_.push_back(true); }
    void array_close() { out_ += ']'; fresh_.pop_back(); }

    void key(const std::string& name) {
        item();
        quote(name);
        out_ += ':';
        after_key_ = true;
    }

    void value(double x) {
        item();
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        out_ += buf;
    }
    void value(long x) { item(); out_ += std::to_string(x); }
    void value(int x) { item(); out_ += std::to_string(x); }
    void value(std::uint64_t x) { item(); out_ += std::to_string(x); }
    void value(const std::string& s) { item(); quote(s); }
    void value(const char* s) { item(); quote(s); }
    void null() { item(); out_ += "null"; }

    void kv(const std::string& name, double x) { key(name); value(x); }
    void kv(const std::string& name, long x) { key(name); value(x); }
    void kv(const std::string& name, int x) { key(name); value(x); }
    void kv(const std::string& name, std::uint64_t x) { key(name); value(x); }
    void kv(const std::string& name, const std::string& s) { key(name); value(s); }
    void kv(const std::string& name, const char* s) { key(name); value(s); }

    std::string take() { return std::move(out_); }

  private:
    void item() {
        if (after_key_) {
            after_key_ = false;
            return;
        }
        if (!fresh_.empty()) {
            if (!fresh_.back()) out_ += ',';
            fresh_.back() = false;
        }
    }

    void quote(const std::string& s) {
        out_ += '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\r': out_ += "\\r"; break;
                case '\t': out_ += "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                        out_ += buf;
                    } else {
                        out_ += c;
                    }
            }
        }
        out_ += '"';
    }

    std::string out_;
    std::vector<bool> fresh_;
    bool after_key_ = false;
};

void emit_scenario_echo(JsonWriter& w, const Scenario& sc) {
    w.object_open();
    w.kv("kind", kind_name(sc.kind));
    w.kv("label", sc.label);
    w.key("seed");
    if (sc.seed.has_value()) w.value(*sc.seed); else w.null();

    w.key("state");
    w.object_open();
    w.kv("model", model_name(sc.state.model));
    switch (sc.state.model) {
        case StateModel::two_qubit_lambda:
            w.kv("lambda", sc.state.lambda);
            break;
        case StateModel::squeezed:
            w.kv("r", sc.state.r);
            w.kv("truncation", sc.state.truncation);
            break;
        case StateModel::explicit_amplitudes:
            w.kv("d1", sc.state.d1);
            w.kv("d2", sc.state.d2);
            w.key("amplitudes");
            w.array_open();
            for (const Complex& a : sc.state.amplitudes) {
                w.array_open();
                w.value(a.real());
                w.value(a.imag());
                w.array_close();
            }
            w.array_close();
            break;
    }
    w.kv("depolarize", sc.state.depolarize);
    w.object_close();

    w.key("sequence");
    w.object_open();
    w.kv("generator", generator_name(sc.sequence.generator));
    switch (sc.sequence.generator) {
        case SequenceGenerator::qubit_triangle:
            w.kv("phi", sc.sequence.phi);
            break;
        case SequenceGenerator::coherent_polygon:
            w.key("z");
            w.array_open();
            for (const Complex& z : sc.sequence.z) {
                w.array_open();
                w.value(z.real());
                w.value(z.imag());
                w.array_close();
            }
            w.array_close();
            break;
        case SequenceGenerator::explicit_vectors:
            w.key("vectors");
            w.array_open();
            for (const auto& v : sc.sequence.vectors) {
                w.array_open();
                for (const Complex& a : v) {
                    w.array_open();
                    w.value(a.real());
                    w.value(a.imag());
                    w.array_close();
                }
                w.array_close();
            }
            w.array_close();
            break;
    }
    w.object_close();

    w.key("options");
    w.object_open();
    w.kv("eps-orth", sc.options.eps_orth);
    w.kv("mode", sc.options.mode == ProtocolMode::exact ? "exact" : "sampled");
    w.kv("shots", sc.options.shots);
    w.kv("fringe-points", sc.options.fringe_points);
    w.kv("ancilla-a", sc.options.ancilla_a);
    w.kv("steps-per-segment", sc.options.steps_per_segment);
    w.kv("refine-samples", sc.options.refine_samples);
    w.kv("rank-tol", sc.options.rank_tol);
    w.object_close();

    w.object_close();
}

}  // namespace

RunReport execute(const Scenario& sc) {
    RunReport report;
    report.version = kVersion;
    report.scenario = sc;
    const PhaseOptions phase_opts{sc.options.eps_orth};

    switch (sc.kind) {
        case ScenarioKind::discrete_phase: {
            const BipartiteState psi = build_state(sc.state);
            const StateSequence seq = build_sequence(sc);
            const PhaseResult rel = relative_sequence_phase(psi, seq, phase_opts);
            const PhaseResult sp = sequence_phase(seq, phase_opts);
            const PhaseResult rho =
                rho_sequence_phase(reduced_density(psi, 1), seq, phase_opts);
            report.phases.push_back({"relative_phase", rel.phase});
            report.phases.push_back({"sequence_phase", sp.phase});
            report.phases.push_back({"rho_phase", rho.phase});
            report.values.emplace_back("schmidt_rank",
                                       schmidt_rank(psi, 1e-10));
            report.diagnostics.emplace_back("relative_min_adjacent_overlap",
                                            rel.min_adjacent_overlap);
            report.diagnostics.emplace_back("sequence_min_adjacent_overlap",
                                            sp.min_adjacent_overlap);
            if (sc.state.model == StateModel::squeezed) {
                report.diagnostics.emplace_back(
                    "truncation_tail",
                    squeezed_tail_mass(sc.state.r, sc.state.truncation));
            }
            break;
        }
        case ScenarioKind::continuous_phase: {
            const BipartiteState psi = build_state(sc.state);
            const StateSequence seq = build_sequence(sc);
            const RayPath loop =
                (sc.sequence.generator == SequenceGenerator::qubit_triangle)
                    ? two_qubit_relative_geodesic_loop(psi, seq, phase_opts)
                    : coherent_polygon_loop(sc.sequence.z, sc.state.truncation);
            const DensityOperator rho1 = reduced_density(psi, 1);
            const double integral =
                connection_integral(loop, rho1, sc.options.steps_per_segment);
            const double refined =
                refinement_phase(loop, psi, sc.options.refine_samples, phase_opts);
            const PhaseResult discrete =
                relative_sequence_phase(psi, seq, phase_opts);
            report.phases.push_back({"connection_phase", wrap_to_pi(integral)});
            report.phases.push_back({"refinement_phase", refined});
            report.phases.push_back({"discrete_phase", discrete.phase});
            report.values.emplace_back("connection_integral_rad", integral);
            report.diagnostics.emplace_back(
                "integral_vs_discrete",
                wrap_distance(integral, discrete.phase));
            if (sc.state.model == StateModel::squeezed) {
                report.diagnostics.emplace_back(
                    "truncation_tail",
                    squeezed_tail_mass(sc.state.r, sc.state.truncation));
            }
            break;
        }
        case ScenarioKind::protocol: {
            const BipartiteState psi = build_state(sc.state);
            const StateSequence seq = build_sequence(sc).normalized();
            ProtocolConfig cfg{psi,
                               seq,
                               sc.options.ancilla_a,
                               sc.options.mode,
                               sc.options.shots,
                               sc.seed.value_or(0),
                               sc.options.fringe_points,
                               sc.options.eps_orth};
            const ProtocolResult res = run_protocol(cfg);
            const PhaseResult discrete =
                relative_sequence_phase(psi, seq, phase_opts);
            report.phases.push_back({"gamma", wrap_to_pi(res.gamma)});
            report.phases.push_back({"discrete_reference", discrete.phase});
            report.values.emplace_back("gamma_accumulated_rad", res.gamma);
            double min_prob = 1.0, min_vis = 1.0, sigma2 = 0.0;
            for (const StepRecord& step : res.steps) {
                min_prob = std::min(min_prob, step.success_probability);
                min_vis = std::min(min_vis, step.visibility);
                sigma2 += step.f_sigma * step.f_sigma;
            }
            report.diagnostics.emplace_back("protocol_vs_discrete",
                                            wrap_distance(res.gamma, discrete.phase));
            report.diagnostics.emplace_back("success_probability_min", min_prob);
            report.diagnostics.emplace_back("visibility_min", min_vis);
            report.diagnostics.emplace_back("gamma_sigma", std::sqrt(sigma2));
            report.steps = res.steps;
            break;
        }
        case ScenarioKind::uhlmann: {
            const BipartiteState psi = build_state(sc.state);
            const StateSequence seq = build_sequence(sc);
            const int d = psi.d1() * psi.d2();
            const double eps = sc.state.depolarize;
            Matrix mixed = (1.0 - eps) *
                               (psi.amplitudes() * psi.amplitudes().adjoint()) +
                           (eps / d) * Matrix::Identity(d, d);
            const MixedBipartiteState rho(DensityOperator(std::move(mixed)),
                                          psi.d1(), psi.d2());
            std::vector<DensityOperator> rhos;
            rhos.reserve(seq.vectors().size());
            for (const Vector& phi : seq.vectors()) {
                rhos.push_back(relative_density(rho, phi));
            }
            const HolonomyResult holo =
                uhlmann_holonomy(rhos, sc.options.rank_tol);
            const int dim = static_cast<int>(holo.unitary.rows());
            const double identity_dev =
                (holo.unitary - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
            const double unitarity_defect =
                (holo.unitary * holo.unitary.adjoint() -
                 Matrix::Identity(dim, dim))
                    .cwiseAbs()
                    .maxCoeff();
            report.values.emplace_back("deviation_from_identity", identity_dev);
            report.values.emplace_back("unitarity_defect", unitarity_defect);
            report.values.emplace_back("det_modulus",
                                       std::abs(holo.unitary.determinant()));
            report.diagnostics.emplace_back("min_eigenvalue_seen",
                                            holo.min_eigenvalue_seen);
            report.holonomy = holo.unitary;
            break;
        }
        case ScenarioKind::model_oracle: {
            if (sc.state.model == StateModel::two_qubit_lambda) {
                const double oracle =
                    gamma_two_qubit_closed_form(sc.state.lambda, sc.sequence.phi);
                report.phases.push_back({"relative_phase_oracle", oracle});
                report.phases.push_back(
                    {"sequence_phase_oracle", wrap_to_pi(-sc.sequence.phi / 2.0)});
            } else {
                const PhasePolygon poly(sc.sequence.z);
                const double area = polygon_pdq_area(poly);
                const double gamma = gamma_squeezed_closed_form(sc.state.r, poly);
                report.values.emplace_back("pdq_area", area);
                report.values.emplace_back("area_law_gamma_rad", gamma);
                report.phases.push_back({"area_law_gamma", wrap_to_pi(gamma)});
            }
            break;
        }
    }
    return report;
}

std::string emit(const RunReport& report, OutputFormat format) {
    if (format == OutputFormat::csv_fringe) {
        std::string out = "j,f,intensity\n";
        char buf[96];
        for (const StepRecord& step : report.steps) {
            for (const auto& [f, intensity] : step.fringe) {
                std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", step.j, f,
                              intensity);
                out += buf;
            }
        }
        return out;
    }

    JsonWriter w;
    w.object_open();
    w.kv("version", report.version);
    w.kv("kind", kind_name(report.scenario.kind));
    w.kv("label", report.scenario.label);
    w.key("seed");
    if (report.scenario.seed.has_value()) w.value(*report.scenario.seed);
    else w.null();
    w.kv("phase_branch", "(-pi, pi]");

    w.key("scenario");
    emit_scenario_echo(w, report.scenario);

    w.key("results");
    w.object_open();
    for (const ReportedPhase& phase : report.phases) {
        w.key(phase.name);
        w.object_open();
        w.kv("radians", phase.radians);
        w.kv("degrees", phase.radians * 180.0 / kPi);
        w.kv("branch", "(-pi, pi]");
        w.object_close();
    }
    for (const auto& [name, value] : report.values) {
        w.kv(name, value);
    }
    w.object_close();

    w.key("diagnostics");
    w.object_open();
    for (const auto& [name, value] : report.diagnostics) {
        w.kv(name, value);
    }
    w.object_close();

    w.key("steps");
    w.array_open();
    for (const StepRecord& step : report.steps) {
        w.object_open();
        w.kv("j", step.j);
        w.kv("f_j", step.f_j);
        w.kv("f_next", step.f_next);
        w.kv("success_probability", step.success_probability);
        w.kv("visibility", step.visibility);
        w.kv("f_sigma", step.f_sigma);
        w.key("fringe");
        w.array_open();
        for (const auto& [f, intensity] : step.fringe) {
            w.array_open();
            w.value(f);
            w.value(intensity);
            w.array_close();
        }
        w.array_close();
        w.object_close();
    }
    w.array_close();

    w.key("holonomy");
    if (report.holonomy.has_value()) {
        const Matrix& u = *report.holonomy;
        w.object_open();
        w.key("real");
        w.array_open();
        for (long i = 0; i < u.rows(); ++i) {
            w.array_open();
            for (long j = 0; j < u.cols(); ++j) w.value(u(i, j).real());
            w.array_close();
        }
        w.array_close();
        w.key("imag");
        w.array_open();
        for (long i = 0; i < u.rows(); ++i) {
            w.array_open();
            for (long j = 0; j < u.cols(); ++j) w.value(u(i, j).imag());
            w.array_close();
        }
        w.array_close();
        w.object_close();
    } else {
        w.null();
    }

    w.object_close();
    std::string out = w.take();
    out += '\n';
    return out;
}

}  // namespace relphase
