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

// Declarative scenario front end: a line-oriented key/value format with
// nested sections describing a state, a sequence and numeric options, plus
// the dispatcher and machine-readable emitters behind the CLI verbs.
//
// Format (full grammar):
//
//   scenario   := line*
//   line       := blank | comment | section | keyvalue
//   comment    := '#' <anything>
//   section    := '[' name ']'            # state | sequence | options
//   keyvalue   := key ':' value           # keys before any section are
//                                         # top-level: kind, label, seed
//
//   complex    := as in "1", "-2.5e-3", "2i", "1+2i", "1e-3-2e-4i", "i"
//   list       := complex (',' complex)*
//   vectors    := '(' list ')' (';' '(' list ')')*
//
// Top level:    kind: discrete-phase | continuous-phase | protocol |
//                     uhlmann | model-oracle
//               label: free text (optional)
//               seed: u64 (required for sampled protocol runs)
// [state]       model: two-qubit-lambda | squeezed | explicit
//               lambda: real in [0, pi]          (two-qubit-lambda)
//               r: real >= 0                     (squeezed)
//               truncation: int >= 1             (squeezed)
//               d1, d2: int >= 1                 (explicit)
//               amplitudes: list of d1*d2        (explicit)
//               depolarize: real in [0, 1)       (uhlmann runs; > 0 required)
// [sequence]    generator: qubit-triangle | coherent-polygon | explicit
//               phi: real in [0, pi)             (qubit-triangle)
//               z: list of >= 3 labels           (coherent-polygon)
//               vectors: >= 3 parenthesized vectors (explicit)
// [options]     eps-orth, mode (exact|sampled), shots, fringe-points,
//               ancilla-a, steps-per-segment, refine-samples, rank-tol
//
// Validation is total: parsing reports every syntax and semantic issue it
// can find, not just the first.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relphase/protocol.hpp"
#include "relphase/types.hpp"

namespace relphase {

enum class ScenarioKind {
    discrete_phase,
    continuous_phase,
    protocol,
    uhlmann,
    model_oracle,
};

enum class StateModel { two_qubit_lambda, squeezed, explicit_amplitudes };

enum class SequenceGenerator { qubit_triangle, coherent_polygon, explicit_vectors };

struct StateSpec {
    StateModel model = StateModel::two_qubit_lambda;
    double lambda = 0.0;
    double r = 0.0;
    int truncation = 60;
    int d1 = 0;
    int d2 = 0;
    std::vector<Complex> amplitudes;
    double depolarize = 0.0;
};

struct SequenceSpec {
    SequenceGenerator generator = SequenceGenerator::qubit_triangle;
    double phi = 0.0;
    std::vector<Complex> z;
    std::vector<std::vector<Complex>> vectors;
};

struct NumericOptions {
    double eps_orth = kDefaultOrthTol;
    ProtocolMode mode = ProtocolMode::exact;
    long shots = 100000;
    int fringe_points = 16;
    double ancilla_a = 0.5;
    int steps_per_segment = 10000;
    int refine_samples = 512;
    double rank_tol = 1e-10;
};

struct Scenario {
    ScenarioKind kind = ScenarioKind::discrete_phase;
    std::string label;
    std::optional<std::uint64_t> seed;
    StateSpec state;
    SequenceSpec sequence;
    NumericOptions options;
};

struct ScenarioIssue {
    int line = 0;    // 1-based; 0 when the issue is not tied to a line
    int column = 0;  // 1-based; 0 when not applicable
    std::string field;
    std::string message;
};

/// Carries the full list of validation issues found in a scenario.
class ScenarioError : public ValidationError {
  public:
    explicit ScenarioError(std::vector<ScenarioIssue> issues);

    const std::vector<ScenarioIssue>& issues() const { return issues_; }

  private:
    static std::string join(const std::vector<ScenarioIssue>& issues);
    std::vector<ScenarioIssue> issues_;
};

/// Parses and validates scenario text; throws ScenarioError listing every
/// problem found. A seed passed on the command line (seed_override) takes
/// the place of the scenario's own seed before validation.
Scenario parse_scenario(const std::string& text,
                        std::optional<std::uint64_t> seed_override = {});

/// A phase value with its fixed branch convention.
struct ReportedPhase {
    std::string name;
    double radians = 0.0;  // in (-pi, pi]
};

struct RunReport {
    std::string version;
    Scenario scenario;
    std::vector<ReportedPhase> phases;
    std::vector<std::pair<std::string, double>> values;       // other results
    std::vector<std::pair<std::string, double>> diagnostics;  // overlap minima etc.
    std::vector<StepRecord> steps;       // protocol runs
    std::optional<Matrix> holonomy;      // uhlmann runs
};

/// Runs the scenario. Deterministic for a fixed seed; module errors propagate
/// with their validation/numeric kind intact.
RunReport execute(const Scenario& scenario);

enum class OutputFormat { json, csv_fringe };

/// Serializes a report. JSON uses a stable key order and prints floats with
/// 17 significant digits, so identical runs emit identical bytes and every
/// float round-trips exactly; csv-fringe holds one (j, f, intensity) row per
/// recorded fringe point (header only when there are no steps).
std::string emit(const RunReport& report, OutputFormat format);

}  // namespace relphase
