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

#include "relphase/scenario.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "relphase/models.hpp"

namespace relphase {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

// std::from_chars with whitespace trimmed and an optional leading '+'
// (which from_chars itself rejects).
template <typename T>
bool parse_number_strict(const std::string& s, T& out) {
    std::string t = trim(s);
    if (!t.empty() && t.front() == '+') t.erase(t.begin());
    if (t.empty()) return false;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

bool parse_double_strict(const std::string& s, double& out) {
    return parse_number_strict(s, out);
}

bool parse_long_strict(const std::string& s, long& out) {
    return parse_number_strict(s, out);
}

bool parse_u64_strict(const std::string& s, std::uint64_t& out) {
    return parse_number_strict(s, out);
}

// Accepts "1", "-2.5e-3", "i", "-i", "2i", "1+2i", "1e-3-2e-4i".
bool parse_complex_literal(const std::string& raw, Complex& out) {
    const std::string s = trim(raw);
    if (s.empty()) return false;
    const bool has_i = s.back() == 'i';
    // Split point: the last sign that is neither leading nor an exponent sign.
    int split = -1;
    for (int k = static_cast<int>(s.size()) - 1; k > 0; --k) {
        const char c = s[k];
        if ((c == '+' || c == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto parse_signed = [](std::string part, double& value) {
        part = trim(part);
        if (part.empty() || part == "+") {
            value = 1.0;
            return true;
        }
        if (part == "-") {
            value = -1.0;
            return true;
        }
        return parse_double_strict(part, value);
    };
    if (!has_i) {
        if (split >= 0) return false;  // two real parts, no imaginary unit
        double re = 0.0;
        if (!parse_double_strict(s, re)) return false;
        out = Complex(re, 0.0);
        return true;
    }
    const std::string body = s.substr(0, s.size() - 1);
    if (split < 0) {
        double im = 0.0;
        if (!parse_signed(body, im)) return false;
        out = Complex(0.0, im);
        return true;
    }
    double re = 0.0, im = 0.0;
    if (!parse_double_strict(s.substr(0, split), re)) return false;
    if (!parse_signed(body.substr(split), im)) return false;
    out = Complex(re, im);
    return true;
}

bool parse_complex_list(const std::string& s, std::vector<Complex>& out) {
    out.clear();
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        Complex c;
        if (!parse_complex_literal(item, c)) return false;
        out.push_back(c);
    }
    return !out.empty();
}

// "(a, b); (c, d); ..." with every vector the same length.
bool parse_vector_list(const std::string& s,
                       std::vector<std::vector<Complex>>& out) {
    out.clear();
    std::stringstream ss(s);
    std::string group;
    while (std::getline(ss, group, ';')) {
        const std::string g = trim(group);
        if (g.size() < 2 || g.front() != '(' || g.back() != ')') return false;
        std::vector<Complex> v;
        if (!parse_complex_list(g.substr(1, g.size() - 2), v)) return false;
        out.push_back(std::move(v));
    }
    return !out.empty();
}

struct RawEntry {
    int line = 0;
    int column = 0;
    std::string value;
    bool consumed = false;
};

class Collector {
  public:
    void add(int line, int column, std::string field, std::string message) {
        issues_.push_back(
            {line, column, std::move(field), std::move(message)});
    }

    void add(const RawEntry& entry, std::string field, std::string message) {
        issues_.push_back(
            {entry.line, entry.column, std::move(field), std::move(message)});
    }

    bool empty() const { return issues_.empty(); }
    std::vector<ScenarioIssue> take() { return std::move(issues_); }

  private:
    std::vector<ScenarioIssue> issues_;
};

class EntryMap {
  public:
    void insert(const std::string& section, const std::string& key, RawEntry entry,
                Collector& issues) {
        const std::string path = section.empty() ? key : section + "." + key;
        auto [it, fresh] = entries_.try_emplace(path, std::move(entry));
        if (!fresh) {
            issues.add(entry.line, entry.column, path,
                       "duplicate key (first given on line " +
                           std::to_string(it->second.line) + ")");
        }
    }

    RawEntry* take(const std::string& path) {
        auto it = entries_.find(path);
        if (it == entries_.end()) return nullptr;
        it->second.consumed = true;
        return &it->second;
    }

    void report_unconsumed(Collector& issues) const {
        for (const auto& [path, entry] : entries_) {
            if (!entry.consumed) {
                issues.add(entry, path, "unknown key");
            }
        }
    }

  private:
    std::map<std::string, RawEntry> entries_;
};

double take_double(EntryMap& entries, Collector& issues, const std::string& path,
                   double fallback, bool* provided = nullptr) {
    RawEntry* e = entries.take(path);
    if (provided) *provided = (e != nullptr);
    if (!e) return fallback;
    double v = fallback;
    if (!parse_double_strict(e->value, v)) {
        issues.add(*e, path, "expected a real number, got '" + e->value + "'");
        return fallback;
    }
    return v;
}

long take_long(EntryMap& entries, Collector& issues, const std::string& path,
               long fallback, bool* provided = nullptr) {
    RawEntry* e = entries.take(path);
    if (provided) *provided = (e != nullptr);
    if (!e) return fallback;
    long v = fallback;
    if (!parse_long_strict(e->value, v)) {
        issues.add(*e, path, "expected an integer, got '" + e->value + "'");
        return fallback;
    }
    return v;
}

}  // namespace

std::string ScenarioError::join(const std::vector<ScenarioIssue>& issues) {
    std::string msg = "scenario has " + std::to_string(issues.size()) +
                      " problem(s):";
    for (const auto& issue : issues) {
        msg += "\n  ";
        if (issue.line > 0) {
            msg += "line " + std::to_string(issue.line);
            if (issue.column > 0) msg += ":" + std::to_string(issue.column);
            msg += ": ";
        }
        if (!issue.field.empty()) msg += issue.field + ": ";
        msg += issue.message;
    }
    return msg;
}

ScenarioError::ScenarioError(std::vector<ScenarioIssue> issues)
    : ValidationError(join(issues)), issues_(std::move(issues)) {}

Scenario parse_scenario(const std::string& text,
                        std::optional<std::uint64_t> seed_override) {
    Collector issues;
    EntryMap entries;

    // Syntax pass: split into sections and key/value entries.
    std::stringstream stream(text);
    std::string raw_line;
    std::string section;
    int line_no = 0;
    while (std::getline(stream, raw_line)) {
        ++line_no;
        const std::string line = trim(raw_line);
        if (line.empty() || line.front() == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                issues.add(line_no, 1, "", "malformed section header '" + line + "'");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section != "state" && section != "sequence" && section != "options") {
                issues.add(line_no, 1, section,
                           "unknown section (expected state, sequence or options)");
            }
            continue;
        }
        const auto colon = line.find(':');
        if (colon == std::string::npos) {
            issues.add(line_no, 1, "",
                       "expected 'key: value' or a [section] header, got '" +
                           line + "'");
            continue;
        }
        const std::string key = trim(line.substr(0, colon));
        const std::string value = trim(line.substr(colon + 1));
        if (key.empty()) {
            issues.add(line_no, 1, "", "empty key");
            continue;
        }
        const int column =
            static_cast<int>(raw_line.find(line[0])) + static_cast<int>(colon) + 2;
        entries.insert(section, key, RawEntry{line_no, column, value}, issues);
    }

    Scenario sc;

    // Top level.
    if (RawEntry* e = entries.take("kind")) {
        if (e->value == "discrete-phase") sc.kind = ScenarioKind::discrete_phase;
        else if (e->value == "continuous-phase") sc.kind = ScenarioKind::continuous_phase;
        else if (e->value == "protocol") sc.kind = ScenarioKind::protocol;
        else if (e->value == "uhlmann") sc.kind = ScenarioKind::uhlmann;
        else if (e->value == "model-oracle") sc.kind = ScenarioKind::model_oracle;
        else {
            issues.add(*e, "kind",
                       "unknown kind '" + e->value +
                           "' (expected discrete-phase, continuous-phase, "
                           "protocol, uhlmann or model-oracle)");
        }
    } else {
        issues.add(0, 0, "kind", "missing required key");
    }
    if (RawEntry* e = entries.take("label")) sc.label = e->value;
    if (RawEntry* e = entries.take("seed")) {
        std::uint64_t seed = 0;
        if (parse_u64_strict(e->value, seed)) {
            sc.seed = seed;
        } else {
            issues.add(*e, "seed",
                       "expected an unsigned integer, got '" + e->value + "'");
        }
    }
    if (seed_override.has_value()) sc.seed = seed_override;

    // [state]
    bool have_state_model = false;
    if (RawEntry* e = entries.take("state.model")) {
        have_state_model = true;
        if (e->value == "two-qubit-lambda") sc.state.model = StateModel::two_qubit_lambda;
        else if (e->value == "squeezed") sc.state.model = StateModel::squeezed;
        else if (e->value == "explicit") sc.state.model = StateModel::explicit_amplitudes;
        else {
            issues.add(*e, "state.model",
                       "unknown model '" + e->value +
                           "' (expected two-qubit-lambda, squeezed or explicit)");
            have_state_model = false;
        }
    } else {
        issues.add(0, 0, "state.model", "missing required key");
    }

    bool have_lambda = false, have_r = false, have_d1 = false, have_d2 = false;
    sc.state.lambda = take_double(entries, issues, "state.lambda", 0.0, &have_lambda);
    sc.state.r = take_double(entries, issues, "state.r", 0.0, &have_r);
    sc.state.truncation = static_cast<int>(
        take_long(entries, issues, "state.truncation", kDefaultTruncation));
    sc.state.d1 = static_cast<int>(take_long(entries, issues, "state.d1", 0, &have_d1));
    sc.state.d2 = static_cast<int>(take_long(entries, issues, "state.d2", 0, &have_d2));
    sc.state.depolarize = take_double(entries, issues, "state.depolarize", 0.0);
    bool have_amplitudes = false;
    if (RawEntry* e = entries.take("state.amplitudes")) {
        have_amplitudes = true;
        if (!parse_complex_list(e->value, sc.state.amplitudes)) {
            issues.add(*e, "state.amplitudes", "expected a list of complex numbers");
        }
    }

    // [sequence]
    bool have_generator = false;
    if (RawEntry* e = entries.take("sequence.generator")) {
        have_generator = true;
        if (e->value == "qubit-triangle") sc.sequence.generator = SequenceGenerator::qubit_triangle;
        else if (e->value == "coherent-polygon") sc.sequence.generator = SequenceGenerator::coherent_polygon;
        else if (e->value == "explicit") sc.sequence.generator = SequenceGenerator::explicit_vectors;
        else {
            issues.add(*e, "sequence.generator",
                       "unknown generator '" + e->value +
                           "' (expected qubit-triangle, coherent-polygon or explicit)");
            have_generator = false;
        }
    } else {
        issues.add(0, 0, "sequence.generator", "missing required key");
    }

    bool have_phi = false;
    sc.sequence.phi = take_double(entries, issues, "sequence.phi", 0.0, &have_phi);
    bool have_z = false;
    if (RawEntry* e = entries.take("sequence.z")) {
        have_z = true;
        if (!parse_complex_list(e->value, sc.sequence.z)) {
            issues.add(*e, "sequence.z", "expected a list of complex numbers");
        }
    }
    bool have_vectors = false;
    if (RawEntry* e = entries.take("sequence.vectors")) {
        have_vectors = true;
        if (!parse_vector_list(e->value, sc.sequence.vectors)) {
            issues.add(*e, "sequence.vectors",
                       "expected '(a, b, ...); (c, d, ...); ...'");
        }
    }

    // [options]
    sc.options.eps_orth =
        take_double(entries, issues, "options.eps-orth", sc.options.eps_orth);
    if (RawEntry* e = entries.take("options.mode")) {
        if (e->value == "exact") sc.options.mode = ProtocolMode::exact;
        else if (e->value == "sampled") sc.options.mode = ProtocolMode::sampled;
        else issues.add(*e, "options.mode", "expected exact or sampled");
    }
    sc.options.shots = take_long(entries, issues, "options.shots", sc.options.shots);
    sc.options.fringe_points = static_cast<int>(take_long(
        entries, issues, "options.fringe-points", sc.options.fringe_points));
    sc.options.ancilla_a =
        take_double(entries, issues, "options.ancilla-a", sc.options.ancilla_a);
    sc.options.steps_per_segment = static_cast<int>(take_long(
        entries, issues, "options.steps-per-segment", sc.options.steps_per_segment));
    sc.options.refine_samples = static_cast<int>(take_long(
        entries, issues, "options.refine-samples", sc.options.refine_samples));
    sc.options.rank_tol =
        take_double(entries, issues, "options.rank-tol", sc.options.rank_tol);

    entries.report_unconsumed(issues);

    // Semantic validation (skipping checks whose inputs already failed).
    if (have_state_model) {
        switch (sc.state.model) {
            case StateModel::two_qubit_lambda:
                if (!have_lambda) {
                    issues.add(0, 0, "state.lambda", "required for model two-qubit-lambda");
                } else if (!(sc.state.lambda >= 0.0 && sc.state.lambda <= kPi)) {
                    issues.add(0, 0, "state.lambda", "must lie in [0, pi]");
                }
                break;
            case StateModel::squeezed:
                if (!have_r) {
                    issues.add(0, 0, "state.r", "required for model squeezed");
                } else if (!(sc.state.r >= 0.0)) {
                    issues.add(0, 0, "state.r", "must be >= 0");
                }
                if (sc.state.truncation < 1) {
                    issues.add(0, 0, "state.truncation", "must be >= 1");
                }
                break;
            case StateModel::explicit_amplitudes: {
                if (!have_d1 || sc.state.d1 < 1) {
                    issues.add(0, 0, "state.d1", "must be an integer >= 1");
                }
                if (!have_d2 || sc.state.d2 < 1) {
                    issues.add(0, 0, "state.d2", "must be an integer >= 1");
                }
                if (!have_amplitudes) {
                    issues.add(0, 0, "state.amplitudes", "required for model explicit");
                } else if (have_d1 && have_d2 && sc.state.d1 >= 1 && sc.state.d2 >= 1 &&
                           static_cast<long>(sc.state.d1) * sc.state.d2 !=
                               static_cast<long>(sc.state.amplitudes.size())) {
                    issues.add(0, 0, "state.amplitudes",
                               "expected d1*d2 = " +
                                   std::to_string(sc.state.d1 * sc.state.d2) +
                                   " amplitudes, got " +
                                   std::to_string(sc.state.amplitudes.size()));
                } else {
                    double norm2 = 0.0;
                    for (const Complex& a : sc.state.amplitudes) norm2 += std::norm(a);
                    if (!(norm2 > 0.0)) {
                        issues.add(0, 0, "state.amplitudes", "state vector is zero");
                    }
                }
                break;
            }
        }
    }
    if (!(sc.state.depolarize >= 0.0 && sc.state.depolarize < 1.0)) {
        issues.add(0, 0, "state.depolarize", "must lie in [0, 1)");
    }

    if (have_generator) {
        switch (sc.sequence.generator) {
            case SequenceGenerator::qubit_triangle:
                if (!have_phi) {
                    issues.add(0, 0, "sequence.phi", "required for generator qubit-triangle");
                } else if (!(sc.sequence.phi >= 0.0 && sc.sequence.phi < kPi)) {
                    issues.add(0, 0, "sequence.phi", "must lie in [0, pi)");
                }
                break;
            case SequenceGenerator::coherent_polygon:
                if (!have_z) {
                    issues.add(0, 0, "sequence.z", "required for generator coherent-polygon");
                } else if (sc.sequence.z.size() < 3) {
                    issues.add(0, 0, "sequence.z", "need at least 3 vertices");
                } else {
                    for (std::size_t j = 0; j < sc.sequence.z.size(); ++j) {
                        const std::size_t k = (j + 1) % sc.sequence.z.size();
                        if (sc.sequence.z[j] == sc.sequence.z[k]) {
                            issues.add(0, 0, "sequence.z",
                                       "vertices " + std::to_string(j) + " and " +
                                           std::to_string(k) + " coincide");
                        }
                    }
                }
                break;
            case SequenceGenerator::explicit_vectors:
                if (!have_vectors) {
                    issues.add(0, 0, "sequence.vectors", "required for generator explicit");
                } else if (sc.sequence.vectors.size() < 3) {
                    issues.add(0, 0, "sequence.vectors", "need at least 3 vectors");
                } else {
                    const std::size_t dim = sc.sequence.vectors.front().size();
                    for (std::size_t j = 0; j < sc.sequence.vectors.size(); ++j) {
                        const auto& v = sc.sequence.vectors[j];
                        if (v.size() != dim) {
                            issues.add(0, 0, "sequence.vectors",
                                       "vector " + std::to_string(j) +
                                           " has inconsistent dimension");
                        }
                        double norm2 = 0.0;
                        for (const Complex& c : v) norm2 += std::norm(c);
                        if (!(norm2 > 0.0)) {
                            issues.add(0, 0, "sequence.vectors",
                                       "vector " + std::to_string(j) + " is zero");
                        }
                    }
                }
                break;
        }
    }

    if (!(sc.options.eps_orth > 0.0)) {
        issues.add(0, 0, "options.eps-orth", "must be > 0");
    }
    if (sc.options.shots < 1) {
        issues.add(0, 0, "options.shots", "must be >= 1");
    }
    if (sc.options.fringe_points < 8) {
        issues.add(0, 0, "options.fringe-points", "must be >= 8");
    }
    if (!(sc.options.ancilla_a >= 0.0 && sc.options.ancilla_a <= 1.0)) {
        issues.add(0, 0, "options.ancilla-a", "must lie in [0, 1]");
    }
    if (sc.options.steps_per_segment < 1) {
        issues.add(0, 0, "options.steps-per-segment", "must be >= 1");
    }
    if (sc.options.refine_samples < 3) {
        issues.add(0, 0, "options.refine-samples", "must be >= 3");
    }
    if (!(sc.options.rank_tol > 0.0)) {
        issues.add(0, 0, "options.rank-tol", "must be > 0");
    }

    // Cross-field rules.
    if (have_state_model && have_generator) {
        const bool qubit_state =
            sc.state.model == StateModel::two_qubit_lambda ||
            (sc.state.model == StateModel::explicit_amplitudes && sc.state.d1 == 2);
        if (sc.sequence.generator == SequenceGenerator::qubit_triangle && !qubit_state) {
            issues.add(0, 0, "sequence.generator",
                       "qubit-triangle requires a state with d1 = 2");
        }
        if (sc.sequence.generator == SequenceGenerator::coherent_polygon &&
            sc.state.model != StateModel::squeezed) {
            issues.add(0, 0, "sequence.generator",
                       "coherent-polygon requires the squeezed state model");
        }
        if (sc.sequence.generator == SequenceGenerator::explicit_vectors &&
            !sc.sequence.vectors.empty()) {
            int d1 = 0;
            if (sc.state.model == StateModel::two_qubit_lambda) d1 = 2;
            else if (sc.state.model == StateModel::squeezed) d1 = sc.state.truncation + 1;
            else d1 = sc.state.d1;
            if (d1 >= 1 &&
                static_cast<long>(sc.sequence.vectors.front().size()) != d1) {
                issues.add(0, 0, "sequence.vectors",
                           "vector dimension " +
                               std::to_string(sc.sequence.vectors.front().size()) +
                               " does not match the state's d1 = " + std::to_string(d1));
            }
        }
        if (sc.kind == ScenarioKind::continuous_phase) {
            const bool qubit_family =
                sc.sequence.generator == SequenceGenerator::qubit_triangle &&
                sc.state.model == StateModel::two_qubit_lambda;
            const bool coherent_family =
                sc.sequence.generator == SequenceGenerator::coherent_polygon &&
                sc.state.model == StateModel::squeezed;
            if (!qubit_family && !coherent_family) {
                issues.add(0, 0, "kind",
                           "continuous-phase supports two-qubit-lambda with "
                           "qubit-triangle, or squeezed with coherent-polygon");
            }
        }
        if (sc.kind == ScenarioKind::model_oracle) {
            const bool qubit_family =
                sc.sequence.generator == SequenceGenerator::qubit_triangle &&
                sc.state.model == StateModel::two_qubit_lambda;
            const bool coherent_family =
                sc.sequence.generator == SequenceGenerator::coherent_polygon &&
                sc.state.model == StateModel::squeezed;
            if (!qubit_family && !coherent_family) {
                issues.add(0, 0, "kind",
                           "model-oracle supports two-qubit-lambda with "
                           "qubit-triangle, or squeezed with coherent-polygon");
            }
        }
    }
    if (sc.kind == ScenarioKind::uhlmann && !(sc.state.depolarize > 0.0)) {
        issues.add(0, 0, "state.depolarize",
                   "uhlmann scenarios need depolarize > 0 so the relative "
                   "densities are faithful");
    }
    if (sc.kind == ScenarioKind::protocol &&
        sc.options.mode == ProtocolMode::sampled && !sc.seed.has_value()) {
        issues.add(0, 0, "seed", "required for sampled protocol runs");
    }

    if (!issues.empty()) {
        throw ScenarioError(issues.take());
    }
    return sc;
}

}  // namespace relphase
