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

#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace relphase {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Default nonorthogonality threshold for adjacent overlaps. An overlap at or
// below this modulus makes the phase undefined, not merely ill-conditioned.
inline constexpr double kDefaultOrthTol = 1e-9;

/// Wraps an angle to the branch (-pi, pi].
inline double wrap_to_pi(double x) {
    double w = std::remainder(x, kTwoPi);
    if (w <= -kPi) w += kTwoPi;
    return w;
}

/// Distance between two angles modulo 2*pi, in [0, pi].
inline double wrap_distance(double a, double b) {
    return std::abs(wrap_to_pi(a - b));
}

// Error hierarchy. Every error is either a rejected input (validation) or a
// quantity that is genuinely undefined / uncomputable for the given data
// (numeric). The CLI maps the two kinds to exit codes 2 and 3.
class Error : public std::runtime_error {
  public:
    enum class Kind { validation, numeric };

    Error(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

class ValidationError : public Error {
  public:
    explicit ValidationError(const std::string& message)
        : Error(Kind::validation, message) {}
};

class NumericError : public Error {
  public:
    explicit NumericError(const std::string& message)
        : Error(Kind::numeric, message) {}
};

/// An adjacent pair in a phase chain is (numerically) orthogonal.
class UndefinedPhase : public NumericError {
  public:
    UndefinedPhase(const std::string& message, double overlap_modulus,
                   int pair_index = -1)
        : NumericError(message),
          overlap_modulus_(overlap_modulus),
          pair_index_(pair_index) {}

    /// |overlap| that fell at or below the threshold.
    double overlap_modulus() const { return overlap_modulus_; }
    /// 0-based index j of the offending pair (j, j+1 mod N); -1 if n/a.
    int pair_index() const { return pair_index_; }

  private:
    double overlap_modulus_;
    int pair_index_;
};

/// Bloch-antipodal endpoints admit no unique great-circle interpolant.
class NoUniqueGeodesic : public NumericError {
  public:
    using NumericError::NumericError;
};

/// Fock-space truncation too small for the requested amplitude tail.
class TruncationError : public NumericError {
  public:
    TruncationError(const std::string& message, double tail_mass)
        : NumericError(message), tail_mass_(tail_mass) {}

    double tail_mass() const { return tail_mass_; }

  private:
    double tail_mass_;
};

/// The connection denominator <phi|rho|phi> vanished along the path.
class SingularConnection : public NumericError {
  public:
    SingularConnection(const std::string& message, double t)
        : NumericError(message), t_(t) {}

    /// Path parameter of the offending sample.
    double t() const { return t_; }

  private:
    double t_;
};

class PostselectionImpossible : public NumericError {
  public:
    PostselectionImpossible(const std::string& message, double probability)
        : NumericError(message), probability_(probability) {}

    double probability() const { return probability_; }

  private:
    double probability_;
};

class ZeroVisibility : public NumericError {
  public:
    ZeroVisibility(const std::string& message, double visibility)
        : NumericError(message), visibility_(visibility) {}

    double visibility() const { return visibility_; }

  private:
    double visibility_;
};

/// A density operator required to be faithful (full rank) is not.
class RankDeficient : public NumericError {
  public:
    RankDeficient(const std::string& message, double min_eigenvalue,
                  int index = -1)
        : NumericError(message),
          min_eigenvalue_(min_eigenvalue),
          index_(index) {}

    double min_eigenvalue() const { return min_eigenvalue_; }
    /// Index of the offending operator in its sequence; -1 if n/a.
    int index() const { return index_; }

  private:
    double min_eigenvalue_;
    int index_;
};

}  // namespace relphase
