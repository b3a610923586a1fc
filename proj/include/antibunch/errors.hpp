// Error types shared across the library. Validation errors indicate a bad
// input (config, parameter, malformed file) and map to CLI exit code 1;
// everything else derived from `error` maps to exit code 2.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace antibunch {

class error : public std::runtime_error {
  public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad user input: rejected before any computation runs.
class validation_error : public error {
  public:
    explicit validation_error(const std::string& what) : error(what) {}
};

class invalid_dimension_error : public validation_error {
  public:
    explicit invalid_dimension_error(const std::string& what) : validation_error(what) {}
};

class parameter_error : public validation_error {
  public:
    explicit parameter_error(const std::string& what) : validation_error(what) {}
};

/// Truncated Fock space cannot hold the requested state. Carries the
/// probability mass lost beyond the last retained photon number.
class truncation_error : public error {
  public:
    truncation_error(const std::string& what, double tail_mass)
        : error(what), tail_mass(tail_mass) {}
    double tail_mass;
};

/// Statistic is undefined on this input (e.g. g2 of a state with no photons).
class undefined_statistic_error : public error {
  public:
    explicit undefined_statistic_error(const std::string& what) : error(what) {}
};

/// Numeric search did not converge. Carries the best iterate seen.
class optimization_error : public error {
  public:
    optimization_error(const std::string& what, std::complex<double> best_point,
                       double best_value)
        : error(what), best_point(best_point), best_value(best_value) {}
    std::complex<double> best_point;
    double best_value;
};

/// Nonlinear fit did not converge. Carries the last iterate and its residual.
class fit_error : public error {
  public:
    fit_error(const std::string& what, double amplitude, double sigma, double center,
              double residual)
        : error(what), amplitude(amplitude), sigma(sigma), center(center),
          residual(residual) {}
    double amplitude;
    double sigma;
    double center;
    double residual;
};

/// Requested generation or accumulation would exceed a configured cap.
class capacity_error : public error {
  public:
    explicit capacity_error(const std::string& what) : error(what) {}
};

/// Input stream violates the sortedness contract.
class ordering_error : public validation_error {
  public:
    explicit ordering_error(const std::string& what) : validation_error(what) {}
};

// Tag-file I/O failures, one type per distinct condition.
class io_error : public error {
  public:
    explicit io_error(const std::string& what) : error(what) {}
};

class bad_magic_error : public io_error {
  public:
    explicit bad_magic_error(const std::string& what) : io_error(what) {}
};

class bad_version_error : public io_error {
  public:
    explicit bad_version_error(const std::string& what) : io_error(what) {}
};

class truncated_file_error : public io_error {
  public:
    explicit truncated_file_error(const std::string& what) : io_error(what) {}
};

class nonmonotone_error : public io_error {
  public:
    explicit nonmonotone_error(const std::string& what) : io_error(what) {}
};

/// Config document failed validation. Carries the offending field path.
class config_error : public validation_error {
  public:
    config_error(const std::string& what, std::string field)
        : validation_error(what + " (field: " + field + ")"), field(std::move(field)) {}
    std::string field;
};

}  // namespace antibunch
