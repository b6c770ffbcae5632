#pragma once

// Command implementations behind the hillevans executable. Each command
// writes CSV or JSON to the given stream.

#include "hillevans/euler.hpp"
#include "hillevans/evans.hpp"
#include "hillevans/hill.hpp"
#include "hillevans/monodromy.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hillevans::cli {

inline constexpr const char* defaults_env_var = "HILLEVANS_DEFAULTS";

struct RunConfig {
    int half_width = 16;
    int tail_cutoff = 4096;
    double integrator_tol = 1e-9;
    double root_tol = 1e-9;
    double c_max = 2.0;
    bool normalize = false;
    int threads = 1;
    std::string output; // empty: stdout
    std::string format = "csv";

    void validate() const;
    DiscriminantConfig disc() const;
    MonodromyConfig mono() const;
    EvansConfig evans() const;
    EulerConfig euler() const;
};

// Overwrites fields present in a JSON defaults file.
void load_defaults(RunConfig& cfg, const std::string& path);

nlohmann::json to_json(const RunConfig& cfg);

// "2", "-0.5", "0.2i", "-i", "0.1+0.2i", "1e-3-2e-2i"
Complex parse_complex(const std::string& text);

std::string format_double(double x);

void cmd_discriminant(std::ostream& out, std::ostream& warn, Complex c, double mu_min, double mu_max, int points,
                      const RunConfig& cfg);

void cmd_contour_c(std::ostream& out, double d, double re_min, double re_max, double im_min, double im_max,
                   int n_re, int n_im, const RunConfig& cfg);

void cmd_contour_mu(std::ostream& out, Complex c, double re_min, double re_max, double im_min, double im_max,
                    int n_re, int n_im, const RunConfig& cfg);

void cmd_circles(std::ostream& out, int n_theta, int n_d);

void cmd_class_points(std::ostream& out, const Wavevector& p);

void cmd_evans_roots(std::ostream& out, double theta, double d, const RunConfig& cfg);

void cmd_spectrum(std::ostream& out, const Wavevector& p, bool count_only, const RunConfig& cfg);

enum class VerifyLevel { Quick, Full };

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

// Oracle agreement suites; one line per check is written to log.
std::vector<CheckResult> cmd_verify(std::ostream& log, VerifyLevel level, const RunConfig& cfg);

} // namespace hillevans::cli
