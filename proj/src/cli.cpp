#include "hillevans/cli.hpp"

#include "hillevans/errors.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>

namespace hillevans::cli {

namespace {

// Evaluates fn(0 .. n-1) on up to `threads` workers; results stay in index order.
std::vector<Complex> sweep(std::size_t n, int threads, const std::function<Complex(std::size_t)>& fn) {
    std::vector<Complex> values(n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                values[i] = fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = n;
            }
        }
    };
    const int count = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    std::vector<std::thread> pool;
    for (int t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return values;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v;
    if (n == 1) return {a};
    for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
    return v;
}

void require_grid(int n, const char* what) {
    if (n < 1) throw UsageError(std::string(what) + " must be >= 1");
}

// Grid of values with a flag marking a sign change of the imaginary part
// towards the right or upper neighbour.
void write_complex_grid(std::ostream& out, const std::string& x_name, const std::vector<double>& xs,
                        const std::vector<double>& ys, const std::vector<Complex>& values) {
    out << x_name << "_re," << x_name << "_im,delta_re,delta_im,im_zero\n";
    const std::size_t nx = xs.size();
    const std::size_t ny = ys.size();
    auto at = [&](std::size_t i, std::size_t j) { return values[j * nx + i]; };
    auto crosses = [](Complex a, Complex b) {
        return std::isfinite(a.imag()) && std::isfinite(b.imag()) && ((a.imag() <= 0.0) != (b.imag() <= 0.0));
    };
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const Complex v = at(i, j);
            const bool flag = (i + 1 < nx && crosses(v, at(i + 1, j))) || (j + 1 < ny && crosses(v, at(i, j + 1)));
            out << format_double(xs[i]) << ',' << format_double(ys[j]) << ',' << format_double(v.real()) << ','
                << format_double(v.imag()) << ',' << (flag ? 1 : 0) << '\n';
        }
    }
}

} // namespace

void RunConfig::validate() const {
    if (half_width < 1) throw UsageError("--N must be >= 1");
    if (tail_cutoff <= half_width) throw UsageError("--tail-cutoff must exceed --N");
    if (!(integrator_tol > 0.0)) throw UsageError("--integrator-tol must be positive");
    if (!(root_tol > 0.0)) throw UsageError("--root-tol must be positive");
    if (!(c_max > 1.1)) throw UsageError("--c-max must exceed 1.1");
    if (threads < 1) throw UsageError("--threads must be >= 1");
    if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
}

DiscriminantConfig RunConfig::disc() const {
    DiscriminantConfig d;
    d.half_width = half_width;
    d.tail_cutoff = tail_cutoff;
    d.max_half_width = std::max(d.max_half_width, half_width);
    return d;
}

MonodromyConfig RunConfig::mono() const {
    MonodromyConfig m;
    m.tol = integrator_tol;
    return m;
}

EvansConfig RunConfig::evans() const {
    EvansConfig e;
    e.disc = disc();
    e.c_max = c_max;
    e.root_tol = root_tol;
    e.snap_tol = 1e-8 * c_max;
    return e;
}

EulerConfig RunConfig::euler() const {
    EulerConfig e;
    e.evans = evans();
    e.normalize = normalize;
    e.threads = threads;
    return e;
}

void load_defaults(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open defaults file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("defaults file " + path + " is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw UsageError("defaults file must hold a JSON object");
    try {
        for (auto& [key, value] : j.items()) {
            if (key == "N" || key == "half_width") cfg.half_width = value.get<int>();
            else if (key == "tail_cutoff") cfg.tail_cutoff = value.get<int>();
            else if (key == "integrator_tol") cfg.integrator_tol = value.get<double>();
            else if (key == "root_tol") cfg.root_tol = value.get<double>();
            else if (key == "c_max") cfg.c_max = value.get<double>();
            else if (key == "normalize") cfg.normalize = value.get<bool>();
            else if (key == "threads") cfg.threads = value.get<int>();
            else if (key == "format") cfg.format = value.get<std::string>();
            else if (key == "output") cfg.output = value.get<std::string>();
            else throw UsageError("unknown key '" + key + "' in defaults file");
        }
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("bad value in defaults file: " + std::string(e.what()));
    }
}

nlohmann::json to_json(const RunConfig& cfg) {
    return {{"N", cfg.half_width},         {"tail_cutoff", cfg.tail_cutoff}, {"integrator_tol", cfg.integrator_tol},
            {"root_tol", cfg.root_tol},    {"c_max", cfg.c_max},             {"normalize", cfg.normalize},
            {"threads", cfg.threads}};
}

Complex parse_complex(const std::string& text) {
    std::string t;
    for (char ch : text) {
        if (ch != ' ') t.push_back(ch);
    }
    if (t.empty()) throw UsageError("empty complex number");
    auto to_double = [&](const std::string& s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw UsageError("cannot parse complex number '" + text + "'");
        }
        if (used != s.size()) throw UsageError("cannot parse complex number '" + text + "'");
        return v;
    };
    if (t.back() != 'i' && t.back() != 'j') return {to_double(t), 0.0};
    t.pop_back();
    // split at the last sign that is not an exponent sign or the leading one
    std::size_t split = std::string::npos;
    for (std::size_t i = t.size(); i-- > 1;) {
        if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, to_double(t)};
    return {to_double(t.substr(0, split)), to_double(t.substr(split))};
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void cmd_discriminant(std::ostream& out, std::ostream& warn, Complex c, double mu_min, double mu_max, int points,
                      const RunConfig& cfg) {
    cfg.validate();
    require_grid(points, "--points");
    const DiscriminantConfig dc = cfg.disc();
    std::optional<SpectralParam> sp;
    try {
        sp = s_of_c(c);
    } catch (const Error& e) {
        warn << "warning: " << e.what() << "; rows are NaN\n";
    }
    out << "mu,delta_re,delta_im\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const auto mus = linspace(mu_min, mu_max, points);
    const auto values = sweep(mus.size(), cfg.threads, [&](std::size_t i) {
        return sp ? discriminant(*sp, mus[i], dc) : Complex(nan, nan);
    });
    for (std::size_t i = 0; i < mus.size(); ++i) {
        out << format_double(mus[i]) << ',' << format_double(values[i].real()) << ','
            << format_double(values[i].imag()) << '\n';
    }
}

void cmd_contour_c(std::ostream& out, double d, double re_min, double re_max, double im_min, double im_max,
                   int n_re, int n_im, const RunConfig& cfg) {
    cfg.validate();
    require_grid(n_re, "--n-re");
    require_grid(n_im, "--n-im");
    const DiscriminantConfig dc = cfg.disc();
    const auto xs = linspace(re_min, re_max, n_re);
    const auto ys = linspace(im_min, im_max, n_im);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const auto values = sweep(xs.size() * ys.size(), cfg.threads, [&](std::size_t idx) {
        const Complex c(xs[idx % xs.size()], ys[idx / xs.size()]);
        try {
            return discriminant(s_of_c(c), d * d, dc);
        } catch (const BranchCutError&) {
            return Complex(nan, nan);
        } catch (const SingularPotentialError&) {
            return Complex(nan, nan);
        }
    });
    write_complex_grid(out, "c", xs, ys, values);
}

void cmd_contour_mu(std::ostream& out, Complex c, double re_min, double re_max, double im_min, double im_max,
                    int n_re, int n_im, const RunConfig& cfg) {
    cfg.validate();
    require_grid(n_re, "--n-re");
    require_grid(n_im, "--n-im");
    const DiscriminantConfig dc = cfg.disc();
    const SpectralParam sp = s_of_c(c);
    const auto xs = linspace(re_min, re_max, n_re);
    const auto ys = linspace(im_min, im_max, n_im);
    const auto values = sweep(xs.size() * ys.size(), cfg.threads, [&](std::size_t idx) {
        return discriminant(sp, Complex(xs[idx % xs.size()], ys[idx / xs.size()]), dc);
    });
    write_complex_grid(out, "mu", xs, ys, values);
}

void cmd_circles(std::ostream& out, int n_theta, int n_d) {
    require_grid(n_theta, "--n-theta");
    require_grid(n_d, "--n-d");
    out << "theta,d,region,roots\n";
    for (double d : linspace(0.0, 1.2, n_d)) {
        for (double theta : linspace(-0.5, 0.5, n_theta)) {
            const RegionTag tag = classify_real(theta, d);
            out << format_double(theta) << ',' << format_double(d) << ',' << to_string(tag) << ','
                << predicted_root_count(tag) << '\n';
        }
    }
}

void cmd_class_points(std::ostream& out, const Wavevector& p) {
    const CompanionBasis q = companion_basis(p);
    out << "k,theta_num,d_num,den,theta,d,region,line_count\n";
    for (Int k = 1; k < p.p_sq(); ++k) {
        const ClassPoint cp = class_point(p, q, k);
        out << k << ',' << cp.theta_num << ',' << k << ',' << cp.p_sq << ',' << format_double(cp.theta()) << ','
            << format_double(cp.d()) << ',' << to_string(cp.region) << ',' << class_line_count(p, q, k) << '\n';
    }
}

void cmd_evans_roots(std::ostream& out, double theta, double d, const RunConfig& cfg) {
    cfg.validate();
    const EvansRootSet rs = find_roots(theta, d, cfg.evans());
    if (cfg.format == "json") {
        nlohmann::json roots = nlohmann::json::array();
        for (const auto& r : rs.roots) {
            roots.push_back({{"re", r.c.real()}, {"im", r.c.imag()}, {"multiplicity", r.multiplicity}});
        }
        const nlohmann::json j = {{"schema_version", report_schema_version},
                                  {"theta", theta},
                                  {"d", d},
                                  {"region", to_string(rs.region_predicted)},
                                  {"winding_upper", rs.winding_total},
                                  {"count", rs.count()},
                                  {"roots", roots},
                                  {"config", to_json(cfg)}};
        out << j.dump(2) << '\n';
        return;
    }
    out << "c_re,c_im,multiplicity\n";
    for (const auto& r : rs.roots) {
        out << format_double(r.c.real()) << ',' << format_double(r.c.imag()) << ',' << r.multiplicity << '\n';
    }
}

void cmd_spectrum(std::ostream& out, const Wavevector& p, bool count_only, const RunConfig& cfg) {
    cfg.validate();
    if (cfg.format != "json") throw UsageError("spectrum writes JSON only; use --format json");
    EulerConfig ec = cfg.euler();
    ec.count_only = count_only;
    nlohmann::json j = to_json(spectrum_report(p, ec));
    j["config"] = to_json(cfg);
    out << j.dump(2) << '\n';
}

} // namespace hillevans::cli
