#include "hillevans/cli.hpp"
#include "hillevans/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

namespace hc = hillevans::cli;

struct Sink {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    explicit Sink(const std::string& path) {
        if (path.empty() || path == "-") return;
        file.open(path);
        if (!file) throw hillevans::UsageError("cannot open output file " + path);
        stream = &file;
    }
};

void add_common(CLI::App* cmd, hc::RunConfig& cfg) {
    cmd->add_option("--N", cfg.half_width, "Hill matrix half-width")->capture_default_str();
    cmd->add_option("--tail-cutoff", cfg.tail_cutoff, "last tail mode summed explicitly")->capture_default_str();
    cmd->add_option("--integrator-tol", cfg.integrator_tol, "monodromy tolerance")->capture_default_str();
    cmd->add_option("--root-tol", cfg.root_tol, "Newton residual tolerance")->capture_default_str();
    cmd->add_option("--c-max", cfg.c_max, "half-size of the root search box")->capture_default_str();
    cmd->add_option("--threads", cfg.threads, "worker threads for grid sweeps and classes")->capture_default_str();
    cmd->add_option("-o,--output", cfg.output, "output file (default stdout)");
    cmd->add_option("--format", cfg.format, "csv or json")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    hc::RunConfig cfg;
    if (const char* path = std::getenv(hc::defaults_env_var)) {
        try {
            hc::load_defaults(cfg, path);
        } catch (const hillevans::Error& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 2;
        }
    }

    CLI::App app{"Point spectrum of 2D Euler flows linearised about cos(p1 x + p2 y)"};
    app.require_subcommand(1);

    std::string c_text = "2";
    double mu_min = -6.0, mu_max = 2.0;
    int points = 400;
    auto* disc = app.add_subcommand("discriminant", "Hill discriminant Delta(mu) along a real mu grid");
    disc->add_option("--c", c_text, "spectral parameter c, e.g. 0.2i or 0.1+0.2i")->capture_default_str();
    disc->add_option("--mu-min", mu_min)->capture_default_str();
    disc->add_option("--mu-max", mu_max)->capture_default_str();
    disc->add_option("--points", points)->capture_default_str();
    add_common(disc, cfg);

    double d = 0.5;
    double re_min = -2.0, re_max = 2.0, im_min = 0.01, im_max = 2.0;
    int n_re = 81, n_im = 81;
    auto* cc = app.add_subcommand("contour-c", "Delta(d^2; c) on a grid of complex c");
    cc->add_option("--d", d)->capture_default_str();
    cc->add_option("--re-min", re_min)->capture_default_str();
    cc->add_option("--re-max", re_max)->capture_default_str();
    cc->add_option("--im-min", im_min)->capture_default_str();
    cc->add_option("--im-max", im_max)->capture_default_str();
    cc->add_option("--n-re", n_re)->capture_default_str();
    cc->add_option("--n-im", n_im)->capture_default_str();
    add_common(cc, cfg);

    double mre_min = -1.0, mre_max = 2.0, mim_min = -1.0, mim_max = 1.0;
    auto* cm = app.add_subcommand("contour-mu", "Delta(mu; c) on a grid of complex mu");
    cm->add_option("--c", c_text, "spectral parameter c")->capture_default_str();
    cm->add_option("--re-min", mre_min)->capture_default_str();
    cm->add_option("--re-max", mre_max)->capture_default_str();
    cm->add_option("--im-min", mim_min)->capture_default_str();
    cm->add_option("--im-max", mim_max)->capture_default_str();
    cm->add_option("--n-re", n_re)->capture_default_str();
    cm->add_option("--n-im", n_im)->capture_default_str();
    add_common(cm, cfg);

    int n_theta = 101, n_d = 121;
    std::vector<long long> circle_p;
    auto* circ = app.add_subcommand("circles", "region map of (theta, d), or the class points of --p");
    circ->add_option("--n-theta", n_theta)->capture_default_str();
    circ->add_option("--n-d", n_d)->capture_default_str();
    circ->add_option("--p", circle_p, "wave vector p1 p2")->expected(2);
    circ->add_option("-o,--output", cfg.output, "output file (default stdout)");

    double theta = 0.4;
    auto* roots = app.add_subcommand("evans-roots", "roots of the class Evans function E(c; theta, d)");
    roots->add_option("--theta", theta)->capture_default_str();
    roots->add_option("--d", d)->capture_default_str();
    add_common(roots, cfg);

    std::vector<long long> spec_p;
    bool count_only = false;
    auto* spec = app.add_subcommand("spectrum", "full spectrum report for a wave vector (JSON)");
    spec->add_option("--p", spec_p, "wave vector p1 p2")->expected(2)->required();
    spec->add_flag("--count-only", count_only, "winding numbers only, no root refinement");
    spec->add_flag("--normalize", cfg.normalize, "normalise Evans factors at infinity");
    add_common(spec, cfg);

    std::string level = "quick";
    auto* ver = app.add_subcommand("verify", "run the oracle agreement suites");
    ver->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
    add_common(ver, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        // spectrum is JSON-only
        if (*spec && spec->count("--format") == 0) cfg.format = "json";
        Sink sink(cfg.output);
        std::ostream& out = *sink.stream;
        if (*disc) {
            hc::cmd_discriminant(out, std::cerr, hc::parse_complex(c_text), mu_min, mu_max, points, cfg);
        } else if (*cc) {
            hc::cmd_contour_c(out, d, re_min, re_max, im_min, im_max, n_re, n_im, cfg);
        } else if (*cm) {
            hc::cmd_contour_mu(out, hc::parse_complex(c_text), mre_min, mre_max, mim_min, mim_max, n_re, n_im, cfg);
        } else if (*circ) {
            if (circle_p.empty()) hc::cmd_circles(out, n_theta, n_d);
            else hc::cmd_class_points(out, hillevans::Wavevector(circle_p[0], circle_p[1]));
        } else if (*roots) {
            hc::cmd_evans_roots(out, theta, d, cfg);
        } else if (*spec) {
            hc::cmd_spectrum(out, hillevans::Wavevector(spec_p[0], spec_p[1]), count_only, cfg);
        } else if (*ver) {
            const auto results =
                hc::cmd_verify(out, level == "full" ? hc::VerifyLevel::Full : hc::VerifyLevel::Quick, cfg);
            for (const auto& r : results) {
                if (!r.passed) return 1;
            }
        }
    } catch (const hillevans::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const hillevans::CoprimalityError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
