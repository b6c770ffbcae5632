#include "hillevans/evans.hpp"

#include "hillevans/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <functional>
#include <optional>
#include <utility>

namespace hillevans {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double max_phase_step = pi / 4.0;

// E with memoised samples; contour points are shared between neighbouring
// cells.
class Evaluator {
public:
    Evaluator(double theta, double d, const EvansConfig& cfg) : theta_(theta), d_(d), cfg_(cfg) {}

    Complex operator()(Complex c) {
        const auto key = std::make_pair(c.real(), c.imag());
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        const Complex e = direct(c);
        cache_.emplace(key, e);
        return e;
    }

    Complex direct(Complex c) {
        ++evaluations_;
        return evans(c, theta_, d_, cfg_.disc);
    }

    long evaluations() const { return evaluations_; }

private:
    double theta_;
    double d_;
    const EvansConfig& cfg_;
    std::map<std::pair<double, double>, Complex> cache_;
    long evaluations_ = 0;
};

double refine_phase(Evaluator& ev, Complex a, Complex ea, Complex b, Complex eb, double min_len) {
    const double dphi = std::arg(eb / ea);
    const double dmag = std::abs(std::log(std::abs(eb) / std::abs(ea)));
    if (std::abs(dphi) <= max_phase_step && dmag <= 1.0) return dphi;
    if (std::abs(b - a) < min_len) {
        throw ContourThroughRootError("argument of E jumps on an unresolvably short contour piece");
    }
    const Complex m = 0.5 * (a + b);
    const Complex em = ev(m);
    if (!(std::abs(em) > 1e-250) || !std::isfinite(std::abs(em))) {
        throw ContourThroughRootError("E vanishes on the contour");
    }
    return refine_phase(ev, a, ea, m, em, min_len) + refine_phase(ev, m, em, b, eb, min_len);
}

double edge_phase(Evaluator& ev, Complex a, Complex b, const EvansConfig& cfg) {
    const double len = std::abs(b - a);
    const int pieces = 2 + static_cast<int>(std::ceil(len / (0.05 * cfg.c_max)));
    const double min_len = 1e-13 * cfg.c_max;
    double total = 0.0;
    Complex za = a;
    Complex ea = ev(za);
    if (!(std::abs(ea) > 1e-250)) throw ContourThroughRootError("E vanishes on the contour");
    for (int i = 1; i <= pieces; ++i) {
        const Complex zb = i == pieces ? b : a + (b - a) * (static_cast<double>(i) / pieces);
        const Complex eb = ev(zb);
        if (!(std::abs(eb) > 1e-250)) throw ContourThroughRootError("E vanishes on the contour");
        total += refine_phase(ev, za, ea, zb, eb, min_len);
        za = zb;
        ea = eb;
    }
    return total;
}

int rect_winding(Evaluator& ev, const Rect& r, const EvansConfig& cfg) {
    const Complex z0(r.x0, r.y0), z1(r.x1, r.y0), z2(r.x1, r.y1), z3(r.x0, r.y1);
    const double total = edge_phase(ev, z0, z1, cfg) + edge_phase(ev, z1, z2, cfg) +
                         edge_phase(ev, z2, z3, cfg) + edge_phase(ev, z3, z0, cfg);
    const double w = total / (2.0 * pi);
    const double rounded = std::round(w);
    if (std::abs(w - rounded) > 0.05) {
        throw ContourThroughRootError("non-integer winding number " + std::to_string(w));
    }
    return static_cast<int>(rounded);
}

bool inside(const Rect& r, Complex c, double margin) {
    return c.real() >= r.x0 - margin && c.real() <= r.x1 + margin && c.imag() >= r.y0 - margin &&
           c.imag() <= r.y1 + margin;
}

// Damped Newton for a root of multiplicity mult, staying in the half plane
// of the starting point.
std::optional<Complex> newton(const std::function<Complex(Complex)>& f, Complex c, int mult,
                              const EvansConfig& cfg) {
    const double half = c.imag() >= 0.0 ? 1.0 : -1.0;
    Complex fc = f(c);
    for (int it = 0; it < cfg.max_newton; ++it) {
        if (std::abs(fc) <= 1e-3 * cfg.root_tol) return c;
        const double h = std::min(1e-6 * std::max(1.0, std::abs(c)), 0.25 * std::abs(c.imag()));
        const Complex deriv = (f(c + h) - f(c - h)) / (2.0 * h);
        if (!(std::abs(deriv) > 0.0)) break;
        const Complex step = static_cast<double>(mult) * fc / deriv;
        double t = 1.0;
        Complex cn = c;
        Complex fn = fc;
        for (int damp = 0; damp < 30; ++damp) {
            cn = c - t * step;
            if (cn.imag() * half <= 0.0) {
                t *= 0.5;
                continue;
            }
            fn = f(cn);
            if (std::abs(fn) < std::abs(fc) || t < 1e-3) break;
            t *= 0.5;
        }
        if (cn.imag() * half <= 0.0) break;
        const double moved = std::abs(cn - c);
        c = cn;
        fc = fn;
        if (moved < 1e-15 * std::max(1.0, std::abs(c))) break;
    }
    if (std::abs(fc) <= cfg.root_tol) return c;
    return std::nullopt;
}

class RootSearch {
public:
    RootSearch(double theta, double d, const EvansConfig& cfg) : cfg_(cfg), ev_(theta, d, cfg) {}

    int winding(const Rect& r) { return rect_winding(ev_, r, cfg_); }

    void process(const Rect& r, int w) {
        if (w == 0) return;
        if (w < 0) throw ContourThroughRootError("negative winding; E has a pole inside the region");
        if (++cells_ > cfg_.max_cells) throw ConvergenceError("root search exceeded its cell budget");
        const double width = r.x1 - r.x0;
        const double height = r.y1 - r.y0;
        const double size = std::max(width, height);
        const Complex centre(0.5 * (r.x0 + r.x1), 0.5 * (r.y0 + r.y1));
        auto f = [this](Complex c) { return ev_.direct(c); };

        if (w == 1 && size <= 0.25 * cfg_.c_max) {
            if (auto c = newton(f, centre, 1, cfg_); c && inside(r, *c, 1e-9 * size)) {
                roots_.push_back({*c, 1});
                return;
            }
        }
        if (size <= 1e-7 * cfg_.c_max) {
            if (auto c = newton(f, centre, w, cfg_)) {
                roots_.push_back({*c, w});
                return;
            }
            roots_.push_back({centre, w});
            return;
        }

        static constexpr std::array<double, 4> fractions = {0.4817, 0.5361, 0.4402, 0.5127};
        for (double frac : fractions) {
            Rect a = r, b = r;
            if (width >= height) {
                const double x = r.x0 + frac * width;
                a.x1 = x;
                b.x0 = x;
            } else {
                const double y = r.y0 + frac * height;
                a.y1 = y;
                b.y0 = y;
            }
            int wa = 0, wb = 0;
            try {
                wa = winding(a);
                wb = winding(b);
            } catch (const ContourThroughRootError&) {
                continue;
            }
            if (wa + wb != w) continue;
            process(a, wa);
            process(b, wb);
            return;
        }
        throw ContourThroughRootError("could not split a cell without crossing a root");
    }

    std::vector<EvansRoot> take_roots() { return std::move(roots_); }
    long evaluations() const { return ev_.evaluations(); }

private:
    const EvansConfig& cfg_;
    Evaluator ev_;
    std::vector<EvansRoot> roots_;
    int cells_ = 0;
};

int region_winding(RootSearch& search, const std::vector<Rect>& rects) {
    int total = 0;
    for (const auto& r : rects) total += search.winding(r);
    return total;
}

int guarded_winding(RootSearch& search, const EvansConfig& cfg, double d) {
    const int w = region_winding(search, search_region(cfg, cfg.c_max, d));
    if (cfg.guard) {
        const int outer = region_winding(search, search_region(cfg, 4.0 * cfg.c_max, d));
        if (outer != w) {
            throw ConvergenceError("roots found between c_max and 4 c_max; enlarge the search box");
        }
    }
    return w;
}

} // namespace

int EvansRootSet::count() const {
    int n = 0;
    for (const auto& r : roots) n += r.multiplicity;
    return n;
}

void validate(const EvansConfig& cfg) {
    validate(cfg.disc);
    if (!(cfg.eps_cut > 0.0)) throw UsageError("eps_cut must be positive");
    if (!(cfg.bump_min > cfg.eps_cut && cfg.bump_max >= cfg.bump_min && cfg.bump_max < 0.5)) {
        throw UsageError("need eps_cut < bump_min <= bump_max < 0.5");
    }
    if (!(cfg.bump_d_fraction >= 0.0)) throw UsageError("bump_d_fraction must be >= 0");
    if (!(cfg.c_max > 1.0 + cfg.bump_max)) throw UsageError("c_max must exceed 1 + bump_max");
    if (!(cfg.root_tol > 0.0) || !(cfg.snap_tol >= 0.0)) throw UsageError("tolerances must be positive");
}

Complex evans(Complex c, double theta, double d, const DiscriminantConfig& cfg, Side side) {
    const SpectralParam sp = spectral_param(c, side);
    return 2.0 * std::cos(2.0 * pi * theta) - discriminant(sp, d * d, cfg);
}

RegionTag classify_real(double theta, double d, double tol) {
    const double t = theta - std::ceil(theta - 0.5);
    int inside_count = 0;
    int on = 0;
    for (int l = -1; l <= 1; ++l) {
        const double x = t + l;
        const double v = x * x + d * d - 1.0;
        if (std::abs(v) <= tol) ++on;
        else if (v < 0.0) ++inside_count;
    }
    if (on >= 2 || (on == 1 && std::abs(d) <= tol)) return RegionTag::Corner;
    if (on == 1) return inside_count == 0 ? RegionTag::Boundary0I : RegionTag::BoundaryIII;
    switch (inside_count) {
    case 0: return RegionTag::Region0;
    case 1: return RegionTag::RegionI;
    default: return RegionTag::RegionII;
    }
}

double bump_radius(const EvansConfig& cfg, double d) {
    return std::clamp(cfg.bump_d_fraction * std::abs(d), cfg.bump_min, cfg.bump_max);
}

std::vector<Rect> search_region(const EvansConfig& cfg, double c_max, double d) {
    const double r = bump_radius(cfg, d);
    const double e = cfg.eps_cut;
    const double b = r;
    return {
        {-c_max, -1.0 - r, e, c_max},
        {-1.0 - r, -1.0 + r, b, c_max},
        {-1.0 + r, 1.0 - r, e, c_max},
        {1.0 - r, 1.0 + r, b, c_max},
        {1.0 + r, c_max, e, c_max},
    };
}

int winding_number(double theta, double d, const Rect& rect, const EvansConfig& cfg) {
    validate(cfg);
    Evaluator ev(theta, d, cfg);
    return rect_winding(ev, rect, cfg);
}

EvansRootSet find_roots(double theta, double d, const EvansConfig& cfg) {
    validate(cfg);
    EvansRootSet out;
    out.theta = theta;
    out.d = d;
    out.region_predicted = classify_real(theta, d);
    out.box = search_region(cfg, cfg.c_max, d);

    RootSearch search(theta, d, cfg);
    out.winding_total = guarded_winding(search, cfg, d);
    for (const auto& r : out.box) search.process(r, search.winding(r));

    std::vector<EvansRoot> upper = search.take_roots();
    for (auto& r : upper) {
        if (std::abs(r.c.real()) < cfg.snap_tol) r.c = Complex(0.0, r.c.imag());
    }
    for (const auto& r : upper) {
        out.roots.push_back(r);
        out.roots.push_back({std::conj(r.c), r.multiplicity});
    }
    std::sort(out.roots.begin(), out.roots.end(), [](const EvansRoot& a, const EvansRoot& b) {
        if (a.c.real() != b.c.real()) return a.c.real() < b.c.real();
        return a.c.imag() < b.c.imag();
    });
    out.evaluations = search.evaluations();
    return out;
}

int count_roots(double theta, double d, const EvansConfig& cfg) {
    validate(cfg);
    RootSearch search(theta, d, cfg);
    return 2 * guarded_winding(search, cfg, d);
}

int count_roots(Int theta_num, Int d_num, Int den, const EvansConfig& cfg) {
    const double theta = static_cast<double>(theta_num) / static_cast<double>(den);
    const double d = static_cast<double>(d_num) / static_cast<double>(den);
    const int n = count_roots(theta, d, cfg);
    const RegionTag tag = classify_rational(theta_num, d_num, den);
    const int expected = predicted_root_count(tag);
    if (n != expected) {
        throw OracleMismatchError("root count " + std::to_string(n) + " disagrees with " + to_string(tag) +
                                  " (expected " + std::to_string(expected) + ")");
    }
    return n;
}

DerivativeReport derivative_checks(double d, Side side, const EvansConfig& cfg) {
    validate(cfg);
    if (side == Side::NotOnCut) throw UsageError("derivative checks need a side of the cut");
    const double tol = 1e-12;
    if (!(d > tol) || std::abs(d - std::sqrt(3.0) / 2.0) < tol || !(d < 1.0 - tol)) {
        throw DegenerateParameterError("d must avoid 0, sqrt(3)/2 and 1 (and stay below 1)");
    }
    DerivativeReport rep;
    rep.d = d;
    rep.side = side;
    const double u = std::sqrt(1.0 - d * d);
    const double big_r = 2.0 * pi * std::sin(2.0 * pi * u) / u;
    const Complex unit_i(0.0, 1.0);

    // dE/dc: one-sided steps into the disk |s| < 1 along -s0
    const SpectralParam origin = s_at_origin(side);
    const Complex s0 = origin.s;
    auto e_of_s = [&](Complex s) {
        const SpectralParam sp = s == s0 ? origin : param_from_s(s);
        return 2.0 - discriminant(sp, d * d, cfg.disc);
    };
    const double h = 1e-5;
    const Complex e0 = e_of_s(s0);
    const Complex e1 = e_of_s(s0 * (1.0 - h));
    const Complex e2 = e_of_s(s0 * (1.0 - 2.0 * h));
    const Complex dt = (-3.0 * e0 + 4.0 * e1 - e2) / (2.0 * h);
    const Complex ds_dc = 2.0 * s0 * s0 / (s0 * s0 - 1.0);
    rep.dE_dc = dt / (-s0) * ds_dc;
    rep.dE_dc_expected = (side == Side::Upper ? unit_i : -unit_i) * big_r;

    auto e_origin = [&](double theta, double dd) {
        return evans(Complex(0.0), theta, dd, cfg.disc, side).real();
    };
    const double hd = 1e-6;
    rep.dE_dd = (e_origin(0.0, d + hd) - e_origin(0.0, d - hd)) / (2.0 * hd);
    rep.dE_dd_expected = -2.0 * d * big_r;

    // circle through (u, d) centred at the origin; outward normal (u, d)
    rep.normal = (e_origin(u * (1.0 + hd), d * (1.0 + hd)) - e_origin(u * (1.0 - hd), d * (1.0 - hd))) /
                 (2.0 * hd);
    rep.normal_expected = -2.0 * big_r;

    // root born when (theta, d) moves a distance t inside the circle
    const double sign = side == Side::Upper ? 1.0 : -1.0;
    auto born_root = [&](double t) {
        const double theta = u * (1.0 - t);
        const double dd = d * (1.0 - t);
        auto f = [&](Complex c) { return evans(c, theta, dd, cfg.disc); };
        EvansConfig tight = cfg;
        tight.root_tol = 1e-13;
        auto c = newton(f, Complex(0.0, sign * 2.0 * t), 1, tight);
        if (!c) throw ConvergenceError("no root found near the circle crossing");
        return *c;
    };
    const double t = 1e-4;
    const Complex v1 = born_root(t) / t;
    const Complex v2 = born_root(0.5 * t) / (0.5 * t);
    rep.velocity = 2.0 * v2 - v1;
    rep.velocity_expected = sign * 2.0 * unit_i;
    return rep;
}

} // namespace hillevans
