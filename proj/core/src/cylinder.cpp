#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

#include "rydfibre/error.hpp"
#include "rydfibre/green.hpp"
#include "rydfibre/units.hpp"

// Scattered static Green function of a dielectric cylinder (radius a, axis z),
// both points outside:
//   g1 = 1/(2 pi^2) int_0^inf dk Re sum_m A_m(ka) psi_m(r_A) conj(psi_m(r_B)),
//   psi_m = K_m(k rho) exp(i m phi) exp(i k z),
//   A_m = -(eps-1) I_m I_m' / (1/x + (eps-1) K_m I_m'),  x = ka.
// Cartesian derivatives act on psi_m through the ladder relations
//   dx psi_m = -(k/2)(psi_{m+1} + psi_{m-1}),  dy psi_m = (ik/2)(psi_{m+1} - psi_{m-1}),
//   dz psi_m = ik psi_m,
// so every derivative tensor is a combination of shifted sums
//   S(s,t) = sum_m A_m psi_{m+s}(r_A) conj(psi_{m+t}(r_B)).

namespace rydfibre {
namespace {

using cplx = std::complex<double>;
constexpr int kShift = 2;              // |s|, |t| <= 2 for up to two derivatives per atom
constexpr int kNS = 2 * kShift + 1;

double log_k0_k1_asym(int nu, double y) {
    // Hankel expansion, adequate to ~1e-14 for y > 500.
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0;
    for (int j = 1; j <= 6; ++j) {
        term *= (mu - (2.0 * j - 1.0) * (2.0 * j - 1.0)) / (j * 8.0 * y);
        sum += term;
    }
    return 0.5 * std::log(units::pi / (2.0 * y)) - y + std::log(sum);
}

// ln K_m(y) for m = 0..mmax by upward ratio recurrence.
void log_bessel_k(double y, int mmax, std::vector<double>& out) {
    out.resize(static_cast<std::size_t>(mmax) + 1);
    double lk0, lk1;
    if (y > 500.0) {
        lk0 = log_k0_k1_asym(0, y);
        lk1 = log_k0_k1_asym(1, y);
    } else {
        lk0 = std::log(std::cyl_bessel_k(0.0, y));
        lk1 = std::log(std::cyl_bessel_k(1.0, y));
    }
    out[0] = lk0;
    if (mmax >= 1) out[1] = lk1;
    double s = std::exp(lk1 - lk0);  // K_1/K_0
    for (int m = 1; m < mmax; ++m) {
        s = 1.0 / s + 2.0 * m / y;  // K_{m+1}/K_m
        out[static_cast<std::size_t>(m) + 1] = out[static_cast<std::size_t>(m)] + std::log(s);
    }
}

double log_bessel_i0(double x) {
    if (x < 500.0) return std::log(std::cyl_bessel_i(0.0, x));
    double term = 1.0, sum = 1.0;
    for (int j = 1; j <= 6; ++j) {
        term *= (2.0 * j - 1.0) * (2.0 * j - 1.0) / (j * 8.0 * x);
        sum += term;
    }
    return x - 0.5 * std::log(2.0 * units::pi * x) + std::log(sum);
}

// ln I_m(x) and p_m = I_m'(x)/I_m(x) for m = 0..mmax.
void log_bessel_i(double x, int mmax, std::vector<double>& log_i, std::vector<double>& p) {
    const int top = mmax + 60 + static_cast<int>(std::ceil(x));
    std::vector<double> ratio(static_cast<std::size_t>(top) + 2, 0.0);  // I_j / I_{j-1}
    for (int j = top; j >= 1; --j)
        ratio[static_cast<std::size_t>(j)] = 1.0 / (2.0 * j / x + ratio[static_cast<std::size_t>(j) + 1]);
    log_i.resize(static_cast<std::size_t>(mmax) + 1);
    p.resize(static_cast<std::size_t>(mmax) + 1);
    log_i[0] = log_bessel_i0(x);
    for (int m = 1; m <= mmax; ++m)
        log_i[static_cast<std::size_t>(m)] = log_i[static_cast<std::size_t>(m) - 1] +
                                             std::log(ratio[static_cast<std::size_t>(m)]);
    // I_m' = I_{m+1} + (m/x) I_m
    for (int m = 0; m <= mmax; ++m)
        p[static_cast<std::size_t>(m)] = ratio[static_cast<std::size_t>(m) + 1] + m / x;
}

using ShiftPoly = std::array<cplx, kNS>;  // coefficient of shift s at index s + kShift

ShiftPoly single(int axis, bool on_b) {
    ShiftPoly c{};
    const cplx i(0.0, 1.0);
    switch (axis) {
        case 0:
            c[kShift + 1] = -0.5;
            c[kShift - 1] = -0.5;
            break;
        case 1:
            c[kShift + 1] = on_b ? -0.5 * i : 0.5 * i;
            c[kShift - 1] = on_b ? 0.5 * i : -0.5 * i;
            break;
        default: c[kShift] = on_b ? -i : i; break;
    }
    return c;
}

ShiftPoly convolve(const ShiftPoly& a, const ShiftPoly& b) {
    ShiftPoly c{};
    for (int s = -kShift; s <= kShift; ++s)
        for (int t = -kShift; t <= kShift; ++t) {
            const int u = s + t;
            if (u < -kShift || u > kShift) continue;
            c[u + kShift] += a[s + kShift] * b[t + kShift];
        }
    return c;
}

struct Component {
    ShiftPoly a, b;
    int power;  // total derivative order
    int group;  // 0: d11, 1: d12, 2: d21, 3: d22
    int nz;     // number of z derivatives
};

int nz(std::initializer_list<int> axes) {
    return static_cast<int>(std::count(axes.begin(), axes.end(), 2));
}

std::vector<Component> component_list(int order) {
    std::vector<Component> out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out.push_back({single(i, false), single(j, true), 2, 0, nz({i, j})});
    if (order >= 3) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    out.push_back({single(i, false), convolve(single(j, true), single(k, true)), 3, 1,
                                   nz({i, j, k})});
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    out.push_back({convolve(single(i, false), single(j, false)), single(k, true), 3, 2,
                                   nz({i, j, k})});
    }
    if (order >= 4) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l)
                        out.push_back({convolve(single(i, false), single(j, false)),
                                       convolve(single(k, true), single(l, true)), 4, 3, nz({i, j, k, l})});
    }
    return out;
}

struct PointCyl {
    double rho, phi, z;
};

class Integrand {
public:
    Integrand(const Vec3& ra, const Vec3& rb, double a, double eps, const CylQuadParams& p, int order)
        : a_(a), eps_(eps), params_(p), comps_(component_list(order)) {
        pa_ = {std::hypot(ra.x(), ra.y()), std::atan2(ra.y(), ra.x()), ra.z()};
        pb_ = {std::hypot(rb.x(), rb.y()), std::atan2(rb.y(), rb.x()), rb.z()};
    }

    std::size_t size() const { return comps_.size(); }
    const std::vector<Component>& components() const { return comps_; }

    void operator()(double k, std::vector<cplx>& out) {
        const int mmax = params_.m_max;
        const int mk = mmax + kShift;
        log_bessel_k(k * pa_.rho, mk, lka_);
        log_bessel_k(k * pb_.rho, mk, lkb_);
        const double x = k * a_;
        log_bessel_k(x, mmax, lkx_);
        log_bessel_i(x, mmax, lix_, px_);

        std::array<cplx, kNS * kNS> S{};
        double running = 0.0;
        int quiet = 0;
        bool converged = false;
        double last = 0.0;
        const double em1 = eps_ - 1.0;
        for (int m = 0; m <= mmax; ++m) {
            const auto um = static_cast<std::size_t>(m);
            const double lp = std::log(px_[um]);
            const double denom = 1.0 / x + em1 * px_[um] * std::exp(lkx_[um] + lix_[um]);
            const double log_a = std::log(em1) + lp + 2.0 * lix_[um] - std::log(denom);
            double shell = 0.0;
            for (int sign : {1, -1}) {
                if (m == 0 && sign < 0) continue;
                const int mm = sign * m;
                for (int s = -kShift; s <= kShift; ++s) {
                    const double la = lka_[static_cast<std::size_t>(std::abs(mm + s))];
                    const double pha = (mm + s) * pa_.phi;
                    for (int t = -kShift; t <= kShift; ++t) {
                        const double lb = lkb_[static_cast<std::size_t>(std::abs(mm + t))];
                        const double mag = std::exp(log_a + la + lb);
                        const double ph = pha - (mm + t) * pb_.phi;
                        S[(s + kShift) * kNS + (t + kShift)] -= mag * cplx(std::cos(ph), std::sin(ph));
                        shell += mag;
                    }
                }
            }
            running += shell;
            last = shell;
            if (m >= 3 && shell <= params_.rel_tol * running) {
                if (++quiet >= 2) {
                    converged = true;
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        if (!converged && running > 0.0)
            throw QuadratureError("cylinder mode sum not converged at m_max = " +
                                      std::to_string(mmax) + " (k = " + std::to_string(k) + ")",
                                  last / running);

        // The k < 0 half of the Fourier integral flips the sign of every z
        // derivative and conjugates exp(ik dz). Folding it in leaves cos or
        // i sin; the result is real up to the imaginary residue of the m sum.
        const double kdz = k * (pa_.z - pb_.z);
        const double cz = std::cos(kdz), sz = std::sin(kdz);
        const double lk = std::log(k);
        out.assign(comps_.size(), cplx(0.0, 0.0));
        for (std::size_t c = 0; c < comps_.size(); ++c) {
            const auto& comp = comps_[c];
            cplx acc(0.0, 0.0);
            for (int s = 0; s < kNS; ++s) {
                if (comp.a[s] == cplx(0.0)) continue;
                for (int t = 0; t < kNS; ++t) {
                    if (comp.b[t] == cplx(0.0)) continue;
                    acc += comp.a[s] * comp.b[t] * S[s * kNS + t];
                }
            }
            const cplx fold = comp.nz % 2 == 0 ? cplx(cz, 0.0) : cplx(0.0, sz);
            out[c] = acc * fold * std::exp(comp.power * lk);
        }
    }

private:
    double a_, eps_;
    CylQuadParams params_;
    std::vector<Component> comps_;
    PointCyl pa_{}, pb_{};
    std::vector<double> lka_, lkb_, lkx_, lix_, px_;
};

// Gauss-Kronrod 7/15 abscissae and weights.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo, hi;
    std::vector<cplx> value;
    std::array<double, 4> err{};
};

Panel gk15(Integrand& f, double lo, double hi, std::vector<cplx>& buf) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    const std::size_t n = f.size();
    std::vector<cplx> kron(n, 0.0), gauss(n, 0.0);
    f(c, buf);
    for (std::size_t i = 0; i < n; ++i) {
        kron[i] += wgk[7] * buf[i];
        gauss[i] += wg[3] * buf[i];
    }
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[static_cast<std::size_t>(j)];
        for (double sgn : {-1.0, 1.0}) {
            f(c + sgn * dx, buf);
            for (std::size_t i = 0; i < n; ++i) {
                kron[i] += wgk[static_cast<std::size_t>(j)] * buf[i];
                if (j % 2 == 1) gauss[i] += wg[static_cast<std::size_t>(j / 2)] * buf[i];
            }
        }
    }
    Panel p{lo, hi, std::vector<cplx>(n), {}};
    const auto& comps = f.components();
    for (std::size_t i = 0; i < n; ++i) {
        p.value[i] = kron[i] * h;
        const double e = std::abs((kron[i] - gauss[i]).real()) * h;
        auto& g = p.err[static_cast<std::size_t>(comps[i].group)];
        g = std::max(g, e);
    }
    return p;
}

}  // namespace

GreenDerivatives cylinder_green(const Vec3& ra, const Vec3& rb, double a, double epsilon,
                                const CylQuadParams& params, int order) {
    const double rho_a = std::hypot(ra.x(), ra.y());
    const double rho_b = std::hypot(rb.x(), rb.y());
    if (!(rho_a > a) || !(rho_b > a)) throw GeometryError("atom inside the fibre (R <= a)");
    if (params.m_max < 4 || !(params.rel_tol > 0.0) || !(params.k_max_scale > 0.0))
        throw ConfigError("invalid cylinder quadrature parameters");

    Integrand f(ra, rb, a, epsilon, params, order);
    const double k_max = params.k_max_scale / std::min(rho_a - a, rho_b - a);
    const double dz = std::abs(ra.z() - rb.z());
    const int n0 = std::clamp(static_cast<int>(std::ceil(k_max * dz / units::pi)), 8,
                              std::max(8, params.max_panels / 2));

    std::vector<cplx> buf;
    std::vector<Panel> panels;
    panels.reserve(static_cast<std::size_t>(params.max_panels));
    for (int i = 0; i < n0; ++i)
        panels.push_back(gk15(f, k_max * i / n0, k_max * (i + 1) / n0, buf));

    const std::size_t n = f.size();
    const auto& comps = f.components();
    std::vector<cplx> total(n, cplx(0.0));
    std::array<double, 4> scale{}, err{};
    auto add = [&](const Panel& p, double sign) {
        for (std::size_t i = 0; i < n; ++i) total[i] += sign * p.value[i];
        for (std::size_t g = 0; g < 4; ++g) err[g] += sign * p.err[g];
    };
    auto rescale = [&] {
        scale.fill(0.0);
        for (std::size_t i = 0; i < n; ++i) {
            auto& s = scale[static_cast<std::size_t>(comps[i].group)];
            s = std::max(s, std::abs(total[i].real()));
        }
    };
    auto normalised = [&](const std::array<double, 4>& e) {
        double worst = 0.0;
        for (std::size_t g = 0; g < 4; ++g)
            if (scale[g] > 0.0) worst = std::max(worst, std::max(e[g], 0.0) / scale[g]);
        return worst;
    };

    for (const auto& p : panels) add(p, 1.0);
    rescale();
    while (normalised(err) > params.rel_tol) {
        if (static_cast<int>(panels.size()) >= params.max_panels)
            throw QuadratureError("cylinder k-quadrature did not converge", normalised(err));
        std::size_t worst = 0;
        double worst_err = -1.0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            const double e = normalised(panels[i].err);
            if (e > worst_err) {
                worst_err = e;
                worst = i;
            }
        }
        const Panel p = panels[worst];
        const double mid = 0.5 * (p.lo + p.hi);
        add(p, -1.0);
        panels[worst] = gk15(f, p.lo, mid, buf);
        panels.push_back(gk15(f, mid, p.hi, buf));
        add(panels[worst], 1.0);
        add(panels.back(), 1.0);
        rescale();
    }

    const double pref = 1.0 / (2.0 * units::pi * units::pi);
    GreenDerivatives g;
    g.order = order;
    double imag = 0.0;
    std::size_t c = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g.d11(i, j) = pref * total[c++].real();
    if (order >= 3) {
        for (double& v : g.d12.v) v = pref * total[c++].real();
        for (double& v : g.d21.v) v = pref * total[c++].real();
    }
    if (order >= 4)
        for (double& v : g.d22.v) v = pref * total[c++].real();
    for (std::size_t i = 0; i < n; ++i) {
        const double s = scale[static_cast<std::size_t>(comps[i].group)];
        if (s > 0.0) imag = std::max(imag, std::abs(total[i].imag()) / s);
    }
    g.imag_residue = imag;
    return g;
}

}  // namespace rydfibre
