#include "orislink/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace orislink {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// Continued fraction for sqrt(pi)*exp(x^2)*erfc(x) = 1/V with
// V = x + (1/2)/(x + (2/2)/(x + (3/2)/(x + ...))), evaluated with the
// modified Lentz algorithm. Solid for x >= 1; the series below covers the
// rest.
double erfc_cf_value(double x) {
    constexpr double tiny = 1e-300;
    double f = x, c = x, d = 0.0;
    for (int n = 1; n <= 300; ++n) {
        const double an = 0.5 * n;
        d = x + an * d;
        if (d == 0.0) d = tiny;
        c = x + an / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-17) break;
    }
    return f;
}

} // namespace

double erf_accurate(double x) noexcept {
    if (std::isnan(x)) return x;
    const double ax = std::fabs(x);
    double r;
    if (ax < 1.0) {
        // erf(x) = 2x*exp(-x^2)/sqrt(pi) * sum_n (2x^2)^n / (1*3*...*(2n+1)).
        // All terms positive, so no cancellation; ~20 terms suffice here.
        const double x2 = ax * ax;
        double term = 1.0, sum = 1.0;
        for (int n = 1; n < 80; ++n) {
            term *= 2.0 * x2 / (2.0 * n + 1.0);
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        r = 2.0 * ax * std::exp(-x2) / kSqrtPi * sum;
    } else if (ax < 6.0) {
        const double v = erfc_cf_value(ax);
        r = 1.0 - std::exp(-ax * ax) / (kSqrtPi * v);
    } else {
        // erfc(6) ~ 2e-17 is already below half an ulp of 1.
        r = 1.0;
    }
    return x < 0.0 ? -r : r;
}

namespace {

struct AdaptiveState {
    const std::function<double(double)>& f;
    long evals = 0;
    long max_evals = 2'000'000;
};

double simpson_recurse(AdaptiveState& st, double a, double b,
                       double fa, double fm, double fb,
                       double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = st.f(lm);
    const double frm = st.f(rm);
    st.evals += 2;
    const double h6 = (b - a) / 12.0;
    const double left = h6 * (fa + 4.0 * flm + fm);
    const double right = h6 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    // Factor 15 from the Richardson error model of Simpson halving; the
    // returned value includes the extrapolated correction.
    if (std::fabs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    if (depth <= 0 || st.evals > st.max_evals) {
        throw NonConvergence("integrate_adaptive: subdivision limit reached on ["
                             + std::to_string(a) + ", " + std::to_string(b) + "]");
    }
    return simpson_recurse(st, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
         + simpson_recurse(st, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f,
                          double a, double b, double rel_tol) {
    if (!(a < b)) {
        throw std::invalid_argument("integrate_adaptive: requires a < b");
    }
    if (!(rel_tol > 0.0) || rel_tol > 1e-2) {
        throw std::invalid_argument("integrate_adaptive: rel_tol must be in (0, 1e-2]");
    }
    AdaptiveState st{f};

    // Coarse composite pass to turn the relative tolerance into an absolute
    // budget. Summing panel magnitudes keeps the scale meaningful when the
    // signed panels cancel.
    constexpr int kPanels = 32;
    const double h = (b - a) / (2 * kPanels);
    double fv[2 * kPanels + 1];
    for (int i = 0; i <= 2 * kPanels; ++i) {
        fv[i] = f(a + i * h);
    }
    st.evals += 2 * kPanels + 1;
    double coarse = 0.0, magnitude = 0.0;
    for (int i = 0; i < 2 * kPanels; i += 2) {
        const double panel = h / 3.0 * (fv[i] + 4.0 * fv[i + 1] + fv[i + 2]);
        coarse += panel;
        magnitude += std::fabs(panel);
    }
    const double scale = std::max(std::fabs(coarse), magnitude);
    const double tol = rel_tol * scale; // zero scale -> zero tol, handled below

    const double fa = fv[0];
    const double fb = fv[2 * kPanels];
    const double fm = f(0.5 * (a + b));
    st.evals += 1;
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    // An identically zero integrand passes the |delta| <= 15*tol test with
    // tol == 0 on the first call and returns exactly 0.
    return simpson_recurse(st, a, b, fa, fm, fb, whole, tol, 52);
}

namespace {

// Eigenvalues of a symmetric tridiagonal matrix by the implicit-shift QL
// method (no eigenvectors). d holds the diagonal and returns the
// eigenvalues, e holds the subdiagonal in e[1..n-1].
void tridiagonal_eigenvalues(std::vector<double>& d, std::vector<double>& e) {
    const int n = static_cast<int>(d.size());
    if (n <= 1) return;
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 50) {
                    throw Error("gauss_laguerre: eigenvalue iteration failed to converge");
                }
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::fabs(r) : -std::fabs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                int i = m - 1;
                for (; i >= l; --i) {
                    double fi = s * e[i];
                    const double bi = c * e[i];
                    r = std::hypot(fi, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = fi / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * bi;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - bi;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

// Generalized Laguerre polynomial value by the three-term recurrence with
// power-of-two renormalization, so orders up to 512 evaluate at nodes near
// x ~ 4G without overflow. Returns mantissas for L_G and L_{G-1} sharing
// one binary exponent.
struct ScaledPoly {
    double value;      // L_G mantissa
    double prev;       // L_{G-1} mantissa
    long exponent2;    // shared power-of-two exponent
};

ScaledPoly laguerre_scaled(int G, double alpha, double x) {
    double lm = 1.0;            // L_0
    double l = 1.0 + alpha - x; // L_1
    long ex = 0;
    if (G == 0) return {lm, 0.0, 0};
    for (int k = 2; k <= G; ++k) {
        const double next = ((2.0 * k - 1.0 + alpha - x) * l - (k - 1.0 + alpha) * lm) / k;
        lm = l;
        l = next;
        const double m = std::max(std::fabs(l), std::fabs(lm));
        if (m > 0x1p+500) {
            l = std::ldexp(l, -500);
            lm = std::ldexp(lm, -500);
            ex += 500;
        } else if (m > 0.0 && m < 0x1p-500) {
            l = std::ldexp(l, 500);
            lm = std::ldexp(lm, 500);
            ex -= 500;
        }
    }
    return {l, lm, ex};
}

} // namespace

QuadratureRule gauss_laguerre(int G, double alpha) {
    if (G < 1) {
        throw std::invalid_argument("gauss_laguerre: order must be >= 1");
    }
    if (G > 512) {
        throw OrderTooLarge("gauss_laguerre: order " + std::to_string(G)
                            + " exceeds the supported maximum of 512");
    }
    if (!(alpha > -1.0)) {
        throw std::invalid_argument("gauss_laguerre: alpha must be > -1");
    }

    // Golub-Welsch: the nodes are the eigenvalues of the Jacobi matrix of
    // the recurrence (diagonal 2k+1+alpha, subdiagonal sqrt(k(k+alpha))).
    std::vector<double> d(G), e(G, 0.0);
    for (int k = 0; k < G; ++k) d[k] = 2.0 * k + 1.0 + alpha;
    for (int k = 1; k < G; ++k) e[k] = std::sqrt(k * (k + alpha));
    tridiagonal_eigenvalues(d, e);
    std::sort(d.begin(), d.end());

    QuadratureRule rule;
    rule.order = G;
    rule.alpha = alpha;
    rule.nodes.resize(G);
    rule.scaled_weights.resize(G);

    const double log_gamma_ratio = std::lgamma(G + alpha + 1.0) - std::lgamma(G + 1.0);
    constexpr double ln2 = 0.69314718055994530942;

    for (int gidx = 0; gidx < G; ++gidx) {
        double x = d[gidx];
        // Newton polish. The eigenvalues land within ~1e-10 of the roots,
        // so two or three corrections reach machine precision. The shared
        // renormalization exponent cancels in the Newton ratio.
        for (int it = 0; it < 3; ++it) {
            const ScaledPoly p = laguerre_scaled(G, alpha, x);
            const double deriv = (G * p.value - (G + alpha) * p.prev) / x;
            if (deriv == 0.0) break;
            const double dx = p.value / deriv;
            const double xn = x - dx;
            if (!(xn > 0.0) || !std::isfinite(xn)) break;
            x = xn;
            if (std::fabs(dx) <= 1e-15 * x) break;
        }
        rule.nodes[gidx] = x;

        // Weight via w_g = Gamma(G+alpha+1)/Gamma(G+1) / (x_g * L'(x_g)^2),
        // assembled in log space and emitted as w_g*exp(x_g) so nothing
        // underflows at large orders.
        const ScaledPoly p = laguerre_scaled(G, alpha, x);
        const double deriv_mant = (G * p.value - (G + alpha) * p.prev) / x;
        const double log_deriv = std::log(std::fabs(deriv_mant)) + p.exponent2 * ln2;
        const double log_w = log_gamma_ratio - std::log(x) - 2.0 * log_deriv;
        rule.scaled_weights[gidx] = std::exp(log_w + x);
    }
    return rule;
}

QuadratureRule gauss_laguerre(int G) {
    return gauss_laguerre(G, 0.0);
}

double lognormal_expectation(const std::function<double(double)>& g,
                             double sigma_R_sq, double upper_clamp,
                             double rel_tol) {
    if (!(sigma_R_sq > 0.0)) {
        throw std::invalid_argument("lognormal_expectation: sigma_R_sq must be > 0");
    }
    if (!(upper_clamp > 0.0)) {
        throw std::invalid_argument("lognormal_expectation: upper_clamp must be > 0");
    }
    const double sigma = std::sqrt(sigma_R_sq);
    const double mu = -0.5 * sigma_R_sq;
    const double zlo = mu - 10.0 * sigma;
    double zhi = mu + 10.0 * sigma;
    const double lc = std::log(upper_clamp);
    if (lc < zhi) {
        // The clamp cuts into the support. Step inside it so integrands
        // that blow up exactly at the clamp stay finite at the endpoint.
        zhi = lc - 1e-12;
    }
    if (!(zhi > zlo)) return 0.0;

    const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
    const auto integrand = [&](double z) {
        const double t = (z - mu) / sigma;
        return g(std::exp(z)) * norm * std::exp(-0.5 * t * t);
    };
    return integrate_adaptive(integrand, zlo, zhi, rel_tol);
}

} // namespace orislink
