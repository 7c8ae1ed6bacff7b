#include "igof/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "igof/errors.hpp"

namespace igof::numeric {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kLnSqrt2Pi = 0.91893853320467274178;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 200000;

// log(1 + y) - y, accurate for small |y|.
double log1pmx(double y) {
    if (std::abs(y) > 0.25) return std::log1p(y) - y;
    // -y^2/2 + y^3/3 - ...
    double term = y;
    double sum = 0.0;
    for (int k = 2; k < 200; ++k) {
        term *= -y;
        const double add = term / k;
        sum += add;
        if (std::abs(add) < kEps * std::abs(sum)) break;
    }
    return sum;
}

// lgamma(a) - [(a - 1/2) log a - a + log sqrt(2 pi)]
double stirling_error(double a) {
    if (a < 15.0) {
        return std::lgamma(a) - ((a - 0.5) * std::log(a) - a + kLnSqrt2Pi);
    }
    const double inv = 1.0 / a;
    const double inv2 = inv * inv;
    return inv *
           (1.0 / 12.0 -
            inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
}

// log of x^a e^{-x} / Gamma(a), computed without cancellation for large a.
double log_gamma_prefactor(double a, double x) {
    if (a < 10.0) return a * std::log(x) - x - std::lgamma(a);
    const double lambda = x / a;
    return a * log1pmx(lambda - 1.0) + 0.5 * std::log(a / (2.0 * kPi)) - stirling_error(a);
}

// log P(a, x) by the power series, valid for x < a + 1.
double log_gamma_p_series(double a, double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < kMaxIter; ++n) {
        term *= x / (a + n);
        sum += term;
        if (term < kEps * sum) break;
    }
    // x^a e^{-x} / Gamma(a + 1) * sum
    return log_gamma_prefactor(a, x) - std::log(a) + std::log(sum);
}

// log Q(a, x) by the Legendre continued fraction (modified Lentz), x >= a + 1.
double log_gamma_q_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return log_gamma_prefactor(a, x) + std::log(h);
}

void check_gamma_args(double a, double x) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("incomplete gamma: shape must be positive");
    if (!(x >= 0.0)) throw DomainError("incomplete gamma: argument must be nonnegative");
}

}  // namespace

double std_normal_pdf(double x) { return std::exp(-0.5 * x * x - kLnSqrt2Pi); }

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double std_normal_sf(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double std_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("normal quantile: probability must lie in (0, 1)");
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num =
            ((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                 6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
               1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
             1.3314166789178437745e+2) * r + 3.3871328727963666080e0;
        const double den =
            ((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                 3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
               5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
             4.2313330701600911252e+1) * r + 1.0;
        return q * num / den;
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value = 0.0;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            ((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                 2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
               3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
             4.63033784615654529590e0) * r + 1.42343711074968357734e0;
        const double den =
            ((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                 1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
               6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
             2.05319162663775882187e0) * r + 1.0;
        value = num / den;
    } else {
        r -= 5.0;
        const double num =
            ((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                 1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
               2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
             5.46378491116411436990e0) * r + 6.65790464350110377720e0;
        const double den =
            ((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                 1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
               1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
             5.99832206555887937690e-1) * r + 1.0;
        value = num / den;
    }
    return q < 0.0 ? -value : value;
}

double log_gamma_q(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) {
        const double log_p = log_gamma_p_series(a, x);
        // log(1 - P) with P = exp(log_p)
        return log_p > -0.693 ? std::log(-std::expm1(log_p)) : std::log1p(-std::exp(log_p));
    }
    return log_gamma_q_fraction(a, x);
}

double gamma_q(double a, double x) { return std::exp(log_gamma_q(a, x)); }

double gamma_p(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return std::exp(log_gamma_p_series(a, x));
    return -std::expm1(log_gamma_q_fraction(a, x));
}

double chi2_logsf(double x, unsigned df) {
    if (df == 0) throw DomainError("chi2_sf: degrees of freedom must be positive");
    if (!(x >= 0.0)) throw DomainError("chi2_sf: statistic must be nonnegative");
    if (std::isinf(x)) return -std::numeric_limits<double>::infinity();
    return log_gamma_q(0.5 * df, 0.5 * x);
}

double chi2_sf(double x, unsigned df) { return std::exp(chi2_logsf(x, df)); }

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_fraction(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m < kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) throw DomainError("incomplete beta: shapes must be positive");
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("incomplete beta: x must lie in [0, 1]");
    if (x == 0.0 || x == 1.0) return x;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(log_front) * beta_fraction(a, b, x) / a;
    return 1.0 - std::exp(log_front) * beta_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
    if (!(df > 0.0)) throw DomainError("student-t: df must be positive");
    const double tail = 0.5 * incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
    return t > 0.0 ? 1.0 - tail : tail;
}

double QuadratureRule::integrate(const std::function<double(double)>& f, double lo,
                                 double hi) const {
    const double width = hi - lo;
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(lo + width * nodes[i]);
    return sum * width;
}

QuadratureRule gauss_legendre(int n) {
    if (n < 1 || n > 512) {
        throw DomainError("gauss_legendre: node count " + std::to_string(n) +
                          " outside [1, 512]");
    }
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = z;
                p0 = 1.0;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double step = p1 / dp;
            z -= step;
            if (std::abs(step) < 1e-16) break;
        }
        if (n == 1) {
            z = 0.0;
            dp = 1.0;
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        // z > 0 for the first half; map to [0, 1] in increasing order.
        rule.nodes[i] = 0.5 * (1.0 - z);
        rule.nodes[n - 1 - i] = 0.5 * (1.0 + z);
        rule.weights[i] = 0.5 * w;
        rule.weights[n - 1 - i] = 0.5 * w;
    }
    if (n == 1) {
        rule.nodes[0] = 0.5;
        rule.weights[0] = 1.0;
    }
    return rule;
}

double find_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(tol > 0.0)) throw DomainError("find_root: tolerance must be positive");
    if (lo > hi) std::swap(lo, hi);
    double a = lo;
    double b = hi;
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (std::signbit(fa) == std::signbit(fb)) {
        throw BracketError("find_root: no sign change on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    }
    // Illinois false position; a bisection step whenever the bracket stalls.
    int side = 0;
    double last_width = b - a;
    for (int iter = 0; iter < 1000; ++iter) {
        double x = (a * fb - b * fa) / (fb - fa);
        if (!(x > a && x < b)) x = 0.5 * (a + b);
        const double fx = f(x);
        if (std::abs(fx) <= tol) return x;
        if (std::signbit(fx) == std::signbit(fb)) {
            b = x;
            fb = fx;
            if (side == -1) fa *= 0.5;
            side = -1;
        } else {
            a = x;
            fa = fx;
            if (side == 1) fb *= 0.5;
            side = 1;
        }
        if (b - a <= tol) return 0.5 * (a + b);
        if (b - a > 0.5 * last_width) {
            const double m = 0.5 * (a + b);
            const double fm = f(m);
            if (std::abs(fm) <= tol) return m;
            if (std::signbit(fm) == std::signbit(fb)) {
                b = m;
                fb = fm;
            } else {
                a = m;
                fa = fm;
            }
            side = 0;
            if (b - a <= tol) return 0.5 * (a + b);
        }
        last_width = b - a;
    }
    return 0.5 * (a + b);
}

}  // namespace igof::numeric
