#include "fraclap/lemmas.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

namespace fraclap {

namespace {

// |x|^(p-2) x with the continuous extension 0 at x = 0 (p > 1)
double signed_pow(double x, double p) {
    if (x == 0.0) return 0.0;
    return std::copysign(std::pow(std::abs(x), p - 1.0), x);
}

bool holds_with_slack(double lhs, double rhs) {
    return lhs >= rhs - 1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double flm = f(0.5 * (a + m));
    const double frm = f(0.5 * (m + b));
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = simpson(a, b, fa, fm, fb);
    const double scale = std::max(1e-300, std::abs(whole));
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, rel_tol * scale, 48);
}

}  // namespace

std::size_t certify_convex(const ConvexProbe& probe, double span, std::size_t samples,
                           std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pick(-span, span);
    std::size_t violations = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        const double a = pick(rng);
        const double b = pick(rng);
        const double lhs = probe.f(0.5 * (a + b));
        const double rhs = 0.5 * (probe.f(a) + probe.f(b));
        if (lhs > rhs + 1e-12 * std::max(1.0, std::abs(rhs))) ++violations;
    }
    return violations;
}

std::size_t certify_monotone(const MonotoneProbe& probe, double span, std::size_t samples,
                             std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pick(-span, span);
    std::size_t violations = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        double a = pick(rng);
        double b = pick(rng);
        if (a > b) std::swap(a, b);
        if (probe.g(a) > probe.g(b) + 1e-12 * std::max(1.0, std::abs(probe.g(b)))) ++violations;
    }
    return violations;
}

InequalityCheck lemma1_check(const ConvexProbe& probe, double a, double b, double A, double B) {
    if (A < 0.0 || B < 0.0) {
        throw std::invalid_argument("lemma1_check: A and B must be nonnegative");
    }
    const double p = probe.p;
    const double bracket = A * signed_pow(probe.f_prime(a), p) - B * signed_pow(probe.f_prime(b), p);
    InequalityCheck out;
    out.lhs = signed_pow(a - b, p) * bracket;
    out.rhs = signed_pow(probe.f(a) - probe.f(b), p) * (A - B);
    out.holds = holds_with_slack(out.lhs, out.rhs);
    return out;
}

double g_transform(const MonotoneProbe& probe, double t) {
    const double p = probe.p;
    auto integrand = [&](double s) {
        const double gp = probe.g_prime(s);
        if (gp < 0.0) {
            throw std::invalid_argument("g_transform: g' must be nonnegative on the path");
        }
        return std::pow(gp, 1.0 / p);
    };
    if (t >= 0.0) return integrate(integrand, 0.0, t, 1e-10);
    return -integrate(integrand, t, 0.0, 1e-10);
}

InequalityCheck lemma2_check(const MonotoneProbe& probe, double a, double b) {
    const double p = probe.p;
    InequalityCheck out;
    out.lhs = signed_pow(a - b, p) * (probe.g(a) - probe.g(b));
    out.rhs = std::pow(std::abs(g_transform(probe, a) - g_transform(probe, b)), p);
    out.holds = holds_with_slack(out.lhs, out.rhs);
    return out;
}

namespace {

void stream_draw(std::ostream* jsonl, const char* lemma, bool with_coeffs,
                 const std::string& probe, double p, double a, double b, double A, double B,
                 const InequalityCheck& chk) {
    if (!jsonl) return;
    (*jsonl) << "{\"lemma\":\"" << lemma << "\",\"probe\":\"" << probe << "\",\"p\":" << p
             << ",\"a\":" << a << ",\"b\":" << b;
    if (with_coeffs) (*jsonl) << ",\"A\":" << A << ",\"B\":" << B;
    (*jsonl) << ",\"lhs\":" << chk.lhs << ",\"rhs\":" << chk.rhs
             << ",\"margin\":" << chk.lhs - chk.rhs << ",\"holds\":" << (chk.holds ? "true" : "false")
             << "}\n";
}

}  // namespace

FuzzReport fuzz_lemma1(std::size_t draws, std::uint64_t seed, std::ostream* jsonl) {
    const ConvexProbe probes[] = {
        {[](double t) { return t * t; }, [](double t) { return 2.0 * t; }, 2.0, "square"},
        {[](double t) { return std::abs(t); },
         [](double t) { return t == 0.0 ? 0.0 : (t > 0.0 ? 1.0 : -1.0); }, 2.0, "abs"},
        {[](double t) { return std::exp(t); }, [](double t) { return std::exp(t); }, 2.0, "exp"},
    };
    const double p_values[] = {1.5, 2.0, 3.0};

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ab(-10.0, 10.0);
    std::uniform_real_distribution<double> coeff(0.0, 10.0);
    std::uniform_int_distribution<std::size_t> pick_probe(0, 2);
    std::uniform_int_distribution<std::size_t> pick_p(0, 2);

    FuzzReport report;
    report.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < draws; ++k) {
        ConvexProbe probe = probes[pick_probe(rng)];
        probe.p = p_values[pick_p(rng)];
        const double a = ab(rng), b = ab(rng), A = coeff(rng), B = coeff(rng);
        const InequalityCheck chk = lemma1_check(probe, a, b, A, B);
        ++report.draws;
        if (!chk.holds) ++report.violations;
        report.min_margin = std::min(report.min_margin, chk.lhs - chk.rhs);
        stream_draw(jsonl, "lemma1", true, probe.label, probe.p, a, b, A, B, chk);
    }
    return report;
}

FuzzReport fuzz_lemma2(std::size_t draws, std::uint64_t seed, std::ostream* jsonl) {
    const MonotoneProbe probes[] = {
        {[](double t) { return t * t * t; }, [](double t) { return 3.0 * t * t; }, 2.0, "cube"},
        {[](double t) { return std::atan(t); }, [](double t) { return 1.0 / (1.0 + t * t); }, 2.0,
         "atan"},
        {[](double t) { return t + t * t * t; }, [](double t) { return 1.0 + 3.0 * t * t; }, 2.0,
         "id_plus_cube"},
    };
    const double p_values[] = {1.5, 2.0, 3.0};

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ab(-5.0, 5.0);
    std::uniform_int_distribution<std::size_t> pick_probe(0, 2);
    std::uniform_int_distribution<std::size_t> pick_p(0, 2);

    FuzzReport report;
    report.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < draws; ++k) {
        MonotoneProbe probe = probes[pick_probe(rng)];
        probe.p = p_values[pick_p(rng)];
        const double a = ab(rng), b = ab(rng);
        const InequalityCheck chk = lemma2_check(probe, a, b);
        ++report.draws;
        if (!chk.holds) ++report.violations;
        report.min_margin = std::min(report.min_margin, chk.lhs - chk.rhs);
        stream_draw(jsonl, "lemma2", false, probe.label, probe.p, a, b, 0.0, 0.0, chk);
    }
    return report;
}

}  // namespace fraclap
