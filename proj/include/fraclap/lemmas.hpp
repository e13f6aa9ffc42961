#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

namespace fraclap {

/// Convex function sample with derivative, for the difference inequality
/// of lemma1_check. p > 1.
struct ConvexProbe {
    std::function<double(double)> f;
    std::function<double(double)> f_prime;
    double p = 2.0;
    std::string label;
};

/// Increasing function sample with nonnegative derivative, for
/// lemma2_check. p > 1.
struct MonotoneProbe {
    std::function<double(double)> g;
    std::function<double(double)> g_prime;
    double p = 2.0;
    std::string label;
};

struct InequalityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// Sampled certification of the probe hypotheses on [-span, span]:
/// midpoint convexity for ConvexProbe, monotonicity for MonotoneProbe.
/// Returns the violation count.
std::size_t certify_convex(const ConvexProbe& probe, double span, std::size_t samples,
                           std::uint64_t seed);
std::size_t certify_monotone(const MonotoneProbe& probe, double span, std::size_t samples,
                             std::uint64_t seed);

/// Difference inequality for convex f, evaluated exactly as written:
///   |a-b|^(p-2)(a-b)[A|f'(a)|^(p-2)f'(a) - B|f'(b)|^(p-2)f'(b)]
///     >= |f(a)-f(b)|^(p-2)(f(a)-f(b))(A-B),   A, B >= 0.
/// holds allows a 1e-12 slack relative to max(1, |lhs|, |rhs|).
InequalityCheck lemma1_check(const ConvexProbe& probe, double a, double b, double A, double B);

/// G(t) = int_0^t g'(s)^(1/p) ds via adaptive Simpson quadrature
/// (relative tolerance 1e-10). Rejects negative g' samples.
double g_transform(const MonotoneProbe& probe, double t);

/// Increasing-function inequality:
///   |a-b|^(p-2)(a-b)(g(a)-g(b)) >= |G(a)-G(b)|^p.
InequalityCheck lemma2_check(const MonotoneProbe& probe, double a, double b);

struct FuzzReport {
    std::size_t draws = 0;
    std::size_t violations = 0;
    double min_margin = 0.0;  // min over draws of lhs - rhs
};

/// Random campaigns over the built-in probe families. When jsonl is given,
/// one JSON object per draw (probe, p, inputs, lhs, rhs, margin) is
/// streamed to it.
FuzzReport fuzz_lemma1(std::size_t draws, std::uint64_t seed, std::ostream* jsonl = nullptr);
FuzzReport fuzz_lemma2(std::size_t draws, std::uint64_t seed, std::ostream* jsonl = nullptr);

}  // namespace fraclap
