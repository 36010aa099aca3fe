#include "entlab/quadrature.hpp"

#include <cmath>
#include <queue>
#include <vector>

#include "entlab/errors.hpp"

namespace entlab {

namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                           0.417959183673469};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment eval_segment(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double fsum = f(c - h * kXgk[j]) + f(c + h * kXgk[j]);
        resk += kWgk[j] * fsum;
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }
    const double value = resk * h;
    const double error = std::abs((resk - resg) * h);
    return Segment{a, b, value, error};
}

} // namespace

double integrate_gk15(const std::function<double(double)>& f, double a, double b, double rel_tol,
                      double abs_tol) {
    constexpr int kInitialSegments = 8;
    constexpr int kMaxSegments = 20000;

    std::priority_queue<Segment> queue;
    double total = 0.0;
    double err = 0.0;
    for (int i = 0; i < kInitialSegments; ++i) {
        const double sa = a + (b - a) * i / kInitialSegments;
        const double sb = a + (b - a) * (i + 1) / kInitialSegments;
        Segment s = eval_segment(f, sa, sb);
        total += s.value;
        err += s.error;
        queue.push(s);
    }

    int segments = kInitialSegments;
    while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (segments >= kMaxSegments) {
            throw QuadratureFailure("adaptive integration did not reach tolerance (error " +
                                    std::to_string(err) + ")");
        }
        const Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = eval_segment(f, worst.a, mid);
        const Segment right = eval_segment(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++segments;
    }
    return total;
}

} // namespace entlab
