#include "fdlab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fdlab {

namespace {

std::size_t bracket(const std::vector<double>& ts, double t) {
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    std::size_t hi = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - ts.begin(), 1),
                                           ts.size() - 1);
    return hi;
}

} // namespace

std::array<double, 2> FlowPath::position(double t) const {
    std::size_t hi = bracket(times, t), lo = hi - 1;
    double w = std::clamp((t - times[lo]) / (times[hi] - times[lo]), 0.0, 1.0);
    return {(1 - w) * positions[lo][0] + w * positions[hi][0],
            (1 - w) * positions[lo][1] + w * positions[hi][1]};
}

double FlowPath::source(double t) const {
    std::size_t hi = bracket(times, t), lo = hi - 1;
    double w = std::clamp((t - times[lo]) / (times[hi] - times[lo]), 0.0, 1.0);
    return (1 - w) * source_integral[lo] + w * source_integral[hi];
}

FlowPath flow_ode(const DriftField& b, const ForcingField* f, int steps) {
    if (steps < 1) throw std::invalid_argument("flow_ode: steps must be positive");

    const double h = -1.0 / steps; // backward from 0 to -1
    std::array<double, 2> v{0.0, 0.0};
    double s = 0.0;

    std::vector<double> ts(steps + 1);
    std::vector<std::array<double, 2>> vs(steps + 1);
    std::vector<double> ss(steps + 1);
    ts[steps] = 0.0;
    vs[steps] = v;
    ss[steps] = s;

    auto rhs_v = [&](double t, std::array<double, 2> x) { return b.eval(t, x[0], x[1]); };
    auto rhs_s = [&](double t) { return f ? -f->eval_origin(t) : 0.0; };

    double t = 0.0;
    for (int i = steps; i-- > 0;) {
        auto k1 = rhs_v(t, v);
        double l1 = rhs_s(t);
        std::array<double, 2> v2{v[0] + 0.5 * h * k1[0], v[1] + 0.5 * h * k1[1]};
        auto k2 = rhs_v(t + 0.5 * h, v2);
        double l2 = rhs_s(t + 0.5 * h);
        std::array<double, 2> v3{v[0] + 0.5 * h * k2[0], v[1] + 0.5 * h * k2[1]};
        auto k3 = rhs_v(t + 0.5 * h, v3);
        double l3 = l2;
        std::array<double, 2> v4{v[0] + h * k3[0], v[1] + h * k3[1]};
        auto k4 = rhs_v(t + h, v4);
        double l4 = rhs_s(t + h);

        v[0] += h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
        v[1] += h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
        s += h / 6.0 * (l1 + 2 * l2 + 2 * l3 + l4);
        t += h;

        ts[i] = t;
        vs[i] = v;
        ss[i] = s;
    }
    // endpoints exact by construction
    ts[0] = -1.0;

    FlowPath path;
    path.times = std::move(ts);
    path.positions = std::move(vs);
    path.source_integral = std::move(ss);
    return path;
}

} // namespace fdlab
