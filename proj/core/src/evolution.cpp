#include "fdlab/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fdlab/errors.hpp"
#include "fdlab/fft.hpp"
#include "fdlab/holder.hpp"
#include "fdlab/spectral.hpp"

namespace fdlab {

// ---------------------------------------------------------------- DriftField

DriftField DriftField::zero(int dim) {
    DriftField b;
    b.dim_ = dim;
    return b;
}

DriftField DriftField::constant(int dim, std::array<double, 2> c) {
    DriftField b;
    b.dim_ = dim;
    double sup = std::fabs(c[0]) + (dim == 2 ? std::fabs(c[1]) : 0.0);
    if (sup == 0.0) return b;
    b.zero_ = false;
    b.sup_ = sup;
    b.fn_ = [c](double, double, double) { return c; };
    return b;
}

DriftField DriftField::analytic(int dim, Analytic fn, double sup_bound, double holder_exponent) {
    DriftField b;
    b.dim_ = dim;
    b.zero_ = false;
    b.sup_ = sup_bound;
    b.holder_ = holder_exponent;
    b.fn_ = std::move(fn);
    return b;
}

DriftField DriftField::steady(std::vector<ScalarField> components, double holder_exponent) {
    return sampled({0.0}, {std::move(components)}, holder_exponent);
}

DriftField DriftField::sampled(std::vector<double> times,
                               std::vector<std::vector<ScalarField>> comps,
                               double holder_exponent) {
    if (times.empty() || comps.size() != times.size())
        throw std::invalid_argument("DriftField: slice/time mismatch");
    DriftField b;
    b.dim_ = static_cast<int>(comps[0].size());
    if (b.dim_ != 1 && b.dim_ != 2) throw std::invalid_argument("DriftField: 1 or 2 components");
    b.holder_ = holder_exponent;
    b.times_ = std::move(times);
    b.slices_ = std::move(comps);
    double sup = 0.0;
    for (const auto& slice : b.slices_) {
        double s = 0.0;
        for (const auto& comp : slice) s += comp.sup_norm();
        sup = std::max(sup, s);
    }
    b.sup_ = sup;
    b.zero_ = sup == 0.0;
    return b;
}

DriftField DriftField::synthesize(const TorusGrid& grid, const HolderSynthConfig& cfg) {
    std::vector<ScalarField> comps;
    for (int c = 0; c < grid.dim; ++c) {
        HolderSynthConfig per = cfg;
        per.seed = cfg.seed + 0x9E37ULL * (c + 1);
        comps.push_back(synth_holder(per, grid));
    }
    return steady(std::move(comps), cfg.beta);
}

double DriftField::interp_node(const ScalarField& f, double x0, double x1) const {
    const TorusGrid& g = f.grid;
    double h = g.spacing();
    double u = x0 / h, v = x1 / h;
    int i0 = static_cast<int>(std::floor(u));
    double fu = u - i0;
    if (g.dim == 1) return (1 - fu) * f.values[g.wrap(i0)] + fu * f.values[g.wrap(i0 + 1)];
    int i1 = static_cast<int>(std::floor(v));
    double fv = v - i1;
    return (1 - fu) * (1 - fv) * f.at(i0, i1) + fu * (1 - fv) * f.at(i0 + 1, i1) +
           (1 - fu) * fv * f.at(i0, i1 + 1) + fu * fv * f.at(i0 + 1, i1 + 1);
}

std::array<double, 2> DriftField::eval(double t, double x0, double x1) const {
    if (zero_) return {0.0, 0.0};
    if (fn_) return fn_(t, x0, x1);

    // locate the time bracket, clamped at the ends
    std::array<double, 2> out{0.0, 0.0};
    if (times_.size() == 1) {
        for (int c = 0; c < dim_; ++c) out[c] = interp_node(slices_[0][c], x0, x1);
        return out;
    }
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t hi = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - times_.begin(), 1),
                                           times_.size() - 1);
    std::size_t lo = hi - 1;
    double w = (t - times_[lo]) / (times_[hi] - times_[lo]);
    w = std::clamp(w, 0.0, 1.0);
    for (int c = 0; c < dim_; ++c)
        out[c] = (1 - w) * interp_node(slices_[lo][c], x0, x1) +
                 w * interp_node(slices_[hi][c], x0, x1);
    return out;
}

ScalarField DriftField::component_at(double t, int comp, const TorusGrid& grid) const {
    ScalarField out(grid);
    if (zero_) return out;
    if (fn_) {
        if (grid.dim == 1)
            for (int i = 0; i < grid.n; ++i)
                out.values[i] = fn_(t, grid.signed_coord(i), 0.0)[comp];
        else
            for (int i0 = 0; i0 < grid.n; ++i0)
                for (int i1 = 0; i1 < grid.n; ++i1)
                    out.values[grid.index(i0, i1)] =
                        fn_(t, grid.signed_coord(i0), grid.signed_coord(i1))[comp];
        return out;
    }
    if (!(slices_[0][comp].grid == grid))
        throw std::invalid_argument("DriftField: sampled on a different grid");
    if (times_.size() == 1) return slices_[0][comp];
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t hi = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - times_.begin(), 1),
                                           times_.size() - 1);
    std::size_t lo = hi - 1;
    double w = std::clamp((t - times_[lo]) / (times_[hi] - times_[lo]), 0.0, 1.0);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = (1 - w) * slices_[lo][comp].values[i] + w * slices_[hi][comp].values[i];
    return out;
}

DriftField DriftField::scaled(double factor) const {
    DriftField b = *this;
    if (zero_ || factor == 0.0) {
        b.zero_ = true;
        b.sup_ = 0.0;
        b.fn_ = nullptr;
        b.times_.clear();
        b.slices_.clear();
        return b;
    }
    b.sup_ = sup_ * std::fabs(factor);
    if (fn_) {
        auto base = fn_;
        b.fn_ = [base, factor](double t, double x0, double x1) {
            auto v = base(t, x0, x1);
            return std::array<double, 2>{factor * v[0], factor * v[1]};
        };
    }
    for (auto& slice : b.slices_)
        for (auto& comp : slice)
            for (double& v : comp.values) v *= factor;
    return b;
}

// --------------------------------------------------------------- ForcingField

ForcingField ForcingField::zero() { return ForcingField(); }

ForcingField ForcingField::steady(ScalarField f) {
    ForcingField out;
    out.sup_ = f.sup_norm();
    out.zero_ = out.sup_ == 0.0;
    out.has_field_ = true;
    out.field_ = std::move(f);
    return out;
}

ForcingField ForcingField::analytic(Analytic fn, double sup_bound) {
    ForcingField out;
    out.zero_ = false;
    out.sup_ = sup_bound;
    out.fn_ = std::move(fn);
    return out;
}

ScalarField ForcingField::sample(double t, const TorusGrid& grid) const {
    if (zero_) return ScalarField(grid);
    if (has_field_) {
        if (!(field_.grid == grid))
            throw std::invalid_argument("ForcingField: sampled on a different grid");
        return field_;
    }
    ScalarField out(grid);
    if (grid.dim == 1)
        for (int i = 0; i < grid.n; ++i) out.values[i] = fn_(t, grid.signed_coord(i), 0.0);
    else
        for (int i0 = 0; i0 < grid.n; ++i0)
            for (int i1 = 0; i1 < grid.n; ++i1)
                out.values[grid.index(i0, i1)] =
                    fn_(t, grid.signed_coord(i0), grid.signed_coord(i1));
    return out;
}

double ForcingField::eval_origin(double t) const {
    if (zero_) return 0.0;
    if (has_field_) return field_.values[0];
    return fn_(t, 0.0, 0.0);
}

ForcingField ForcingField::scaled(double factor) const {
    ForcingField f = *this;
    if (zero_ || factor == 0.0) return ForcingField();
    f.sup_ = sup_ * std::fabs(factor);
    if (has_field_)
        for (double& v : f.field_.values) v *= factor;
    else {
        auto base = fn_;
        f.fn_ = [base, factor](double t, double x0, double x1) {
            return factor * base(t, x0, x1);
        };
    }
    return f;
}

// ----------------------------------------------------------------------- step

namespace {

// Second-order upwind biased derivative along one axis, advective form.
void add_upwind_advection(const ScalarField& u, const ScalarField& bcomp, int axis,
                          ScalarField& acc) {
    const TorusGrid& g = u.grid;
    const double inv2h = 1.0 / (2.0 * g.spacing());
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) {
            double b = bcomp.values[i];
            double d;
            if (b >= 0.0)
                d = (3.0 * u.values[i] - 4.0 * u.values[g.wrap(i - 1)] + u.values[g.wrap(i - 2)]) *
                    inv2h;
            else
                d = (-3.0 * u.values[i] + 4.0 * u.values[g.wrap(i + 1)] -
                     u.values[g.wrap(i + 2)]) *
                    inv2h;
            acc.values[i] += b * d;
        }
        return;
    }
    for (int i0 = 0; i0 < g.n; ++i0) {
        for (int i1 = 0; i1 < g.n; ++i1) {
            std::size_t idx = g.index(i0, i1);
            double b = bcomp.values[idx];
            double d;
            if (axis == 0) {
                if (b >= 0.0)
                    d = (3.0 * u.at(i0, i1) - 4.0 * u.at(i0 - 1, i1) + u.at(i0 - 2, i1)) * inv2h;
                else
                    d = (-3.0 * u.at(i0, i1) + 4.0 * u.at(i0 + 1, i1) - u.at(i0 + 2, i1)) * inv2h;
            } else {
                if (b >= 0.0)
                    d = (3.0 * u.at(i0, i1) - 4.0 * u.at(i0, i1 - 1) + u.at(i0, i1 - 2)) * inv2h;
                else
                    d = (-3.0 * u.at(i0, i1) + 4.0 * u.at(i0, i1 + 1) - u.at(i0, i1 + 2)) * inv2h;
            }
            acc.values[idx] += b * d;
        }
    }
}

double phi1(double z) {
    // (1 - e^{-z}) / z, stable near zero
    if (z < 1e-5) return 1.0 - z / 2.0 + z * z / 6.0;
    return (1.0 - std::exp(-z)) / z;
}

} // namespace

EvolutionState step(const EvolutionState& st, const DriftField& b, const ScalarField& f_now,
                    double dt, const StepOptions& opt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    const TorusGrid& g = st.u.grid;
    if (!(f_now.grid == g)) throw std::invalid_argument("step: forcing grid mismatch");

    // CFL record: dt * max_x sum_c |b_c| / h <= cfl_max
    double bmax = 0.0;
    std::vector<ScalarField> bcomp;
    if (!b.is_zero()) {
        for (int c = 0; c < g.dim; ++c) bcomp.push_back(b.component_at(st.time, c, g));
        for (std::size_t i = 0; i < g.num_nodes(); ++i) {
            double s = std::fabs(bcomp[0].values[i]);
            if (g.dim == 2) s += std::fabs(bcomp[1].values[i]);
            bmax = std::max(bmax, s);
        }
    }
    if (bmax > 0.0) {
        double admissible = st.cfl_max * g.spacing() / bmax;
        if (dt > admissible * (1.0 + 1e-12))
            throw CflError("step: dt " + std::to_string(dt) + " violates CFL, admissible " +
                               std::to_string(admissible),
                           admissible);
    }

    // explicit right-hand side f - b . grad u
    ScalarField rhs = f_now;
    for (int c = 0; c < g.dim && !b.is_zero(); ++c) {
        ScalarField adv(g);
        add_upwind_advection(st.u, bcomp[c], c, adv);
        for (std::size_t i = 0; i < rhs.values.size(); ++i) rhs.values[i] -= adv.values[i];
    }

    EvolutionState out = st;
    out.time = st.time + dt;
    out.last_dt = dt;

    if (opt.disable_diffusion) {
        out.u = st.u;
        for (std::size_t i = 0; i < out.u.values.size(); ++i)
            out.u.values[i] += dt * rhs.values[i];
        return out;
    }

    // exponential Euler: exact integration of the diffusion multiplier
    Spectrum us = rfft(st.u), rs = rfft(rhs);
    for (std::size_t i = 0; i < us.coeffs.size(); ++i) {
        double kappa = spectrum_kappa(g, i);
        double lam = kappa == 0.0 ? 0.0
                                  : std::pow(kappa, 2.0 * st.params.s) + st.eps * kappa * kappa;
        double z = dt * lam;
        us.coeffs[i] = std::exp(-z) * us.coeffs[i] + dt * phi1(z) * rs.coeffs[i];
    }
    out.u = irfft(us);
    return out;
}

// ------------------------------------------------------------------ solve_ivp

IvpResult solve_ivp(const ScalarField& u0, const DriftField& b, const ForcingField& f, double T,
                    const FractionalParams& p, double eps, const IvpOptions& opt) {
    if (!(T > 0.0)) throw std::invalid_argument("solve_ivp: T must be positive");
    if (!u0.finite()) throw std::invalid_argument("solve_ivp: non-finite data");

    EvolutionState st;
    st.time = opt.t0;
    st.u = u0;
    st.params = p;
    st.eps = eps;
    st.cfl_max = opt.cfl_max;

    IvpResult res;
    auto record = [&](const EvolutionState& s) {
        res.series_t.push_back(s.time);
        res.series_sup.push_back(s.u.sup_norm());
        res.series_min.push_back(s.u.min());
        res.series_max.push_back(s.u.max());
        res.series_mean.push_back(s.u.mean());
        res.series_energy.push_back(inner_product(s.u, s.u));
    };
    auto save = [&](const EvolutionState& s) {
        res.saved.times.push_back(s.time);
        res.saved.fields.push_back(s.u);
        res.band_t.push_back(s.time);
        double L = s.u.grid.length;
        for (int bscale = 0; bscale < 3; ++bscale)
            res.band_osc[bscale].push_back(
                band_oscillation(s.u, L / (8 << bscale)));
    };

    record(st);
    save(st);

    const double t_end = opt.t0 + T;
    const double guard = opt.blowup_factor * (u0.sup_norm() + T * f.sup_norm()) + 1e-12;
    double next_save = opt.save_dt > 0.0 ? opt.t0 + opt.save_dt : t_end;

    while (st.time < t_end - 1e-13) {
        double dt = std::min(opt.dt_max, t_end - st.time);
        if (!b.is_zero()) {
            double bmax = b.sup_norm();
            if (bmax > 0.0) dt = std::min(dt, opt.cfl_max * st.u.grid.spacing() / bmax);
        }
        double to_save = next_save - st.time;
        if (to_save > 1e-13) dt = std::min(dt, to_save);

        ScalarField f_now = f.sample(st.time, st.u.grid);
        st = step(st, b, f_now, dt, {});
        record(st);

        if (st.u.sup_norm() > guard)
            throw InstabilityError("solve_ivp: sup-norm guard tripped at t = " +
                                   std::to_string(st.time));

        if (st.time >= next_save - 1e-12) {
            save(st);
            next_save = opt.save_dt > 0.0 ? next_save + opt.save_dt : t_end + 1.0;
        }
    }
    if (res.saved.times.empty() || std::fabs(res.saved.times.back() - st.time) > 1e-12) save(st);
    res.final_state = st;
    return res;
}

double perturbation_experiment(const ScalarField& u0, const DriftField& b, const ForcingField& f,
                               double delta, const FractionalParams& p, double eps,
                               const IvpOptions& opt_in) {
    if (delta < 0.0) throw std::invalid_argument("perturbation_experiment: delta must be >= 0");
    if (eps > delta)
        throw std::invalid_argument("perturbation_experiment: needs eps <= delta");

    DriftField bd = b.is_zero() || delta == 0.0 ? DriftField::zero(b.dim())
                                                : b.scaled(delta / b.sup_norm());
    ForcingField fd = f.is_zero() || delta == 0.0 ? ForcingField::zero()
                                                  : f.scaled(delta / f.sup_norm());

    IvpOptions opt = opt_in;
    if (opt.save_dt <= 0.0) opt.save_dt = 0.05;
    // shared fixed step keeps the two runs on the same clock
    double h = u0.grid.spacing();
    if (delta > 0.0) opt.dt_max = std::min(opt.dt_max, 0.9 * opt.cfl_max * h / delta);

    IvpResult drifted = solve_ivp(u0, bd, fd, 1.0, p, eps, opt);
    IvpResult clean = solve_ivp(u0, DriftField::zero(b.dim()), ForcingField::zero(), 1.0, p, 0.0,
                                opt);

    if (drifted.saved.times.size() != clean.saved.times.size())
        throw std::runtime_error("perturbation_experiment: save grids diverged");
    double sup = 0.0;
    for (std::size_t i = 0; i < drifted.saved.fields.size(); ++i)
        sup = std::max(sup, sup_distance(drifted.saved.fields[i], clean.saved.fields[i]));
    return sup;
}

} // namespace fdlab
