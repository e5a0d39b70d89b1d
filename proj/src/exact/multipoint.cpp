#include "kpz/exact.hpp"
#include "kpz/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace kpz {

namespace {

void check_events(std::span<const Event> events)
{
    for (size_t i = 0; i < events.size(); ++i) {
        if (events[i].n < 1)
            throw std::invalid_argument("events: labels must be >= 1");
        if (i > 0 && events[i].n <= events[i - 1].n)
            throw std::invalid_argument("events: labels must be strictly increasing");
    }
}

using RightFiniteEval = std::function<MultipointResult(const InitialData&, std::vector<Event>)>;

// Drops +inf leaders (those constraints hold surely) and replaces two-sided
// periodic data by its cutoff at label 1 - L, growing L until the value settles.
MultipointResult reduce_and_eval(const InitialData& x0, std::span<const Event> events, double tol,
                                 const RightFiniteEval& eval)
{
    check_events(events);
    if (x0.kind() == InitialData::Kind::explicit_) {
        long leaders = 0;
        while (x0.at(leaders + 1) >= kPlusInf)
            ++leaders;
        auto rf = x0.right_finite();
        std::vector<Event> ev;
        for (auto e : events)
            if (e.n > leaders) {
                if (e.n - leaders > *rf.finite_count())
                    throw std::out_of_range("events: label beyond the last particle");
                ev.push_back({int(e.n - leaders), e.a});
            }
        if (ev.empty())
            return {};
        return eval(rf, std::move(ev));
    }
    if (events.empty())
        return {};
    if (x0.kind() == InitialData::Kind::step)
        return eval(x0, std::vector<Event>(events.begin(), events.end()));

    const int n_top = events.back().n;
    MultipointResult prev;
    bool have_prev = false;
    for (int L = 4; L <= 64; L *= 2) {
        std::vector<long> y;
        for (long j = 1; j <= n_top + L; ++j)
            y.push_back(x0.at(j - L));
        std::vector<Event> ev;
        for (auto e : events)
            ev.push_back({e.n + L, e.a});
        MultipointResult cur = eval(InitialData::explicit_data(std::move(y)), std::move(ev));
        if (have_prev && std::abs(cur.value - prev.value) < tol) {
            cur.delta = std::max(cur.delta, std::abs(cur.value - prev.value));
            return cur;
        }
        prev = cur;
        have_prev = true;
    }
    throw std::runtime_error("multipoint: right cutoff did not converge; last value " + std::to_string(prev.value));
}

}  // namespace

DiscreteKernelWindow kernel_window(HitKernel& K, std::span<const Event> events, long lower_pad)
{
    DiscreteKernelWindow w;
    long amin = events[0].a;
    for (auto e : events)
        amin = std::min(amin, e.a);
    // rows below X_0(n_M) - n_M carry only the nilpotent Q part; truncating there is exact
    const long floor_ = K.initial().at(events.back().n) - events.back().n - 1;
    const long lo = std::max(amin - lower_pad, floor_);
    std::vector<std::pair<int, long>> pts;
    for (auto e : events) {
        w.indices.push_back(e.n);
        w.thresholds.push_back(e.a);
        w.intervals.push_back({lo, e.a});
        for (long x = lo; x <= e.a; ++x)
            pts.push_back({e.n, x});
    }
    const int m = int(pts.size());
    w.kernel.resize(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            w.kernel(i, j) = K(pts[size_t(i)].first, pts[size_t(i)].second, pts[size_t(j)].first,
                               pts[size_t(j)].second);
    return w;
}

MultipointResult multipoint_probability(const InitialData& x0, double t, std::span<const Event> events, double tol)
{
    if (t == 0) {
        MultipointResult r;
        for (auto e : events)
            if (!(x0.at(e.n) > e.a))
                r.value = 0.0;
        return r;
    }
    auto eval = [&](const InitialData& data, std::vector<Event> ev) {
        HitKernel K(data, t);
        long pad = 48;
        double prev = det_window(kernel_window(K, ev, pad).kernel);
        for (int d = 1; d <= 6; ++d) {
            pad *= 2;
            double cur = det_window(kernel_window(K, ev, pad).kernel);
            double delta = std::abs(cur - prev);
            if (delta < tol)
                return MultipointResult{cur, delta, pad, d};
            prev = cur;
        }
        throw std::runtime_error("multipoint_probability: lower window did not converge");
    };
    return reduce_and_eval(x0, events, tol, eval);
}

double path_integral_probability(const InitialData& x0, double t, std::span<const Event> events)
{
    if (!(t > 0))
        throw std::invalid_argument("path_integral_probability: needs t > 0");
    auto eval = [&](const InitialData& data, std::vector<Event> ev) {
        HitKernel K(data, t);
        const int nm = ev.back().n;
        long amin = ev[0].a;
        for (auto e : ev)
            amin = std::min(amin, e.a);
        const long lo = data.at(nm) - nm - 4;
        const long hi = data.at(1) + 30 + long(std::ceil(10 * t));
        const long vlo = std::min(lo, amin - nm - 20), vhi = hi + nm + 20;
        const long yhi = vhi - nm - 2;
        const int nw = int(hi - lo + 1), nv = int(vhi - vlo + 1), ny = int(yhi - vlo + 1);

        auto qmat = [&](long m) {
            Eigen::MatrixXd q(nv, nv);
            for (int i = 0; i < nv; ++i)
                for (int j = 0; j < nv; ++j)
                    q(i, j) = q_pow(m, vlo + i, vlo + j);
            return q;
        };
        auto proj = [&](Eigen::MatrixXd& r, long a) {
            for (int j = 0; j < nv; ++j)
                if (!(vlo + j > a))
                    r.col(j).setZero();
        };
        Eigen::MatrixXd R = qmat(ev[0].n - nm);
        proj(R, ev[0].a);
        for (size_t i = 1; i < ev.size(); ++i) {
            R = R * qmat(ev[i].n - ev[i - 1].n);
            proj(R, ev[i].a);
        }
        Eigen::MatrixXd KW(nw, nw), KY(nw, ny), RY(ny, nw);
        for (int i = 0; i < nw; ++i) {
            for (int j = 0; j < nw; ++j)
                KW(i, j) = K.one_index(nm, lo + i, lo + j);
            for (int j = 0; j < ny; ++j)
                KY(i, j) = K.one_index(nm, lo + i, vlo + j);
        }
        for (int i = 0; i < ny; ++i)
            for (int j = 0; j < nw; ++j)
                RY(i, j) = R(i, int(lo - vlo) + j);
        Eigen::MatrixXd A = KW - KY * RY;
        return MultipointResult{det_window(A), 0.0, 0, 0};
    };
    return reduce_and_eval(x0, events, 1e-11, eval).value;
}

}  // namespace kpz
