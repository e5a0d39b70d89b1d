#include "kpz/exact.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace kpz {

namespace {

void require_chamber(std::span<const long> v, const char* what)
{
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] >= v[i - 1])
            throw std::invalid_argument(std::string(what) + " is not strictly decreasing");
}

}  // namespace

double schuetz_transition(std::span<const long> x, std::span<const long> y, double t)
{
    const int n = int(x.size());
    if (n < 1 || n > 8 || int(y.size()) != n)
        throw std::invalid_argument("schuetz_transition: need 1 <= N <= 8 and matching sizes");
    require_chamber(x, "x");
    require_chamber(y, "y");
    if (t < 0)
        throw std::invalid_argument("schuetz_transition: negative time");
    Eigen::MatrixXd m(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            m(i - 1, j - 1) = schuetz_F(i - j, x[size_t(n - i)] - y[size_t(n - j)], t);
    return m.determinant();
}

double psi_conj(const InitialData& x0, long n, long k, long x, double t)
{
    long c = x0.at(n - k);
    if (c >= kPlusInf || c <= kMinusInf)
        throw std::out_of_range("psi: label " + std::to_string(n - k) + " has no finite position");
    long d = x + k - c;
    if (d < 0)
        return 0.0;
    long jmax = k >= 0 ? std::min(k, d) : d;
    double s = 0.0;
    for (long j = 0; j <= jmax; ++j) {
        double term = gen_binomial_d(k, j) * poisson_pmf(d - j, t);
        s += (j % 2 == 0) ? term : -term;
    }
    return std::ldexp(s, int(c - x));
}

double psi_plain(const InitialData& x0, long n, long k, long x, double t)
{
    return std::ldexp(psi_conj(x0, n, k, x, t), int(x - x0.at(n - k)));
}

GtResult gt_pattern_sum(std::span<const long> x, std::span<const long> y, double t, long pad)
{
    const int N = int(x.size());
    if (N < 1 || N > 4 || int(y.size()) != N)
        throw std::invalid_argument("gt_pattern_sum: need 1 <= N <= 4 and matching sizes");
    if (pad < 0)
        throw std::invalid_argument("gt_pattern_sum: negative pad");
    require_chamber(x, "x");
    require_chamber(y, "y");

    auto x0 = InitialData::explicit_data(std::vector<long>(y.begin(), y.end()));
    std::map<std::pair<int, long>, double> psi_cache;
    auto psi = [&](int k, long z) {
        auto key = std::make_pair(k, z);
        auto it = psi_cache.find(key);
        if (it != psi_cache.end())
            return it->second;
        double v = psi_plain(x0, N, k, z, t);
        psi_cache.emplace(key, v);
        return v;
    };

    auto run = [&](long p) {
        long lo = std::min(*std::min_element(x.begin(), x.end()), *std::min_element(y.begin(), y.end())) - p;
        long hi = std::max(x[0], y[0]) + p;
        GtResult r;
        // level n holds z^n_1 < ... < z^n_n; z^n_1 = x_n
        std::function<void(const std::vector<long>&, int)> grow = [&](const std::vector<long>& prev, int n) {
            if (n > N) {
                Eigen::MatrixXd m(N, N);
                for (int i = 0; i < N; ++i)
                    for (int j = 1; j <= N; ++j)
                        m(i, j - 1) = psi(N - j, prev[size_t(i)]);
                r.value += m.determinant();
                ++r.patterns;
                return;
            }
            std::vector<long> cur(static_cast<size_t>(n));
            cur[0] = x[size_t(n - 1)];
            if (cur[0] < lo || cur[0] >= prev[0])
                return;
            // z^n_{i+1} in [z^{n-1}_i, z^{n-1}_{i+1} - 1], last one in [z^{n-1}_{n-1}, hi]
            std::function<void(int)> fill = [&](int i) {
                if (i == n) {
                    grow(cur, n + 1);
                    return;
                }
                long a = prev[size_t(i - 1)];
                long b = (i < n - 1) ? prev[size_t(i)] - 1 : hi;
                a = std::max(a, lo);
                for (long v = a; v <= b; ++v) {
                    cur[size_t(i)] = v;
                    fill(i + 1);
                }
            };
            fill(1);
        };
        if (N == 1) {
            r.value = psi(0, x[0]);
            r.patterns = 1;
            return r;
        }
        grow(std::vector<long>{x[0]}, 2);
        return r;
    };

    GtResult full = run(pad);
    GtResult half = run(pad / 2);
    full.pad_delta = std::abs(full.value - half.value);
    return full;
}

}  // namespace kpz
