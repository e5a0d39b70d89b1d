#include "kpz/exact.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kpz {

bool in_gt(const std::vector<std::vector<long>>& z)
{
    for (size_t n = 0; n < z.size(); ++n) {
        if (z[n].size() != n + 1)
            return false;
        if (n == 0)
            continue;
        // z^{n+1}_i < z^n_i <= z^{n+1}_{i+1}
        for (size_t i = 0; i < n; ++i)
            if (!(z[n][i] < z[n - 1][i] && z[n - 1][i] <= z[n][i + 1]))
                return false;
    }
    return true;
}

double gt_indicator_det(const std::vector<std::vector<long>>& z)
{
    double prod = 1.0;
    for (size_t n = 0; n < z.size(); ++n) {
        const int m = int(n + 1);
        Eigen::MatrixXd a(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                a(i, j) = (i == m - 1) ? 1.0 : (z[n - 1][size_t(i)] > z[n][size_t(j)] ? 1.0 : 0.0);
        prod *= a.determinant();
    }
    return prod;
}

BfpsReport bfps_l_verify(const InitialData& x0, double t, long half_width, std::uint64_t seed)
{
    const int N = 2;
    if (half_width < 8)
        throw std::invalid_argument("bfps_l_verify: window half-width must be >= 8");
    BiorthoSystem bio(x0, t, N);
    auto psi4 = [&](int n, int k, long x) { return psi_plain(x0, n, k, x, t); };
    auto phi4 = [&](int n, int k, long x) { return std::ldexp(bio.phi(n, k, x), int(x0.at(n - k) - x)); };
    auto kt4 = [&](int ni, long xi, int nj, long xj) {
        double s = 0.0;
        if (ni < nj) {
            long m = nj - ni, d = xi - xj;
            if (d >= m)
                s -= gen_binomial_d(d - 1, m - 1);
        }
        for (int k = 1; k <= nj; ++k)
            s += psi4(ni, ni - k, xi) * phi4(nj, nj - k, xj);
        return s;
    };

    // space: *1, *2, then (1,z), (2,z) for z in the window
    const long W = 2 * half_width + 1;
    const int S = int(2 + N * W);
    auto idx = [&](int n, long z) { return int(2 + (n - 1) * W + (z + half_width)); };
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(S, S);
    std::vector<long> labels(static_cast<size_t>(S));
    std::vector<bool> in_Z(size_t(S), true);
    in_Z[0] = in_Z[1] = false;
    labels[0] = -1;
    labels[1] = -2;
    for (long z = -half_width; z <= half_width; ++z) {
        labels[size_t(idx(1, z))] = z;
        labels[size_t(idx(2, z))] = z;
        L(0, idx(1, z)) = 1.0;
        L(1, idx(2, z)) = 1.0;
        L(idx(2, z), 0) = psi4(2, 1, z);
        L(idx(2, z), 1) = psi4(2, 0, z);
        for (long y = z + 1; y <= half_width; ++y)
            L(idx(1, y), idx(2, z)) = -1.0;
    }
    LEnsembleSpec spec(labels, L, in_Z);
    FiniteDpp k = conditional_l_to_k(spec);

    BfpsReport rep;
    for (int n1 = 1; n1 <= N; ++n1)
        for (int n2 = 1; n2 <= N; ++n2)
            for (long x1 = -6; x1 <= 4; ++x1)
                for (long x2 = -6; x2 <= 4; ++x2) {
                    double a = k.kernel(idx(n1, x1) - 2, idx(n2, x2) - 2);
                    rep.max_deviation = std::max(rep.max_deviation, std::abs(a - kt4(n1, x1, n2, x2)));
                }

    // weight of a triangular array z = (z^1_1; z^2_1 < z^2_2) against det(L) on the stars plus z
    std::uint64_t ctr = 0;
    auto draw = [&](long lo, long hi) {
        double u = counter_uniform(seed, 11, ctr++);
        return lo + long(u * double(hi - lo + 1));
    };
    double dev_plus = 0.0, dev_minus = 0.0;
    for (int s = 0; s < 50; ++s) {
        long a = draw(-5, 4), b = draw(-5, 4), y = draw(-5, 4);
        if (a == b)
            continue;
        if (a > b)
            std::swap(a, b);
        std::vector<int> sub{0, 1, idx(1, y), idx(2, a), idx(2, b)};
        Eigen::MatrixXd m(5, 5);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                m(i, j) = L(sub[size_t(i)], sub[size_t(j)]);
        double det_l = m.determinant();
        double ind = (y > a ? 1.0 : 0.0) - (y > b ? 1.0 : 0.0);
        Eigen::Matrix2d ps;
        for (int i = 0; i < 2; ++i)
            for (int j = 1; j <= 2; ++j)
                ps(i, j - 1) = psi4(2, 2 - j, i == 0 ? a : b);
        double w = ind * ps.determinant();
        dev_plus = std::max(dev_plus, std::abs(det_l - w));
        dev_minus = std::max(dev_minus, std::abs(det_l + w));
    }
    rep.weight_deviation = std::min(dev_plus, dev_minus);

    for (int s = 0; s < 100; ++s) {
        std::vector<std::vector<long>> z(3);
        for (int n = 0; n < 3; ++n) {
            std::vector<long> level;
            while (int(level.size()) < n + 1) {
                long v = draw(-3, 3);
                if (std::find(level.begin(), level.end(), v) == level.end())
                    level.push_back(v);
            }
            std::sort(level.begin(), level.end());
            z[size_t(n)] = level;
        }
        ++rep.gt_indicator_checks;
        if (std::abs(gt_indicator_det(z) - (in_gt(z) ? 1.0 : 0.0)) > 1e-12)
            ++rep.gt_indicator_failures;
    }
    return rep;
}

}  // namespace kpz
