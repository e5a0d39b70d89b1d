#include "kpz/dpp.hpp"

#include <cmath>
#include <stdexcept>

namespace kpz {
namespace {

void check_nonsingular(const Eigen::MatrixXd& m, const char* who)
{
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    if (!lu.isInvertible())
        throw std::runtime_error(std::string(who) + ": singular 1_Z + L");
}

}  // namespace

LEnsembleSpec::LEnsembleSpec(std::vector<long> pts, Eigen::MatrixXd l, std::vector<bool> z)
    : points(std::move(pts)), L(std::move(l)), in_Z(std::move(z))
{
    if (L.rows() != L.cols() || L.rows() != Eigen::Index(points.size()) || in_Z.size() != points.size())
        throw std::invalid_argument("LEnsembleSpec: size mismatch");
    check_nonsingular(one_Z_plus_L(), "LEnsembleSpec");
}

LEnsembleSpec::LEnsembleSpec(std::vector<long> pts, Eigen::MatrixXd l)
    : LEnsembleSpec(pts, std::move(l), std::vector<bool>(pts.size(), true))
{
}

Eigen::MatrixXd LEnsembleSpec::one_Z_plus_L() const
{
    Eigen::MatrixXd m = L;
    for (size_t i = 0; i < in_Z.size(); ++i)
        if (in_Z[i])
            m(i, i) += 1.0;
    return m;
}

FiniteDpp make_dpp(Eigen::MatrixXd kernel)
{
    FiniteDpp d;
    d.points.resize(kernel.rows());
    for (size_t i = 0; i < d.points.size(); ++i)
        d.points[i] = long(i);
    d.measure = Eigen::VectorXd::Ones(kernel.rows());
    d.kernel = std::move(kernel);
    return d;
}

double dpp_correlation(const FiniteDpp& dpp, std::span<const int> pts)
{
    const int n = int(pts.size());
    if (n == 0)
        return 1.0;
    Eigen::MatrixXd m(n, n);
    double w = 1.0;
    for (int i = 0; i < n; ++i) {
        w *= dpp.measure(pts[i]);
        for (int j = 0; j < n; ++j)
            m(i, j) = dpp.kernel(pts[i], pts[j]);
    }
    return m.determinant() * w;
}

double gap_probability(const FiniteDpp& dpp, std::span<const int> B)
{
    const int n = int(B.size());
    if (n == 0)
        return 1.0;
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = (i == j ? 1.0 : 0.0) - dpp.kernel(B[i], B[j]) * dpp.measure(B[j]);
    return m.partialPivLu().determinant();
}

FiniteDpp l_to_k(const LEnsembleSpec& spec)
{
    for (bool z : spec.in_Z)
        if (!z)
            throw std::invalid_argument("l_to_k: requires Z = space");
    const auto n = spec.L.rows();
    Eigen::MatrixXd one_plus = spec.one_Z_plus_L();
    // K = L(1+L)^{-1} = 1 - (1+L)^{-1}
    Eigen::MatrixXd K = Eigen::MatrixXd::Identity(n, n) - one_plus.partialPivLu().inverse();
    FiniteDpp d;
    d.points = spec.points;
    d.kernel = std::move(K);
    d.measure = Eigen::VectorXd::Ones(n);
    return d;
}

FiniteDpp conditional_l_to_k(const LEnsembleSpec& spec)
{
    Eigen::MatrixXd inv = spec.one_Z_plus_L().partialPivLu().inverse();
    std::vector<int> zi;
    for (size_t i = 0; i < spec.in_Z.size(); ++i)
        if (spec.in_Z[i])
            zi.push_back(int(i));
    const int m = int(zi.size());
    FiniteDpp d;
    d.kernel.resize(m, m);
    for (int i = 0; i < m; ++i) {
        d.points.push_back(spec.points[zi[i]]);
        for (int j = 0; j < m; ++j)
            d.kernel(i, j) = (i == j ? 1.0 : 0.0) - inv(zi[i], zi[j]);
    }
    d.measure = Eigen::VectorXd::Ones(m);
    return d;
}

double karlin_mcgregor_det(const StepKernel& p, std::span<const long> starts, std::span<const long> ends, int t)
{
    const int n = int(starts.size());
    if (int(ends.size()) != n)
        throw std::invalid_argument("karlin_mcgregor_det: size mismatch");
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = p(starts[i], ends[j], t);
    return m.determinant();
}

FiniteDpp vicious_walk_kernel(const StepKernel& p, int t, const std::function<double(long)>& pi,
                              std::span<const long> sites, std::span<const long> x)
{
    const int n = int(x.size());
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            A(i, k) = p(x[i], x[k], 2 * t) / pi(x[k]);
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, A.cwiseAbs().maxCoeff()))
        throw std::runtime_error("vicious_walk_kernel: A not symmetric (pi not reversible)");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    const Eigen::VectorXd& ev = es.eigenvalues();
    if (ev.minCoeff() <= 1e-10 * ev.cwiseAbs().maxCoeff())
        throw std::runtime_error("vicious_walk_kernel: A not positive definite");
    Eigen::MatrixXd inv_sqrt = es.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() *
                               es.eigenvectors().transpose();

    const int m = int(sites.size());
    Eigen::MatrixXd P(n, m);  // p_t(x_k, u) / pi(u)
    for (int k = 0; k < n; ++k)
        for (int u = 0; u < m; ++u)
            P(k, u) = p(x[k], sites[u], t) / pi(sites[u]);
    Eigen::MatrixXd psi = inv_sqrt * P;  // rows are psi_i, and phi_i has the same form
    FiniteDpp d;
    d.points.assign(sites.begin(), sites.end());
    d.kernel = psi.transpose() * psi;
    d.measure.resize(m);
    for (int u = 0; u < m; ++u)
        d.measure(u) = pi(sites[u]);
    return d;
}

}  // namespace kpz
