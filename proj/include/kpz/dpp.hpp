#pragma once

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

namespace kpz {

// Determinantal process on a finite ordered space; points are referred to by index.
struct FiniteDpp {
    std::vector<long> points;  // labels, for reporting only
    Eigen::MatrixXd kernel;
    Eigen::VectorXd measure;

    int size() const { return int(points.size()); }
};

struct LEnsembleSpec {
    std::vector<long> points;
    Eigen::MatrixXd L;
    std::vector<bool> in_Z;  // conditioning subset Z; all true means Z = space

    LEnsembleSpec(std::vector<long> pts, Eigen::MatrixXd l, std::vector<bool> z);
    LEnsembleSpec(std::vector<long> pts, Eigen::MatrixXd l);

    Eigen::MatrixXd one_Z_plus_L() const;
};

FiniteDpp make_dpp(Eigen::MatrixXd kernel);

double dpp_correlation(const FiniteDpp& dpp, std::span<const int> pts);
double gap_probability(const FiniteDpp& dpp, std::span<const int> B);

FiniteDpp l_to_k(const LEnsembleSpec& spec);
FiniteDpp conditional_l_to_k(const LEnsembleSpec& spec);

// p(k, l, t) = probability to go from k to l in t steps.
using StepKernel = std::function<double(long, long, int)>;

double karlin_mcgregor_det(const StepKernel& p, std::span<const long> starts, std::span<const long> ends,
                           int t);

// Mid-position kernel of non-intersecting walks started and ended at x; the
// space is `sites` with reversible measure pi(site).
FiniteDpp vicious_walk_kernel(const StepKernel& p, int t, const std::function<double(long)>& pi,
                              std::span<const long> sites, std::span<const long> x);

}  // namespace kpz
