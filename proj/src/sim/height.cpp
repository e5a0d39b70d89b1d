#include "kpz/tasep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kpz {

HeightField height(const ParticleState& s, long z_lo, long z_hi)
{
    if (z_hi < z_lo)
        throw std::invalid_argument("height: empty window");
    if (s.positions.empty())
        throw std::invalid_argument("height: no particles");
    if (!s.leader_free && z_hi - 1 >= s.positions.front())
        throw std::out_of_range("height: window reaches past the tracked leader");
    if (z_lo - 1 < s.positions.back())
        throw std::out_of_range("height: window reaches past the last tracked particle");

    HeightField h;
    h.anchor_z = z_lo;
    h.time = s.time;
    // X^{-1}(u) = min{k : X(k) <= u}; positions are decreasing so scan once
    size_t i = 0;
    for (long z = z_lo; z <= z_hi; ++z) {
        long u = z - 1;
        while (s.positions[i] > u)
            ++i;
        // move back while earlier particles also satisfy X <= u
        while (i > 0 && s.positions[i - 1] <= u)
            --i;
        long inv = s.label(i);
        h.values.push_back(-2 * (inv - s.anchor) - z);
    }
    return h;
}

double rescale_height(const HeightField& h, double eps, double t, double x)
{
    if (!(eps > 0 && eps <= 1))
        throw std::invalid_argument("rescale_height: eps outside (0,1]");
    double z = 2 * x / eps;
    long z0 = long(std::floor(z));
    long z_last = h.anchor_z + long(h.values.size()) - 1;
    if (z0 < h.anchor_z || z0 + (z > double(z0) ? 1 : 0) > z_last)
        throw std::out_of_range("rescale_height: x outside the height window");
    double frac = z - double(z0);
    double hz = double(h.at(z0));
    if (frac > 0)
        hz += frac * double(h.at(z0 + 1) - h.at(z0));
    return std::sqrt(eps) * (hz + std::pow(eps, -1.5) * t);
}

}  // namespace kpz
