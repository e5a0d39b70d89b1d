#include "kpz/continuum.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kpz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// value on the finite segment k at x (segment k lies left of xs[k])
double segment_value(const Profile& p, size_t k, double x)
{
    const size_t nb = p.xs.size();
    if (k == 0)
        return p.ys[0] + p.left_slope * (x - p.xs[0]);
    if (k == nb)
        return p.ys[nb - 1] + p.right_slope * (x - p.xs[nb - 1]);
    double a = p.xs[k - 1], b = p.xs[k];
    double s = (x - a) / (b - a);
    return p.ys[k - 1] + s * (p.ys[k] - p.ys[k - 1]);
}

double segment_slope(const Profile& p, size_t k)
{
    const size_t nb = p.xs.size();
    if (k == 0)
        return p.left_slope;
    if (k == nb)
        return p.right_slope;
    return (p.ys[k] - p.ys[k - 1]) / (p.xs[k] - p.xs[k - 1]);
}

}  // namespace

bool Profile::valid() const
{
    if (xs.empty() || ys.size() != xs.size() || infinite.size() != xs.size() + 1)
        return false;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i]))
            return false;
        if (i > 0 && !(xs[i] > xs[i - 1]))
            return false;
    }
    return std::isfinite(left_slope) && std::isfinite(right_slope);
}

double Profile::operator()(double x) const
{
    if (!valid())
        throw std::invalid_argument("Profile: malformed profile");
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    if (it != xs.end() && *it == x)
        return ys[size_t(it - xs.begin())];
    size_t k = size_t(it - xs.begin());
    if (infinite[k])
        return kind == Kind::uc ? -kInf : kInf;
    return segment_value(*this, k, x);
}

double Profile::growth_constant() const
{
    if (!valid())
        throw std::invalid_argument("Profile: malformed profile");
    double c = 0.0;
    for (size_t i = 0; i < xs.size(); ++i)
        c = std::max(c, std::abs(ys[i]) / (1 + std::abs(xs[i])));
    if (!infinite.front())
        c = std::max({c, std::abs(left_slope), std::abs(ys.front()) + std::abs(left_slope * xs.front())});
    if (!infinite.back())
        c = std::max({c, std::abs(right_slope), std::abs(ys.back()) + std::abs(right_slope * xs.back())});
    return c;
}

Profile Profile::narrow_wedge(double u, double value)
{
    return {Kind::uc, {u}, {value}, 0.0, 0.0, {true, true}};
}

Profile Profile::flat(double value)
{
    return {Kind::uc, {0.0}, {value}, 0.0, 0.0, {false, false}};
}

Profile Profile::half_flat()
{
    return {Kind::uc, {0.0}, {0.0}, 0.0, 0.0, {true, false}};
}

Profile Profile::lc_constant(double value)
{
    return {Kind::lc, {0.0}, {value}, 0.0, 0.0, {false, false}};
}

Profile Profile::lc_kink(double y0, double value, double slope)
{
    return {Kind::lc, {y0}, {value}, 0.0, slope, {false, false}};
}

std::string profile_to_json(const Profile& p)
{
    nlohmann::json j;
    j["kind"] = p.kind == Profile::Kind::uc ? "uc" : "lc";
    j["xs"] = p.xs;
    j["ys"] = p.ys;
    j["left_slope"] = p.left_slope;
    j["right_slope"] = p.right_slope;
    j["infinite"] = p.infinite;
    return j.dump();
}

Profile profile_from_json(const std::string& s)
{
    nlohmann::json j = nlohmann::json::parse(s);
    if (!j.is_object())
        throw std::invalid_argument("profile JSON must be an object");
    for (auto& [k, v] : j.items()) {
        (void)v;
        if (k != "kind" && k != "xs" && k != "ys" && k != "left_slope" && k != "right_slope" && k != "infinite")
            throw std::invalid_argument("profile JSON: unknown key " + k);
    }
    Profile p;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "uc")
        p.kind = Profile::Kind::uc;
    else if (kind == "lc")
        p.kind = Profile::Kind::lc;
    else
        throw std::invalid_argument("profile JSON: kind must be uc or lc");
    p.xs = j.at("xs").get<std::vector<double>>();
    p.ys = j.at("ys").get<std::vector<double>>();
    p.left_slope = j.value("left_slope", 0.0);
    p.right_slope = j.value("right_slope", 0.0);
    p.infinite = j.at("infinite").get<std::vector<bool>>();
    if (!p.valid())
        throw std::invalid_argument("profile JSON: inconsistent breakpoints, values or flags");
    return p;
}

double hopf_lax(const Profile& h0, double t, double x)
{
    if (!(t > 0))
        throw std::invalid_argument("hopf_lax: needs t > 0");
    if (h0.kind != Profile::Kind::uc || !h0.valid())
        throw std::invalid_argument("hopf_lax: needs a valid UC profile");
    auto obj = [&](double y, double hy) { return hy - (x - y) * (x - y) / t; };
    double best = -kInf;
    for (size_t i = 0; i < h0.xs.size(); ++i)
        best = std::max(best, obj(h0.xs[i], h0.ys[i]));
    const size_t nb = h0.xs.size();
    for (size_t k = 0; k <= nb; ++k) {
        if (h0.infinite[k])
            continue;
        double lo = k == 0 ? -kInf : h0.xs[k - 1];
        double hi = k == nb ? kInf : h0.xs[k];
        double y = std::clamp(x + segment_slope(h0, k) * t / 2, lo, hi);
        best = std::max(best, obj(y, segment_value(h0, k, y)));
    }
    return best;
}

ClosedProfile classify(const Profile& h0)
{
    if (h0.kind != Profile::Kind::uc || !h0.valid())
        throw std::invalid_argument("classify: needs a valid UC profile");
    const size_t nb = h0.xs.size();
    if (nb == 1 && h0.infinite[0] && h0.infinite[1])
        return {ClosedClass::narrow_wedge, h0.xs[0], h0.ys[0]};
    if (nb == 1 && h0.infinite[0] && !h0.infinite[1] && h0.right_slope == 0)
        return {ClosedClass::half_flat, h0.xs[0], h0.ys[0]};
    bool flat = true;
    for (size_t k = 0; k <= nb; ++k)
        flat = flat && !h0.infinite[k] && segment_slope(h0, k) == 0;
    if (flat)
        return {ClosedClass::flat, 0.0, h0.ys[0]};
    throw std::invalid_argument(
        "initial profile is not narrow wedge, flat or half-flat; use hit_epi_mc for general data");
}

}  // namespace kpz
