#include "kpz/special.hpp"

#include <array>
#include <cmath>

namespace kpz {
namespace {

using ld = long double;

constexpr ld kAi0 = 0.355028053887817239260063186004183176L;
constexpr ld kAip0 = 0.258819403792806798405183560189203963L;  // -Ai'(0)
constexpr ld kPi = 3.141592653589793238462643383279502884L;
constexpr double kSwitch = 7.0;
constexpr double kSwitchNeg = 8.0;  // oscillatory side needs a larger ζ for 1e-12

struct AiPair {
    ld ai, aip;
};

// Maclaurin series; z^3 recurrences for f, g and their derivatives.
AiPair series(ld z)
{
    ld z3 = z * z * z;
    ld f = 1, fp = 0, g = z, gp = 1;
    ld a = 1, b = z;           // current terms of f, g
    for (int k = 0; k < 200; ++k) {
        ld k3 = 3.0L * k;
        ld an = a * z3 / ((k3 + 2) * (k3 + 3));
        ld bn = b * z3 / ((k3 + 3) * (k3 + 4));
        // f' term: (3k+3) a_{k+1} / z = a_k z^2 / (3k+2); g' term: (3k+4) b_{k+1} / z = b_k z^2 / (3k+3)
        ld adn = a * z * z / (k3 + 2);
        ld bdn = b * z * z / (k3 + 3);
        f += an;
        g += bn;
        fp += adn;
        gp += bdn;
        a = an;
        b = bn;
        ld scale = std::fabs(f) + std::fabs(g) + std::fabs(fp) + std::fabs(gp);
        if (k > 3 && std::fabs(an) + std::fabs(bn) + std::fabs(adn) + std::fabs(bdn) < 1e-22L * scale)
            break;
    }
    return {kAi0 * f - kAip0 * g, kAi0 * fp - kAip0 * gp};
}

// u_k, v_k coefficients of the large-argument expansions.
struct AsymCoeffs {
    std::array<ld, 64> u{}, v{};
    AsymCoeffs()
    {
        u[0] = v[0] = 1;
        for (int k = 1; k < 64; ++k) {
            u[k] = u[k - 1] * (6.0L * k - 5) * (6.0L * k - 3) * (6.0L * k - 1) / ((2.0L * k - 1) * 216.0L * k);
            v[k] = -(6.0L * k + 1) / (6.0L * k - 1) * u[k];
        }
    }
};

const AsymCoeffs& coeffs()
{
    static const AsymCoeffs c;
    return c;
}

// Sums Σ s^k c_k ζ^{-k} up to the smallest term.
ld optimal_sum(const std::array<ld, 64>& c, ld zeta, int sign, int start, int step)
{
    ld sum = 0, last = INFINITY;
    ld p = std::pow(zeta, -ld(start)), ratio = std::pow(zeta, -ld(step));
    for (int k = start; k < 64; k += step, p *= ratio) {
        ld term = c[k] * p;
        if (std::fabs(term) > last)
            break;
        last = std::fabs(term);
        ld s = ((k - start) / step) % 2 == 0 ? 1 : sign;
        sum += s * term;
        if (last < 1e-21L * std::fabs(sum))
            break;
    }
    return sum;
}

AiPair asym_pos(ld z)
{
    const auto& c = coeffs();
    ld zeta = 2.0L / 3.0L * z * std::sqrt(z);
    ld e = std::exp(-zeta) / (2.0L * std::sqrt(kPi));
    ld q = std::pow(z, 0.25L);
    ld su = 0, sv = 0, lastu = INFINITY, lastv = INFINITY, p = 1;
    for (int k = 0; k < 64; ++k, p /= -zeta) {
        ld tu = c.u[k] * p, tv = c.v[k] * p;
        if (std::fabs(tu) > lastu || std::fabs(tv) > lastv)
            break;
        lastu = std::fabs(tu);
        lastv = std::fabs(tv);
        su += tu;
        sv += tv;
        if (lastu + lastv < 1e-21L)
            break;
    }
    return {e / q * su, -e * q * sv};
}

// log Ai(z) for large positive z, without forming e^{-ζ}
ld asym_pos_log(ld z)
{
    const auto& c = coeffs();
    ld zeta = 2.0L / 3.0L * z * std::sqrt(z);
    ld su = 0, last = INFINITY, p = 1;
    for (int k = 0; k < 64; ++k, p /= -zeta) {
        ld tu = c.u[k] * p;
        if (std::fabs(tu) > last)
            break;
        last = std::fabs(tu);
        su += tu;
        if (last < 1e-21L)
            break;
    }
    return -zeta - std::log(2.0L * std::sqrt(kPi)) - 0.25L * std::log(z) + std::log(su);
}

AiPair asym_neg(ld x)
{
    const auto& c = coeffs();
    ld zeta = 2.0L / 3.0L * x * std::sqrt(x);
    ld q = std::pow(x, 0.25L);
    ld ph = zeta - kPi / 4;
    ld cs = std::cos(ph), sn = std::sin(ph);
    ld pu = optimal_sum(c.u, zeta, -1, 0, 2), qu = optimal_sum(c.u, zeta, -1, 1, 2);
    ld pv = optimal_sum(c.v, zeta, -1, 0, 2), qv = optimal_sum(c.v, zeta, -1, 1, 2);
    ld ai = (cs * pu + sn * qu) / (q * std::sqrt(kPi));
    ld aip = q * (sn * pv - cs * qv) / std::sqrt(kPi);
    return {ai, aip};
}

AiPair eval(double z)
{
    if (z > kSwitch)
        return asym_pos(z);
    if (z < -kSwitchNeg)
        return asym_neg(-ld(z));
    return series(z);
}

void check_range(double z)
{
    if (!(std::fabs(z) <= 30.0))
        throw std::domain_error("airy: argument outside [-30, 30]");
}

}  // namespace

double airy_ai(double z)
{
    check_range(z);
    return double(eval(z).ai);
}

double airy_ai_prime(double z)
{
    check_range(z);
    return double(eval(z).aip);
}

double airy_ai_log(double z)
{
    if (!(z > 0) || !std::isfinite(z))
        throw std::domain_error("airy_ai_log: needs finite z > 0");
    if (z > kSwitch)
        return double(asym_pos_log(z));
    return double(std::log(series(z).ai));
}

double airy_ai_tail(double z)
{
    if (z > 30.0)
        return 0.0;
    if (!std::isfinite(z))
        throw std::domain_error("airy_ai_tail: non-finite argument");
    return double(eval(z).ai);
}

}  // namespace kpz
