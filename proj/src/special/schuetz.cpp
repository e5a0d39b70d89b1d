#include "kpz/special.hpp"

#include <algorithm>
#include <cmath>

namespace kpz {

double poisson_pmf(long k, double t)
{
    if (k < 0)
        return 0.0;
    if (t == 0.0)
        return k == 0 ? 1.0 : 0.0;
    return std::exp(k * std::log(t) - t - std::lgamma(k + 1.0));
}

double schuetz_F(int n, long x, double t)
{
    if (t < 0)
        throw std::invalid_argument("schuetz_F: t < 0");
    if (n <= 0) {
        // residue at 0 of (1-w)^m e^{t(w-1)} / w^{x+m+1}, m = -n
        long m = -n;
        double s = 0.0;
        for (long j = 0; j <= m; ++j) {
            double term = gen_binomial_d(m, j) * poisson_pmf(x + m - j, t);
            s += (j % 2 == 0) ? term : -term;
        }
        return (m % 2 == 0) ? s : -s;
    }
    // n-fold tail sum of the Poisson law: Σ_{y>=x} C(y-x+n-1, n-1) p_t(y)
    double s = 0.0;
    for (long y = std::max(x, 0L);; ++y) {
        double term = gen_binomial_d(y - x + n - 1, n - 1) * poisson_pmf(y, t);
        s += term;
        if (double(y) > t && term <= 1e-18 * s)
            break;
    }
    return s;
}

Rational gen_binomial(long m, long j)
{
    if (j < 0)
        return Rational(0);
    BigInt num = 1, den = 1;
    for (long i = 0; i < j; ++i) {
        num *= BigInt(m - i);
        den *= BigInt(i + 1);
    }
    return Rational(num, den);
}

double gen_binomial_d(long m, long j)
{
    if (j < 0)
        return 0.0;
    double r = 1.0;
    for (long i = 0; i < j; ++i)
        r = r * double(m - i) / double(i + 1);
    return r;
}

}  // namespace kpz
