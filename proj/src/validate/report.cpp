#include "kpz/validate.hpp"

#include "json.hpp"

namespace kpz {

bool ValidationReport::all_pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

std::string ValidationReport::to_json() const
{
    nlohmann::json j;
    j["campaign"] = campaign;
    j["pass"] = all_pass();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
        j["checks"].push_back({{"name", c.name},
                               {"computed", c.computed},
                               {"reference", c.reference},
                               {"tolerance", c.tolerance},
                               {"pass", c.pass},
                               {"runtime_s", c.runtime_s}});
    j["seeds"] = seeds;
    j["diagnostics"] = diagnostics;
    return j.dump(2);
}

double pairwise_sum(std::span<const double> v)
{
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v)
            s += x;
        return s;
    }
    size_t h = v.size() / 2;
    return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

std::uint64_t sample_seed(std::uint64_t seed, long k)
{
    return splitmix64(splitmix64(seed) + std::uint64_t(k));
}

}  // namespace kpz
