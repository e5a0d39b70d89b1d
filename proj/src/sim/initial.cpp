#include "kpz/tasep.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kpz {

InitialData InitialData::step()
{
    InitialData x;
    x.kind_ = Kind::step;
    return x;
}

InitialData InitialData::periodic(int d)
{
    if (d < 2)
        throw std::invalid_argument("periodic initial data needs d >= 2");
    InitialData x;
    x.kind_ = Kind::periodic;
    x.d_ = d;
    return x;
}

InitialData InitialData::explicit_data(std::vector<long> entries)
{
    if (entries.empty())
        throw std::invalid_argument("explicit initial data is empty");
    bool seen_finite = false;
    for (size_t i = 0; i < entries.size(); ++i) {
        if (entries[i] >= kPlusInf) {
            if (seen_finite)
                throw std::invalid_argument("explicit initial data: +inf entries must lead");
            continue;
        }
        if (seen_finite && entries[i] >= entries[i - 1])
            throw std::invalid_argument("explicit initial data must be strictly decreasing");
        seen_finite = true;
    }
    if (!seen_finite)
        throw std::invalid_argument("explicit initial data has no finite entry");
    InitialData x;
    x.kind_ = Kind::explicit_;
    x.entries_ = std::move(entries);
    return x;
}

long InitialData::at(long label) const
{
    switch (kind_) {
    case Kind::step:
        return label >= 1 ? -label : kPlusInf;
    case Kind::periodic:
        return -long(d_) * (label - 1);
    case Kind::explicit_:
        if (label < 1)
            return kPlusInf;
        if (label > long(entries_.size()))
            return kMinusInf;
        return entries_[size_t(label - 1)];
    }
    return kMinusInf;
}

std::optional<long> InitialData::finite_count() const
{
    if (kind_ != Kind::explicit_)
        return std::nullopt;
    return long(std::count_if(entries_.begin(), entries_.end(), [](long v) { return v < kPlusInf; }));
}

long InitialData::inverse(long u) const
{
    switch (kind_) {
    case Kind::step:
        return u >= -1 ? 1 : -u;
    case Kind::periodic: {
        // smallest k with -d(k-1) <= u, i.e. k >= 1 - u/d
        long d = d_;
        long num = d - u;  // k >= (d - u)/d
        return num >= 0 ? (num + d - 1) / d : -((-num) / d);
    }
    case Kind::explicit_:
        for (size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i] <= u)
                return long(i + 1);
        return long(entries_.size()) + 1;
    }
    return 1;
}

InitialData InitialData::right_finite() const
{
    switch (kind_) {
    case Kind::step:
        return *this;
    case Kind::periodic:
        return *this;  // exact formulas only read labels >= 1
    case Kind::explicit_: {
        std::vector<long> e;
        for (long v : entries_)
            if (v < kPlusInf)
                e.push_back(v);
        return explicit_data(std::move(e));
    }
    }
    return *this;
}

std::string InitialData::describe() const
{
    std::ostringstream os;
    switch (kind_) {
    case Kind::step: os << "step"; break;
    case Kind::periodic: os << "periodic(" << d_ << ")"; break;
    case Kind::explicit_:
        os << "explicit(";
        for (size_t i = 0; i < entries_.size(); ++i)
            os << (i ? "," : "") << (entries_[i] >= kPlusInf ? std::string("inf") : std::to_string(entries_[i]));
        os << ")";
        break;
    }
    return os.str();
}

InitialData make_initial(const std::string& kind, const std::vector<long>& params)
{
    if (kind == "step")
        return InitialData::step();
    if (kind == "periodic" || kind == "flat") {
        int d = params.empty() ? 2 : int(params[0]);
        return InitialData::periodic(d);
    }
    if (kind == "explicit")
        return InitialData::explicit_data(params);
    throw std::invalid_argument("unknown initial data kind: " + kind);
}

}  // namespace kpz
