#include "wedge/profile.hpp"

#include <algorithm>
#include <cmath>

namespace wedge {

State Profile::value_at(double y) const {
    if (values.empty()) throw domain_error("Profile::value_at: empty profile");
    if (values.size() != breakpoints.size() + 1)
        throw domain_error("Profile::value_at: values/breakpoints size mismatch");
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), y);
    return values[static_cast<std::size_t>(it - breakpoints.begin())];
}

double total_variation(const Profile& prof) {
    double tv = 0.0;
    for (std::size_t i = 0; i + 1 < prof.values.size(); ++i)
        tv += std::fabs(prof.values[i + 1].rho - prof.values[i].rho) +
              std::fabs(prof.values[i + 1].v - prof.values[i].v);
    return tv;
}

double linf_deviation(const Profile& prof) {
    double m = 0.0;
    for (const State& s : prof.values)
        m = std::max({m, std::fabs(s.rho - 1.0), std::fabs(s.v)});
    return m;
}

}  // namespace wedge
