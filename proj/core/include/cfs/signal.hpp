#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

namespace cfs {

// Sampled multichannel input on a uniform time grid t_j = t0 + j*dt.
// channels[i-1] holds u_i; the x_0 channel u_0 = 1 is implicit.
struct Signal {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<std::vector<double>> channels;

    std::size_t points() const { return channels.empty() ? 0 : channels[0].size(); }
    std::size_t steps() const { return points() == 0 ? 0 : points() - 1; }
    int m() const { return static_cast<int>(channels.size()); }
    double t(std::size_t j) const { return t0 + dt * static_cast<double>(j); }
    double t_end() const { return t(steps()); }

    // dt > 0, at least two points, equal channel lengths, finite samples.
    void validate() const;

    // CSV with header "t,u1,...,um"; the grid must be uniform to a relative
    // tolerance of 1e-9. Parse errors carry the offending line number.
    static Signal read_csv(std::istream& is);
    void write_csv(std::ostream& os) const;
};

Signal sample_signal(double t0, double dt, std::size_t points,
                     const std::vector<std::function<double(double)>>& u);

}  // namespace cfs
