#include "cfs/signal.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cfs {

void Signal::validate() const {
    if (channels.empty()) throw std::invalid_argument("signal needs at least one channel");
    if (!(dt > 0) || !std::isfinite(dt)) throw std::invalid_argument("signal needs dt > 0");
    const std::size_t np = channels[0].size();
    if (np < 2) throw std::invalid_argument("signal needs at least two grid points");
    for (const auto& ch : channels) {
        if (ch.size() != np) throw std::invalid_argument("channel lengths differ");
        for (double v : ch)
            if (!std::isfinite(v)) throw std::invalid_argument("non-finite sample");
    }
}

Signal sample_signal(double t0, double dt, std::size_t points,
                     const std::vector<std::function<double(double)>>& u) {
    Signal s;
    s.t0 = t0;
    s.dt = dt;
    s.channels.resize(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        s.channels[i].resize(points);
        for (std::size_t j = 0; j < points; ++j)
            s.channels[i][j] = u[i](t0 + dt * static_cast<double>(j));
    }
    s.validate();
    return s;
}

namespace {

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

Signal Signal::read_csv(std::istream& is) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(is, line)) throw std::runtime_error("empty signal file");
    strip_cr(line);
    ++lineno;
    // header: t,u1,...,um
    {
        std::istringstream hs(line);
        std::string col;
        if (!std::getline(hs, col, ',') || col != "t")
            throw std::runtime_error("line 1: header must start with 't'");
        int expect = 1;
        while (std::getline(hs, col, ',')) {
            if (col != "u" + std::to_string(expect))
                throw std::runtime_error("line 1: expected column 'u" + std::to_string(expect) +
                                         "', got '" + col + "'");
            ++expect;
        }
        if (expect == 1) throw std::runtime_error("line 1: no input channels");
    }
    std::vector<double> ts;
    std::vector<std::vector<double>> cols;
    while (std::getline(is, line)) {
        strip_cr(line);
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ls, cell, ',')) {
            try {
                std::size_t pos = 0;
                row.push_back(std::stod(cell, &pos));
                if (pos != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw std::runtime_error("line " + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
        }
        if (cols.empty()) cols.resize(row.size() - 1);
        if (row.size() != cols.size() + 1)
            throw std::runtime_error("line " + std::to_string(lineno) + ": wrong column count");
        ts.push_back(row[0]);
        for (std::size_t i = 0; i < cols.size(); ++i) cols[i].push_back(row[i + 1]);
    }
    if (ts.size() < 2) throw std::runtime_error("signal needs at least two samples");
    const double dt = ts[1] - ts[0];
    if (!(dt > 0)) throw std::runtime_error("line 3: time must be strictly increasing");
    for (std::size_t j = 1; j < ts.size(); ++j) {
        const double step = ts[j] - ts[j - 1];
        if (std::abs(step - dt) > 1e-9 * std::max(std::abs(dt), 1.0))
            throw std::runtime_error("line " + std::to_string(j + 2) +
                                     ": grid not uniform (step " + std::to_string(step) + ")");
    }
    Signal s;
    s.t0 = ts[0];
    s.dt = dt;
    s.channels = std::move(cols);
    s.validate();
    return s;
}

void Signal::write_csv(std::ostream& os) const {
    os << 't';
    for (int i = 1; i <= m(); ++i) os << ",u" << i;
    os << '\n';
    char buf[64];
    for (std::size_t j = 0; j < points(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", t(j));
        os << buf;
        for (const auto& ch : channels) {
            std::snprintf(buf, sizeof buf, "%.17g", ch[j]);
            os << ',' << buf;
        }
        os << '\n';
    }
}

}  // namespace cfs
