#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "pdcw/errors.hpp"

namespace pdcw {

/// Uniformly sampled axis. Grids are centered so that sample n/2 falls on
/// the axis origin (or the requested center), matching DFT indexing.
struct Axis {
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    std::string label;
    std::string unit;

    double step() const { return count > 1 ? (max - min) / (count - 1) : 0.0; }
    double coord(int k) const { return min + step() * k; }
};

/// Build an axis of n samples centered on `center`: points center + (k - n/2) h
/// with h = 2 half_width / n. Contains `center` exactly at index n/2.
inline Axis make_centered_axis(double center, double half_width, int n,
                               std::string label, std::string unit) {
    if (n < 2) throw InvalidConfig("axis needs at least 2 samples");
    if (!(half_width > 0.0)) throw InvalidConfig("axis half-width must be positive");
    const double h = 2.0 * half_width / n;
    Axis ax;
    ax.min = center - h * (n / 2);
    ax.max = center + h * (n - 1 - n / 2);
    ax.count = n;
    ax.label = std::move(label);
    ax.unit = std::move(unit);
    return ax;
}

/// Row-major rectangular field: values[i * axis2.count + j] is the sample at
/// (axis1.coord(i), axis2.coord(j)).
template <class T>
struct Grid2D {
    Axis axis1, axis2;
    std::vector<T> values;

    T& at(int i, int j) { return values[static_cast<std::size_t>(i) * axis2.count + j]; }
    const T& at(int i, int j) const {
        return values[static_cast<std::size_t>(i) * axis2.count + j];
    }
    std::size_t size() const { return values.size(); }
};

template <class T>
Grid2D<T> make_grid(Axis a1, Axis a2) {
    Grid2D<T> g;
    g.axis1 = std::move(a1);
    g.axis2 = std::move(a2);
    g.values.assign(static_cast<std::size_t>(g.axis1.count) * g.axis2.count, T{});
    return g;
}

/// Mass-weighted distribution statistics of a non-negative grid.
struct GridStats {
    double mass = 0.0;      // sum(values) * h1 * h2
    double peak = 0.0;
    double mean1 = 0.0, mean2 = 0.0;
    double var1 = 0.0, var2 = 0.0, cov12 = 0.0;
    double pearson = 0.0;
};

inline GridStats grid_stats(const Grid2D<double>& g) {
    GridStats s;
    double w = 0.0, m1 = 0.0, m2 = 0.0;
    for (int i = 0; i < g.axis1.count; ++i)
        for (int j = 0; j < g.axis2.count; ++j) {
            const double v = g.at(i, j);
            w += v;
            m1 += v * g.axis1.coord(i);
            m2 += v * g.axis2.coord(j);
            if (v > s.peak) s.peak = v;
        }
    if (w <= 0.0) return s;
    m1 /= w;
    m2 /= w;
    double v1 = 0.0, v2 = 0.0, c12 = 0.0;
    for (int i = 0; i < g.axis1.count; ++i)
        for (int j = 0; j < g.axis2.count; ++j) {
            const double v = g.at(i, j);
            const double d1 = g.axis1.coord(i) - m1;
            const double d2 = g.axis2.coord(j) - m2;
            v1 += v * d1 * d1;
            v2 += v * d2 * d2;
            c12 += v * d1 * d2;
        }
    s.mass = w * g.axis1.step() * g.axis2.step();
    s.mean1 = m1;
    s.mean2 = m2;
    s.var1 = v1 / w;
    s.var2 = v2 / w;
    s.cov12 = c12 / w;
    s.pearson = (s.var1 > 0.0 && s.var2 > 0.0) ? s.cov12 / std::sqrt(s.var1 * s.var2) : 0.0;
    return s;
}

/// Locale-independent scientific formatting with 9 significant digits;
/// output files must be byte-identical across runs.
inline std::string format_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.8e", v);
    return buf;
}

inline void write_csv(const Grid2D<double>& g, std::ostream& out) {
    out << "axis1,axis2,value\n";
    for (int i = 0; i < g.axis1.count; ++i)
        for (int j = 0; j < g.axis2.count; ++j)
            out << format_sci(g.axis1.coord(i)) << ',' << format_sci(g.axis2.coord(j)) << ','
                << format_sci(g.at(i, j)) << '\n';
}

inline void write_csv(const Grid2D<std::complex<double>>& g, std::ostream& out) {
    out << "axis1,axis2,re,im\n";
    for (int i = 0; i < g.axis1.count; ++i)
        for (int j = 0; j < g.axis2.count; ++j) {
            const auto v = g.at(i, j);
            out << format_sci(g.axis1.coord(i)) << ',' << format_sci(g.axis2.coord(j)) << ','
                << format_sci(v.real()) << ',' << format_sci(v.imag()) << '\n';
        }
}

}  // namespace pdcw
