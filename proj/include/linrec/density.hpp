// Return-set analytics: windowed upper Banach density, upper/lower density
// over a logarithmic grid, gap bounds and longest arithmetic progressions.
#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace linrec {

/// Hit times of an orbit inside a ball, observed on [1, horizon].
struct ReturnSet {
    std::vector<std::uint64_t> times;  // strictly increasing, all in [1, horizon]
    std::uint64_t horizon = 1;

    void validate() const {
        if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
        std::uint64_t prev = 0;
        for (const auto t : times) {
            if (t <= prev) throw std::invalid_argument("times must be strictly increasing and >= 1");
            if (t > horizon) throw std::invalid_argument("time exceeds horizon");
            prev = t;
        }
    }
};

/// max over m of #(s intersect [m+1, m+window]) / window, over windows fully
/// inside [1, horizon].
inline double upper_banach_window(const ReturnSet& s, std::uint64_t window) {
    if (window < 1 || window > s.horizon)
        throw std::out_of_range("window must lie in [1, horizon]");
    if (s.times.empty()) return 0.0;
    // The maximizing window can be anchored at a hit time (clamped so it stays
    // inside [1, horizon]); two-pointer scan over the sorted times.
    std::size_t best = 0;
    std::size_t right = 0;
    const std::uint64_t max_start = s.horizon - window + 1;
    for (std::size_t left = 0; left < s.times.size(); ++left) {
        const std::uint64_t start = std::min(s.times[left], max_start);
        const std::uint64_t end = start + window - 1;
        if (right < left) right = left;
        while (right < s.times.size() && s.times[right] <= end) ++right;
        // count times in [start, end]; times[left] >= start holds since start <= times[left]
        best = std::max(best, right - left);
    }
    return static_cast<double>(best) / static_cast<double>(window);
}

struct DensityExtremum {
    double value = 0.0;
    std::uint64_t at = 1;  // the window length N achieving the extremum
};

namespace detail {

// Powers of two up to the horizon, starting near horizon/16 so the
// asymptotic surrogates are not dominated by tiny prefixes.
inline std::vector<std::uint64_t> log_grid(std::uint64_t horizon) {
    std::uint64_t start = 1;
    while (16 * start < horizon) start *= 2;
    std::vector<std::uint64_t> grid;
    for (std::uint64_t n = start; n < horizon; n *= 2) grid.push_back(n);
    grid.push_back(horizon);
    return grid;
}

inline std::uint64_t count_upto(const ReturnSet& s, std::uint64_t n) {
    return static_cast<std::uint64_t>(
        std::upper_bound(s.times.begin(), s.times.end(), n) - s.times.begin());
}

}  // namespace detail

/// Finite-horizon surrogate for limsup_N #(s cap [1,N])/N over a log grid.
inline DensityExtremum upper_density(const ReturnSet& s) {
    DensityExtremum best{-1.0, 1};
    for (const auto n : detail::log_grid(s.horizon)) {
        const double r = static_cast<double>(detail::count_upto(s, n)) / static_cast<double>(n);
        if (r > best.value) best = {r, n};
    }
    return best;
}

/// Finite-horizon surrogate for liminf_N #(s cap [1,N])/N over a log grid.
inline DensityExtremum lower_density(const ReturnSet& s) {
    DensityExtremum best{2.0, 1};
    for (const auto n : detail::log_grid(s.horizon)) {
        const double r = static_cast<double>(detail::count_upto(s, n)) / static_cast<double>(n);
        if (r < best.value) best = {r, n};
    }
    return best;
}

/// Syndeticity bound on [1, horizon]: max of the first time, the successive
/// differences, and the tail gap horizon - last time.
inline std::uint64_t max_gap(const ReturnSet& s) {
    if (s.times.empty()) throw std::invalid_argument("max_gap undefined for empty return set");
    std::uint64_t gap = s.times.front();
    for (std::size_t i = 1; i < s.times.size(); ++i)
        gap = std::max(gap, s.times[i] - s.times[i - 1]);
    gap = std::max(gap, s.horizon - s.times.back());
    return gap;
}

/// Length of the longest arithmetic progression contained in s
/// (0 for empty, 1 for a singleton). Quadratic pair-extension scan.
inline std::size_t longest_ap(const ReturnSet& s) {
    const auto& t = s.times;
    if (t.empty()) return 0;
    if (t.size() == 1) return 1;
    std::unordered_set<std::uint64_t> present(t.begin(), t.end());
    std::size_t best = 2;
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t j = i + 1; j < t.size(); ++j) {
            const std::uint64_t d = t[j] - t[i];
            // only count progressions at their first element
            if (t[i] > d && present.count(t[i] - d)) continue;
            std::size_t len = 2;
            std::uint64_t next = t[j] + d;
            while (present.count(next)) {
                ++len;
                next += d;
            }
            best = std::max(best, len);
        }
    }
    return best;
}

struct DensityReport {
    double upper_density = 0.0;
    double lower_density = 0.0;
    std::vector<std::pair<std::uint64_t, double>> banach_profile;  // (window, max ratio)
    std::uint64_t max_gap = 0;
    std::size_t longest_ap = 0;
};

inline DensityReport build_report(const ReturnSet& s) {
    s.validate();
    DensityReport rep;
    rep.upper_density = upper_density(s).value;
    rep.lower_density = lower_density(s).value;
    for (const auto w : detail::log_grid(s.horizon))
        rep.banach_profile.emplace_back(w, upper_banach_window(s, w));
    rep.max_gap = s.times.empty() ? s.horizon : max_gap(s);
    rep.longest_ap = longest_ap(s);
    return rep;
}

/// One row per profile point plus a trailing summary row.
inline std::string report_csv(const DensityReport& rep) {
    std::ostringstream os;
    os.precision(12);
    os << "window,max_count,ratio\n";
    for (const auto& [w, r] : rep.banach_profile) {
        const auto count = static_cast<std::uint64_t>(r * static_cast<double>(w) + 0.5);
        os << w << ',' << count << ',' << r << '\n';
    }
    os << "summary,upper=" << rep.upper_density << ";lower=" << rep.lower_density
       << ";max_gap=" << rep.max_gap << ";longest_ap=" << rep.longest_ap << ",\n";
    return os.str();
}

/// Reads a return set from CSV with a `n` header column (extra columns ignored).
inline ReturnSet parse_returnset_csv(const std::string& text) {
    ReturnSet s;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!line.empty() && (line[0] < '0' || line[0] > '9')) continue;  // header
        s.times.push_back(std::stoull(line.substr(0, line.find(','))));
    }
    std::sort(s.times.begin(), s.times.end());
    s.horizon = s.times.empty() ? 1 : s.times.back();
    s.validate();
    return s;
}

}  // namespace linrec
