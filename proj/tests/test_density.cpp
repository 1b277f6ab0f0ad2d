#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "linrec/density.hpp"

using namespace linrec;

namespace {

// Brute-force oracles, deliberately naive.

double oracle_banach(const ReturnSet& s, std::uint64_t window) {
    std::set<std::uint64_t> hits(s.times.begin(), s.times.end());
    std::size_t best = 0;
    for (std::uint64_t start = 1; start + window - 1 <= s.horizon; ++start) {
        std::size_t c = 0;
        for (std::uint64_t n = start; n < start + window; ++n) c += hits.count(n);
        best = std::max(best, c);
    }
    return static_cast<double>(best) / static_cast<double>(window);
}

std::size_t oracle_longest_ap(const std::vector<std::uint64_t>& t) {
    if (t.empty()) return 0;
    if (t.size() == 1) return 1;
    // dynamic program over (j, difference)
    std::size_t best = 2;
    std::map<std::pair<std::size_t, std::uint64_t>, std::size_t> len;
    for (std::size_t j = 1; j < t.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            const std::uint64_t d = t[j] - t[i];
            const auto it = len.find({i, d});
            const std::size_t l = (it == len.end() ? 2 : it->second + 1);
            len[{j, d}] = l;
            best = std::max(best, l);
        }
    }
    return best;
}

ReturnSet random_set(std::mt19937_64& rng, std::uint64_t horizon) {
    std::uniform_real_distribution<double> keep(0.0, 1.0);
    const double rate = keep(rng);
    ReturnSet s;
    s.horizon = horizon;
    for (std::uint64_t n = 1; n <= horizon; ++n)
        if (keep(rng) < rate) s.times.push_back(n);
    return s;
}

}  // namespace

TEST_CASE("validation") {
    ReturnSet s{{1, 2, 2}, 5};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.times = {1, 2, 9};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.times = {1, 2, 5};
    CHECK_NOTHROW(s.validate());
}

TEST_CASE("windowed max count on known sets") {
    ReturnSet full;
    full.horizon = 10;
    for (std::uint64_t n = 1; n <= 10; ++n) full.times.push_back(n);
    CHECK(upper_banach_window(full, 5) == doctest::Approx(1.0));

    ReturnSet thirds;
    thirds.horizon = 90;
    for (std::uint64_t n = 3; n <= 90; n += 3) thirds.times.push_back(n);
    CHECK(upper_banach_window(thirds, 30) == doctest::Approx(10.0 / 30.0));

    CHECK_THROWS_AS(upper_banach_window(full, 0), std::out_of_range);
    CHECK_THROWS_AS(upper_banach_window(full, 11), std::out_of_range);
}

TEST_CASE("windowed max count equals brute force on random sets") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 60; ++t) {
        const ReturnSet s = random_set(rng, 120);
        for (const std::uint64_t w : {1u, 2u, 7u, 30u, 120u}) {
            CHECK(upper_banach_window(s, w) == doctest::Approx(oracle_banach(s, w)));
        }
    }
}

TEST_CASE("periodic sets have exact windowed density") {
    for (std::uint64_t q = 1; q <= 10; ++q) {
        ReturnSet s;
        s.horizon = 40 * q;
        for (std::uint64_t n = q; n <= s.horizon; n += q) s.times.push_back(n);
        for (std::uint64_t k = 1; k <= 4; ++k)
            CHECK(upper_banach_window(s, k * q) == doctest::Approx(1.0 / static_cast<double>(q)));
    }
}

TEST_CASE("upper and lower density surrogates") {
    ReturnSet all;
    all.horizon = 100;
    for (std::uint64_t n = 1; n <= 100; ++n) all.times.push_back(n);
    CHECK(upper_density(all).value == doctest::Approx(1.0));
    CHECK(lower_density(all).value == doctest::Approx(1.0));

    ReturnSet thirds;
    thirds.horizon = 300;
    for (std::uint64_t n = 3; n <= 300; n += 3) thirds.times.push_back(n);
    CHECK(upper_density(thirds).value == doctest::Approx(1.0 / 3.0).epsilon(0.02));
    CHECK(lower_density(thirds).value == doctest::Approx(1.0 / 3.0).epsilon(0.05));

    // blocks between powers of two: even log-blocks kept
    ReturnSet blocks;
    blocks.horizon = 1u << 12;
    for (std::uint64_t n = 1; n <= blocks.horizon; ++n) {
        int lg = 0;
        while ((n >> (lg + 1)) != 0) ++lg;
        if (lg % 2 == 0) blocks.times.push_back(n);
    }
    CHECK(upper_density(blocks).value == doctest::Approx(2.0 / 3.0).epsilon(0.08));
    CHECK(lower_density(blocks).value == doctest::Approx(1.0 / 3.0).epsilon(0.15));
    CHECK(lower_density(blocks).value <= upper_density(blocks).value);
}

TEST_CASE("max gap") {
    ReturnSet s;
    s.horizon = 100;
    for (std::uint64_t n = 7; n <= 98; n += 7) s.times.push_back(n);
    CHECK(max_gap(s) == 7);
    CHECK(max_gap({{1, 50}, 100}) == 50);
    ReturnSet ones;
    ones.horizon = 20;
    for (std::uint64_t n = 1; n <= 20; ++n) ones.times.push_back(n);
    CHECK(max_gap(ones) == 1);
    CHECK_THROWS_AS(max_gap({{}, 10}), std::invalid_argument);
}

TEST_CASE("longest arithmetic progression") {
    CHECK(longest_ap({{}, 1}) == 0);
    CHECK(longest_ap({{1}, 1}) == 1);
    CHECK(longest_ap({{2, 4, 6, 8}, 8}) == 4);
    CHECK(longest_ap({{1, 2, 4, 8, 16}, 16}) == 2);  // powers of two contain no 3-term progression
}

TEST_CASE("longest AP matches a dynamic-programming oracle") {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 80; ++t) {
        const ReturnSet s = random_set(rng, 60);
        CHECK(longest_ap(s) == oracle_longest_ap(s.times));
    }
    // witness-style set: progression plus noise
    ReturnSet w;
    w.horizon = 200;
    std::set<std::uint64_t> made;
    for (std::uint64_t l = 1; l <= 6; ++l) made.insert(l * 30);
    made.insert(7);
    made.insert(11);
    made.insert(97);
    for (const auto n : made) w.times.push_back(n);
    CHECK(longest_ap(w) >= 6);
}

TEST_CASE("report invariants and monotonicity") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 20; ++t) {
        ReturnSet s = random_set(rng, 100);
        if (s.times.empty()) continue;
        const DensityReport rep = build_report(s);
        CHECK(rep.lower_density <= rep.upper_density + 1e-12);
        for (const auto& [w, r] : rep.banach_profile) {
            CHECK(r >= 0.0);
            CHECK(r <= 1.0);
            // windowed max dominates the plain count at the same window
            std::size_t c = 0;
            for (const auto n : s.times)
                if (n <= w) ++c;
            CHECK(r + 1e-12 >= static_cast<double>(c) / static_cast<double>(w));
        }
        // adding an element never decreases the report fields
        ReturnSet bigger = s;
        std::uint64_t extra = 1;
        std::set<std::uint64_t> have(s.times.begin(), s.times.end());
        while (have.count(extra)) ++extra;
        if (extra <= s.horizon) {
            bigger.times.insert(std::lower_bound(bigger.times.begin(), bigger.times.end(), extra),
                                extra);
            const DensityReport rep2 = build_report(bigger);
            CHECK(rep2.upper_density + 1e-12 >= rep.upper_density);
            CHECK(rep2.longest_ap >= rep.longest_ap);
        }
    }
}

TEST_CASE("csv round trip") {
    ReturnSet s{{3, 6, 9, 12}, 12};
    const DensityReport rep = build_report(s);
    const std::string csv = report_csv(rep);
    CHECK(csv.find("window,max_count,ratio") == 0);
    const ReturnSet parsed = parse_returnset_csv("n,upper\n3,0.1\n6,0.2\n9,0.3\n12,0.4\n");
    CHECK(parsed.times == s.times);
}
