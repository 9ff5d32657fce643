// Wall-clock comparison of the OpenMP kernels against their serial reference
// implementations. Each workload runs once serially and once parallel; the
// results must agree exactly (same tallies, same bits), which doubles as a
// determinism check under real workloads.

#include <chrono>
#include <cstdio>

#include "alphax/base.hpp"
#include "alphax/basechange.hpp"
#include "alphax/stats.hpp"

using alphax::Base;
using alphax::BasePair;
using alphax::Real;

namespace {

template <typename F>
double time_once(F&& f)
{
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void report(const char* name, double serial_s, double parallel_s, bool match)
{
    std::printf("%-16s %10.3fs %10.3fs %7.2fx   %s\n", name, serial_s, parallel_s,
                parallel_s > 0 ? serial_s / parallel_s : 0.0, match ? "match" : "MISMATCH");
}

} // namespace

int main()
{
    std::printf("%-16s %11s %11s %8s\n", "kernel", "serial", "parallel", "speedup");

    {
        Base base("2", 256);
        alphax::SimConfig cfg;
        cfg.seed = 42;
        cfg.n_digits = 100000;
        alphax::DigitStats s, p;
        const double ts = time_once([&] { s = alphax::sim_digit_stats_serial(base, cfg); });
        const double tp = time_once([&] { p = alphax::sim_digit_stats(base, cfg); });
        report("digit-stats", ts, tp,
               s.counts == p.counts && s.n == p.n && s.digit_sum == p.digit_sum);
    }

    {
        BasePair pair{Base("3", 256), Base("2", 256)};
        alphax::GraphSample s, p;
        const double ts = time_once([&] { s = alphax::graph_sample_serial(pair, 64, 2000); });
        const double tp = time_once([&] { p = alphax::graph_sample(pair, 64, 2000); });
        bool match = s.points.size() == p.points.size();
        for (std::size_t i = 0; match && i < s.points.size(); ++i)
            match = s.points[i].first == p.points[i].first &&
                    s.points[i].second == p.points[i].second;
        report("graph-sample", ts, tp, match);
    }

    {
        const std::uint64_t n = 200000000;
        double s = 0, p = 0;
        const double ts = time_once([&] { s = alphax::harmonic_sum_serial(n); });
        const double tp = time_once([&] { p = alphax::harmonic_sum(n); });
        report("harmonic-sum", ts, tp, s == p);
    }

    return 0;
}
