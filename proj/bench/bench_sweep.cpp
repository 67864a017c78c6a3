#include <chrono>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <omp.h>

#include "ramify/sweep.hpp"

using namespace ramify;

namespace {

struct Workload {
    std::string name;
    std::shared_ptr<const Floor> top;
    const Floor* base;
};

template <class F>
double seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    const std::int64_t cmax = argc > 1 ? std::stoll(argv[1]) : 16;

    const BaseField e2 = BaseField::equal(2, 48);
    auto k2 = Floor::ground(e2);
    const FloorElement t = k2->from_scalar(e2.uniformizer());
    auto l2 = attach_eisenstein(k2, EisensteinPoly{{t, t}});
    const FloorElement pi = l2->uniformizer();
    auto m2 = attach_eisenstein(l2, EisensteinPoly{{pi, pi}});

    const BaseField q3 = BaseField::mixed(3, 30);
    auto k3 = Floor::ground(q3);
    auto l3 = attach_eisenstein(k3, EisensteinPoly{{-k3->from_int(3), k3->zero(), k3->zero()}});

    const std::vector<Workload> loads{{"F2((t)) tower M/K", m2, k2.get()}, {"Q3 X^3-3", l3, k3.get()}};

    std::printf("threads: %d, cmax: %lld\n", omp_get_max_threads(), static_cast<long long>(cmax));
    std::printf("%-20s %10s %10s %8s %6s\n", "workload", "serial_s", "openmp_s", "speedup", "same");
    for (const auto& w : loads) {
        const ExtensionAnalysis an0 = analyze_extension(*w.top, *w.base);
        const std::int64_t h = std::min(max_horizon(*w.top, an0.digits.n), an0.profile.i.front() + cmax + 2);
        const ExtensionAnalysis an = analyze_extension(*w.top, *w.base, h);
        const GeneralSeries f = to_general(an.digits, *w.top);
        SweepRequest req;
        req.series = &f;
        req.floor = w.top.get();
        req.profile = &an.profile;
        req.cmax = cmax;
        std::vector<SweepCell> serial;
        std::vector<SweepCell> parallel;
        const double ts = seconds([&] { serial = sweep_serial(req); });
        const double tp = seconds([&] { parallel = sweep_parallel(req); });
        bool same = serial.size() == parallel.size();
        for (std::size_t i = 0; same && i < serial.size(); ++i) same = serial[i].oracle == parallel[i].oracle;
        std::printf("%-20s %10.4f %10.4f %8.2f %6s\n", w.name.c_str(), ts, tp, ts / tp, same ? "yes" : "NO");
        if (!same) return 1;
    }
    return 0;
}
