// Times the serial reference kernels against the OpenMP drivers on a ladder
// of grid fixtures and prints one table row per instance.  Results must agree
// bit for bit; a mismatch aborts the run.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "surf/kernels.hpp"
#include "surf/toolkit.hpp"
#include "surf/topology.hpp"

namespace {

template <class F>
double timed(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void bench_instance(const std::string& name, const surf::EmbeddedGraph& g) {
    surf::WidthSearchResult ws{}, wp{};
    const double tws = timed([&] { ws = surf::width_search(g, surf::Exec::serial); });
    const double twp = timed([&] { wp = surf::width_search(g, surf::Exec::parallel); });
    if (ws.width != wp.width || !(ws.cycle.vertices == wp.cycle.vertices)) {
        std::fprintf(stderr, "width_search mismatch on %s\n", name.c_str());
        std::exit(1);
    }

    surf::DistanceReport ns{}, np{};
    const double tns = timed([&] { ns = surf::ncdist_search(g, ws.cycle, surf::Exec::serial); });
    const double tnp = timed([&] { np = surf::ncdist_search(g, wp.cycle, surf::Exec::parallel); });
    const int nsv = ns.infinite() ? -1 : *ns.value;
    const int npv = np.infinite() ? -1 : *np.value;
    if (nsv != npv || !(ns.witness == np.witness)) {
        std::fprintf(stderr, "ncdist_search mismatch on %s\n", name.c_str());
        std::exit(1);
    }

    std::printf("%-18s %7d %6d | %8.3fs %8.3fs %6.2fx | %8.3fs %8.3fs %6.2fx\n", name.c_str(),
                g.vertex_count(), ws.width, tws, twp, tws / twp, tns, tnp, tns / tnp);
}

}  // namespace

int main() {
    std::printf("%-18s %7s %6s | %8s %8s %6s | %8s %8s %6s\n", "instance", "V", "width",
                "w-serial", "w-par", "speed", "n-serial", "n-par", "speed");
    bench_instance("torus 16x16", surf::gen_torus_grid(16, 16));
    bench_instance("torus 24x24", surf::gen_torus_grid(24, 24));
    bench_instance("torus 32x32", surf::gen_torus_grid(32, 32));
    bench_instance("klein 24x24", surf::gen_klein_grid(24, 24));
    bench_instance("klein 32x32", surf::gen_klein_grid(32, 32));
    bench_instance("projective 24", surf::gen_projective_grid(24));
    bench_instance("projective 40", surf::gen_projective_grid(40));
    return 0;
}
