// Copyright 2026 The Qutrit Twin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference against kernel timings: serial against OpenMP tallies, and full
// embedding against the strided local gate update.

#include <chrono>
#include <cstdio>
#include <string>

#include <omp.h>

#include "qutrit/kernels.hpp"
#include "qutrit/network.hpp"
#include "qutrit/roulette.hpp"
#include "qutrit/signed.hpp"

using namespace qutrit;

namespace {

template <class F>
double best_of(int reps, F &&f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best,
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                            .count());
    }
    return best;
}

void row(const char *name, double serial, double parallel, bool same) {
    std::printf("%-34s reference %9.4f s  kernel %9.4f s  speedup %6.2fx  %s\n", name, serial,
                parallel, serial / parallel, same ? "identical" : "MISMATCH");
}

} // namespace

int main(int argc, char **argv) {
    const std::uint64_t trials = argc > 1 ? std::stoull(argv[1]) : 1'000'000;
    std::printf("threads %d, trials %llu\n", omp_get_max_threads(),
                static_cast<unsigned long long>(trials));

    const Basis comp{StateVector::basis(3, 0), StateVector::basis(3, 1),
                     StateVector::basis(3, 2)};
    const SignedDecomposition d = decompose(DensityOperator::pure(upsilon()));
    CounterTally ts;
    CounterTally tp;
    const double s1 = best_of(3, [&] { ts = simulate(d, comp, comp, trials, 1, kernels::Execution::Serial); });
    const double p1 = best_of(3, [&] { tp = simulate(d, comp, comp, trials, 1, kernels::Execution::Parallel); });
    row("signed-sim counters", s1, p1, ts.n_plus == tp.n_plus && ts.n_minus == tp.n_minus);

    const Roulette r = build_roulette(q_matrix(upsilon(), comp, frame_basis(Frame::primed())));
    kernels::Counts cs;
    kernels::Counts cp;
    const double s2 = best_of(3, [&] { cs = spin_counts(r, trials, 2, kernels::Execution::Serial); });
    const double p2 = best_of(3, [&] { cp = spin_counts(r, trials, 2, kernels::Execution::Parallel); });
    row("roulette spins", s2, p2, cs == cp);

    const Register big = replicate_carriers(run_twin_circuit(TwinVariant::MM, Frame::primed()),
                                           2, {"carA", "carB"});
    const Gate g = measurement_gate(Frame::primed());
    const std::vector<std::size_t> targets{big.index_of("sysA"), big.index_of("carA.2")};
    CVector vs;
    CVector vp;
    const double s3 = best_of(3, [&] {
        vs = kernels::apply_local_reference(big.state().amps(), big.dims(), targets,
                                            g.op().matrix());
    });
    const double p3 = best_of(3, [&] {
        vp = kernels::apply_local(big.state().amps(), big.dims(), targets, g.op().matrix());
    });
    char name[64];
    std::snprintf(name, sizeof name, "local gate, dim %zu", big.state().size());
    row(name, s3, p3, (vs - vp).norm() < 1e-10);
    return 0;
}
