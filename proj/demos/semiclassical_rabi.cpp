// Copyright 2026 The zeno-dynamics Authors
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

// Atomic excited-state population under frequent measurement of the field in
// a coherent state, compared against the semiclassical Rabi formula.

#include <cmath>
#include <cstdio>

#include "zeno/engine.hpp"

int main() {
    using namespace zeno;
    ZenoRunConfig cfg;
    cfg.params = {0.0, 1.0, 0.1};
    cfg.field = states::Coherent{{1.0, 0.0}};
    cfg.atom = states::Ground{};
    cfg.total_time = 20.0;
    cfg.num_measurements = 2000;

    const auto hs = cfg.hamiltonians();
    const auto exact = engine::run_zeno_exact(cfg, hs);
    const auto effective = engine::run_effective(cfg, hs);

    std::printf("%8s %14s %14s %14s\n", "time", "exact", "effective", "sin^2(g a t)");
    for (std::size_t k = 99; k < exact.steps.size(); k += 100) {
        const double t = exact.steps[k].time;
        std::printf("%8.3f %14.10f %14.10f %14.10f\n", t, exact.steps[k].rho_atom(0, 0).real(),
                    effective.steps[k].rho_atom(0, 0).real(), std::pow(std::sin(0.1 * t), 2));
    }
    std::printf("survival after %d measurements: %.6f\n", cfg.num_measurements, engine::survival_probability(exact));
}
