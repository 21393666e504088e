// Builds a coherent state, looks at its photon statistics, quantizes |z|^2
// and evaluates a few thermal quantities.

#include <cstdio>

#include "lcs/lcs.hpp"

int main() {
    using namespace lcs;

    const int m = 1;
    const auto label = CoherentLabel::polar(1.5, 0.3);
    const auto state = bgcs_state(label, m);
    std::printf("state depth %d, norm %.15f\n", state.depth(), state.norm_sq());
    std::printf("<N> = %.6f  g2 = %.6f  Mandel Q = %.6f\n", mean_n(label, m), g2(label, m), mandel_q(label, m));

    const auto d = dispersions(label, m);
    std::printf("(dQ)^2 (dP)^2 = %.6f\n", d.product);

    const SubspaceSpec spec{m, 12};
    const auto sym = SymbolSpec::named(SymbolTag::abs_z_sq);
    const auto numeric = quantize_by_quadrature(sym, spec, quantization_grid(sym, spec));
    const auto exact = quantize_closed_form(sym, spec);
    std::printf("A_|z|^2 quadrature vs closed form: %.3e\n", max_abs_diff(numeric, exact, interior_block(spec)));

    const PhysicalParams params(1.0, 1.0, 0.5, 1.0, 3.0);  // hbar, mass, omega0, omega_c, beta
    const ThermalSpec ts(params, m);
    const auto pg = p_grid(ts);
    std::printf("beta eps = %.4f  Z = %.6e\n", ts.beta_gap(), partition_function(ts));
    std::printf("thermal <N> = %.8f (Bose %.8f)\n", thermal_average(ThermalObservable::n, ts, pg),
                thermal_mean_n(ts));
    const auto w = wehrl_entropy(ts, husimi_grid(ts));
    std::printf("Wehrl entropy %.6f, closed-form approximation %.6f\n", w.quadrature, w.approximation);
    return 0;
}
