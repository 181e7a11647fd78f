// Computes the simplex probability for a few laws by all three routes.

#include <cstdio>

#include "sylvester.hpp"

int main() {
    using namespace sylvester;
    const Distribution laws[] = {Distribution::gaussian(3), Distribution::beta_ball(3, 0.0),
                                 Distribution::beta_ball(4, 2.5), Distribution::beta_prime(3, 2.0)};
    std::printf("%-24s %-18s %-18s %-18s\n", "law", "quadrature", "closed form", "monte carlo");
    for (const auto& dist : laws) {
        const auto q = sylvester_probability(dist, SolveMethod::quadrature);
        const auto exact = closed_form_lookup(dist);
        const auto mc = estimate_sylvester(dist, McConfig{200000, 7, 1});
        char exact_text[32] = "-";
        if (exact) std::snprintf(exact_text, sizeof exact_text, "%.12f", exact->value);
        std::printf("%-24s %-18.12f %-18s %.4f +- %.4f\n", dist.label().c_str(), q.value, exact_text,
                    mc.estimate, mc.stderr_);
    }

    // Expected angle sum of the regular tetrahedron's vertex cones.
    const auto j4 = gaussian_angle_sum(4);
    std::printf("\nsum of vertex solid angles of the regular tetrahedron: %.15f (+- %.1e)\n", j4.value,
                j4.abs_error_estimate);
    return 0;
}
